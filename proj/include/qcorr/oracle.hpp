#pragma once

// Definitional correlation measures for arbitrary two-qubit states, found by
// optimising over von Neumann measurements on one qubit.
//
// An axis and its antipode define the same projector pair, so the coarse
// grid covers only the upper half-sphere theta in [0, pi/2]; Nelder-Mead
// refinement in (theta, phi) starts from the best grid point and is
// unrestricted.

#include <cstdint>
#include <functional>
#include <random>

#include "qcorr/density.hpp"

namespace qcorr {

struct OptimizerConfig {
  int grid_theta = 64;     // polar subdivisions of [0, pi/2]
  int grid_phi = 128;      // azimuthal subdivisions of [0, 2 pi)
  int refine_iters = 200;  // Nelder-Mead iterations
  double tol = 1e-9;       // stop once the simplex values agree this closely

  /// Throws std::invalid_argument on non-positive sizes or tol.
  void check() const;
};

struct OracleResult {
  double value = 0.0;
  MeasurementAxis axis;
  double grid_value = 0.0;  // optimum before refinement
  long evaluations = 0;
};

enum class Goal { minimize, maximize };

/// Grid search followed by Nelder-Mead refinement. Grid ties go to the
/// smallest theta, then the smallest phi. The refined value is never worse
/// than the grid value.
OracleResult optimize_axis(const std::function<double(const MeasurementAxis&)>& objective,
                           const OptimizerConfig& cfg, Goal goal);

/// sum_k p_k S(rho_other|k) for a measurement of `measured` along `axis`;
/// outcomes with p_k < 1e-14 are skipped.
double conditional_entropy(const DensityMatrix4& rho, const MeasurementAxis& axis,
                           Party measured);

OracleResult conditional_entropy_min(const DensityMatrix4& rho, Party measured,
                                     const OptimizerConfig& cfg = {});

/// S(rho^M) + S(rho^N) - S(rho).
double mutual_information(const DensityMatrix4& rho);

/// I(rho) - [S(rho_other) - min conditional entropy], measuring `measured`.
/// value and grid_value are discord values; axis is the optimal measurement.
OracleResult qd_oracle(const DensityMatrix4& rho, const OptimizerConfig& cfg = {},
                       Party measured = Party::N);

struct GqdOracleResult {
  double value = 0.0;              // (1/4)(|x|^2 + |T|^2 - k_max)
  double measurement_value = 0.0;  // min over axes of |rho - Pi(rho)|^2
  double k_max = 0.0;
  MeasurementAxis axis;            // minimiser of the measurement form
  long evaluations = 0;
};

/// Geometric discord w.r.t. measurements on `measured`. Both forms are
/// computed; throws std::logic_error if they differ by more than 1e-4.
GqdOracleResult gqd_oracle(const DensityMatrix4& rho, const OptimizerConfig& cfg = {},
                           Party measured = Party::M);

enum class MinBranch { eigenbasis, degenerate };

const char* to_string(MinBranch b);

struct MinOracleResult : OracleResult {
  MinBranch branch = MinBranch::eigenbasis;
  double eigen_gap = 0.0;
};

/// Maximal |rho - Pi(rho)|^2 over measurements on `measured` that leave its
/// reduced state invariant. A nondegenerate reduced state admits only its
/// eigenbasis; otherwise every axis is searched.
MinOracleResult min_oracle(const DensityMatrix4& rho, const OptimizerConfig& cfg = {},
                           double degeneracy_tol = 1e-8, Party measured = Party::M);

/// w |psi><psi| + (1 - w) I/4 with Gaussian psi and uniform w.
DensityMatrix4 random_state(std::mt19937_64& rng);

}  // namespace qcorr
