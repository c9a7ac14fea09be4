#pragma once

// The two-spin dimer in the preparation period of an MQ NMR experiment.

#include "qcorr/density.hpp"

namespace qcorr {

/// Dimensionless model inputs: inverse temperature beta = hbar w0 / kT and
/// the time factor epsilon = |cos(eta tau)|.
struct DimerParams {
  double beta = 0.0;
  double epsilon = 0.0;

  /// Throws std::invalid_argument unless beta >= 0 and 0 <= epsilon <= 1.
  static DimerParams make(double beta, double epsilon);
};

/// SI inputs from which DimerParams can be derived.
struct PhysicalParams {
  double gamma = 0.0;        // rad s^-1 T^-1
  double r12 = 0.0;          // m
  double alpha12 = 0.0;      // rad, between H0 and the inter-spin vector
  double h0 = 0.0;           // T
  double temperature = 0.0;  // K
  double tau = 0.0;          // s

  /// Dipolar coupling eta = (gamma hbar / r12^3)(1 - 3 cos^2 alpha12).
  double eta() const;
  /// Larmor frequency gamma |H0|.
  double omega() const;
};

namespace constants {
inline constexpr double kHbar = 1.054571817e-34;     // J s (CODATA 2018, exact)
inline constexpr double kBoltzmann = 1.380649e-23;   // J/K (exact)
}  // namespace constants

/// Populations and coherence of the dimer X-state. The (1,4) entry is
/// i * e_mag; a, b, c, d are the diagonal in basis order.
struct XStateParams {
  double a = 0.25;
  double b = 0.25;
  double c = 0.25;
  double d = 0.25;
  double e_mag = 0.0;
  double z = 4.0;
};

/// z = 2 (1 + cosh beta).
double partition_function(double beta);

XStateParams xstate_params(const DimerParams& params);

/// Same populations written in terms of the rotation phase eta*tau rather
/// than epsilon: a and d use the signed cos(eta tau), e_mag = |sin(eta tau)| sinh(beta)/z.
XStateParams xstate_params_at_phase(double beta, double eta_tau);

/// Throws std::invalid_argument when a*d < e_mag^2 or the populations do not
/// form a valid state.
DensityMatrix4 build_density(const XStateParams& xp);

inline DensityMatrix4 dimer_state(const DimerParams& params) {
  return build_density(xstate_params(params));
}

/// exp(beta Jz) / Tr exp(beta Jz) with Jz eigenvalues (1, 0, 0, -1).
DensityMatrix4 thermal_state(double beta);

/// (eta/2)(J+ J+ + J- J-): couples |00> and |11> only.
Mat4 hamiltonian_mq(double eta);

/// U rho0 U^dagger with U = exp(-i h tau). A Hamiltonian that only couples
/// |00> and |11> is exponentiated exactly as a 2x2 rotation; anything else
/// goes through a dense eigendecomposition.
DensityMatrix4 evolve(const DensityMatrix4& rho0, const Mat4& h, double tau);

DimerParams derive_dimer_params(const PhysicalParams& p);

}  // namespace qcorr
