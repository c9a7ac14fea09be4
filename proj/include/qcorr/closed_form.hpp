#pragma once

// Closed-form correlation measures for the dimer X-state.
//
// Quantum discord uses projective measurements on party N. The conditional
// entropy of M after a measurement along an axis with cos(theta) = kappa is
//
//   Xi(kappa) = p0 h((1 + phi0)/2) + p1 h((1 + phi1)/2)
//   p_i   = (1 + (-1)^i kappa (2(a+c) - 1)) / 2
//   phi_i = sqrt((1 - kappa^2)|e|^2 + (2(a+b) - 1 + (-1)^i kappa (1 - 2(b+c)))^2 / 4) / p_i
//
// and is minimised at kappa = 0 for this family.

#include <array>
#include <vector>

#include "qcorr/dimer.hpp"

namespace qcorr {

struct XiComponents {
  double kappa = 0.0;
  double p0 = 0.5, p1 = 0.5;
  double phi0 = 0.0, phi1 = 0.0;
  double f0 = 1.0, f1 = 1.0;
  double xi = 1.0;  // p0 f0 + p1 f1, bits
};

/// Throws std::invalid_argument for kappa outside [0, 1] and
/// std::domain_error when a conditional Bloch length exceeds 1 + 1e-9.
XiComponents xi(double kappa, const DimerParams& params);

/// Xi on `points` equally spaced kappa values in [0, 1].
std::vector<XiComponents> xi_kappa_scan(const DimerParams& params, int points = 101);

/// Xi(0, beta) = f0 with phi0 = tanh(beta/2). Throws std::domain_error if
/// the 101-point kappa scan finds a value more than 1e-6 below it.
double xi_min(const DimerParams& params);

/// Spectrum of rho: {e^beta, 1, 1, e^-beta} / z, descending, for every epsilon.
std::array<double, 4> dimer_spectrum(double beta);

/// S(rho) from dimer_spectrum.
double state_entropy_closed(double beta);

/// h(a + b), the entropy of either reduced state.
double reduced_entropy_closed(const DimerParams& params);

/// The single-expression form
///   ln[((z/2)^2 - eps^2 sinh^2 b)/z^2]/(2 ln 2) - eps sinh b/(z ln 2) ln[(z/2 + eps sinh b)/(z/2 - eps sinh b)]
/// evaluated literally. It equals (1-p) log2 p + p log2(1-p) with p = a + b,
/// i.e. -1 at beta = 0 rather than the entropy; kept as a diagnostic.
double reduced_entropy_literal(const DimerParams& params);

double mutual_information(const DimerParams& params);

/// S(rho^M) - min Xi, clamped at zero (logged); throws std::domain_error below -1e-6.
double classical_correlation(const DimerParams& params);

/// I - C = S(rho^N) - S(rho) + Xi(0, beta).
double qd_closed(const DimerParams& params);

/// reduced_entropy_literal + Xi(0, beta): the one-line discord expression
/// taken term by term. Diagnostic only; disagrees with qd_closed.
double qd_literal(const DimerParams& params);

/// Eigenvalues {xi1, xi2, xi3} of x x^T + T T^T for the dimer.
std::array<double, 3> gqd_xis(const XStateParams& xp);

/// (1/4)[8|e|^2 + xi3 - max(xi1, xi2, xi3)].
double gqd_closed(const XStateParams& xp);

/// Gamma = (a - b - c + d)^2.
double min_gamma(const XStateParams& xp);

/// (1/4)[Gamma + 8|e|^2 - 4 min(Gamma/4, |e|^2)]. Equals 2|e|^2 when
/// Gamma/4 <= |e|^2 and exceeds it otherwise.
double min_closed(const XStateParams& xp);

/// Clamps values in [-1e-6, 0) to zero and throws std::domain_error for
/// anything lower. A warning goes to std::clog unless the value is within
/// 1e-12 of zero (rounding noise).
double clamp_nonnegative(double value, const char* what);

}  // namespace qcorr
