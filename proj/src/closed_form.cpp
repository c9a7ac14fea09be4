#include "qcorr/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <string>

namespace qcorr {

namespace {

constexpr double kClampTol = 1e-6;
constexpr double kRoundoff = 1e-12;
constexpr double kPhiTol = 1e-9;

// Xi(0, beta) through the closed expression in phi0 = tanh(beta/2).
double xi_at_zero(double beta) {
  const double z = partition_function(beta);
  const double phi0 = std::tanh(0.5 * beta);
  if (phi0 >= 1.0) return 0.0;
  return (std::log(z / 4.0) + phi0 * std::log((1.0 - phi0) / (1.0 + phi0))) /
             (2.0 * std::log(2.0)) +
         1.0;
}

}  // namespace

double clamp_nonnegative(double value, const char* what) {
  if (value >= 0.0) return value;
  // cancellation noise in I - C is not worth a warning
  if (value >= -kRoundoff) return 0.0;
  if (value < -kClampTol)
    throw std::domain_error(std::string(what) + " is negative beyond tolerance: " +
                            std::to_string(value));
  std::clog << "qcorr: warning: clamped " << what << " = " << value << " to 0\n";
  return 0.0;
}

XiComponents xi(double kappa, const DimerParams& params) {
  if (!(kappa >= 0.0 && kappa <= 1.0))
    throw std::invalid_argument("kappa must lie in [0, 1], got " + std::to_string(kappa));
  const XStateParams xp = xstate_params(params);

  XiComponents out;
  out.kappa = kappa;
  const double pop_n = 2.0 * (xp.a + xp.c) - 1.0;
  const double pop_m = 2.0 * (xp.a + xp.b) - 1.0;
  const double corr_zz = 1.0 - 2.0 * (xp.b + xp.c);
  const double transverse = (1.0 - kappa * kappa) * xp.e_mag * xp.e_mag;

  double* p[2] = {&out.p0, &out.p1};
  double* phi[2] = {&out.phi0, &out.phi1};
  double* f[2] = {&out.f0, &out.f1};
  for (int i = 0; i < 2; ++i) {
    const double sign = i == 0 ? 1.0 : -1.0;
    *p[i] = 0.5 * (1.0 + sign * kappa * pop_n);
    const double longitudinal = 0.5 * (pop_m + sign * kappa * corr_zz);
    *phi[i] = *p[i] > 0.0 ? std::sqrt(transverse + longitudinal * longitudinal) / *p[i] : 0.0;
    if (*phi[i] > 1.0 + kPhiTol)
      throw std::domain_error("conditional Bloch length " + std::to_string(*phi[i]) +
                              " exceeds 1");
    *phi[i] = std::min(*phi[i], 1.0);
    *f[i] = binary_entropy(0.5 * (1.0 + *phi[i]));
  }
  out.xi = out.p0 * out.f0 + out.p1 * out.f1;
  return out;
}

std::vector<XiComponents> xi_kappa_scan(const DimerParams& params, int points) {
  if (points < 2) throw std::invalid_argument("kappa scan needs at least 2 points");
  std::vector<XiComponents> out;
  out.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    out.push_back(xi(static_cast<double>(i) / (points - 1), params));
  return out;
}

double xi_min(const DimerParams& params) {
  const double value = xi_at_zero(params.beta);
  double grid_min = value;
  for (const auto& c : xi_kappa_scan(params, 101)) grid_min = std::min(grid_min, c.xi);
  if (grid_min < value - kClampTol)
    throw std::domain_error("Xi is not minimised at kappa = 0 (beta=" +
                            std::to_string(params.beta) + ", epsilon=" +
                            std::to_string(params.epsilon) + ")");
  return value;
}

std::array<double, 4> dimer_spectrum(double beta) {
  const double z = partition_function(beta);
  return {std::exp(beta) / z, 1.0 / z, 1.0 / z, std::exp(-beta) / z};
}

double state_entropy_closed(double beta) { return entropy_bits(dimer_spectrum(beta)); }

double reduced_entropy_closed(const DimerParams& params) {
  const XStateParams xp = xstate_params(params);
  return binary_entropy(xp.a + xp.b);
}

double reduced_entropy_literal(const DimerParams& params) {
  const auto p = DimerParams::make(params.beta, params.epsilon);
  const double z = partition_function(p.beta);
  const double s = p.epsilon * std::sinh(p.beta);
  const double half = 0.5 * z;
  const double ln2 = std::log(2.0);
  return std::log((half * half - s * s) / (z * z)) / (2.0 * ln2) -
         s / (z * ln2) * std::log((half + s) / (half - s));
}

double mutual_information(const DimerParams& params) {
  const double s_reduced = reduced_entropy_closed(params);
  return 2.0 * s_reduced - state_entropy_closed(params.beta);
}

double classical_correlation(const DimerParams& params) {
  return clamp_nonnegative(reduced_entropy_closed(params) - xi_min(params),
                           "classical correlation");
}

double qd_closed(const DimerParams& params) {
  return clamp_nonnegative(mutual_information(params) - classical_correlation(params),
                           "quantum discord");
}

double qd_literal(const DimerParams& params) {
  return reduced_entropy_literal(params) + xi_at_zero(params.beta);
}

std::array<double, 3> gqd_xis(const XStateParams& xp) {
  const double e2 = xp.e_mag * xp.e_mag;
  const double xi3 = 2.0 * ((xp.a - xp.c) * (xp.a - xp.c) + (xp.b - xp.d) * (xp.b - xp.d));
  return {4.0 * e2, 4.0 * e2, xi3};
}

double gqd_closed(const XStateParams& xp) {
  const auto [xi1, xi2, xi3] = gqd_xis(xp);
  const double e2 = xp.e_mag * xp.e_mag;
  return 0.25 * (8.0 * e2 + xi3 - std::max({xi1, xi2, xi3}));
}

double min_gamma(const XStateParams& xp) {
  const double g = xp.a - xp.b - xp.c + xp.d;
  return g * g;
}

double min_closed(const XStateParams& xp) {
  const double gamma = min_gamma(xp);
  const double e2 = xp.e_mag * xp.e_mag;
  return 0.25 * (gamma + 8.0 * e2 - 4.0 * std::min(0.25 * gamma, e2));
}

}  // namespace qcorr
