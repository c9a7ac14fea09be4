#include "qcorr/dimer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace qcorr {

DimerParams DimerParams::make(double beta, double epsilon) {
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("beta must be finite and >= 0, got " + std::to_string(beta));
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("epsilon must lie in [0, 1], got " + std::to_string(epsilon));
  return {beta, epsilon};
}

double PhysicalParams::eta() const {
  const double ca = std::cos(alpha12);
  return gamma * constants::kHbar / (r12 * r12 * r12) * (1.0 - 3.0 * ca * ca);
}

double PhysicalParams::omega() const { return gamma * std::abs(h0); }

double partition_function(double beta) { return 2.0 * (1.0 + std::cosh(beta)); }

XStateParams xstate_params(const DimerParams& params) {
  const auto p = DimerParams::make(params.beta, params.epsilon);
  const double z = partition_function(p.beta);
  const double ch = std::cosh(p.beta);
  const double sh = std::sinh(p.beta);
  XStateParams xp;
  xp.z = z;
  xp.a = (ch + p.epsilon * sh) / z;
  xp.d = (ch - p.epsilon * sh) / z;
  xp.b = xp.c = 1.0 / z;
  xp.e_mag = std::sqrt((1.0 - p.epsilon) * (1.0 + p.epsilon)) * sh / z;
  return xp;
}

XStateParams xstate_params_at_phase(double beta, double eta_tau) {
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");
  const double z = partition_function(beta);
  const double ch = std::cosh(beta);
  const double sh = std::sinh(beta);
  XStateParams xp;
  xp.z = z;
  xp.a = (ch + std::cos(eta_tau) * sh) / z;
  xp.d = (ch - std::cos(eta_tau) * sh) / z;
  xp.b = xp.c = 1.0 / z;
  xp.e_mag = std::abs(std::sin(eta_tau)) * sh / z;
  return xp;
}

DensityMatrix4 build_density(const XStateParams& xp) {
  if (xp.e_mag < 0.0) throw std::invalid_argument("e_mag must be nonnegative");
  // relative slack: at large beta both sides are O(1) and round independently
  if (xp.a * xp.d < xp.e_mag * xp.e_mag - 1e-15)
    throw std::invalid_argument("X-state is not PSD: a*d < |e|^2");
  Mat4 m = Mat4::Zero();
  m(0, 0) = xp.a;
  m(1, 1) = xp.b;
  m(2, 2) = xp.c;
  m(3, 3) = xp.d;
  m(0, 3) = {0.0, xp.e_mag};
  m(3, 0) = std::conj(m(0, 3));
  return DensityMatrix4(m);
}

DensityMatrix4 thermal_state(double beta) {
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");
  // divide by e^beta first so large beta does not overflow
  const double w = std::exp(-beta);
  const double z = 1.0 + 2.0 * w + w * w;
  Mat4 m = Mat4::Zero();
  m(0, 0) = 1.0 / z;
  m(1, 1) = m(2, 2) = w / z;
  m(3, 3) = w * w / z;
  return DensityMatrix4(m);
}

Mat4 hamiltonian_mq(double eta) {
  Mat4 h = Mat4::Zero();
  h(0, 3) = h(3, 0) = 0.5 * eta;
  return h;
}

namespace {

bool couples_only_outer_block(const Mat4& h) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const bool outer = (i == 0 && j == 3) || (i == 3 && j == 0);
      if (!outer && h(i, j) != 0.0) return false;
    }
  return true;
}

}  // namespace

DensityMatrix4 evolve(const DensityMatrix4& rho0, const Mat4& h, double tau) {
  if (validate(h).hermiticity_violation > kHermitianTol)
    throw std::invalid_argument("evolve: Hamiltonian is not Hermitian");

  Mat4 u;
  if (couples_only_outer_block(h)) {
    // exp(-i tau [[0, g], [g*, 0]]) = cos(|g| tau) I - i sin(|g| tau) [[0, g/|g|], [g*/|g|, 0]]
    const std::complex<double> g = h(0, 3);
    const double mag = std::abs(g);
    const double angle = mag * tau;
    const std::complex<double> phase = mag > 0.0 ? g / mag : std::complex<double>(1.0, 0.0);
    const std::complex<double> mi{0.0, -1.0};
    u = Mat4::Identity();
    u(0, 0) = u(3, 3) = std::cos(angle);
    u(0, 3) = mi * std::sin(angle) * phase;
    u(3, 0) = mi * std::sin(angle) * std::conj(phase);
  } else {
    Eigen::SelfAdjointEigenSolver<Mat4> es(h);
    Eigen::Vector4cd d;
    for (int i = 0; i < 4; ++i) d(i) = std::polar(1.0, -es.eigenvalues()(i) * tau);
    u = es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
  }
  Mat4 out = u * rho0.matrix() * u.adjoint();
  // restore exact Hermiticity lost to rounding in the products
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix4(out);
}

DimerParams derive_dimer_params(const PhysicalParams& p) {
  if (!(p.r12 > 0.0)) throw std::invalid_argument("r12 must be > 0");
  if (!(p.temperature > 0.0)) throw std::invalid_argument("temperature must be > 0");
  if (!(p.tau >= 0.0)) throw std::invalid_argument("tau must be >= 0");
  const double beta = constants::kHbar * p.omega() / (constants::kBoltzmann * p.temperature);
  const double eps = std::min(1.0, std::abs(std::cos(p.eta() * p.tau)));
  return DimerParams::make(beta, eps);
}

}  // namespace qcorr
