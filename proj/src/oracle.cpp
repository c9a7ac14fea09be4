#include "qcorr/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace qcorr {

namespace {

constexpr double kMinOutcomeProbability = 1e-14;
constexpr double kGqdAgreement = 1e-4;

struct Vertex {
  double theta;
  double phi;
  double f;  // objective oriented for minimisation
};

// Nelder-Mead on (theta, phi) with standard coefficients.
Vertex nelder_mead(const std::function<double(double, double)>& f, Vertex start, double step_theta,
                   double step_phi, int max_iters, double tol, long& evaluations) {
  auto eval = [&](double t, double p) {
    ++evaluations;
    return Vertex{t, p, f(t, p)};
  };
  std::array<Vertex, 3> s{start, eval(start.theta + step_theta, start.phi),
                          eval(start.theta, start.phi + step_phi)};
  auto by_value = [](const Vertex& l, const Vertex& r) { return l.f < r.f; };

  for (int it = 0; it < max_iters; ++it) {
    std::sort(s.begin(), s.end(), by_value);
    if (s[2].f - s[0].f < tol) break;

    const double ct = 0.5 * (s[0].theta + s[1].theta);
    const double cp = 0.5 * (s[0].phi + s[1].phi);
    const Vertex r = eval(ct + (ct - s[2].theta), cp + (cp - s[2].phi));
    if (r.f < s[0].f) {
      const Vertex e = eval(ct + 2.0 * (ct - s[2].theta), cp + 2.0 * (cp - s[2].phi));
      s[2] = e.f < r.f ? e : r;
    } else if (r.f < s[1].f) {
      s[2] = r;
    } else {
      const bool outside = r.f < s[2].f;
      const Vertex& ref = outside ? r : s[2];
      const Vertex c = eval(ct + 0.5 * (ref.theta - ct), cp + 0.5 * (ref.phi - cp));
      if (c.f < ref.f) {
        s[2] = c;
      } else {
        for (int i = 1; i < 3; ++i)
          s[i] = eval(s[0].theta + 0.5 * (s[i].theta - s[0].theta),
                      s[0].phi + 0.5 * (s[i].phi - s[0].phi));
      }
    }
  }
  return *std::min_element(s.begin(), s.end(), by_value);
}

MeasurementAxis canonical(MeasurementAxis a) {
  // fold onto theta in [0, pi], phi in [0, 2 pi)
  return MeasurementAxis::from_direction(a.direction());
}

double entropy_2x2(const Mat2& m) {
  return entropy_bits(eigenvalues_hermitian(Mat2(0.5 * (m + m.adjoint()))));
}

}  // namespace

void OptimizerConfig::check() const {
  if (grid_theta < 1 || grid_phi < 1)
    throw std::invalid_argument("optimizer grid sizes must be positive");
  if (refine_iters < 0) throw std::invalid_argument("refine_iters must be >= 0");
  if (!(tol > 0.0)) throw std::invalid_argument("optimizer tol must be > 0");
}

OracleResult optimize_axis(const std::function<double(const MeasurementAxis&)>& objective,
                           const OptimizerConfig& cfg, Goal goal) {
  cfg.check();
  const double sign = goal == Goal::minimize ? 1.0 : -1.0;
  OracleResult out;
  auto f = [&](double t, double p) { return sign * objective(MeasurementAxis{t, p}); };

  const double dt = 0.5 * M_PI / cfg.grid_theta;
  const double dp = 2.0 * M_PI / cfg.grid_phi;
  Vertex best{0.0, 0.0, f(0.0, 0.0)};
  ++out.evaluations;
  for (int i = 1; i <= cfg.grid_theta; ++i) {
    for (int j = 0; j < cfg.grid_phi; ++j) {
      const Vertex v{i * dt, j * dp, f(i * dt, j * dp)};
      ++out.evaluations;
      if (v.f < best.f) best = v;
    }
  }
  out.grid_value = sign * best.f;

  Vertex refined = best;
  if (cfg.refine_iters > 0) {
    const Vertex nm = nelder_mead(f, best, dt, dp, cfg.refine_iters, cfg.tol, out.evaluations);
    if (nm.f < refined.f) refined = nm;
  }
  out.value = sign * refined.f;
  out.axis = canonical({refined.theta, refined.phi});
  return out;
}

double conditional_entropy(const DensityMatrix4& rho, const MeasurementAxis& axis,
                           Party measured) {
  double total = 0.0;
  for (int k = 0; k < 2; ++k) {
    const Mat4 p = embed(axis.projector(k), measured);
    const Mat4 branch = p * rho.matrix() * p;
    const double prob = branch.trace().real();
    if (prob < kMinOutcomeProbability) continue;
    total += prob * entropy_2x2(partial_trace(branch, other(measured)) / prob);
  }
  return total;
}

OracleResult conditional_entropy_min(const DensityMatrix4& rho, Party measured,
                                     const OptimizerConfig& cfg) {
  return optimize_axis(
      [&](const MeasurementAxis& a) { return conditional_entropy(rho, a, measured); }, cfg,
      Goal::minimize);
}

double mutual_information(const DensityMatrix4& rho) {
  return von_neumann_entropy(partial_trace(rho, Party::M)) +
         von_neumann_entropy(partial_trace(rho, Party::N)) - von_neumann_entropy(rho);
}

OracleResult qd_oracle(const DensityMatrix4& rho, const OptimizerConfig& cfg, Party measured) {
  const double info = mutual_information(rho);
  const double s_other = von_neumann_entropy(partial_trace(rho, other(measured)));
  OracleResult r = conditional_entropy_min(rho, measured, cfg);
  r.value = info - (s_other - r.value);
  r.grid_value = info - (s_other - r.grid_value);
  return r;
}

GqdOracleResult gqd_oracle(const DensityMatrix4& rho, const OptimizerConfig& cfg, Party measured) {
  const BlochDecomposition b = bloch_decompose(rho);
  const Vec3 local = measured == Party::M ? b.x : b.y;
  const Mat3 t = measured == Party::M ? b.t : Mat3(b.t.transpose());
  const Mat3 k = local * local.transpose() + t * t.transpose();

  GqdOracleResult out;
  out.k_max = Eigen::SelfAdjointEigenSolver<Mat3>(k, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
  out.value = 0.25 * (local.squaredNorm() + t.squaredNorm() - out.k_max);

  const OracleResult m = optimize_axis(
      [&](const MeasurementAxis& a) {
        return hs_norm_sq(rho.matrix() - apply_measurement(rho, a, measured).matrix());
      },
      cfg, Goal::minimize);
  out.measurement_value = m.value;
  out.axis = m.axis;
  out.evaluations = m.evaluations;
  if (std::abs(out.value - out.measurement_value) > kGqdAgreement)
    throw std::logic_error("geometric discord forms disagree: " + std::to_string(out.value) +
                           " vs " + std::to_string(out.measurement_value));
  return out;
}

const char* to_string(MinBranch b) {
  return b == MinBranch::eigenbasis ? "eigenbasis" : "degenerate";
}

MinOracleResult min_oracle(const DensityMatrix4& rho, const OptimizerConfig& cfg,
                           double degeneracy_tol, Party measured) {
  auto disturbance = [&](const MeasurementAxis& a) {
    return hs_norm_sq(rho.matrix() - apply_measurement(rho, a, measured).matrix());
  };
  const Vec3 r = partial_trace(rho, measured).bloch();

  MinOracleResult out;
  // eigenvalues of the reduced state are (1 +- |r|)/2
  out.eigen_gap = r.norm();
  if (out.eigen_gap > degeneracy_tol) {
    out.branch = MinBranch::eigenbasis;
    out.axis = MeasurementAxis::from_direction(r);
    out.value = out.grid_value = disturbance(out.axis);
    out.evaluations = 1;
    return out;
  }
  out.branch = MinBranch::degenerate;
  static_cast<OracleResult&>(out) = optimize_axis(disturbance, cfg, Goal::maximize);
  return out;
}

DensityMatrix4 random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit;
  Eigen::Vector4cd psi;
  for (int i = 0; i < 4; ++i) psi(i) = {gauss(rng), gauss(rng)};
  psi.normalize();
  const double w = unit(rng);
  Mat4 m = w * psi * psi.adjoint() + (1.0 - w) * 0.25 * Mat4::Identity();
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityMatrix4(m);
}

}  // namespace qcorr
