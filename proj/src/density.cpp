#include "qcorr/density.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace qcorr {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

template <typename M>
double hermiticity_violation(const M& m) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i; j < m.cols(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

// Eigenvalues of [[a, g], [conj g, d]] with a, d real, descending.
std::array<double, 2> hermitian_2x2(double a, double d, std::complex<double> g) {
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), std::abs(g));
  return {mean + radius, mean - radius};
}

template <typename M>
ValidationReport validate_impl(const M& m, double min_eig) {
  ValidationReport r;
  r.hermiticity_violation = hermiticity_violation(m);
  r.trace_deviation = std::abs(m.trace() - std::complex<double>(1.0, 0.0));
  r.min_eigenvalue = min_eig;
  r.hermitian = r.hermiticity_violation <= kHermitianTol;
  r.unit_trace = r.trace_deviation <= kTraceTol;
  r.psd = r.min_eigenvalue >= -kPsdTol;
  return r;
}

// Spectrum of the Hermitian part, so that validate() never throws.
template <typename M>
double min_eigenvalue_of_hermitian_part(const M& m) {
  const M h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<M> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

std::string describe(const ValidationReport& r) {
  return "hermiticity " + std::to_string(r.hermiticity_violation) + ", trace deviation " +
         std::to_string(r.trace_deviation) + ", min eigenvalue " +
         std::to_string(r.min_eigenvalue);
}

}  // namespace

Party parse_party(std::string_view name) {
  if (name.size() == 1) {
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
    if (c == 'M') return Party::M;
    if (c == 'N') return Party::N;
  }
  throw std::invalid_argument("invalid party identifier '" + std::string(name) +
                              "' (expected M or N)");
}

const char* to_string(Party p) { return p == Party::M ? "M" : "N"; }

ValidationReport validate(const Mat4& m) {
  return validate_impl(m, min_eigenvalue_of_hermitian_part(m));
}

ValidationReport validate(const Mat2& m) {
  const Mat2 h = 0.5 * (m + m.adjoint());
  const auto ev = hermitian_2x2(h(0, 0).real(), h(1, 1).real(), h(0, 1));
  return validate_impl(m, ev[1]);
}

DensityMatrix4::DensityMatrix4(const Mat4& m) : m_(m) {
  const auto report = validate(m);
  if (!report.ok()) throw std::invalid_argument("not a density matrix: " + describe(report));
}

DensityMatrix4 DensityMatrix4::maximally_mixed() {
  return DensityMatrix4(Mat4::Identity() * 0.25, Unchecked{});
}

DensityMatrix4 unchecked_state(const Mat4& m) { return DensityMatrix4(m, DensityMatrix4::Unchecked{}); }

QubitState2::QubitState2(const Mat2& m) : m_(m) {
  const auto report = validate(m);
  if (!report.ok()) throw std::invalid_argument("not a qubit state: " + describe(report));
}

Vec3 QubitState2::bloch() const {
  return {2.0 * m_(0, 1).real(), -2.0 * m_(0, 1).imag(), (m_(0, 0) - m_(1, 1)).real()};
}

QubitState2 partial_trace(const DensityMatrix4& rho, Party keep) {
  return QubitState2(partial_trace(rho.matrix(), keep));
}

Mat2 partial_trace(const Mat4& r, Party keep) {
  Mat2 out = Mat2::Zero();
  // index = 2 * m + n
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        out(i, j) += keep == Party::M ? r(2 * i + k, 2 * j + k) : r(2 * k + i, 2 * k + j);
  return out;
}

std::array<double, 2> eigenvalues_hermitian(const Mat2& m) {
  if (hermiticity_violation(m) > kHermitianTol)
    throw std::invalid_argument("eigenvalues_hermitian: matrix is not Hermitian");
  return hermitian_2x2(m(0, 0).real(), m(1, 1).real(), m(0, 1));
}

std::array<double, 4> eigenvalues_hermitian(const Mat4& m) {
  if (hermiticity_violation(m) > kHermitianTol)
    throw std::invalid_argument("eigenvalues_hermitian: matrix is not Hermitian");

  constexpr double kOffBlock = 1e-14;
  const double off = std::max({std::abs(m(0, 1)), std::abs(m(0, 2)), std::abs(m(1, 3)),
                               std::abs(m(2, 3)), std::abs(m(1, 0)), std::abs(m(2, 0)),
                               std::abs(m(3, 1)), std::abs(m(3, 2))});
  std::array<double, 4> out{};
  if (off < kOffBlock) {
    const auto outer = hermitian_2x2(m(0, 0).real(), m(3, 3).real(), m(0, 3));
    const auto inner = hermitian_2x2(m(1, 1).real(), m(2, 2).real(), m(1, 2));
    out = {outer[0], outer[1], inner[0], inner[1]};
  } else {
    Eigen::SelfAdjointEigenSolver<Mat4> es(m, Eigen::EigenvaluesOnly);
    for (int i = 0; i < 4; ++i) out[i] = es.eigenvalues()(i);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double entropy_bits(const double* first, const double* last) {
  double s = 0.0;
  for (const double* p = first; p != last; ++p) {
    if (*p < -kPsdTol) throw std::invalid_argument("entropy of a non-PSD spectrum");
    if (*p > 0.0) s -= *p * std::log2(*p);
  }
  return s;
}

double binary_entropy(double p) {
  const std::array<double, 2> spec{p, 1.0 - p};
  return entropy_bits(spec);
}

double von_neumann_entropy(const DensityMatrix4& rho) {
  return entropy_bits(eigenvalues_hermitian(rho.matrix()));
}

double von_neumann_entropy(const QubitState2& rho) {
  return entropy_bits(eigenvalues_hermitian(rho.matrix()));
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix must be square");
  if (hermiticity_violation(rho) > kHermitianTol)
    throw std::invalid_argument("von_neumann_entropy: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = es.eigenvalues();
  return entropy_bits(ev.data(), ev.data() + ev.size());
}

const Mat2& pauli(int i) {
  static const std::array<Mat2, 3> kPauli = [] {
    std::array<Mat2, 3> s;
    s[0] << 0, 1, 1, 0;
    s[1] << 0, -kI, kI, 0;
    s[2] << 1, 0, 0, -1;
    return s;
  }();
  return kPauli.at(static_cast<std::size_t>(i));
}

Mat4 embed(const Mat2& op, Party party) {
  const Mat2 id = Mat2::Identity();
  const Mat2& left = party == Party::M ? op : id;
  const Mat2& right = party == Party::M ? id : op;
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = left(i, j) * right;
  return out;
}

Mat4 BlochDecomposition::reconstruct() const {
  Mat4 m = Mat4::Identity();
  for (int i = 0; i < 3; ++i) {
    m += x(i) * embed(pauli(i), Party::M);
    m += y(i) * embed(pauli(i), Party::N);
    for (int j = 0; j < 3; ++j)
      m += t(i, j) * (embed(pauli(i), Party::M) * embed(pauli(j), Party::N));
  }
  return 0.25 * m;
}

BlochDecomposition bloch_decompose(const DensityMatrix4& rho) {
  const Mat4& r = rho.matrix();
  BlochDecomposition b;
  for (int i = 0; i < 3; ++i) {
    const Mat4 si = embed(pauli(i), Party::M);
    b.x(i) = (r * si).trace().real();
    b.y(i) = (r * embed(pauli(i), Party::N)).trace().real();
    for (int j = 0; j < 3; ++j) b.t(i, j) = (r * si * embed(pauli(j), Party::N)).trace().real();
  }
  return b;
}

Vec3 MeasurementAxis::direction() const {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

Mat2 MeasurementAxis::projector(int k) const {
  const Vec3 n = direction();
  Mat2 ns = n(0) * pauli(0) + n(1) * pauli(1) + n(2) * pauli(2);
  const double sign = k == 0 ? 1.0 : -1.0;
  return 0.5 * (Mat2::Identity() + sign * ns);
}

MeasurementAxis MeasurementAxis::from_direction(const Vec3& n) {
  const double norm = n.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("measurement direction must be nonzero");
  const Vec3 u = n / norm;
  double phi = std::atan2(u(1), u(0));
  if (phi < 0.0) phi += 2.0 * M_PI;
  return {std::acos(std::clamp(u(2), -1.0, 1.0)), phi};
}

DensityMatrix4 apply_measurement(const DensityMatrix4& rho, const MeasurementAxis& axis,
                                 Party party) {
  Mat4 out = Mat4::Zero();
  for (int k = 0; k < 2; ++k) {
    const Mat4 p = embed(axis.projector(k), party);
    out += p * rho.matrix() * p;
  }
  return unchecked_state(out);
}

}  // namespace qcorr
