#pragma once

// Small exact linear algebra for two-qubit density matrices.
//
// Basis order is fixed as |00>, |01>, |10>, |11> with party M the left
// tensor factor and party N the right one.

#include <array>
#include <complex>
#include <string_view>

#include <Eigen/Core>

namespace qcorr {

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

enum class Party { M, N };

/// Parses "M"/"N" (case-insensitive); throws std::invalid_argument otherwise.
Party parse_party(std::string_view name);
const char* to_string(Party p);
inline Party other(Party p) { return p == Party::M ? Party::N : Party::M; }

struct ValidationReport {
  double hermiticity_violation = 0.0;  // max |m(i,j) - conj(m(j,i))|
  double trace_deviation = 0.0;        // |Tr m - 1|
  double min_eigenvalue = 0.0;
  bool hermitian = false;
  bool unit_trace = false;
  bool psd = false;

  bool ok() const { return hermitian && unit_trace && psd; }
};

ValidationReport validate(const Mat4& m);
ValidationReport validate(const Mat2& m);

/// A validated two-qubit state. Construction throws std::invalid_argument
/// when the matrix is not Hermitian, unit-trace and PSD.
class DensityMatrix4 {
 public:
  explicit DensityMatrix4(const Mat4& m);

  static DensityMatrix4 maximally_mixed();

  const Mat4& matrix() const { return m_; }
  std::complex<double> operator()(int i, int j) const { return m_(i, j); }

 private:
  struct Unchecked {};
  DensityMatrix4(const Mat4& m, Unchecked) : m_(m) {}
  friend DensityMatrix4 unchecked_state(const Mat4& m);

  Mat4 m_;
};

/// Wraps without validation. For results of trace-preserving maps applied
/// to an already validated state.
DensityMatrix4 unchecked_state(const Mat4& m);

class QubitState2 {
 public:
  explicit QubitState2(const Mat2& m);

  const Mat2& matrix() const { return m_; }
  /// Bloch vector r with rho = (I + r.sigma) / 2.
  Vec3 bloch() const;

 private:
  Mat2 m_;
};

QubitState2 partial_trace(const DensityMatrix4& rho, Party keep);
/// Partial trace of an arbitrary 4x4 operator, without validation.
Mat2 partial_trace(const Mat4& m, Party keep);

/// Eigenvalues in descending order. The 2x2 case is solved in closed form;
/// the 4x4 case splits into the {|00>,|11>} and {|01>,|10>} blocks when the
/// matrix is an X-state and falls back to a dense solver otherwise.
/// Throws std::invalid_argument for non-Hermitian input.
std::array<double, 2> eigenvalues_hermitian(const Mat2& m);
std::array<double, 4> eigenvalues_hermitian(const Mat4& m);

/// Shannon entropy in bits of a probability spectrum; entries in
/// [-kPsdTol, 0] count as zero, anything more negative throws.
double entropy_bits(const double* first, const double* last);

template <std::size_t N>
double entropy_bits(const std::array<double, N>& spectrum) {
  return entropy_bits(spectrum.data(), spectrum.data() + N);
}

/// Binary entropy h(p) in bits.
double binary_entropy(double p);

double von_neumann_entropy(const DensityMatrix4& rho);
double von_neumann_entropy(const QubitState2& rho);
/// Any square density matrix; uses a dense Hermitian solver.
double von_neumann_entropy(const Eigen::MatrixXcd& rho);

template <typename Derived>
double hs_norm_sq(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs2().sum();
}

struct BlochDecomposition {
  Vec3 x = Vec3::Zero();  // party M
  Vec3 y = Vec3::Zero();  // party N
  Mat3 t = Mat3::Zero();  // t(i, j) = Tr[rho (sigma_i x sigma_j)]

  Mat4 reconstruct() const;
};

BlochDecomposition bloch_decompose(const DensityMatrix4& rho);

/// Pauli matrices indexed 0..2 for x, y, z.
const Mat2& pauli(int i);

/// Von Neumann measurement along the unit vector
/// n = (sin t cos p, sin t sin p, cos t), with projectors (I +- n.sigma)/2.
struct MeasurementAxis {
  double theta = 0.0;
  double phi = 0.0;

  Vec3 direction() const;
  /// k = 0 selects the +n outcome.
  Mat2 projector(int k) const;

  static MeasurementAxis from_direction(const Vec3& n);
};

/// Lifts a single-qubit operator to act on the given party.
Mat4 embed(const Mat2& op, Party party);

/// sum_k (P_k x I) rho (P_k x I), or with I x P_k for party N.
DensityMatrix4 apply_measurement(const DensityMatrix4& rho,
                                 const MeasurementAxis& axis, Party party);

}  // namespace qcorr
