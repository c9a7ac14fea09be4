#pragma once

#include <random>

#include <Eigen/QR>

#include "qcorr/density.hpp"

namespace qcorr::testing {

// Haar-ish unitary from the QR factor of a complex Gaussian matrix.
template <int N>
Eigen::Matrix<std::complex<double>, N, N> random_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Matrix<std::complex<double>, N, N> a;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) a(i, j) = {g(rng), g(rng)};
  Eigen::HouseholderQR<Eigen::Matrix<std::complex<double>, N, N>> qr(a);
  return qr.householderQ();
}

inline double max_abs(const Mat4& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace qcorr::testing
