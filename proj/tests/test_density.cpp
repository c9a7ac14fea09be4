#include <cmath>
#include <random>

#include "doctest.h"
#include "qcorr/closed_form.hpp"
#include "qcorr/density.hpp"
#include "qcorr/dimer.hpp"
#include "qcorr/oracle.hpp"
#include "support.hpp"

using namespace qcorr;
using doctest::Approx;

namespace {

DensityMatrix4 ket00() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = 1.0;
  return DensityMatrix4(m);
}

}  // namespace

TEST_SUITE("density-core") {
  TEST_CASE("validate reports per-tolerance diagnostics") {
    const auto ok = validate(Mat4(Mat4::Identity() * 0.25));
    CHECK(ok.ok());
    CHECK(ok.min_eigenvalue == Approx(0.25).epsilon(1e-14));

    Mat4 low = Mat4::Identity() * 0.225;
    const auto bad = validate(low);
    CHECK_FALSE(bad.ok());
    CHECK_FALSE(bad.unit_trace);
    CHECK(bad.trace_deviation == Approx(0.1).epsilon(1e-12));

    Mat4 skew = Mat4::Identity() * 0.25;
    skew(0, 1) = 0.1;
    const auto nh = validate(skew);
    CHECK_FALSE(nh.hermitian);
    CHECK(nh.hermiticity_violation == Approx(0.1));

    CHECK(validate(dimer_state({1.0, 0.5}).matrix()).ok());
    CHECK_THROWS_AS(DensityMatrix4{low}, std::invalid_argument);
  }

  TEST_CASE("partial trace of the dimer X-state") {
    const auto xp = xstate_params({1.0, 0.5});
    const auto rho = build_density(xp);
    const Mat2 m = partial_trace(rho, Party::M).matrix();
    const Mat2 n = partial_trace(rho, Party::N).matrix();
    CHECK(m(0, 0).real() == Approx(xp.a + xp.b).epsilon(1e-15));
    CHECK(m(1, 1).real() == Approx(xp.c + xp.d).epsilon(1e-15));
    CHECK(std::abs(m(0, 1)) == 0.0);
    CHECK(n(0, 0).real() == Approx(xp.a + xp.c).epsilon(1e-15));
    CHECK(n(1, 1).real() == Approx(xp.b + xp.d).epsilon(1e-15));
    CHECK((m - n).cwiseAbs().maxCoeff() < 1e-15);

    const Mat2 half = partial_trace(DensityMatrix4::maximally_mixed(), Party::N).matrix();
    CHECK((half - 0.5 * Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  }

  TEST_CASE("reduced states agree across the dimer family") {
    for (double b : {0.0, 0.5, 2.0, 7.0})
      for (double e : {0.0, 0.3, 1.0}) {
        const auto rho = dimer_state({b, e});
        const Mat2 diff = partial_trace(rho, Party::M).matrix() - partial_trace(rho, Party::N).matrix();
        CHECK(diff.cwiseAbs().maxCoeff() < 1e-15);
      }
  }

  TEST_CASE("party parsing") {
    CHECK(parse_party("M") == Party::M);
    CHECK(parse_party("n") == Party::N);
    CHECK_THROWS_AS(parse_party("A"), std::invalid_argument);
    CHECK_THROWS_AS(parse_party(""), std::invalid_argument);
  }

  TEST_CASE("von Neumann entropy") {
    CHECK(von_neumann_entropy(DensityMatrix4::maximally_mixed()) == Approx(2.0).epsilon(1e-14));
    CHECK(von_neumann_entropy(ket00()) == 0.0);
    // numpy eigvalsh reference at beta = 1
    for (double e : {0.0, 0.5, 1.0})
      CHECK(von_neumann_entropy(dimer_state({1.0, e})) ==
            Approx(1.6798830759663383).epsilon(1e-12));

    Eigen::MatrixXcd eight = Eigen::MatrixXcd::Identity(8, 8) / 8.0;
    CHECK(von_neumann_entropy(eight) == Approx(3.0).epsilon(1e-14));

    Eigen::MatrixXcd neg = Eigen::MatrixXcd::Zero(2, 2);
    neg(0, 0) = 1.1;
    neg(1, 1) = -0.1;
    CHECK_THROWS_AS(von_neumann_entropy(neg), std::invalid_argument);
  }

  TEST_CASE("entropy is invariant under unitary conjugation") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
      const auto rho = random_state(rng);
      const Mat4 u = testing::random_unitary<4>(rng);
      Mat4 rotated = u * rho.matrix() * u.adjoint();
      rotated = 0.5 * (rotated + rotated.adjoint()).eval();
      CHECK(std::abs(von_neumann_entropy(DensityMatrix4(rotated)) - von_neumann_entropy(rho)) <
            1e-10);
    }
  }

  TEST_CASE("Hermitian eigenvalues") {
    const auto quarter = eigenvalues_hermitian(Mat4(Mat4::Identity() * 0.25));
    for (double v : quarter) CHECK(v == Approx(0.25).epsilon(1e-15));

    Mat2 d = Mat2::Zero();
    d(0, 0) = 0.3;
    d(1, 1) = 0.7;
    const auto two = eigenvalues_hermitian(d);
    CHECK(two[0] == Approx(0.7));
    CHECK(two[1] == Approx(0.3));

    Mat2 skew = Mat2::Zero();
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(eigenvalues_hermitian(skew), std::invalid_argument);
  }

  TEST_CASE("dense eigenvalue path matches trace moments") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
      const auto rho = random_state(rng);
      const auto ev = eigenvalues_hermitian(rho.matrix());
      CHECK(ev[0] >= ev[1]);
      CHECK(ev[2] >= ev[3]);
      const double s1 = ev[0] + ev[1] + ev[2] + ev[3];
      const double s2 = ev[0] * ev[0] + ev[1] * ev[1] + ev[2] * ev[2] + ev[3] * ev[3];
      CHECK(s1 == Approx(1.0).epsilon(1e-13));
      CHECK(s2 == Approx((rho.matrix() * rho.matrix()).trace().real()).epsilon(1e-12));
    }
  }

  TEST_CASE("dimer spectrum does not depend on epsilon") {
    for (double b : {0.0, 0.5, 1.0, 2.0, 5.0, 7.0}) {
      const auto expect = dimer_spectrum(b);
      for (int k = 0; k <= 10; ++k) {
        const auto got = eigenvalues_hermitian(dimer_state({b, k / 10.0}).matrix());
        for (int i = 0; i < 4; ++i) CHECK(std::abs(got[i] - expect[i]) < 1e-12);
      }
    }
  }

  TEST_CASE("Hilbert-Schmidt norm") {
    CHECK(hs_norm_sq(Mat4::Zero()) == 0.0);
    CHECK(hs_norm_sq(Mat4(Mat4::Identity() * 0.25)) == Approx(0.25).epsilon(1e-15));
    const auto xp = xstate_params({1.0, 0.5});
    const auto rho = build_density(xp);
    const auto pinched = apply_measurement(rho, {0.0, 0.0}, Party::M);
    CHECK(hs_norm_sq(rho.matrix() - pinched.matrix()) ==
          Approx(2.0 * xp.e_mag * xp.e_mag).epsilon(1e-14));
  }

  TEST_CASE("Bloch decomposition of the maximally mixed state") {
    const auto b = bloch_decompose(DensityMatrix4::maximally_mixed());
    CHECK(b.x.norm() == 0.0);
    CHECK(b.y.norm() == 0.0);
    CHECK(b.t.norm() == 0.0);
  }

  TEST_CASE("Bloch decomposition of the dimer") {
    const auto xp = xstate_params({1.0, 0.5});
    const auto b = bloch_decompose(build_density(xp));
    const double xz = xp.a + xp.b - xp.c - xp.d;
    const double tzz = xp.a - xp.b - xp.c + xp.d;
    CHECK(b.x.head<2>().norm() < 1e-15);
    CHECK(b.x(2) == Approx(xz).epsilon(1e-14));
    CHECK((b.x - b.y).norm() < 1e-15);
    CHECK(b.t(2, 2) == Approx(tzz).epsilon(1e-14));
    CHECK(std::abs(b.t(0, 0)) < 1e-15);
    CHECK(std::abs(b.t(1, 1)) < 1e-15);
    CHECK(b.t(0, 1) == Approx(-2.0 * xp.e_mag).epsilon(1e-14));
    CHECK(b.t(1, 0) == Approx(-2.0 * xp.e_mag).epsilon(1e-14));
    const double xi3 = 2.0 * ((xp.a - xp.c) * (xp.a - xp.c) + (xp.b - xp.d) * (xp.b - xp.d));
    CHECK(xz * xz + tzz * tzz == Approx(xi3).epsilon(1e-14));
  }

  TEST_CASE("Bloch reconstruction round trip on random states") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
      const auto rho = random_state(rng);
      const auto b = bloch_decompose(rho);
      CHECK(testing::max_abs(b.reconstruct() - rho.matrix()) < 1e-12);
      CHECK(b.x.norm() <= 1.0 + 1e-12);
      CHECK(b.y.norm() <= 1.0 + 1e-12);
    }
  }

  TEST_CASE("measurement projectors") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
      const MeasurementAxis a{M_PI * u(rng), 2.0 * M_PI * u(rng)};
      const Mat2 p0 = a.projector(0);
      const Mat2 p1 = a.projector(1);
      CHECK((p0 * p0 - p0).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((p1 * p1 - p1).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((p0 * p1).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((p0 + p1 - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-12);
      const auto back = MeasurementAxis::from_direction(a.direction());
      CHECK((back.direction() - a.direction()).norm() < 1e-12);
    }
  }

  TEST_CASE("z measurement on M removes the double-quantum coherence") {
    const auto xp = xstate_params({2.0, 0.3});
    const auto rho = build_density(xp);
    const Mat4 out = apply_measurement(rho, {0.0, 0.0}, Party::M).matrix();
    CHECK(std::abs(out(0, 3)) < 1e-15);
    CHECK(std::abs(out(3, 0)) < 1e-15);
    CHECK((out.diagonal() - rho.matrix().diagonal()).cwiseAbs().maxCoeff() < 1e-15);
  }

  TEST_CASE("measurement on the maximally mixed state is trivial") {
    for (double t : {0.0, 0.7, 2.0})
      for (Party p : {Party::M, Party::N}) {
        const auto out = apply_measurement(DensityMatrix4::maximally_mixed(), {t, 1.3}, p);
        CHECK(testing::max_abs(out.matrix() - Mat4(Mat4::Identity() * 0.25)) < 1e-15);
      }
  }

  TEST_CASE("measurement is idempotent and pinches the measured reduced state") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
      const auto rho = random_state(rng);
      const MeasurementAxis a{M_PI * u(rng), 2.0 * M_PI * u(rng)};
      const Party party = i % 2 ? Party::M : Party::N;
      const auto once = apply_measurement(rho, a, party);
      CHECK(validate(once.matrix()).ok());
      const auto twice = apply_measurement(once, a, party);
      CHECK(testing::max_abs(twice.matrix() - once.matrix()) < 1e-12);

      const Mat2 reduced = partial_trace(rho, party).matrix();
      Mat2 pinched = Mat2::Zero();
      for (int k = 0; k < 2; ++k) pinched += a.projector(k) * reduced * a.projector(k);
      CHECK((partial_trace(once, party).matrix() - pinched).cwiseAbs().maxCoeff() < 1e-12);

      // measuring in the eigenbasis leaves the reduced state unchanged
      const auto eig = MeasurementAxis::from_direction(partial_trace(rho, party).bloch());
      const auto inv = apply_measurement(rho, eig, party);
      CHECK((partial_trace(inv, party).matrix() - reduced).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}
