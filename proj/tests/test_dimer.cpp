#include <cmath>

#include "doctest.h"
#include "qcorr/closed_form.hpp"
#include "qcorr/dimer.hpp"
#include "qcorr/oracle.hpp"
#include "support.hpp"

using namespace qcorr;
using doctest::Approx;

TEST_SUITE("dimer-state") {
  TEST_CASE("X-state parameters") {
    SUBCASE("infinite temperature") {
      for (double e : {0.0, 0.4, 1.0}) {
        const auto xp = xstate_params({0.0, e});
        CHECK(xp.z == 4.0);
        for (double v : {xp.a, xp.b, xp.c, xp.d}) CHECK(v == Approx(0.25).epsilon(1e-15));
        CHECK(xp.e_mag == 0.0);
      }
    }
    SUBCASE("no coherence at epsilon = 1") {
      const auto xp = xstate_params({1.0, 1.0});
      CHECK(xp.e_mag == 0.0);
      CHECK(xp.a == Approx(std::exp(1.0) / xp.z).epsilon(1e-15));
    }
    SUBCASE("beta = 1, epsilon = 0.5") {
      // reference values from tests/oracle/dense_oracle.py
      const auto xp = xstate_params({1.0, 0.5});
      CHECK(xp.z == Approx(5.086161269630487).epsilon(1e-14));
      CHECK(xp.a == Approx(0.41891735607352054).epsilon(1e-14));
      CHECK(xp.d == Approx(0.1878587774435157).epsilon(1e-14));
      CHECK(xp.b == Approx(0.19661193324148185).epsilon(1e-14));
      CHECK(xp.c == xp.b);
      CHECK(xp.e_mag == Approx(0.20010259885590842).epsilon(1e-14));
    }
    SUBCASE("invalid inputs") {
      CHECK_THROWS_AS(xstate_params({1.0, 1.2}), std::invalid_argument);
      CHECK_THROWS_AS(xstate_params({1.0, -0.1}), std::invalid_argument);
      CHECK_THROWS_AS(xstate_params({-1.0, 0.5}), std::invalid_argument);
    }
  }

  TEST_CASE("X-state invariants across the grid") {
    for (double b : {0.0, 0.5, 1.0, 2.0, 5.0, 7.0})
      for (int k = 0; k <= 10; ++k) {
        const double e = k / 10.0;
        const auto xp = xstate_params({b, e});
        CHECK(xp.a + xp.b + xp.c + xp.d == Approx(1.0).epsilon(1e-12));
        CHECK(xp.b == Approx(1.0 / xp.z).epsilon(1e-15));
        CHECK(xp.a * xp.d >= xp.e_mag * xp.e_mag);
        const double s = std::sinh(b) / xp.z;
        CHECK(xp.e_mag * xp.e_mag + (e * s) * (e * s) == Approx(s * s).epsilon(1e-13));
        const auto v = validate(build_density(xp).matrix());
        CHECK(v.ok());
      }
  }

  TEST_CASE("build_density") {
    const auto id = build_density(xstate_params({0.0, 0.3}));
    CHECK(testing::max_abs(id.matrix() - Mat4(Mat4::Identity() * 0.25)) < 1e-15);

    const auto diag = build_density(xstate_params({1.0, 1.0}));
    const double z = partition_function(1.0);
    CHECK(diag(0, 0).real() == Approx(std::exp(1.0) / z).epsilon(1e-15));
    CHECK(diag(1, 1).real() == Approx(1.0 / z).epsilon(1e-15));
    CHECK(diag(3, 3).real() == Approx(std::exp(-1.0) / z).epsilon(1e-15));
    CHECK(std::abs(diag(0, 3)) == 0.0);

    const auto rho = build_density(xstate_params({1.0, 0.5}));
    CHECK(rho(0, 3) == std::conj(rho(3, 0)));
    CHECK(rho(0, 3).real() == 0.0);
    CHECK(rho(0, 3).imag() > 0.0);
    const auto ev = eigenvalues_hermitian(rho.matrix());
    CHECK(ev[0] == Approx(std::exp(1.0) / z).epsilon(1e-14));
    CHECK(ev[1] == Approx(1.0 / z).epsilon(1e-14));
    CHECK(ev[2] == Approx(1.0 / z).epsilon(1e-14));
    CHECK(ev[3] == Approx(std::exp(-1.0) / z).epsilon(1e-14));

    XStateParams bad;
    bad.e_mag = 0.3;  // a*d = 1/16 < 0.09
    CHECK_THROWS_AS(build_density(bad), std::invalid_argument);
  }

  TEST_CASE("thermal state") {
    CHECK(testing::max_abs(thermal_state(0.0).matrix() - Mat4(Mat4::Identity() * 0.25)) < 1e-15);
    // e^7 / (e^7 + 2 + e^-7)
    CHECK(thermal_state(7.0)(0, 0).real() == Approx(0.9981787276254775).epsilon(1e-14));
    CHECK(thermal_state(8.0)(0, 0).real() > 0.999);
    const auto t1 = thermal_state(1.0);
    CHECK(t1(0, 0).real() == Approx(2.718281828459045 / 5.086161269630487).epsilon(1e-14));
    CHECK(t1(1, 1).real() == Approx(1.0 / 5.086161269630487).epsilon(1e-14));
    CHECK(t1(3, 3).real() == Approx(0.36787944117144233 / 5.086161269630487).epsilon(1e-14));
    CHECK(validate(thermal_state(700.0).matrix()).ok());
  }

  TEST_CASE("MQ Hamiltonian") {
    CHECK(hamiltonian_mq(0.0).isZero());
    const Mat4 h = hamiltonian_mq(2.0);
    CHECK(h(0, 3) == 1.0);
    CHECK(h(3, 0) == 1.0);
    CHECK(h.cwiseAbs().sum() == 2.0);

    Mat4 jz = Mat4::Zero();
    jz(0, 0) = 1.0;
    jz(3, 3) = -1.0;
    const Mat4 rho0 = thermal_state(1.0).matrix();
    CHECK((h * jz - jz * h).cwiseAbs().maxCoeff() > 0.5);
    CHECK((h * rho0 - rho0 * h).cwiseAbs().maxCoeff() > 0.1);
  }

  TEST_CASE("evolution reproduces the closed form") {
    SUBCASE("tau = 0") {
      const auto rho0 = thermal_state(1.3);
      CHECK(testing::max_abs(evolve(rho0, hamiltonian_mq(3.0), 0.0).matrix() - rho0.matrix()) <
            1e-15);
    }
    SUBCASE("20 x 20 (beta, eta tau) grid") {
      for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) {
          const double beta = 7.0 * i / 19.0;
          const double phase = 2.0 * M_PI * j / 19.0;
          const auto evolved = evolve(thermal_state(beta), hamiltonian_mq(2.0), phase / 2.0);
          const auto closed = build_density(xstate_params_at_phase(beta, phase));
          CHECK((evolved.matrix().cwiseAbs() - closed.matrix().cwiseAbs()).cwiseAbs().maxCoeff() <
                1e-12);
          // with U = exp(-i H tau) the coherence is +i sin(eta tau) sinh(beta) / z
          CHECK(evolved(0, 3).imag() ==
                Approx(std::sin(phase) * std::sinh(beta) / partition_function(beta)).epsilon(1e-12));
          const auto e0 = eigenvalues_hermitian(thermal_state(beta).matrix());
          const auto e1 = eigenvalues_hermitian(evolved.matrix());
          for (int k = 0; k < 4; ++k) CHECK(std::abs(e0[k] - e1[k]) < 1e-12);
        }
    }
    SUBCASE("dense exponential path") {
      // a multiple of the identity commutes with everything but forces the general route
      const Mat4 h = hamiltonian_mq(1.7) + 0.4 * Mat4::Identity();
      const auto rho0 = thermal_state(2.0);
      const auto block = evolve(rho0, hamiltonian_mq(1.7), 0.9);
      const auto dense = evolve(rho0, h, 0.9);
      CHECK(testing::max_abs(block.matrix() - dense.matrix()) < 1e-12);
    }
    SUBCASE("non-Hermitian Hamiltonian") {
      Mat4 h = Mat4::Zero();
      h(0, 1) = 1.0;
      CHECK_THROWS_AS(evolve(thermal_state(1.0), h, 1.0), std::invalid_argument);
    }
  }

  TEST_CASE("sign of cos(eta tau) does not change the measures") {
    for (double beta : {0.5, 2.0, 6.0})
      for (double phase : {0.3, 1.1, 1.5}) {
        const auto fwd = xstate_params_at_phase(beta, phase);
        const auto back = xstate_params_at_phase(beta, M_PI - phase);
        CHECK(back.a == Approx(fwd.d).epsilon(1e-13));
        CHECK(gqd_closed(back) == Approx(gqd_closed(fwd)).epsilon(1e-13));
        CHECK(min_closed(back) == Approx(min_closed(fwd)).epsilon(1e-13));
        const auto from_eps = xstate_params({beta, std::abs(std::cos(phase))});
        CHECK(gqd_closed(from_eps) == Approx(gqd_closed(back)).epsilon(1e-13));

        OptimizerConfig cfg;
        cfg.grid_theta = 16;
        cfg.grid_phi = 16;
        const double qf = qd_oracle(build_density(fwd), cfg).value;
        const double qb = qd_oracle(build_density(back), cfg).value;
        CHECK(std::abs(qf - qb) < 1e-9);
        CHECK(mutual_information(build_density(fwd)) ==
              Approx(mutual_information(build_density(back))).epsilon(1e-12));
      }
  }

  TEST_CASE("physical parameters") {
    PhysicalParams p;
    p.gamma = 2.675221874e8;  // proton
    p.r12 = 1.6e-10;
    p.alpha12 = 0.3;
    p.h0 = 9.4;
    p.temperature = 1e-3;
    p.tau = 2e-5;

    SUBCASE("beta = hbar gamma |H0| / kT") {
      const auto d = derive_dimer_params(p);
      CHECK(d.beta == Approx(1.054571817e-34 * 2.675221874e8 * 9.4 / (1.380649e-23 * 1e-3)));
      CHECK(d.epsilon == Approx(std::abs(std::cos(p.eta() * p.tau))));
    }
    SUBCASE("magic angle kills the coupling") {
      p.alpha12 = std::acos(1.0 / std::sqrt(3.0));
      CHECK(std::abs(p.eta()) < 1e-9 * p.gamma * constants::kHbar / std::pow(p.r12, 3));
      CHECK(derive_dimer_params(p).epsilon == Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("tau = 0") {
      p.tau = 0.0;
      CHECK(derive_dimer_params(p).epsilon == 1.0);
    }
    SUBCASE("inverse-cube distance scaling") {
      const double eta = p.eta();
      p.r12 *= 2.0;
      CHECK(p.eta() == Approx(eta / 8.0).epsilon(1e-14));
    }
    SUBCASE("invalid inputs") {
      p.r12 = 0.0;
      CHECK_THROWS_AS(derive_dimer_params(p), std::invalid_argument);
      p.r12 = 1e-10;
      p.temperature = -1.0;
      CHECK_THROWS_AS(derive_dimer_params(p), std::invalid_argument);
    }
  }
}
