#include "qcorr/check.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <random>

#include "parallel.hpp"
#include "qcorr/closed_form.hpp"
#include "qcorr/dimer.hpp"

namespace qcorr {

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return v;
}

class Recorder {
 public:
  explicit Recorder(CheckReport& r) : report_(r) {}

  void add(std::string name, double deviation, double tolerance) {
    const bool ok = std::isfinite(deviation) && deviation <= tolerance;
    report_.results.push_back({std::move(name), deviation, tolerance, ok});
  }

  void failed(std::string name, double tolerance) {
    report_.results.push_back({std::move(name), INFINITY, tolerance, false});
  }

 private:
  CheckReport& report_;
};

struct PointDeviations {
  double qd = 0.0;
  double gqd = 0.0;
  double gqd_forms = 0.0;
  double min = 0.0;
};

}  // namespace

bool CheckReport::passed() const {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

std::string CheckReport::to_string() const {
  std::string out;
  char buf[256];
  for (const auto& r : results) {
    std::snprintf(buf, sizeof buf, "%s  %-44s deviation %.3e  tolerance %.1e\n",
                  r.passed ? "PASS" : "FAIL", r.name.c_str(), r.deviation, r.tolerance);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "%zu/%zu checks passed\n",
                static_cast<std::size_t>(std::count_if(results.begin(), results.end(),
                                                       [](const auto& r) { return r.passed; })),
                results.size());
  out += buf;
  return out;
}

CheckReport run_check(const CheckOptions& opts) {
  CheckReport report;
  Recorder rec(report);
  const auto betas = linspace(0.0, 7.0, 15);
  const auto epsilons = linspace(0.0, 1.0, 11);

  {
    double worst = 0.0;
    for (double b : betas)
      for (double e : epsilons) {
        Mat4 m = Mat4::Zero();
        try {
          m = dimer_state({b, e}).matrix();
        } catch (const std::exception&) {
          worst = INFINITY;
          continue;
        }
        const auto v = validate(m);
        worst = std::max({worst, v.hermiticity_violation, v.trace_deviation,
                          std::max(0.0, -v.min_eigenvalue)});
      }
    rec.add("state validity", worst, 1e-12);
  }

  {
    double worst = 0.0;
    for (double b : betas) {
      const auto expect = dimer_spectrum(b);
      for (double e : epsilons) {
        const auto got = eigenvalues_hermitian(dimer_state({b, e}).matrix());
        for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(got[i] - expect[i]));
      }
    }
    rec.add("spectrum matches closed form for all epsilon", worst, 1e-12);
  }

  {
    double worst = 0.0;
    for (double b : linspace(0.0, 7.0, 10))
      for (double phase : linspace(0.0, 2.0 * M_PI, 10)) {
        const Mat4 evolved = evolve(thermal_state(b), hamiltonian_mq(1.0), phase).matrix();
        const Mat4 closed = build_density(xstate_params_at_phase(b, phase)).matrix();
        worst = std::max(worst, (evolved.cwiseAbs() - closed.cwiseAbs()).cwiseAbs().maxCoeff());
      }
    rec.add("evolution consistency", worst, 1e-12);
  }

  {
    double most_negative = 0.0;
    for (double b : betas)
      for (double e : epsilons) {
        const auto rho = dimer_state({b, e});
        const double s = opts.entropy_sign;
        const double info = s * von_neumann_entropy(partial_trace(rho, Party::M)) +
                            s * von_neumann_entropy(partial_trace(rho, Party::N)) -
                            s * von_neumann_entropy(rho);
        most_negative = std::max(most_negative, -info);
      }
    rec.add("mutual-information nonnegativity", most_negative, 1e-12);
  }

  {
    const std::vector<double> sb{0.5, 1.5, 3.0, 5.0, 7.0};
    const std::vector<double> se{0.0, 0.25, 0.5, 0.75, 1.0};
    try {
      const auto devs = detail::parallel_map<PointDeviations>(
          sb.size() * se.size(), opts.workers, [&](std::size_t i) {
            const DimerParams p{sb[i / se.size()], se[i % se.size()]};
            const XStateParams xp = xstate_params(p);
            const auto rho = build_density(xp);
            const auto g = gqd_oracle(rho, opts.oracle);
            PointDeviations d;
            d.qd = std::abs(qd_closed(p) - qd_oracle(rho, opts.oracle).value);
            d.gqd = std::abs(gqd_closed(xp) - g.value);
            d.gqd_forms = std::abs(g.value - g.measurement_value);
            d.min = std::abs(min_oracle(rho, opts.oracle).value - 2.0 * xp.e_mag * xp.e_mag);
            return d;
          });
      auto worst = [&](double PointDeviations::*f) {
        double w = 0.0;
        for (const auto& d : devs) w = std::max(w, d.*f);
        return w;
      };
      rec.add("qd closed vs oracle (25 points)", worst(&PointDeviations::qd), 1e-4);
      rec.add("gqd closed vs oracle (25 points)", worst(&PointDeviations::gqd), 1e-10);
      rec.add("gqd eigenvalue vs measurement form", worst(&PointDeviations::gqd_forms), 1e-6);
      rec.add("min oracle equals 2|e|^2", worst(&PointDeviations::min), 1e-10);
    } catch (const std::exception&) {
      rec.failed("closed vs oracle agreement", 1e-4);
    }
  }

  {
    double worst_beta0 = 0.0;
    for (double e : epsilons) {
      const DimerParams p{0.0, e};
      const auto xp = xstate_params(p);
      const auto rho = build_density(xp);
      for (double v : {qd_closed(p), qd_oracle(rho, opts.oracle).value, gqd_closed(xp),
                       gqd_oracle(rho, opts.oracle).value, min_closed(xp),
                       min_oracle(rho, opts.oracle).value})
        worst_beta0 = std::max(worst_beta0, std::abs(v));
    }
    rec.add("limit beta = 0", worst_beta0, 1e-9);

    double worst_eps1 = 0.0;
    for (double b : betas) {
      const DimerParams p{b, 1.0};
      const auto xp = xstate_params(p);
      const auto rho = build_density(xp);
      for (double v : {qd_closed(p), qd_oracle(rho, opts.oracle).value, gqd_closed(xp),
                       gqd_oracle(rho, opts.oracle).value, min_oracle(rho, opts.oracle).value})
        worst_eps1 = std::max(worst_eps1, std::abs(v));
    }
    rec.add("limit epsilon = 1", worst_eps1, 1e-9);
  }

  {
    double worst = 0.0;
    for (double b : linspace(0.0, 7.0, 71)) {
      const double s = opts.entropy_sign * von_neumann_entropy(dimer_state({b, 0.5}));
      worst = std::max(worst, std::abs(s - 2.0 * xi(0.0, {b, 0.5}).xi));
    }
    rec.add("entropy identity S(rho) = 2 Xi(0, beta)", worst, 1e-10);
  }

  {
    double worst = 0.0;
    for (double b : betas)
      for (double e : epsilons) {
        const auto scan = xi_kappa_scan({b, e}, 101);
        double lowest = scan.front().xi;
        for (const auto& c : scan) lowest = std::min(lowest, c.xi);
        worst = std::max(worst, scan.front().xi - lowest);
      }
    rec.add("kappa = 0 minimises Xi", worst, 1e-9);
  }

  {
    std::mt19937_64 rng(opts.seed);
    std::vector<DensityMatrix4> states;
    for (int i = 0; i < opts.random_states; ++i) states.push_back(random_state(rng));
    struct RandomDev {
      double qd_neg = 0.0, gqd_forms = 0.0, min_neg = 0.0;
      bool error = false;
    };
    const auto devs = detail::parallel_map<RandomDev>(
        states.size(), opts.workers, [&](std::size_t i) {
          RandomDev d;
          try {
            d.qd_neg = std::max(0.0, -qd_oracle(states[i], opts.oracle).value);
            const auto g = gqd_oracle(states[i], opts.oracle);
            d.gqd_forms = std::abs(g.value - g.measurement_value);
            d.min_neg = std::max(0.0, -min_oracle(states[i], opts.oracle).value);
          } catch (const std::exception&) {
            d.error = true;
          }
          return d;
        });
    RandomDev w;
    for (const auto& d : devs) {
      w.qd_neg = std::max(w.qd_neg, d.qd_neg);
      w.gqd_forms = std::max(w.gqd_forms, d.gqd_forms);
      w.min_neg = std::max(w.min_neg, d.min_neg);
      w.error = w.error || d.error;
    }
    if (w.error) {
      rec.failed("random states: oracle evaluation", 0.0);
    } else {
      rec.add("random states: qd_oracle >= 0", w.qd_neg, 1e-6);
      rec.add("random states: gqd forms agree", w.gqd_forms, 1e-6);
      rec.add("random states: min_oracle >= 0", w.min_neg, 0.0);
    }
  }

  return report;
}

}  // namespace qcorr
