// qcorr: sweeps of dimer correlation measures and a self-check suite.
//
//   qcorr sweep   --beta 0.1:7:70 --eps 0.1,0.5,0.9 --method both --out vs_beta.csv
//   qcorr surface --beta 0.1:7:50 --eps 0:1:50 --out surface.csv
//   qcorr check
//
// Exit codes: 0 success, 1 usage error, 2 check failure, 3 I/O error.

#include <cstdint>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "qcorr/check.hpp"
#include "qcorr/sweep.hpp"

namespace {

constexpr int kUsage = 1;
constexpr int kCheckFailed = 2;
constexpr int kIo = 3;

struct RawOptions {
  std::string beta;
  std::string eps;
  std::string measures = "qd,gqd,min";
  std::string method = "closed";
  std::string out;
  std::string grid_theta = "64";
  std::string grid_phi = "128";
  std::string refine_iters = "200";
  std::string tol = "1e-9";
  std::string seed = "20240601";
  std::string workers = "1";
  std::string config;
};

// Flags are bound as strings so config-file values can fill whichever ones
// were not given on the command line before anything is converted.
std::map<std::string, std::string*> bind_options(CLI::App& cmd, RawOptions& o, bool sweep_flags) {
  std::map<std::string, std::string*> keys;
  auto add = [&](const std::string& name, std::string& target, const std::string& help) {
    cmd.add_option("--" + name, target, help)->capture_default_str();
    keys[name] = &target;
  };
  if (sweep_flags) {
    add("beta", o.beta, "beta values: v1,v2,... or min:max:steps");
    add("eps", o.eps, "epsilon values: v1,v2,... or min:max:steps");
    add("measures", o.measures, "subset of qd,gqd,min");
    add("method", o.method, "closed, oracle or both");
    add("out", o.out, "output CSV path (stdout when empty)");
  }
  add("grid-theta", o.grid_theta, "oracle polar grid subdivisions");
  add("grid-phi", o.grid_phi, "oracle azimuthal grid subdivisions");
  add("refine-iters", o.refine_iters, "oracle Nelder-Mead iterations");
  add("tol", o.tol, "oracle convergence tolerance");
  add("seed", o.seed, "seed for random-state checks");
  add("workers", o.workers, "worker threads");
  cmd.add_option("--config", o.config, "key = value file; flags take precedence");
  return keys;
}

void apply_config(CLI::App& cmd, const RawOptions& o,
                  const std::map<std::string, std::string*>& keys) {
  if (o.config.empty()) return;
  for (const auto& [key, value] : qcorr::load_config_file(o.config)) {
    const auto it = keys.find(key);
    if (it == keys.end()) throw std::invalid_argument("unknown config key '" + key + "'");
    if (cmd.get_option("--" + key)->count() == 0) *it->second = value;
  }
}

int to_int(const std::string& s, const char* what) {
  std::size_t used = 0;
  const int v = std::stoi(s, &used);
  if (used != s.size()) throw std::invalid_argument(std::string("invalid ") + what);
  return v;
}

qcorr::OptimizerConfig optimizer(const RawOptions& o) {
  qcorr::OptimizerConfig cfg;
  cfg.grid_theta = to_int(o.grid_theta, "--grid-theta");
  cfg.grid_phi = to_int(o.grid_phi, "--grid-phi");
  cfg.refine_iters = to_int(o.refine_iters, "--refine-iters");
  cfg.tol = std::stod(o.tol);
  cfg.check();
  return cfg;
}

qcorr::SweepSpec sweep_spec(const RawOptions& o) {
  qcorr::SweepSpec spec;
  spec.beta_values = qcorr::parse_values(o.beta);
  spec.epsilon_values = qcorr::parse_values(o.eps);
  spec.measures = qcorr::parse_measures(o.measures);
  spec.method = qcorr::parse_method(o.method);
  spec.output_path = o.out;
  spec.oracle = optimizer(o);
  spec.workers = to_int(o.workers, "--workers");
  spec.check();
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum discord, geometric discord and MIN for the NMR dimer"};
  app.require_subcommand(1);

  RawOptions sweep_opts;
  sweep_opts.beta = "0.1:7:70";
  sweep_opts.eps = "0.1,0.2,0.3,0.5,0.7,0.9";
  auto* sweep = app.add_subcommand("sweep", "one CSV row per (beta, epsilon) pair");
  const auto sweep_keys = bind_options(*sweep, sweep_opts, true);

  RawOptions surface_opts;
  surface_opts.beta = "0.1:7:50";
  surface_opts.eps = "0:1:50";
  auto* surface = app.add_subcommand("surface", "long-format (beta, epsilon, measure, value) CSV");
  const auto surface_keys = bind_options(*surface, surface_opts, true);

  RawOptions check_opts;
  auto* check = app.add_subcommand("check", "run the invariant suite");
  const auto check_keys = bind_options(*check, check_opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (sweep->parsed()) {
      apply_config(*sweep, sweep_opts, sweep_keys);
      const auto spec = sweep_spec(sweep_opts);
      const auto rows = qcorr::run_sweep(spec);
      if (spec.output_path.empty()) std::cout << qcorr::format_csv(rows);
    } else if (surface->parsed()) {
      apply_config(*surface, surface_opts, surface_keys);
      const auto spec = sweep_spec(surface_opts);
      const auto points = qcorr::emit_surface(spec);
      if (spec.output_path.empty()) std::cout << qcorr::format_surface_csv(points);
    } else if (check->parsed()) {
      apply_config(*check, check_opts, check_keys);
      qcorr::CheckOptions opts;
      opts.oracle = optimizer(check_opts);
      opts.seed = std::stoull(check_opts.seed);
      opts.workers = to_int(check_opts.workers, "--workers");
      const auto report = qcorr::run_check(opts);
      std::cout << report.to_string();
      return report.passed() ? 0 : kCheckFailed;
    }
  } catch (const qcorr::IoError& e) {
    std::cerr << "qcorr: " << e.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qcorr: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "qcorr: value out of range: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "qcorr: " << e.what() << '\n';
    return kCheckFailed;
  }
  return 0;
}
