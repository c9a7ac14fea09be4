#pragma once

// Parameter sweeps over (beta, epsilon) and their CSV encodings.
//
// CSV: comma separated, '.' decimal point, 12 significant digits, '\n' line
// endings, mandatory header. Empty fields mark measures that were not
// requested.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qcorr/oracle.hpp"

namespace qcorr {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Measure { qd, gqd, min };
enum class Method { closed, oracle, both };

const char* to_string(Measure m);
const char* to_string(Method m);
Measure parse_measure(std::string_view name);
Method parse_method(std::string_view name);
/// Comma-separated measure names, e.g. "qd,gqd,min".
std::vector<Measure> parse_measures(std::string_view list);

/// "v1,v2,..." or "min:max:steps" (steps points, endpoints included).
std::vector<double> parse_values(std::string_view text);

struct SweepSpec {
  std::vector<double> beta_values;
  std::vector<double> epsilon_values;
  std::vector<Measure> measures{Measure::qd, Measure::gqd, Measure::min};
  Method method = Method::closed;
  std::string output_path;  // empty: nothing is written
  OptimizerConfig oracle;
  int workers = 1;

  /// Throws std::invalid_argument when an invariant is violated.
  void check() const;
  bool wants(Measure m) const;
};

struct SweepRow {
  double beta = 0.0;
  double epsilon = 0.0;
  std::optional<double> qd_closed, qd_oracle;
  std::optional<double> gqd_closed, gqd_oracle;
  std::optional<double> min_closed, min_oracle;
  std::optional<double> delta_qd, delta_gqd, delta_min;
};

SweepRow evaluate_point(double beta, double epsilon, const SweepSpec& spec);

/// Rows in beta-major order, evaluated on spec.workers threads.
std::vector<SweepRow> compute_sweep(const SweepSpec& spec);

std::string format_csv(const std::vector<SweepRow>& rows);
/// Inverse of format_csv; throws std::invalid_argument on malformed input.
std::vector<SweepRow> parse_csv(std::string_view text);

/// compute_sweep, then writes the CSV to spec.output_path when set.
/// Throws IoError if the file cannot be written.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

struct SurfacePoint {
  double beta = 0.0;
  double epsilon = 0.0;
  std::string measure;  // e.g. "qd_closed", "min_oracle"
  double value = 0.0;
};

/// Long-format table (beta, epsilon, measure, value); both axes need at
/// least two values.
std::vector<SurfacePoint> surface_points(const SweepSpec& spec);
std::string format_surface_csv(const std::vector<SurfacePoint>& points);
std::vector<SurfacePoint> emit_surface(const SweepSpec& spec);

/// Parses "key = value" lines; '#' starts a comment. Throws
/// std::invalid_argument on lines without '='.
std::map<std::string, std::string> parse_config(std::string_view text);
/// Throws IoError if the file cannot be read.
std::map<std::string, std::string> load_config_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace qcorr
