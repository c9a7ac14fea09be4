#include "qcorr/sweep.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "parallel.hpp"
#include "qcorr/closed_form.hpp"
#include "qcorr/dimer.hpp"

namespace qcorr {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view text) {
  const std::string s(trim(text));
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
    throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

long parse_long(std::string_view text) {
  const std::string s(trim(text));
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size())
    throw std::invalid_argument("not an integer: '" + s + "'");
  return v;
}

void append_number(std::string& out, double v) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  out.append(buf, static_cast<std::size_t>(n));
}

void append_field(std::string& out, const std::optional<double>& v) {
  out.push_back(',');
  if (v) append_number(out, *v);
}

std::optional<double> parse_field(std::string_view s) {
  if (trim(s).empty()) return std::nullopt;
  return parse_double(s);
}

constexpr const char* kSweepHeader =
    "beta,epsilon,qd_closed,qd_oracle,gqd_closed,gqd_oracle,min_closed,min_oracle,"
    "delta_qd,delta_gqd,delta_min";

std::optional<double> delta(const std::optional<double>& a, const std::optional<double>& b) {
  if (a && b) return std::abs(*a - *b);
  return std::nullopt;
}

}  // namespace

const char* to_string(Measure m) {
  switch (m) {
    case Measure::qd: return "qd";
    case Measure::gqd: return "gqd";
    case Measure::min: return "min";
  }
  return "?";
}

const char* to_string(Method m) {
  switch (m) {
    case Method::closed: return "closed";
    case Method::oracle: return "oracle";
    case Method::both: return "both";
  }
  return "?";
}

Measure parse_measure(std::string_view name) {
  const auto n = trim(name);
  if (n == "qd") return Measure::qd;
  if (n == "gqd") return Measure::gqd;
  if (n == "min") return Measure::min;
  throw std::invalid_argument("invalid measure name '" + std::string(n) +
                              "' (expected qd, gqd or min)");
}

Method parse_method(std::string_view name) {
  const auto n = trim(name);
  if (n == "closed") return Method::closed;
  if (n == "oracle") return Method::oracle;
  if (n == "both") return Method::both;
  throw std::invalid_argument("invalid method '" + std::string(n) +
                              "' (expected closed, oracle or both)");
}

std::vector<Measure> parse_measures(std::string_view list) {
  std::vector<Measure> out;
  for (auto part : split(list, ',')) {
    const Measure m = parse_measure(part);
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  return out;
}

std::vector<double> parse_values(std::string_view text) {
  const auto t = trim(text);
  if (t.empty()) throw std::invalid_argument("empty value list");
  if (t.find(':') != std::string_view::npos) {
    const auto parts = split(t, ':');
    if (parts.size() != 3) throw std::invalid_argument("range must be min:max:steps");
    const double lo = parse_double(parts[0]);
    const double hi = parse_double(parts[1]);
    const long steps = parse_long(parts[2]);
    if (steps < 1) throw std::invalid_argument("range steps must be >= 1");
    if (hi < lo) throw std::invalid_argument("range max must be >= min");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(steps));
    for (long i = 0; i < steps; ++i)
      out.push_back(steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (steps - 1));
    if (steps > 1) out.back() = hi;
    return out;
  }
  std::vector<double> out;
  for (auto part : split(t, ',')) out.push_back(parse_double(part));
  return out;
}

void SweepSpec::check() const {
  if (beta_values.empty() || epsilon_values.empty())
    throw std::invalid_argument("sweep needs at least one beta and one epsilon value");
  for (double b : beta_values)
    if (!(b >= 0.0)) throw std::invalid_argument("beta values must be >= 0");
  for (double e : epsilon_values)
    if (!(e >= 0.0 && e <= 1.0)) throw std::invalid_argument("epsilon values must lie in [0, 1]");
  if (measures.empty()) throw std::invalid_argument("no measures selected");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  oracle.check();
}

bool SweepSpec::wants(Measure m) const {
  return std::find(measures.begin(), measures.end(), m) != measures.end();
}

SweepRow evaluate_point(double beta, double epsilon, const SweepSpec& spec) {
  const DimerParams params = DimerParams::make(beta, epsilon);
  const XStateParams xp = xstate_params(params);
  const bool closed = spec.method != Method::oracle;
  const bool oracle = spec.method != Method::closed;

  SweepRow row;
  row.beta = beta;
  row.epsilon = epsilon;
  std::optional<DensityMatrix4> rho;
  if (oracle) rho = build_density(xp);

  if (spec.wants(Measure::qd)) {
    if (closed) row.qd_closed = qd_closed(params);
    if (oracle) row.qd_oracle = qd_oracle(*rho, spec.oracle).value;
  }
  if (spec.wants(Measure::gqd)) {
    if (closed) row.gqd_closed = gqd_closed(xp);
    if (oracle) row.gqd_oracle = gqd_oracle(*rho, spec.oracle).value;
  }
  if (spec.wants(Measure::min)) {
    if (closed) row.min_closed = min_closed(xp);
    if (oracle) row.min_oracle = min_oracle(*rho, spec.oracle).value;
  }
  row.delta_qd = delta(row.qd_closed, row.qd_oracle);
  row.delta_gqd = delta(row.gqd_closed, row.gqd_oracle);
  row.delta_min = delta(row.min_closed, row.min_oracle);
  return row;
}

std::vector<SweepRow> compute_sweep(const SweepSpec& spec) {
  spec.check();
  const std::size_t ne = spec.epsilon_values.size();
  const std::size_t n = spec.beta_values.size() * ne;
  return detail::parallel_map<SweepRow>(n, spec.workers, [&](std::size_t i) {
    return evaluate_point(spec.beta_values[i / ne], spec.epsilon_values[i % ne], spec);
  });
}

std::string format_csv(const std::vector<SweepRow>& rows) {
  std::string out = kSweepHeader;
  out.push_back('\n');
  for (const auto& r : rows) {
    append_number(out, r.beta);
    out.push_back(',');
    append_number(out, r.epsilon);
    for (const auto* f : {&r.qd_closed, &r.qd_oracle, &r.gqd_closed, &r.gqd_oracle, &r.min_closed,
                          &r.min_oracle, &r.delta_qd, &r.delta_gqd, &r.delta_min})
      append_field(out, *f);
    out.push_back('\n');
  }
  return out;
}

std::vector<SweepRow> parse_csv(std::string_view text) {
  auto lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || lines.front() != kSweepHeader)
    throw std::invalid_argument("missing or unexpected sweep CSV header");
  std::vector<SweepRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split(lines[i], ',');
    if (fields.size() != 11)
      throw std::invalid_argument("line " + std::to_string(i + 1) + ": expected 11 fields");
    SweepRow r;
    r.beta = parse_double(fields[0]);
    r.epsilon = parse_double(fields[1]);
    std::optional<double>* slots[] = {&r.qd_closed, &r.qd_oracle, &r.gqd_closed,
                                      &r.gqd_oracle, &r.min_closed, &r.min_oracle,
                                      &r.delta_qd,  &r.delta_gqd, &r.delta_min};
    for (std::size_t k = 0; k < 9; ++k) *slots[k] = parse_field(fields[k + 2]);
    rows.push_back(r);
  }
  return rows;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << contents;
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  auto rows = compute_sweep(spec);
  if (!spec.output_path.empty()) write_text_file(spec.output_path, format_csv(rows));
  return rows;
}

std::vector<SurfacePoint> surface_points(const SweepSpec& spec) {
  if (spec.beta_values.size() < 2 || spec.epsilon_values.size() < 2)
    throw std::invalid_argument("surface needs at least two beta and two epsilon values");
  const auto rows = compute_sweep(spec);
  std::vector<SurfacePoint> out;
  for (const auto& r : rows) {
    auto add = [&](const char* label, const std::optional<double>& v) {
      if (v) out.push_back({r.beta, r.epsilon, label, *v});
    };
    add("qd_closed", r.qd_closed);
    add("qd_oracle", r.qd_oracle);
    add("gqd_closed", r.gqd_closed);
    add("gqd_oracle", r.gqd_oracle);
    add("min_closed", r.min_closed);
    add("min_oracle", r.min_oracle);
  }
  return out;
}

std::string format_surface_csv(const std::vector<SurfacePoint>& points) {
  std::string out = "beta,epsilon,measure,value\n";
  for (const auto& p : points) {
    append_number(out, p.beta);
    out.push_back(',');
    append_number(out, p.epsilon);
    out.push_back(',');
    out += p.measure;
    out.push_back(',');
    append_number(out, p.value);
    out.push_back('\n');
  }
  return out;
}

std::vector<SurfacePoint> emit_surface(const SweepSpec& spec) {
  auto points = surface_points(spec);
  if (!spec.output_path.empty()) write_text_file(spec.output_path, format_surface_csv(points));
  return points;
}

std::map<std::string, std::string> parse_config(std::string_view text) {
  std::map<std::string, std::string> out;
  int lineno = 0;
  for (auto line : split(text, '\n')) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key(trim(line.substr(0, eq)));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    out[key] = std::string(trim(line.substr(eq + 1)));
  }
  return out;
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

}  // namespace qcorr
