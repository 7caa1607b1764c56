#include "holotel/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "holotel/loop_spec_io.hpp"
#include "holotel/noise.hpp"
#include "json.hpp"

namespace holotel {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SweepAxis parse_axis(const json& doc, const std::string& field) {
  if (!doc.contains(field)) throw ParseError(field, "missing axis");
  const json& v = doc.at(field);
  SweepAxis axis;
  if (v.is_number()) {
    axis.start = axis.stop = v.get<double>();
    return axis;
  }
  if (!v.is_object()) throw ParseError(field, "expected a number or {start, stop, count}");
  for (const char* key : {"start", "stop", "count"}) {
    if (!v.contains(key)) throw ParseError(field, std::string("missing '") + key + "'");
  }
  if (!v.at("start").is_number() || !v.at("stop").is_number()) {
    throw ParseError(field, "start and stop must be numbers");
  }
  if (!v.at("count").is_number_integer()) throw ParseError(field, "count must be an integer");
  axis.start = v.at("start").get<double>();
  axis.stop = v.at("stop").get<double>();
  axis.count = v.at("count").get<int>();
  return axis;
}

template <typename T, typename Parse>
T parse_enum(const json& doc, const std::string& field, T fallback, Parse parse) {
  if (!doc.contains(field)) return fallback;
  if (!doc.at(field).is_string()) throw ParseError(field, "expected a string");
  try {
    return parse(doc.at(field).get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(field, e.what());
  }
}

double nan_if_missing(const std::vector<double>& v, std::size_t i) {
  return i < v.size() ? v[i] : kNaN;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

SweepRow evaluate_point(const SweepConfig& config, double eps, double delta, double lambda) {
  SweepRow row;
  row.epsilon = eps;
  row.delta = delta;
  row.lambda = lambda;
  row.prediction = first_order_prediction(delta, eps, lambda);
  TeleportOptions options;
  options.mode = config.mode;
  options.model = config.model;
  options.aggregation = config.aggregation;
  try {
    row.report = lambda == 0.0 ? fidelity(delta, eps, options)
                               : dissipative_fidelity(delta, eps, lambda, options);
    row.residual = row.report.total - row.prediction;
    row.status = row.report.converged ? "ok" : "not-converged: " + row.report.message;
  } catch (const std::exception& e) {
    row.report.total = kNaN;
    row.residual = kNaN;
    row.status = std::string("error: ") + e.what();
  }
  return row;
}

}  // namespace

std::string to_string(OutputFormat format) { return format == OutputFormat::csv ? "csv" : "json"; }

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw std::invalid_argument("format: expected csv or json, got '" + std::string(name) + "'");
}

std::vector<double> SweepAxis::values() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    out.push_back(count == 1 ? start : start + (stop - start) * i / (count - 1));
  }
  return out;
}

void SweepConfig::validate() const {
  const double bound = GateErrorParams::kFirstOrderBound;
  auto check = [](const SweepAxis& a, const std::string& field) {
    if (a.count < 1) throw ParseError(field, "count must be >= 1");
    if (!std::isfinite(a.start) || !std::isfinite(a.stop)) throw ParseError(field, "bounds must be finite");
  };
  check(epsilon, "epsilon");
  check(delta, "delta");
  check(lambda, "lambda");
  if (std::max(std::abs(delta.start), std::abs(delta.stop)) > bound) {
    throw ParseError("delta", "outside the first-order bound 0.2");
  }
  if (mode == GateMode::first_order && std::max(std::abs(epsilon.start), std::abs(epsilon.stop)) > bound) {
    throw ParseError("epsilon", "outside the first-order bound 0.2");
  }
  if (std::min(lambda.start, lambda.stop) < 0.0) throw ParseError("lambda", "must be >= 0");
  if (threads < 0) throw ParseError("threads", "must be >= 0");
}

SweepConfig parse_sweep_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("document", e.what());
  }
  if (!doc.is_object()) throw ParseError("document", "expected a JSON object");
  static const char* const kKnown[] = {"epsilon", "delta",  "lambda", "mode",   "model",
                                       "aggregation", "format", "output", "threads"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown)) {
      throw ParseError(key, "unknown field");
    }
  }
  SweepConfig config;
  config.epsilon = parse_axis(doc, "epsilon");
  config.delta = parse_axis(doc, "delta");
  config.lambda = parse_axis(doc, "lambda");
  config.mode = parse_enum(doc, "mode", config.mode, parse_gate_mode);
  config.model = parse_enum(doc, "model", config.model, parse_circuit_model);
  config.aggregation = parse_enum(doc, "aggregation", config.aggregation, parse_aggregation);
  config.format = parse_enum(doc, "format", config.format, parse_output_format);
  if (doc.contains("output")) {
    if (!doc.at("output").is_string()) throw ParseError("output", "expected a path string");
    config.output = doc.at("output").get<std::string>();
  }
  if (doc.contains("threads")) {
    if (!doc.at("threads").is_number_integer()) throw ParseError("threads", "expected an integer");
    config.threads = doc.at("threads").get<int>();
  }
  config.validate();
  return config;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("path", "cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_sweep_config(buffer.str());
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  config.validate();
  struct Point {
    double eps, delta, lambda;
  };
  std::vector<Point> points;
  for (double e : config.epsilon.values()) {
    for (double d : config.delta.values()) {
      for (double l : config.lambda.values()) points.push_back({e, d, l});
    }
  }
  std::vector<SweepRow> rows(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      rows[i] = evaluate_point(config, points[i].eps, points[i].delta, points[i].lambda);
    }
  };
  std::size_t n_threads = config.threads > 0 ? static_cast<std::size_t>(config.threads)
                                             : std::max(1U, std::thread::hardware_concurrency());
  n_threads = std::min(n_threads, points.size());
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  return rows;
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void write_sweep(std::ostream& out, const std::vector<SweepRow>& rows, OutputFormat format) {
  if (format == OutputFormat::csv) {
    out << kSweepCsvHeader << '\n';
    for (const auto& r : rows) {
      const double cells[] = {r.epsilon,
                              r.delta,
                              r.lambda,
                              r.report.total,
                              nan_if_missing(r.report.branches, 0),
                              nan_if_missing(r.report.branches, 1),
                              nan_if_missing(r.report.branches, 2),
                              nan_if_missing(r.report.branches, 3),
                              nan_if_missing(r.report.argmin, 0),
                              nan_if_missing(r.report.argmin, 1),
                              r.prediction,
                              r.residual};
      for (double c : cells) out << format_double(c) << ',';
      out << csv_field(r.status) << '\n';
    }
    return;
  }
  json doc = json::array();
  for (const auto& r : rows) {
    json branches = json::array();
    for (double b : r.report.branches) branches.push_back(number_or_null(b));
    doc.push_back({{"eps", r.epsilon},
                   {"delta", r.delta},
                   {"lambda", r.lambda},
                   {"fidelity_total", number_or_null(r.report.total)},
                   {"fidelity_branches", branches},
                   {"argmin_theta", number_or_null(nan_if_missing(r.report.argmin, 0))},
                   {"argmin_phi", number_or_null(nan_if_missing(r.report.argmin, 1))},
                   {"firstorder_prediction", r.prediction},
                   {"residual", number_or_null(r.residual)},
                   {"iterations", r.report.iterations},
                   {"simplex_size", r.report.simplex_size},
                   {"status", r.status}});
  }
  out << doc.dump(2) << '\n';
}

std::string holonomy_report(const LoopSpec& loop, OutputFormat format) {
  loop.validate();
  if (!loop.on_manifold()) {
    const double sigma = area(loop, loop.kind);
    if (format == OutputFormat::csv) return "area\n" + format_double(sigma) + '\n';
    const json doc = {{"loop", json::parse(serialize_loop_spec(loop))}, {"area", sigma}, {"matrix", nullptr}};
    return doc.dump(2) + '\n';
  }
  const HolonomyResult result = holonomy(loop);
  const std::optional<ClosedFormHolonomy> closed = closed_form_holonomy(loop);
  const Eigen::Index n = result.matrix.rows();

  if (format == OutputFormat::csv) {
    std::ostringstream out;
    out << "row,col,re,im,closed_re,closed_im,abs_diff,error_estimate,family\n";
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const Complex v = result.matrix(i, j);
        const Complex c = closed ? closed->matrix(i, j) : Complex(kNaN, kNaN);
        out << i << ',' << j << ',' << format_double(v.real()) << ',' << format_double(v.imag())
            << ',' << format_double(c.real()) << ',' << format_double(c.imag()) << ','
            << format_double(closed ? std::abs(v - c) : kNaN) << ','
            << format_double(result.error_estimate) << ',' << (closed ? closed->family : "") << '\n';
      }
    }
    return out.str();
  }

  auto matrix_json = [n](const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < n; ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < n; ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
      rows.push_back(row);
    }
    return rows;
  };
  json doc = {{"loop", json::parse(serialize_loop_spec(loop))},
              {"steps", result.steps},
              {"error_estimate", result.error_estimate},
              {"unitarity_error", unitarity_error(result.matrix)},
              {"matrix", matrix_json(result.matrix)},
              {"area", area(loop, loop.kind)}};
  if (closed) {
    doc["closed_form"] = {{"family", closed->family},
                          {"area", closed->area},
                          {"matrix", matrix_json(closed->matrix)},
                          {"max_abs_diff", max_norm(result.matrix - closed->matrix)}};
  } else {
    doc["closed_form"] = nullptr;
  }
  return doc.dump(2) + '\n';
}

}  // namespace holotel
