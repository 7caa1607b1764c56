#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "holotel/gates.hpp"
#include "holotel/teleport.hpp"

namespace holotel {

enum class OutputFormat { csv, json };
std::string to_string(OutputFormat format);
OutputFormat parse_output_format(std::string_view name);

/// Evenly spaced values start..stop inclusive; count == 1 yields start.
struct SweepAxis {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;
  std::vector<double> values() const;
};

/// Sweep documents are JSON objects:
///
///   {
///     "epsilon": {"start": 0, "stop": 0.02, "count": 3},
///     "delta": 0,
///     "lambda": {"start": 0, "stop": 1, "count": 2},
///     "mode": "first-order",
///     "model": "gatewise-linear",
///     "aggregation": "common-payload",
///     "format": "csv",
///     "output": "table.csv",
///     "threads": 4
///   }
///
/// A bare number is an axis with count 1. Only the axes are required.
struct SweepConfig {
  SweepAxis epsilon;
  SweepAxis delta;
  SweepAxis lambda;
  GateMode mode = GateMode::first_order;
  CircuitModel model = CircuitModel::gatewise_linear;
  Aggregation aggregation = Aggregation::common_payload;
  OutputFormat format = OutputFormat::csv;
  std::optional<std::filesystem::path> output;
  int threads = 0;  ///< 0: hardware concurrency

  /// Throws ParseError naming the offending field.
  void validate() const;
};

SweepConfig parse_sweep_config(std::string_view text);
SweepConfig load_sweep_config(const std::filesystem::path& path);

struct SweepRow {
  double epsilon = 0.0;
  double delta = 0.0;
  double lambda = 0.0;
  FidelityReport report;
  double prediction = 0.0;
  double residual = 0.0;
  std::string status;  ///< "ok", "not-converged: ..." or "error: ..."
};

/// One row per (eps, delta, lambda) point, eps outermost and lambda
/// innermost, independent of the worker count.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

inline constexpr std::string_view kSweepCsvHeader =
    "eps,delta,lambda,fidelity_total,fidelity_00,fidelity_01,fidelity_10,fidelity_11,"
    "argmin_theta,argmin_phi,firstorder_prediction,residual,status";

void write_sweep(std::ostream& out, const std::vector<SweepRow>& rows, OutputFormat format);

/// "%.17g"
std::string format_double(double value);

/// Holonomy of `loop` with its closed form when the loop matches a known
/// family, as CSV (one row per matrix entry) or JSON.
std::string holonomy_report(const LoopSpec& loop, OutputFormat format);

}  // namespace holotel
