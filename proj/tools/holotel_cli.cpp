#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "holotel/acceptance.hpp"
#include "holotel/loop_spec_io.hpp"
#include "holotel/noise.hpp"
#include "holotel/sweep.hpp"
#include "json.hpp"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;

struct GlobalFlags {
  std::optional<int> steps;
  std::optional<std::string> mode;
  std::optional<std::string> format;
  std::optional<std::string> out;
};

void emit(const std::string& text, const std::optional<std::string>& path) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream file(*path);
  if (!file) throw holotel::ParseError("out", "cannot write '" + *path + "'");
  file << text;
}

int cmd_holonomy(const std::string& spec_path, const GlobalFlags& flags) {
  holotel::LoopSpec loop = holotel::load_loop_spec(spec_path);
  if (flags.steps) {
    loop.steps = *flags.steps;
    loop.validate();
  }
  const auto format = holotel::parse_output_format(flags.format.value_or("json"));
  emit(holotel::holonomy_report(loop, format), flags.out);
  return 0;
}

int cmd_sweep(const std::string& config_path, const GlobalFlags& flags) {
  holotel::SweepConfig config = holotel::load_sweep_config(config_path);
  if (flags.mode) config.mode = holotel::parse_gate_mode(*flags.mode);
  if (flags.format) config.format = holotel::parse_output_format(*flags.format);
  if (flags.out) config.output = *flags.out;
  config.validate();
  const auto rows = holotel::run_sweep(config);
  std::ostringstream text;
  holotel::write_sweep(text, rows, config.format);
  emit(text.str(), config.output ? std::optional<std::string>(config.output->string()) : std::nullopt);
  return 0;
}

int cmd_coeffs(const std::optional<std::string>& which, double lambda, const GlobalFlags& flags) {
  holotel::TeleportOptions options;
  if (flags.mode) options.mode = holotel::parse_gate_mode(*flags.mode);
  if (!(lambda >= 0.0)) throw holotel::ParseError("lambda", "must be >= 0");
  std::vector<holotel::Coefficient> list;
  if (which) {
    list.push_back(holotel::parse_coefficient(*which));
  } else {
    list = {holotel::Coefficient::epsilon, holotel::Coefficient::delta};
  }
  const auto format = holotel::parse_output_format(flags.format.value_or("csv"));
  nlohmann::json doc = nlohmann::json::array();
  std::ostringstream csv;
  csv << "which,lambda,slope,closed_form\n";
  for (auto c : list) {
    const double slope = lambda == 0.0
                             ? holotel::first_order_coeffs(c, 1e-4, holotel::SlopeScheme::forward_richardson, options)
                             : holotel::dissipative_first_order_coeffs(c, lambda, 1e-4,
                                                                       holotel::SlopeScheme::forward_richardson, options);
    const double d = c == holotel::Coefficient::delta ? 1.0 : 0.0;
    const double closed = holotel::first_order_prediction(d, 1.0 - d, lambda) -
                          holotel::first_order_prediction(0.0, 0.0, lambda);
    csv << holotel::to_string(c) << ',' << holotel::format_double(lambda) << ','
        << holotel::format_double(slope) << ',' << holotel::format_double(closed) << '\n';
    doc.push_back({{"which", holotel::to_string(c)}, {"lambda", lambda}, {"slope", slope}, {"closed_form", closed}});
  }
  emit(format == holotel::OutputFormat::csv ? csv.str() : doc.dump(2) + "\n", flags.out);
  return 0;
}

int cmd_verify(const std::vector<std::string>& ids, const GlobalFlags& flags) {
  holotel::AcceptanceContext context;
  if (flags.steps) context.holonomy_steps = *flags.steps;
  const auto results = holotel::run_acceptance(context, ids);
  std::ostringstream text;
  holotel::print_acceptance(text, results);
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed ? 1 : 0;
  text << passed << '/' << results.size() << " criteria passed\n";
  emit(text.str(), flags.out);
  return passed == results.size() ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holonomic gate and teleportation simulator"};
  app.require_subcommand(1);
  GlobalFlags flags;
  app.add_option("--steps", flags.steps, "Steps per loop edge")->check(CLI::PositiveNumber);
  app.add_option("--mode", flags.mode, "Gate mode")->check(CLI::IsMember({"first-order", "exact-area"}));
  app.add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", flags.out, "Output path (stdout when omitted)");

  std::string spec_path, config_path;
  std::optional<std::string> which;
  double lambda = 0.0;
  std::vector<std::string> criteria;

  auto* holonomy = app.add_subcommand("holonomy", "Integrate the holonomy of a loop spec");
  holonomy->add_option("spec", spec_path, "Loop-spec file")->required();
  auto* sweep = app.add_subcommand("sweep", "Fidelity table over an (eps, delta, lambda) grid");
  sweep->add_option("config", config_path, "Sweep config file")->required();
  auto* coeffs = app.add_subcommand("coeffs", "First-order fidelity coefficients");
  coeffs->add_option("--which", which, "eps or delta")->check(CLI::IsMember({"eps", "delta"}));
  coeffs->add_option("--lambda", lambda, "Dissipation strength");
  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  verify->add_option("--criterion", criteria, "Criterion ids to run (all when omitted)");
  for (auto* sub : {holonomy, sweep, coeffs, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (*holonomy) return cmd_holonomy(spec_path, flags);
    if (*sweep) return cmd_sweep(config_path, flags);
    if (*coeffs) return cmd_coeffs(which, lambda, flags);
    return cmd_verify(criteria, flags);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
}
