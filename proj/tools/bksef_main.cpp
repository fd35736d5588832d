// bksef command line front end.
//
// Subcommands:
//   analyze   shapes, receptive fields, MACs and params of a descriptor
//   optimize  resolve free kernels by scored selection
//   compare   baseline vs optimized cost/receptive-field deltas
//   sweep     re-run selection over a weight/gamma grid
//
// Exit codes: 0 success, 1 usage or I/O error, 2 invalid descriptor,
// 3 infeasible constraint.
#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bksef/report.hpp"

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw UsageError(fmt::format("cannot open '{}' for reading", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw UsageError(fmt::format("error while reading '{}'", path));
  return buffer.str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out)
    throw UsageError(fmt::format("cannot open '{}' for writing", out_path));
  out << text;
  if (!out) throw UsageError(fmt::format("error while writing '{}'", out_path));
}

bksef::NetworkSpec load_spec(const std::string& path) {
  return bksef::parse_spec(read_file(path));
}

bksef::ReportFormat format_or_usage(const std::string& name) {
  try {
    return bksef::parse_format(name);
  } catch (const std::invalid_argument& error) {
    throw UsageError(error.what());
  }
}

// Parses "a,b,c" into three non-negative weights.
bksef::ObjectiveWeights parse_weights(const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t used = 0;
      const double value = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      values.push_back(value);
    } catch (const std::exception&) {
      throw UsageError(
          fmt::format("invalid weight '{}' in '{}'", item, text));
    }
  }
  if (values.size() != 3)
    throw UsageError(fmt::format(
        "--weights expects three comma-separated values, got '{}'", text));
  bksef::ObjectiveWeights weights{values[0], values[1], values[2]};
  try {
    bksef::require_valid(weights);
  } catch (const std::invalid_argument& error) {
    throw UsageError(error.what());
  }
  return weights;
}

bksef::KernelCandidates parse_candidates(const std::vector<int>& values) {
  try {
    return bksef::KernelCandidates::of(values);
  } catch (const std::invalid_argument& error) {
    throw UsageError(error.what());
  }
}

// Grid file: one "a,b,c" triple per line; blank lines and lines starting
// with '#' are ignored.
std::vector<bksef::ObjectiveWeights> parse_weight_grid(
    const std::string& path) {
  std::istringstream lines(read_file(path));
  std::vector<bksef::ObjectiveWeights> grid;
  std::string line;
  int line_number = 0;
  while (std::getline(lines, line)) {
    ++line_number;
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    const std::string trimmed = line.substr(begin, end - begin + 1);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    try {
      grid.push_back(parse_weights(trimmed));
    } catch (const UsageError& error) {
      throw UsageError(fmt::format("{}:{}: {}", path, line_number,
                                   error.what()));
    }
  }
  if (grid.empty())
    throw UsageError(fmt::format("grid file '{}' contains no weight triples",
                                 path));
  return grid;
}

bksef::GammaParam checked_gamma(double value) {
  bksef::GammaParam gamma{value};
  try {
    bksef::require_valid(gamma);
  } catch (const std::invalid_argument& error) {
    throw UsageError(error.what());
  }
  return gamma;
}

// Default location for the resolved descriptor when --out is a file:
// sibling "<stem>.optimized.json".
std::string default_emit_path(const std::string& out_path) {
  std::filesystem::path path(out_path);
  path.replace_extension();
  return path.string() + ".optimized.json";
}

int run(int argc, char** argv) {
  CLI::App app{
      "bksef: balanced kernel size selection for convolutional networks"};
  app.require_subcommand(1);
  argv = app.ensure_utf8(argv);

  struct OutputFlags {
    std::string format;
    std::string out;
  };
  auto add_output_flags = [](CLI::App* cmd, OutputFlags& flags,
                             const std::string& fmt_default) {
    flags.format = fmt_default;
    cmd->add_option("--format", flags.format,
                    "output format: text, csv or json");
    cmd->add_option("--out", flags.out, "write the report to this file");
  };

  // analyze
  std::string analyze_spec;
  OutputFlags analyze_out;
  CLI::App* analyze =
      app.add_subcommand("analyze", "report shapes, receptive fields, costs");
  analyze->add_option("spec", analyze_spec, "descriptor file")->required();
  add_output_flags(analyze, analyze_out, "text");

  // optimize
  std::string optimize_spec;
  std::string profile_name;
  std::string weights_text;
  double gamma_value = bksef::GammaParam{}.value;
  std::vector<int> candidate_values;
  std::optional<std::uint64_t> budget_macs;
  std::optional<std::int64_t> rf_floor;
  std::string emit_spec_path;
  CLI::App* optimize =
      app.add_subcommand("optimize", "resolve free kernels by scoring");
  optimize->add_option("spec", optimize_spec, "descriptor file")->required();
  CLI::Option* profile_opt = optimize->add_option(
      "--profile", profile_name, "weight profile: balanced, cloud or edge");
  optimize->add_option("--weights", weights_text,
                       "objective weights as lambda1,lambda2,lambda3")
      ->excludes(profile_opt);
  optimize->add_option("--gamma", gamma_value,
                       "accuracy saturation rate (> 0)");
  optimize->add_option("--candidates", candidate_values,
                       "candidate kernel sizes (odd, e.g. 1 3 5 7 9)");
  optimize->add_option("--budget-macs", budget_macs,
                       "total MAC budget; triggers greedy repair");
  optimize->add_option("--rf-floor", rf_floor,
                       "minimum final receptive field");
  optimize->add_option("--emit-spec", emit_spec_path,
                       "write the resolved descriptor to this file");
  OutputFlags optimize_out;
  add_output_flags(optimize, optimize_out, "text");

  // compare
  std::string compare_a, compare_b;
  CLI::App* compare =
      app.add_subcommand("compare", "baseline vs optimized deltas");
  compare->add_option("baseline", compare_a, "baseline descriptor file")
      ->required();
  compare->add_option("candidate", compare_b, "candidate descriptor file")
      ->required();
  OutputFlags compare_out;
  add_output_flags(compare, compare_out, "text");

  // sweep
  std::string sweep_spec;
  std::string lambda_grid_path;
  std::vector<double> gamma_grid{bksef::GammaParam{}.value};
  std::vector<int> sweep_candidates;
  CLI::App* sweep =
      app.add_subcommand("sweep", "selection over a weight/gamma grid");
  sweep->add_option("spec", sweep_spec, "descriptor file")->required();
  sweep->add_option("--lambda-grid", lambda_grid_path,
                    "file of lambda1,lambda2,lambda3 lines")
      ->required();
  sweep->add_option("--gamma-grid", gamma_grid,
                    "gamma values (default: 0.5)");
  sweep->add_option("--candidates", sweep_candidates,
                    "candidate kernel sizes (odd, e.g. 1 3 5 7 9)");
  OutputFlags sweep_out;
  add_output_flags(sweep, sweep_out, "csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    return app.exit(error);  // prints help or error; 0 for --help
  }

  if (*analyze) {
    const bksef::ReportFormat format = format_or_usage(analyze_out.format);
    const bksef::NetworkSpec spec = load_spec(analyze_spec);
    write_output(bksef::emit_report(bksef::analyze_network(spec), format),
                 analyze_out.out);
    return 0;
  }

  if (*optimize) {
    const bksef::ReportFormat format = format_or_usage(optimize_out.format);
    const bksef::NetworkSpec spec = load_spec(optimize_spec);
    bksef::OptimizationConfig config;
    if (!profile_name.empty()) {
      try {
        config.weights = bksef::profile_weights(profile_name);
      } catch (const std::invalid_argument& error) {
        throw UsageError(error.what());
      }
    }
    if (!weights_text.empty()) config.weights = parse_weights(weights_text);
    config.gamma = checked_gamma(gamma_value);
    if (!candidate_values.empty())
      config.candidates = parse_candidates(candidate_values);
    config.budget_macs = budget_macs;
    config.rf_floor = rf_floor;

    const bksef::OptimizationResult result =
        bksef::optimize_network(spec, config);
    write_output(bksef::emit_report(result, config, format),
                 optimize_out.out);

    std::string resolved_path = emit_spec_path;
    if (resolved_path.empty() && !optimize_out.out.empty())
      resolved_path = default_emit_path(optimize_out.out);
    if (!resolved_path.empty())
      write_output(bksef::emit_spec(result.optimized_spec), resolved_path);
    return 0;
  }

  if (*compare) {
    const bksef::ReportFormat format = format_or_usage(compare_out.format);
    const bksef::NetworkSpec a = load_spec(compare_a);
    const bksef::NetworkSpec b = load_spec(compare_b);
    write_output(bksef::emit_report(bksef::compare(a, b), format),
                 compare_out.out);
    return 0;
  }

  if (*sweep) {
    const bksef::ReportFormat format = format_or_usage(sweep_out.format);
    const bksef::NetworkSpec spec = load_spec(sweep_spec);
    const std::vector<bksef::ObjectiveWeights> weight_grid =
        parse_weight_grid(lambda_grid_path);
    for (double value : gamma_grid) checked_gamma(value);
    bksef::KernelCandidates candidates =
        sweep_candidates.empty() ? bksef::KernelCandidates::default_set()
                                 : parse_candidates(sweep_candidates);
    const bksef::SweepResult result =
        bksef::sweep(spec, weight_grid, gamma_grid, candidates);
    write_output(bksef::emit_report(result, format), sweep_out.out);
    return 0;
  }

  throw UsageError("no subcommand selected");
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& error) {
    fmt::print(stderr, "bksef: {}\n", error.what());
    return 1;
  } catch (const bksef::InfeasibleError& error) {
    fmt::print(stderr, "bksef: {}\n", error.what());
    return 3;
  } catch (const bksef::SpecError& error) {
    fmt::print(stderr, "bksef: {}\n", error.what());
    return 2;
  } catch (const std::exception& error) {
    fmt::print(stderr, "bksef: {}\n", error.what());
    return 1;
  }
}
