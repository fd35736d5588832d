// Descriptor parsing, report emission and baseline-vs-optimized
// comparison.
//
// Descriptor files are JSON documents with a strict schema:
//   {
//     "name": "...",
//     "input": {"height": H, "width": W, "channels": C},
//     "layers": [
//       {"id": "...", "kind": "standard_conv", "in_channels": N,
//        "out_channels": M, "kernel": 3 | "free", "stride": S}
//     ]
//   }
// Unknown keys and wrong-typed fields are hard errors.
#pragma once

#include <string>
#include <string_view>

#include "bksef/optimize.hpp"

namespace bksef {

enum class ReportFormat { text, csv, json };

// Throws std::invalid_argument for unknown names.
ReportFormat parse_format(std::string_view name);

// Parses and validates a descriptor document. Throws SpecError with
// location info on syntax errors, schema violations and invariant
// violations.
NetworkSpec parse_spec(const std::string& document);

// Canonical descriptor document for a spec; parse_spec(emit_spec(s)) == s.
std::string emit_spec(const NetworkSpec& spec);

struct AnalysisReport {
  NetworkSpec spec;
  ShapeTrace shapes;
  RfTrace rf;
  CostReport cost;
};

// Shape trace, receptive fields and costs in one pass. Requires concrete
// kernels.
AnalysisReport analyze_network(const NetworkSpec& spec);

struct LayerDiff {
  std::size_t position = 0;
  // empty id marks a layer missing on that side
  std::string id_a, id_b;
  std::string kind_a, kind_b;
  std::optional<int> kernel_a, kernel_b;
};

struct ComparisonReport {
  std::string name_a, name_b;
  std::uint64_t total_macs_a = 0, total_macs_b = 0;
  double mac_delta_percent = 0;  // negative = b is smaller
  std::uint64_t total_params_a = 0, total_params_b = 0;
  double param_delta_percent = 0;
  std::uint64_t model_size_bytes_a = 0, model_size_bytes_b = 0;
  std::int64_t final_rf_a = 0, final_rf_b = 0;
  std::vector<LayerDiff> kernel_diffs;  // positions where kind/kernel differ
};

// Totals via network_cost and receptive_field_trace; per-layer kernel
// diff aligned by position. Both specs must be valid with concrete
// kernels.
ComparisonReport compare(const NetworkSpec& a, const NetworkSpec& b);

// Report emitters. Text renders aligned tables with 6 significant
// digits; csv and json carry full precision and are stable-ordered.
// Identical inputs produce byte-identical output.
std::string emit_report(const AnalysisReport& report, ReportFormat format);
std::string emit_report(const OptimizationResult& result,
                        const OptimizationConfig& config, ReportFormat format);
std::string emit_report(const ComparisonReport& report, ReportFormat format);
std::string emit_report(const SweepResult& result, ReportFormat format);

}  // namespace bksef
