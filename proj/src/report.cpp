#include "bksef/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cstdint>
#include <json.hpp>

#include <limits>
#include <stdexcept>

#include "bksef/cost.hpp"

namespace bksef {

using nlohmann::json;
using nlohmann::ordered_json;

ReportFormat parse_format(std::string_view name) {
  if (name == "text") return ReportFormat::text;
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  throw std::invalid_argument(fmt::format(
      "unknown format '{}': valid formats are text, csv, json", name));
}

namespace {

[[noreturn]] void schema_error(const std::string& path,
                               const std::string& what) {
  throw SpecError(fmt::format("descriptor error at {}: {}", path, what));
}

const json& require_object(const json& node, const std::string& path) {
  if (!node.is_object()) schema_error(path, "expected an object");
  return node;
}

void reject_unknown_keys(const json& object, const std::string& path,
                         std::initializer_list<std::string_view> allowed) {
  for (const auto& item : object.items()) {
    bool known = false;
    for (std::string_view key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) schema_error(path, fmt::format("unknown key '{}'", item.key()));
  }
}

const json& require_key(const json& object, std::string_view key,
                        const std::string& path) {
  auto it = object.find(key);
  if (it == object.end())
    schema_error(path, fmt::format("missing required key '{}'", key));
  return *it;
}

int get_int(const json& object, std::string_view key,
            const std::string& path) {
  const json& node = require_key(object, key, path);
  const std::string key_path = fmt::format("{}.{}", path, key);
  if (!node.is_number_integer())
    schema_error(key_path, "expected an integer");
  const auto value = node.get<std::int64_t>();
  if (value < std::numeric_limits<int>::min() ||
      value > std::numeric_limits<int>::max())
    schema_error(key_path, "integer out of range");
  return static_cast<int>(value);
}

std::string get_string(const json& object, std::string_view key,
                       const std::string& path) {
  const json& node = require_key(object, key, path);
  if (!node.is_string())
    schema_error(fmt::format("{}.{}", path, key), "expected a string");
  return node.get<std::string>();
}

// "kernel" is either a positive odd integer or the string "free".
std::optional<int> get_kernel(const json& object, const std::string& path) {
  const json& node = require_key(object, "kernel", path);
  const std::string key_path = path + ".kernel";
  if (node.is_string()) {
    if (node.get<std::string>() != "free")
      schema_error(key_path, "expected an integer or the string \"free\"");
    return std::nullopt;
  }
  if (!node.is_number_integer())
    schema_error(key_path, "expected an integer or the string \"free\"");
  const auto value = node.get<std::int64_t>();
  if (value < std::numeric_limits<int>::min() ||
      value > std::numeric_limits<int>::max())
    schema_error(key_path, "integer out of range");
  return static_cast<int>(value);
}

}  // namespace

NetworkSpec parse_spec(const std::string& document) {
  json root;
  try {
    root = json::parse(document);
  } catch (const json::parse_error& error) {
    throw SpecError(fmt::format("descriptor syntax error: {}", error.what()));
  }

  require_object(root, "$");
  reject_unknown_keys(root, "$", {"name", "input", "layers"});

  NetworkSpec spec;
  spec.name = get_string(root, "name", "$");

  const json& input = require_object(require_key(root, "input", "$"),
                                     "$.input");
  reject_unknown_keys(input, "$.input", {"height", "width", "channels"});
  spec.input_height = get_int(input, "height", "$.input");
  spec.input_width = get_int(input, "width", "$.input");
  spec.input_channels = get_int(input, "channels", "$.input");

  const json& layers = require_key(root, "layers", "$");
  if (!layers.is_array()) schema_error("$.layers", "expected an array");
  spec.layers.reserve(layers.size());
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const std::string path = fmt::format("$.layers[{}]", i);
    const json& node = require_object(layers[i], path);
    reject_unknown_keys(node, path,
                        {"id", "kind", "in_channels", "out_channels", "kernel",
                         "stride"});
    LayerSpec layer;
    layer.id = get_string(node, "id", path);
    const std::string kind_name = get_string(node, "kind", path);
    const auto kind = op_kind_from_string(kind_name);
    if (!kind)
      schema_error(path + ".kind",
                   fmt::format("unknown layer kind '{}'", kind_name));
    layer.kind = *kind;
    layer.in_channels = get_int(node, "in_channels", path);
    layer.out_channels = get_int(node, "out_channels", path);
    layer.kernel = get_kernel(node, path);
    layer.stride = get_int(node, "stride", path);
    spec.layers.push_back(std::move(layer));
  }

  if (auto violations = validate_spec(spec); !violations.empty())
    throw SpecError(std::move(violations));
  return spec;
}

std::string emit_spec(const NetworkSpec& spec) {
  ordered_json root;
  root["name"] = spec.name;
  root["input"] = {{"height", spec.input_height},
                   {"width", spec.input_width},
                   {"channels", spec.input_channels}};
  root["layers"] = ordered_json::array();
  for (const LayerSpec& layer : spec.layers) {
    ordered_json node;
    node["id"] = layer.id;
    node["kind"] = to_string(layer.kind);
    node["in_channels"] = layer.in_channels;
    node["out_channels"] = layer.out_channels;
    if (layer.kernel)
      node["kernel"] = *layer.kernel;
    else
      node["kernel"] = "free";
    node["stride"] = layer.stride;
    root["layers"].push_back(std::move(node));
  }
  return root.dump(2) + "\n";
}

AnalysisReport analyze_network(const NetworkSpec& spec) {
  AnalysisReport report;
  report.spec = spec;
  report.shapes = propagate_shapes(spec);
  report.rf = receptive_field_trace(spec);
  report.cost = network_cost(spec);
  return report;
}

namespace {

double percent_delta(std::uint64_t a, std::uint64_t b) {
  if (a == 0) return b == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  return (static_cast<double>(b) - static_cast<double>(a)) /
         static_cast<double>(a) * 100.0;
}

}  // namespace

ComparisonReport compare(const NetworkSpec& a, const NetworkSpec& b) {
  const CostReport cost_a = network_cost(a);
  const CostReport cost_b = network_cost(b);
  const RfTrace rf_a = receptive_field_trace(a);
  const RfTrace rf_b = receptive_field_trace(b);

  ComparisonReport report;
  report.name_a = a.name;
  report.name_b = b.name;
  report.total_macs_a = cost_a.total_macs;
  report.total_macs_b = cost_b.total_macs;
  report.mac_delta_percent = percent_delta(cost_a.total_macs,
                                           cost_b.total_macs);
  report.total_params_a = cost_a.total_params;
  report.total_params_b = cost_b.total_params;
  report.param_delta_percent =
      percent_delta(cost_a.total_params, cost_b.total_params);
  report.model_size_bytes_a = cost_a.model_size_bytes;
  report.model_size_bytes_b = cost_b.model_size_bytes;
  report.final_rf_a = rf_a.back().receptive_field;
  report.final_rf_b = rf_b.back().receptive_field;

  const std::size_t positions = std::max(a.layers.size(), b.layers.size());
  for (std::size_t i = 0; i < positions; ++i) {
    const LayerSpec* la = i < a.layers.size() ? &a.layers[i] : nullptr;
    const LayerSpec* lb = i < b.layers.size() ? &b.layers[i] : nullptr;
    const bool differs = !la || !lb || la->kind != lb->kind ||
                         la->kernel != lb->kernel;
    if (!differs) continue;
    LayerDiff diff;
    diff.position = i;
    if (la) {
      diff.id_a = la->id;
      diff.kind_a = to_string(la->kind);
      diff.kernel_a = la->kernel;
    }
    if (lb) {
      diff.id_b = lb->id;
      diff.kind_b = to_string(lb->kind);
      diff.kernel_b = lb->kernel;
    }
    report.kernel_diffs.push_back(std::move(diff));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Emitters
// ---------------------------------------------------------------------------

namespace {

// Full-precision, shortest round-trip representation for csv cells.
std::string csv_double(double value) { return fmt::format("{}", value); }

// csv cells never contain commas; free-text cells get sanitized.
std::string csv_sanitize(std::string text) {
  for (char& c : text) {
    if (c == ',') c = ';';
    if (c == '\n' || c == '\r') c = ' ';
  }
  return text;
}

std::string kernel_label(const std::optional<int>& kernel) {
  return kernel ? fmt::format("{}", *kernel) : std::string("free");
}

std::string join_ints(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += fmt::format("{}", values[i]);
  }
  return out;
}

// --- analyze ---------------------------------------------------------------

std::string analysis_text(const AnalysisReport& r) {
  std::string out;
  out += fmt::format("# bksef analyze: {}\n", r.spec.name);
  out += fmt::format("# input: {}x{}x{}\n", r.spec.input_height,
                     r.spec.input_width, r.spec.input_channels);
  out += fmt::format("{:<14} {:<15} {:>6} {:>7} {:>14} {:>6} {:>6} {:>14} "
                     "{:>12}\n",
                     "layer", "kind", "k", "stride", "out", "rf", "jump",
                     "macs", "params");
  for (std::size_t i = 0; i < r.spec.layers.size(); ++i) {
    const LayerSpec& layer = r.spec.layers[i];
    const ShapeEntry& shape = r.shapes[i];
    const RfEntry& rf = r.rf[i];
    const LayerCost& cost = r.cost.layers[i];
    out += fmt::format(
        "{:<14} {:<15} {:>6} {:>7} {:>14} {:>6} {:>6} {:>14} {:>12}\n",
        layer.id, to_string(layer.kind), kernel_label(layer.kernel),
        layer.stride,
        fmt::format("{}x{}x{}", shape.out_height, shape.out_width,
                    shape.out_channels),
        rf.receptive_field, rf.jump, cost.macs, cost.params);
  }
  out += fmt::format("total MACs: {}\n", r.cost.total_macs);
  out += fmt::format("total params: {}\n", r.cost.total_params);
  out += fmt::format("model size: {} bytes ({} bytes/weight)\n",
                     r.cost.model_size_bytes, r.cost.bytes_per_weight);
  out += fmt::format("final receptive field: {}\n",
                     r.rf.back().receptive_field);
  return out;
}

std::string analysis_csv(const AnalysisReport& r) {
  std::string out =
      "layer,kind,kernel,stride,out_height,out_width,out_channels,"
      "receptive_field,jump,macs,params\n";
  for (std::size_t i = 0; i < r.spec.layers.size(); ++i) {
    const LayerSpec& layer = r.spec.layers[i];
    const ShapeEntry& shape = r.shapes[i];
    const RfEntry& rf = r.rf[i];
    const LayerCost& cost = r.cost.layers[i];
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", layer.id,
                       to_string(layer.kind), kernel_label(layer.kernel),
                       layer.stride, shape.out_height, shape.out_width,
                       shape.out_channels, rf.receptive_field, rf.jump,
                       cost.macs, cost.params);
  }
  out += fmt::format("total,,,,,,,,,{},{}\n", r.cost.total_macs,
                     r.cost.total_params);
  return out;
}

std::string analysis_json(const AnalysisReport& r) {
  ordered_json root;
  root["spec"] = r.spec.name;
  root["input"] = {{"height", r.spec.input_height},
                   {"width", r.spec.input_width},
                   {"channels", r.spec.input_channels}};
  root["layers"] = ordered_json::array();
  for (std::size_t i = 0; i < r.spec.layers.size(); ++i) {
    const LayerSpec& layer = r.spec.layers[i];
    const ShapeEntry& shape = r.shapes[i];
    const RfEntry& rf = r.rf[i];
    const LayerCost& cost = r.cost.layers[i];
    ordered_json node;
    node["id"] = layer.id;
    node["kind"] = to_string(layer.kind);
    if (layer.kernel)
      node["kernel"] = *layer.kernel;
    else
      node["kernel"] = "free";
    node["stride"] = layer.stride;
    node["out"] = {{"height", shape.out_height},
                   {"width", shape.out_width},
                   {"channels", shape.out_channels}};
    node["receptive_field"] = rf.receptive_field;
    node["jump"] = rf.jump;
    node["macs"] = cost.macs;
    node["params"] = cost.params;
    root["layers"].push_back(std::move(node));
  }
  root["total_macs"] = r.cost.total_macs;
  root["total_params"] = r.cost.total_params;
  root["model_size_bytes"] = r.cost.model_size_bytes;
  root["bytes_per_weight"] = r.cost.bytes_per_weight;
  root["final_receptive_field"] = r.rf.back().receptive_field;
  return root.dump(2) + "\n";
}

// --- optimize ----------------------------------------------------------

std::string optimize_text(const OptimizationResult& r,
                          const OptimizationConfig& c) {
  std::string out;
  out += fmt::format("# bksef optimize: {}\n", r.optimized_spec.name);
  out += fmt::format(
      "# weights: lambda1={:.6g} lambda2={:.6g} lambda3={:.6g}\n",
      c.weights.info, c.weights.accuracy, c.weights.cost);
  out += fmt::format("# gamma: {:.6g}\n", c.gamma.value);
  out += fmt::format("# candidates: {}\n", join_ints(c.candidates.values()));
  for (const ScoreTable& table : r.decisions) {
    out += fmt::format("\nlayer {}\n", table.layer_id);
    out += fmt::format("  {:>3} {:>12} {:>12} {:>16} {:>9} {:>9} {:>9} "
                       "{:>10}\n",
                       "k", "raw_info", "raw_acc", "raw_cost", "norm_info",
                       "norm_acc", "norm_cost", "score");
    for (const ScoreRow& row : table.rows) {
      const char* marker = row.kernel == table.chosen_kernel ? "*" : " ";
      out += fmt::format(
          "{} {:>3} {:>12.6g} {:>12.6g} {:>16.6g} {:>9.6g} {:>9.6g} {:>9.6g} "
          "{:>10.6g}\n",
          marker, row.kernel, row.raw_info, row.raw_accuracy, row.raw_cost,
          row.norm_info, row.norm_accuracy, row.norm_cost, row.score);
    }
    out += fmt::format("  chosen k: {}\n", table.chosen_kernel);
  }
  out += "\n";
  if (!r.repair_log.empty()) {
    out += fmt::format("budget repair ({} step{}):\n", r.repair_log.size(),
                       r.repair_log.size() == 1 ? "" : "s");
    for (const RepairStep& step : r.repair_log) {
      out += fmt::format(
          "  {}: k{} -> k{} (score loss {:.6g}, saves {} MACs)\n",
          step.layer_id, step.from_kernel, step.to_kernel, step.score_loss,
          step.macs_saved);
    }
  }
  out += fmt::format("total MACs before repair: {}\n",
                     r.total_macs_before_repair);
  out += fmt::format("total MACs after repair: {}\n",
                     r.total_macs_after_repair);
  out += "resolved kernels:\n";
  for (const LayerSpec& layer : r.optimized_spec.layers)
    out += fmt::format("  {:<14} {:<15} k{}\n", layer.id,
                       to_string(layer.kind), kernel_label(layer.kernel));
  return out;
}

std::string optimize_csv(const OptimizationResult& r,
                         const OptimizationConfig& c) {
  std::string out =
      "layer,k,raw_info,raw_accuracy,raw_cost,norm_info,norm_accuracy,"
      "norm_cost,score,chosen,lambda1,lambda2,lambda3,gamma\n";
  for (const ScoreTable& table : r.decisions) {
    for (const ScoreRow& row : table.rows) {
      out += fmt::format(
          "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", table.layer_id,
          row.kernel, csv_double(row.raw_info), csv_double(row.raw_accuracy),
          csv_double(row.raw_cost), csv_double(row.norm_info),
          csv_double(row.norm_accuracy), csv_double(row.norm_cost),
          csv_double(row.score), row.kernel == table.chosen_kernel ? 1 : 0,
          csv_double(c.weights.info), csv_double(c.weights.accuracy),
          csv_double(c.weights.cost), csv_double(c.gamma.value));
    }
  }
  return out;
}

ordered_json spec_to_json(const NetworkSpec& spec) {
  // Reuse the canonical emitter so the embedded descriptor matches
  // emit_spec byte-for-byte after dump.
  return ordered_json::parse(emit_spec(spec));
}

std::string optimize_json(const OptimizationResult& r,
                          const OptimizationConfig& c) {
  ordered_json root;
  root["spec"] = r.optimized_spec.name;
  root["weights"] = {{"lambda1", c.weights.info},
                     {"lambda2", c.weights.accuracy},
                     {"lambda3", c.weights.cost}};
  root["gamma"] = c.gamma.value;
  root["candidates"] = c.candidates.values();
  if (c.budget_macs) root["budget_macs"] = *c.budget_macs;
  if (c.rf_floor) root["rf_floor"] = *c.rf_floor;
  root["decisions"] = ordered_json::array();
  for (const ScoreTable& table : r.decisions) {
    ordered_json node;
    node["layer"] = table.layer_id;
    node["rows"] = ordered_json::array();
    for (const ScoreRow& row : table.rows) {
      node["rows"].push_back({{"k", row.kernel},
                              {"raw_info", row.raw_info},
                              {"raw_accuracy", row.raw_accuracy},
                              {"raw_cost", row.raw_cost},
                              {"norm_info", row.norm_info},
                              {"norm_accuracy", row.norm_accuracy},
                              {"norm_cost", row.norm_cost},
                              {"score", row.score}});
    }
    node["chosen"] = table.chosen_kernel;
    root["decisions"].push_back(std::move(node));
  }
  root["repair_log"] = ordered_json::array();
  for (const RepairStep& step : r.repair_log) {
    root["repair_log"].push_back({{"layer", step.layer_id},
                                  {"from", step.from_kernel},
                                  {"to", step.to_kernel},
                                  {"score_loss", step.score_loss},
                                  {"macs_saved", step.macs_saved}});
  }
  root["total_macs_before_repair"] = r.total_macs_before_repair;
  root["total_macs_after_repair"] = r.total_macs_after_repair;
  root["optimized_spec"] = spec_to_json(r.optimized_spec);
  return root.dump(2) + "\n";
}

// --- compare ---------------------------------------------------------------

std::string diff_side(const std::string& id, const std::string& kind,
                      const std::optional<int>& kernel) {
  if (id.empty() && kind.empty()) return "(absent)";
  return fmt::format("{} {} k{}", id, kind, kernel_label(kernel));
}

std::string compare_text(const ComparisonReport& r) {
  std::string out;
  out += fmt::format("# bksef compare: {} vs {}\n", r.name_a, r.name_b);
  out += fmt::format("{:<22} {:>16} {:>16} {:>12}\n", "metric", "a", "b",
                     "delta");
  out += fmt::format("{:<22} {:>16} {:>16} {:>11.6g}%\n", "total MACs",
                     r.total_macs_a, r.total_macs_b, r.mac_delta_percent);
  out += fmt::format("{:<22} {:>16} {:>16} {:>11.6g}%\n", "total params",
                     r.total_params_a, r.total_params_b,
                     r.param_delta_percent);
  out += fmt::format("{:<22} {:>16} {:>16} {:>11.6g}%\n", "model size bytes",
                     r.model_size_bytes_a, r.model_size_bytes_b,
                     r.param_delta_percent);
  out += fmt::format("{:<22} {:>16} {:>16}\n", "final receptive field",
                     r.final_rf_a, r.final_rf_b);
  if (r.kernel_diffs.empty()) {
    out += "layer diffs: none\n";
  } else {
    out += "layer diffs:\n";
    for (const LayerDiff& diff : r.kernel_diffs) {
      out += fmt::format("  [{}] {} -> {}\n", diff.position,
                         diff_side(diff.id_a, diff.kind_a, diff.kernel_a),
                         diff_side(diff.id_b, diff.kind_b, diff.kernel_b));
    }
  }
  return out;
}

std::string compare_csv(const ComparisonReport& r) {
  std::string out = "metric,a,b,delta_percent\n";
  out += fmt::format("name,{},{},\n", csv_sanitize(r.name_a),
                     csv_sanitize(r.name_b));
  out += fmt::format("total_macs,{},{},{}\n", r.total_macs_a, r.total_macs_b,
                     csv_double(r.mac_delta_percent));
  out += fmt::format("total_params,{},{},{}\n", r.total_params_a,
                     r.total_params_b, csv_double(r.param_delta_percent));
  out += fmt::format("model_size_bytes,{},{},{}\n", r.model_size_bytes_a,
                     r.model_size_bytes_b, csv_double(r.param_delta_percent));
  out += fmt::format("final_receptive_field,{},{},\n", r.final_rf_a,
                     r.final_rf_b);
  for (const LayerDiff& diff : r.kernel_diffs) {
    out += fmt::format("layer[{}],{},{},\n", diff.position,
                       csv_sanitize(diff_side(diff.id_a, diff.kind_a,
                                              diff.kernel_a)),
                       csv_sanitize(diff_side(diff.id_b, diff.kind_b,
                                              diff.kernel_b)));
  }
  return out;
}

std::string compare_json(const ComparisonReport& r) {
  ordered_json root;
  root["a"] = r.name_a;
  root["b"] = r.name_b;
  root["total_macs"] = {{"a", r.total_macs_a},
                        {"b", r.total_macs_b},
                        {"delta_percent", r.mac_delta_percent}};
  root["total_params"] = {{"a", r.total_params_a},
                          {"b", r.total_params_b},
                          {"delta_percent", r.param_delta_percent}};
  root["model_size_bytes"] = {{"a", r.model_size_bytes_a},
                              {"b", r.model_size_bytes_b},
                              {"delta_percent", r.param_delta_percent}};
  root["final_receptive_field"] = {{"a", r.final_rf_a}, {"b", r.final_rf_b}};
  root["layer_diffs"] = ordered_json::array();
  for (const LayerDiff& diff : r.kernel_diffs) {
    ordered_json node;
    node["position"] = diff.position;
    ordered_json side_a, side_b;
    if (!diff.id_a.empty() || !diff.kind_a.empty()) {
      side_a["id"] = diff.id_a;
      side_a["kind"] = diff.kind_a;
      if (diff.kernel_a)
        side_a["kernel"] = *diff.kernel_a;
      else
        side_a["kernel"] = "free";
    }
    if (!diff.id_b.empty() || !diff.kind_b.empty()) {
      side_b["id"] = diff.id_b;
      side_b["kind"] = diff.kind_b;
      if (diff.kernel_b)
        side_b["kernel"] = *diff.kernel_b;
      else
        side_b["kernel"] = "free";
    }
    node["a"] = std::move(side_a);
    node["b"] = std::move(side_b);
    root["layer_diffs"].push_back(std::move(node));
  }
  return root.dump(2) + "\n";
}

// --- sweep -------------------------------------------------------------

// Column layout for sweep tables: free-layer ids come from the first row
// that produced a selection (all rows share the same underlying spec).
std::vector<std::string> sweep_layer_columns(const SweepResult& r) {
  for (const SweepRow& row : r.rows) {
    if (row.error.empty()) {
      std::vector<std::string> ids;
      ids.reserve(row.chosen.size());
      for (const auto& [id, kernel] : row.chosen) ids.push_back(id);
      return ids;
    }
  }
  return {};
}

std::string sweep_csv(const SweepResult& r) {
  const std::vector<std::string> ids = sweep_layer_columns(r);
  std::string out = "lambda1,lambda2,lambda3,gamma";
  for (const std::string& id : ids) out += fmt::format(",k_{}", id);
  out += ",total_macs,total_params,error\n";
  for (const SweepRow& row : r.rows) {
    out += fmt::format("{},{},{},{}", csv_double(row.weights.info),
                       csv_double(row.weights.accuracy),
                       csv_double(row.weights.cost), csv_double(row.gamma));
    if (row.error.empty()) {
      for (const auto& [id, kernel] : row.chosen)
        out += fmt::format(",{}", kernel);
      out += fmt::format(",{},{},\n", row.total_macs, row.total_params);
    } else {
      for (std::size_t i = 0; i < ids.size(); ++i) out += ",";
      out += fmt::format(",,,{}\n", csv_sanitize(row.error));
    }
  }
  return out;
}

std::string sweep_text(const SweepResult& r) {
  const std::vector<std::string> ids = sweep_layer_columns(r);
  std::string out = fmt::format("# bksef sweep: {} point{}\n", r.rows.size(),
                                r.rows.size() == 1 ? "" : "s");
  out += fmt::format("{:>9} {:>9} {:>9} {:>7}", "lambda1", "lambda2",
                     "lambda3", "gamma");
  for (const std::string& id : ids) out += fmt::format(" {:>10}", "k_" + id);
  out += fmt::format(" {:>14} {:>12}  {}\n", "total_macs", "total_params",
                     "error");
  for (const SweepRow& row : r.rows) {
    out += fmt::format("{:>9.6g} {:>9.6g} {:>9.6g} {:>7.6g}",
                       row.weights.info, row.weights.accuracy,
                       row.weights.cost, row.gamma);
    if (row.error.empty()) {
      for (const auto& [id, kernel] : row.chosen)
        out += fmt::format(" {:>10}", kernel);
      out += fmt::format(" {:>14} {:>12}\n", row.total_macs,
                         row.total_params);
    } else {
      for (std::size_t i = 0; i < ids.size(); ++i)
        out += fmt::format(" {:>10}", "-");
      out += fmt::format(" {:>14} {:>12}  {}\n", "-", "-", row.error);
    }
  }
  return out;
}

std::string sweep_json(const SweepResult& r) {
  ordered_json root;
  root["rows"] = ordered_json::array();
  for (const SweepRow& row : r.rows) {
    ordered_json node;
    node["weights"] = {{"lambda1", row.weights.info},
                       {"lambda2", row.weights.accuracy},
                       {"lambda3", row.weights.cost}};
    node["gamma"] = row.gamma;
    if (row.error.empty()) {
      ordered_json chosen;
      for (const auto& [id, kernel] : row.chosen) chosen[id] = kernel;
      node["chosen"] = std::move(chosen);
      node["total_macs"] = row.total_macs;
      node["total_params"] = row.total_params;
    } else {
      node["error"] = row.error;
    }
    root["rows"].push_back(std::move(node));
  }
  return root.dump(2) + "\n";
}

}  // namespace

std::string emit_report(const AnalysisReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::text: return analysis_text(report);
    case ReportFormat::csv: return analysis_csv(report);
    case ReportFormat::json: return analysis_json(report);
  }
  throw std::logic_error("unreachable report format");
}

std::string emit_report(const OptimizationResult& result,
                        const OptimizationConfig& config,
                        ReportFormat format) {
  switch (format) {
    case ReportFormat::text: return optimize_text(result, config);
    case ReportFormat::csv: return optimize_csv(result, config);
    case ReportFormat::json: return optimize_json(result, config);
  }
  throw std::logic_error("unreachable report format");
}

std::string emit_report(const ComparisonReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::text: return compare_text(report);
    case ReportFormat::csv: return compare_csv(report);
    case ReportFormat::json: return compare_json(report);
  }
  throw std::logic_error("unreachable report format");
}

std::string emit_report(const SweepResult& result, ReportFormat format) {
  switch (format) {
    case ReportFormat::text: return sweep_text(result);
    case ReportFormat::csv: return sweep_csv(result);
    case ReportFormat::json: return sweep_json(result);
  }
  throw std::logic_error("unreachable report format");
}

}  // namespace bksef
