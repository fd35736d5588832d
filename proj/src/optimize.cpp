#include "bksef/optimize.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace bksef {

namespace {

using u64 = std::uint64_t;

// raw_cost values originate from integer MAC counts, so the cast is exact
u64 row_macs(const ScoreRow& row) { return static_cast<u64>(row.raw_cost); }

std::size_t row_index_of(const ScoreTable& table, int kernel) {
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (table.rows[i].kernel == kernel) return i;
  }
  throw std::logic_error(
      fmt::format("kernel {} not present in score table for '{}'", kernel,
                  table.layer_id));
}

std::int64_t final_receptive_field(const NetworkSpec& spec) {
  return receptive_field_trace(spec).back().receptive_field;
}

}  // namespace

RepairOutcome apply_budget_repair(const std::vector<ScoreTable>& decisions,
                                  std::uint64_t fixed_macs,
                                  std::uint64_t budget_macs) {
  RepairOutcome outcome;
  std::vector<std::size_t> current;  // row index per decision
  outcome.total_macs = fixed_macs;
  for (const auto& table : decisions) {
    const std::size_t idx = row_index_of(table, table.chosen_kernel);
    current.push_back(idx);
    outcome.total_macs += row_macs(table.rows[idx]);
  }

  while (outcome.total_macs > budget_macs) {
    // best single-step downgrade: minimum score loss per MAC saved,
    // ties toward the earliest layer
    std::size_t best = decisions.size();
    double best_ratio = 0;
    for (std::size_t d = 0; d < decisions.size(); ++d) {
      const std::size_t idx = current[d];
      if (idx == 0) continue;  // already at the smallest candidate
      const auto& rows = decisions[d].rows;
      const double score_loss = rows[idx].score - rows[idx - 1].score;
      const u64 macs_saved = row_macs(rows[idx]) - row_macs(rows[idx - 1]);
      const double ratio = score_loss / static_cast<double>(macs_saved);
      if (best == decisions.size() || ratio < best_ratio) {
        best = d;
        best_ratio = ratio;
      }
    }
    if (best == decisions.size()) {
      throw InfeasibleError(
          fmt::format("budget of {} MACs is unreachable; minimum achievable "
                      "is {} MACs",
                      budget_macs, outcome.total_macs),
          outcome.total_macs);
    }
    const auto& rows = decisions[best].rows;
    const std::size_t idx = current[best];
    RepairStep step;
    step.layer_id = decisions[best].layer_id;
    step.from_kernel = rows[idx].kernel;
    step.to_kernel = rows[idx - 1].kernel;
    step.score_loss = rows[idx].score - rows[idx - 1].score;
    step.macs_saved = row_macs(rows[idx]) - row_macs(rows[idx - 1]);
    outcome.total_macs -= step.macs_saved;
    outcome.log.push_back(std::move(step));
    current[best] = idx - 1;
  }

  outcome.kernels.reserve(decisions.size());
  for (std::size_t d = 0; d < decisions.size(); ++d) {
    outcome.kernels.push_back(decisions[d].rows[current[d]].kernel);
  }
  return outcome;
}

OptimizationResult optimize_network(const NetworkSpec& spec,
                                    const OptimizationConfig& config) {
  require_valid(config.weights);
  require_valid(config.gamma);
  if (auto violations = validate_spec(spec); !violations.empty()) {
    throw SpecError(std::move(violations));
  }
  const ShapeTrace trace = propagate_shapes(spec);

  OptimizationResult result;
  result.optimized_spec = spec;

  std::vector<std::size_t> free_layers;
  u64 fixed_macs = 0;
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    const auto& layer = spec.layers[i];
    const TensorShape in_shape = layer_input_shape(spec, trace, i);
    if (layer.kernel_free()) {
      free_layers.push_back(i);
      result.decisions.push_back(score_candidates(
          layer, in_shape, config.candidates, config.weights, config.gamma));
    } else {
      fixed_macs += layer_macs(layer, in_shape);
    }
  }

  u64 chosen_macs = 0;
  u64 min_macs = 0;
  for (const auto& table : result.decisions) {
    chosen_macs += row_macs(table.rows[row_index_of(table, table.chosen_kernel)]);
    min_macs += row_macs(table.rows.front());
  }
  result.total_macs_before_repair = fixed_macs + chosen_macs;
  result.total_macs_after_repair = result.total_macs_before_repair;

  std::vector<int> final_kernels;
  final_kernels.reserve(result.decisions.size());
  for (const auto& table : result.decisions) {
    final_kernels.push_back(table.chosen_kernel);
  }

  if (config.budget_macs.has_value()) {
    const u64 budget = *config.budget_macs;
    if (fixed_macs + min_macs > budget) {
      throw InfeasibleError(
          fmt::format("budget of {} MACs is infeasible; minimum achievable "
                      "is {} MACs",
                      budget, fixed_macs + min_macs),
          fixed_macs + min_macs);
    }
    if (result.total_macs_before_repair > budget) {
      RepairOutcome repaired =
          apply_budget_repair(result.decisions, fixed_macs, budget);
      final_kernels = repaired.kernels;
      result.repair_log = std::move(repaired.log);
      result.total_macs_after_repair = repaired.total_macs;
    }
  }

  for (std::size_t d = 0; d < free_layers.size(); ++d) {
    result.optimized_spec.layers[free_layers[d]].kernel = final_kernels[d];
  }

  if (config.rf_floor.has_value()) {
    const std::int64_t floor = *config.rf_floor;
    const std::int64_t achieved = final_receptive_field(result.optimized_spec);
    if (achieved < floor) {
      NetworkSpec widest = spec;
      for (std::size_t i : free_layers) {
        widest.layers[i].kernel = config.candidates.largest();
      }
      const std::int64_t best_possible = final_receptive_field(widest);
      if (best_possible < floor) {
        throw InfeasibleError(fmt::format(
            "receptive-field floor {} is unreachable: even the largest "
            "candidates reach only {}",
            floor, best_possible));
      }
      throw InfeasibleError(fmt::format(
          "selected kernels reach a final receptive field of {}, below the "
          "floor of {} (achievable: {})",
          achieved, floor, best_possible));
    }
  }

  return result;
}

ObjectiveWeights profile_weights(const std::string& name) {
  if (name == "balanced") return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  if (name == "cloud") return {0.40, 0.45, 0.15};
  if (name == "edge") return {0.20, 0.25, 0.55};
  throw std::invalid_argument(fmt::format(
      "unknown profile '{}': valid names are balanced, cloud, edge", name));
}

SweepResult sweep(const NetworkSpec& spec,
                  const std::vector<ObjectiveWeights>& weight_grid,
                  const std::vector<double>& gamma_grid,
                  const KernelCandidates& candidates) {
  if (weight_grid.empty() || gamma_grid.empty()) {
    throw std::invalid_argument("sweep grids must be non-empty");
  }
  SweepResult result;
  result.rows.reserve(weight_grid.size() * gamma_grid.size());
  for (const auto& weights : weight_grid) {
    for (double gamma : gamma_grid) {
      SweepRow row;
      row.weights = weights;
      row.gamma = gamma;
      try {
        OptimizationConfig config;
        config.candidates = candidates;
        config.weights = weights;
        config.gamma = GammaParam{gamma};
        OptimizationResult point = optimize_network(spec, config);
        for (const auto& table : point.decisions) {
          row.chosen.emplace_back(table.layer_id, table.chosen_kernel);
        }
        const CostReport cost = network_cost(point.optimized_spec);
        row.total_macs = cost.total_macs;
        row.total_params = cost.total_params;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

}  // namespace bksef
