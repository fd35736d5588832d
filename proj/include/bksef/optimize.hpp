// Layer-by-layer kernel selection across a network, with optional hard
// MAC budgets, deployment weight presets and sensitivity sweeps.
#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "bksef/cost.hpp"
#include "bksef/score.hpp"

namespace bksef {

struct OptimizationConfig {
  KernelCandidates candidates = KernelCandidates::default_set();
  ObjectiveWeights weights;
  GammaParam gamma;
  std::optional<std::uint64_t> budget_macs;
  std::optional<std::int64_t> rf_floor;  // minimum final receptive field
};

// Raised when a hard constraint cannot be met (budget below the cheapest
// assignment, receptive-field floor out of reach).
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(std::string message,
                           std::optional<std::uint64_t> minimum_macs = {})
      : std::runtime_error(std::move(message)), minimum_macs_(minimum_macs) {}

  // Cheapest achievable network MACs, set for budget infeasibility.
  std::optional<std::uint64_t> minimum_macs() const { return minimum_macs_; }

 private:
  std::optional<std::uint64_t> minimum_macs_;
};

struct RepairStep {
  std::string layer_id;
  int from_kernel = 0;
  int to_kernel = 0;
  double score_loss = 0;
  std::uint64_t macs_saved = 0;
};

struct RepairOutcome {
  std::vector<int> kernels;  // final kernel per decision, decision order
  std::vector<RepairStep> log;
  std::uint64_t total_macs = 0;
};

struct OptimizationResult {
  NetworkSpec optimized_spec;          // all free kernels resolved
  std::vector<ScoreTable> decisions;   // one per free layer, network order
  std::uint64_t total_macs_before_repair = 0;
  std::uint64_t total_macs_after_repair = 0;
  std::vector<RepairStep> repair_log;
};

// Scores each free conv layer independently (same padding keeps shapes
// k-independent, so the unconstrained per-layer argmax is exact), then
// applies budget repair if needed and checks the receptive-field floor.
// Layers with concrete kernels are never modified.
// Throws SpecError on invalid specs, InfeasibleError on unmeetable
// constraints.
OptimizationResult optimize_network(const NetworkSpec& spec,
                                    const OptimizationConfig& config);

// Greedy downgrade loop: starting from each table's chosen kernel, apply
// the single-step downgrade with the smallest score-loss per MAC saved
// until fixed_macs plus the selected candidates' MACs fits the budget.
// Ties resolve to the earliest decision. Throws InfeasibleError when the
// budget is unreachable even with every decision at its smallest kernel.
RepairOutcome apply_budget_repair(const std::vector<ScoreTable>& decisions,
                                  std::uint64_t fixed_macs,
                                  std::uint64_t budget_macs);

// Deployment presets: "balanced" (1/3, 1/3, 1/3), "cloud"
// (0.40, 0.45, 0.15), "edge" (0.20, 0.25, 0.55).
// Throws std::invalid_argument for unknown names, listing the valid ones.
ObjectiveWeights profile_weights(const std::string& name);

struct SweepRow {
  ObjectiveWeights weights;
  double gamma = 0;
  // (layer id, chosen kernel) per free layer, network order; empty on error
  std::vector<std::pair<std::string, int>> chosen;
  std::uint64_t total_macs = 0;
  std::uint64_t total_params = 0;
  std::string error;  // non-empty marks a failed grid point
};

struct SweepResult {
  std::vector<SweepRow> rows;  // lexicographic grid order
};

// One unconstrained optimize_network run per (weights, gamma) grid point.
// Per-point failures become row-level error markers instead of aborting.
SweepResult sweep(const NetworkSpec& spec,
                  const std::vector<ObjectiveWeights>& weight_grid,
                  const std::vector<double>& gamma_grid,
                  const KernelCandidates& candidates);

}  // namespace bksef
