#include "bksef/score.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "bksef/cost.hpp"

namespace bksef {

KernelCandidates KernelCandidates::of(std::vector<int> kernels) {
  if (kernels.empty()) {
    throw std::invalid_argument("candidate set must be non-empty");
  }
  std::sort(kernels.begin(), kernels.end());
  for (std::size_t i = 0; i < kernels.size(); ++i) {
    const int k = kernels[i];
    if (k < 1) {
      throw std::invalid_argument(
          fmt::format("candidate kernels must be >= 1, got {}", k));
    }
    if (k % 2 == 0) {
      throw std::invalid_argument(
          fmt::format("candidate kernels must be odd, got {}", k));
    }
    if (i > 0 && kernels[i - 1] == k) {
      throw std::invalid_argument(
          fmt::format("duplicate candidate kernel {}", k));
    }
  }
  return KernelCandidates(std::move(kernels));
}

KernelCandidates KernelCandidates::default_set() {
  return KernelCandidates({1, 3, 5, 7, 9});
}

void require_valid(const ObjectiveWeights& weights) {
  if (weights.info < 0 || weights.accuracy < 0 || weights.cost < 0) {
    throw std::invalid_argument("objective weights must be non-negative");
  }
  if (weights.info == 0 && weights.accuracy == 0 && weights.cost == 0) {
    throw std::invalid_argument("at least one objective weight must be > 0");
  }
  if (!std::isfinite(weights.info) || !std::isfinite(weights.accuracy) ||
      !std::isfinite(weights.cost)) {
    throw std::invalid_argument("objective weights must be finite");
  }
}

void require_valid(GammaParam gamma) {
  if (!(gamma.value > 0) || !std::isfinite(gamma.value)) {
    throw std::invalid_argument(
        fmt::format("gamma must be positive, got {}", gamma.value));
  }
}

double info_gain(int kernel) {
  if (kernel < 1) {
    throw std::domain_error(
        fmt::format("info_gain requires kernel >= 1, got {}", kernel));
  }
  return std::log1p(static_cast<double>(kernel));
}

double accuracy_gain(int kernel, GammaParam gamma) {
  if (kernel < 1) {
    throw std::domain_error(
        fmt::format("accuracy_gain requires kernel >= 1, got {}", kernel));
  }
  if (!(gamma.value > 0)) {
    throw std::domain_error(
        fmt::format("gamma must be positive, got {}", gamma.value));
  }
  return -std::expm1(-gamma.value * static_cast<double>(kernel));
}

std::vector<double> min_max_normalize(std::span<const double> series) {
  if (series.empty()) {
    throw std::invalid_argument("cannot normalize an empty series");
  }
  for (double x : series) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("cannot normalize non-finite values");
    }
  }
  const auto [min_it, max_it] =
      std::minmax_element(series.begin(), series.end());
  const double lo = *min_it;
  const double hi = *max_it;
  std::vector<double> out(series.size(), 0.0);
  if (hi == lo) {
    return out;  // constant column degenerates to all zeros
  }
  const double range = hi - lo;
  for (std::size_t i = 0; i < series.size(); ++i) {
    out[i] = (series[i] - lo) / range;
  }
  return out;
}

ScoreTable score_from_raw(std::string layer_id,
                          const KernelCandidates& candidates,
                          std::span<const double> raw_info,
                          std::span<const double> raw_accuracy,
                          std::span<const double> raw_cost,
                          const ObjectiveWeights& weights) {
  require_valid(weights);
  const std::size_t n = candidates.size();
  if (raw_info.size() != n || raw_accuracy.size() != n ||
      raw_cost.size() != n) {
    throw std::invalid_argument(
        "raw columns must have one value per candidate");
  }
  const auto norm_info = min_max_normalize(raw_info);
  const auto norm_accuracy = min_max_normalize(raw_accuracy);
  const auto norm_cost = min_max_normalize(raw_cost);

  ScoreTable table;
  table.layer_id = std::move(layer_id);
  table.rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ScoreRow row;
    row.kernel = candidates.values()[i];
    row.raw_info = raw_info[i];
    row.raw_accuracy = raw_accuracy[i];
    row.raw_cost = raw_cost[i];
    row.norm_info = norm_info[i];
    row.norm_accuracy = norm_accuracy[i];
    row.norm_cost = norm_cost[i];
    row.score = weights.info * row.norm_info +
                weights.accuracy * row.norm_accuracy -
                weights.cost * row.norm_cost;
    table.rows.push_back(row);
  }
  table.chosen_kernel = select_kernel(table);
  return table;
}

ScoreTable score_candidates(const LayerSpec& layer, TensorShape in_shape,
                            const KernelCandidates& candidates,
                            const ObjectiveWeights& weights, GammaParam gamma,
                            const AccuracyTable* empirical_accuracy) {
  require_valid(gamma);
  if (layer.kind != OpKind::standard_conv &&
      layer.kind != OpKind::depthwise_conv &&
      layer.kind != OpKind::dwsep_conv) {
    throw SpecError(fmt::format("layer '{}' ({}) has no selectable kernel",
                                layer.id, to_string(layer.kind)));
  }
  std::vector<double> raw_info;
  std::vector<double> raw_accuracy;
  std::vector<double> raw_cost;
  raw_info.reserve(candidates.size());
  raw_accuracy.reserve(candidates.size());
  raw_cost.reserve(candidates.size());
  for (int k : candidates.values()) {
    raw_info.push_back(info_gain(k));
    if (empirical_accuracy != nullptr) {
      const auto it = empirical_accuracy->find(k);
      if (it == empirical_accuracy->end()) {
        throw std::invalid_argument(fmt::format(
            "empirical accuracy table is missing candidate {}", k));
      }
      raw_accuracy.push_back(it->second);
    } else {
      raw_accuracy.push_back(accuracy_gain(k, gamma));
    }
    LayerSpec candidate = layer;
    candidate.kernel = k;
    raw_cost.push_back(
        static_cast<double>(layer_macs(candidate, in_shape)));
  }
  return score_from_raw(layer.id, candidates, raw_info, raw_accuracy,
                        raw_cost, weights);
}

int select_kernel(const ScoreTable& table) {
  if (table.rows.empty()) {
    throw std::invalid_argument("cannot select from an empty score table");
  }
  // rows are in ascending kernel order, so a strict > keeps the smallest
  // kernel on ties
  const ScoreRow* best = &table.rows.front();
  for (const auto& row : table.rows) {
    if (row.score > best->score) {
      best = &row;
    }
  }
  return best->kernel;
}

}  // namespace bksef
