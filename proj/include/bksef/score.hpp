// Kernel-size scoring: term functions, min-max normalization over a
// candidate set, composite weighted scores and argmax selection.
#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "bksef/arch.hpp"

namespace bksef {

// Ordered set of odd candidate kernel sizes.
class KernelCandidates {
 public:
  // Sorts ascending; throws std::invalid_argument on empty input,
  // duplicates, even values or values < 1.
  static KernelCandidates of(std::vector<int> kernels);
  static KernelCandidates default_set();  // {1, 3, 5, 7, 9}

  const std::vector<int>& values() const { return kernels_; }
  std::size_t size() const { return kernels_.size(); }
  int smallest() const { return kernels_.front(); }
  int largest() const { return kernels_.back(); }

  bool operator==(const KernelCandidates&) const = default;

 private:
  explicit KernelCandidates(std::vector<int> kernels)
      : kernels_(std::move(kernels)) {}
  std::vector<int> kernels_;
};

// Trade-off weights for the information, accuracy and cost terms.
// Each must be >= 0 and at least one > 0.
struct ObjectiveWeights {
  double info = 1.0 / 3.0;
  double accuracy = 1.0 / 3.0;
  double cost = 1.0 / 3.0;

  bool operator==(const ObjectiveWeights&) const = default;
};

// Shape parameter of the saturating accuracy curve 1 - exp(-gamma * k).
struct GammaParam {
  double value = 0.5;

  bool operator==(const GammaParam&) const = default;
};

// Throws std::invalid_argument when weights are negative or all zero /
// gamma is not positive.
void require_valid(const ObjectiveWeights& weights);
void require_valid(GammaParam gamma);

struct ScoreRow {
  int kernel = 0;
  double raw_info = 0;
  double raw_accuracy = 0;
  double raw_cost = 0;  // full-layer MACs at this kernel
  double norm_info = 0;
  double norm_accuracy = 0;
  double norm_cost = 0;
  double score = 0;  // w_info*norm_info + w_acc*norm_accuracy - w_cost*norm_cost
};

struct ScoreTable {
  std::string layer_id;
  std::vector<ScoreRow> rows;  // ascending kernel order
  int chosen_kernel = 0;       // argmax score, ties broken toward smaller k
};

// Optional user-supplied per-kernel accuracy estimates that replace the
// modeled curve before normalization. Must cover every candidate.
using AccuracyTable = std::map<int, double>;

// Modeled information gain ln(1 + k): increasing, concave.
// Throws std::domain_error for k < 1.
double info_gain(int kernel);

// Modeled accuracy gain 1 - exp(-gamma * k) in (0, 1), increasing in k.
// Throws std::domain_error for k < 1 or gamma <= 0.
double accuracy_gain(int kernel, GammaParam gamma);

// (x - min) / (max - min) elementwise; an all-equal series maps to all
// zeros. Throws std::invalid_argument on empty or non-finite input.
std::vector<double> min_max_normalize(std::span<const double> series);

// Builds a score table from pre-computed raw columns (one value per
// candidate, candidate order). Exposed so raw columns can be transformed
// independently of how they were produced.
ScoreTable score_from_raw(std::string layer_id,
                          const KernelCandidates& candidates,
                          std::span<const double> raw_info,
                          std::span<const double> raw_accuracy,
                          std::span<const double> raw_cost,
                          const ObjectiveWeights& weights);

// Scores every candidate kernel for one conv layer at a known input
// shape: raw info/accuracy from the term functions (or the empirical
// table), raw cost from layer_macs with the candidate substituted.
// Throws SpecError for layer kinds without a selectable kernel.
ScoreTable score_candidates(const LayerSpec& layer, TensorShape in_shape,
                            const KernelCandidates& candidates,
                            const ObjectiveWeights& weights, GammaParam gamma,
                            const AccuracyTable* empirical_accuracy = nullptr);

// The kernel with maximal score; ties resolve to the smallest kernel.
// Throws std::invalid_argument on an empty table.
int select_kernel(const ScoreTable& table);

}  // namespace bksef
