// Exact multiply-accumulate and parameter accounting for layers and
// networks. "FLOPs" in reports means MACs (one multiply-accumulate = 1).
#pragma once

#include <cstdint>
#include <vector>

#include "bksef/arch.hpp"

namespace bksef {

struct LayerCost {
  std::string layer_id;
  std::uint64_t macs = 0;
  std::uint64_t params = 0;
};

struct CostReport {
  std::vector<LayerCost> layers;
  std::uint64_t total_macs = 0;
  std::uint64_t total_params = 0;
  std::uint64_t model_size_bytes = 0;  // total_params * bytes_per_weight
  int bytes_per_weight = 4;
};

// MACs of one layer at the given input shape, using same-padding output
// dims. Per op kind:
//   standard_conv:  k^2 * H_out * W_out * C_in * C_out
//   depthwise_conv: k^2 * H_out * W_out * C_in
//   pointwise_conv:       H_out * W_out * C_in * C_out
//   dwsep_conv:     depthwise term + pointwise term
//   max_pool / identity: 0
// Throws SpecError on a free kernel.
std::uint64_t layer_macs(const LayerSpec& layer, TensorShape in_shape);

// Weight count of one layer. Bias terms, batch norm and activations are
// excluded. Throws SpecError on a free kernel.
std::uint64_t layer_params(const LayerSpec& layer);

// Per-layer costs from propagated shapes plus exact integer totals.
// Throws SpecError on invalid specs or free kernels.
CostReport network_cost(const NetworkSpec& spec, int bytes_per_weight = 4);

// Counts MACs by explicit enumeration of output positions, channels and
// kernel taps. For tests: refuses shapes with H*W*C_in*C_out > 10^7.
std::uint64_t oracle_macs_bruteforce(const LayerSpec& layer,
                                     TensorShape in_shape);

}  // namespace bksef
