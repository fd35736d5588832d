#include "bksef/cost.hpp"

#include <fmt/format.h>

namespace bksef {

namespace {

int concrete_kernel(const LayerSpec& layer) {
  if (layer.kernel_free()) {
    throw SpecError(fmt::format(
        "cannot compute cost for unresolved kernel (layer '{}' is free)",
        layer.id));
  }
  return *layer.kernel;
}

using u64 = std::uint64_t;

}  // namespace

std::uint64_t layer_macs(const LayerSpec& layer, TensorShape in_shape) {
  if (in_shape.height < 1 || in_shape.width < 1 || in_shape.channels < 1) {
    throw SpecError(fmt::format("layer '{}': input shape must be positive",
                                layer.id));
  }
  if (layer.kind == OpKind::max_pool || layer.kind == OpKind::identity) {
    return 0;
  }
  const u64 k = static_cast<u64>(concrete_kernel(layer));
  const u64 out_h = static_cast<u64>(ceil_div(in_shape.height, layer.stride));
  const u64 out_w = static_cast<u64>(ceil_div(in_shape.width, layer.stride));
  const u64 c_in = static_cast<u64>(layer.in_channels);
  const u64 c_out = static_cast<u64>(layer.out_channels);
  const u64 positions = out_h * out_w;
  switch (layer.kind) {
    case OpKind::standard_conv:
      return k * k * positions * c_in * c_out;
    case OpKind::depthwise_conv:
      return k * k * positions * c_in;
    case OpKind::pointwise_conv:
      return positions * c_in * c_out;
    case OpKind::dwsep_conv:
      return k * k * positions * c_in + positions * c_in * c_out;
    default:
      return 0;
  }
}

std::uint64_t layer_params(const LayerSpec& layer) {
  if (layer.kind == OpKind::max_pool || layer.kind == OpKind::identity) {
    return 0;
  }
  const u64 k = static_cast<u64>(concrete_kernel(layer));
  const u64 c_in = static_cast<u64>(layer.in_channels);
  const u64 c_out = static_cast<u64>(layer.out_channels);
  switch (layer.kind) {
    case OpKind::standard_conv:
      return k * k * c_in * c_out;
    case OpKind::depthwise_conv:
      return k * k * c_in;
    case OpKind::pointwise_conv:
      return c_in * c_out;
    case OpKind::dwsep_conv:
      return k * k * c_in + c_in * c_out;
    default:
      return 0;
  }
}

CostReport network_cost(const NetworkSpec& spec, int bytes_per_weight) {
  const ShapeTrace trace = propagate_shapes(spec);
  CostReport report;
  report.bytes_per_weight = bytes_per_weight;
  report.layers.reserve(spec.layers.size());
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    const auto& layer = spec.layers[i];
    LayerCost cost;
    cost.layer_id = layer.id;
    cost.macs = layer_macs(layer, layer_input_shape(spec, trace, i));
    cost.params = layer_params(layer);
    report.total_macs += cost.macs;
    report.total_params += cost.params;
    report.layers.push_back(std::move(cost));
  }
  report.model_size_bytes =
      report.total_params * static_cast<u64>(bytes_per_weight);
  return report;
}

std::uint64_t oracle_macs_bruteforce(const LayerSpec& layer,
                                     TensorShape in_shape) {
  if (layer.kind == OpKind::max_pool || layer.kind == OpKind::identity) {
    return 0;  // no multiplies to enumerate
  }
  const u64 work = static_cast<u64>(in_shape.height) *
                   static_cast<u64>(in_shape.width) *
                   static_cast<u64>(layer.in_channels) *
                   static_cast<u64>(layer.out_channels);
  if (work > 10'000'000ULL) {
    throw SpecError(fmt::format(
        "oracle refuses layer '{}': shape product {} exceeds 10^7", layer.id,
        work));
  }
  const int k = concrete_kernel(layer);
  u64 count = 0;
  // walking the input grid with the stride enumerates exactly
  // ceil(in / stride) output positions per axis
  for (int y = 0; y < in_shape.height; y += layer.stride) {
    for (int x = 0; x < in_shape.width; x += layer.stride) {
      if (layer.kind == OpKind::standard_conv ||
          layer.kind == OpKind::dwsep_conv) {
        // depthwise pass of dwsep, or the full standard stencil
        if (layer.kind == OpKind::dwsep_conv) {
          for (int c = 0; c < layer.in_channels; ++c) {
            for (int ky = 0; ky < k; ++ky) {
              for (int kx = 0; kx < k; ++kx) {
                ++count;
              }
            }
          }
        } else {
          for (int oc = 0; oc < layer.out_channels; ++oc) {
            for (int ic = 0; ic < layer.in_channels; ++ic) {
              for (int ky = 0; ky < k; ++ky) {
                for (int kx = 0; kx < k; ++kx) {
                  ++count;
                }
              }
            }
          }
        }
      }
      if (layer.kind == OpKind::depthwise_conv) {
        for (int c = 0; c < layer.in_channels; ++c) {
          for (int ky = 0; ky < k; ++ky) {
            for (int kx = 0; kx < k; ++kx) {
              ++count;
            }
          }
        }
      }
      if (layer.kind == OpKind::pointwise_conv ||
          layer.kind == OpKind::dwsep_conv) {
        for (int oc = 0; oc < layer.out_channels; ++oc) {
          for (int ic = 0; ic < layer.in_channels; ++ic) {
            ++count;
          }
        }
      }
    }
  }
  return count;
}

}  // namespace bksef
