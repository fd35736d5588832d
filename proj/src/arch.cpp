#include "bksef/arch.hpp"

#include <fmt/format.h>

#include <unordered_set>

namespace bksef {

std::string_view to_string(OpKind kind) {
  switch (kind) {
    case OpKind::standard_conv: return "standard_conv";
    case OpKind::depthwise_conv: return "depthwise_conv";
    case OpKind::pointwise_conv: return "pointwise_conv";
    case OpKind::dwsep_conv: return "dwsep_conv";
    case OpKind::max_pool: return "max_pool";
    case OpKind::identity: return "identity";
  }
  return "unknown";
}

std::optional<OpKind> op_kind_from_string(std::string_view name) {
  if (name == "standard_conv") return OpKind::standard_conv;
  if (name == "depthwise_conv") return OpKind::depthwise_conv;
  if (name == "pointwise_conv") return OpKind::pointwise_conv;
  if (name == "dwsep_conv") return OpKind::dwsep_conv;
  if (name == "max_pool") return OpKind::max_pool;
  if (name == "identity") return OpKind::identity;
  return std::nullopt;
}

namespace {

std::string join_violations(const std::vector<Violation>& violations) {
  std::string message = "invalid network spec:";
  for (const auto& v : violations) {
    message += "\n  ";
    if (!v.layer_id.empty()) {
      message += fmt::format("[{}] ", v.layer_id);
    }
    message += v.message;
  }
  return message;
}

bool kernel_may_be_free(OpKind kind) {
  return kind == OpKind::standard_conv || kind == OpKind::depthwise_conv ||
         kind == OpKind::dwsep_conv;
}

bool preserves_channels(OpKind kind) {
  return kind == OpKind::depthwise_conv || kind == OpKind::max_pool ||
         kind == OpKind::identity;
}

}  // namespace

SpecError::SpecError(std::vector<Violation> violations)
    : std::runtime_error(join_violations(violations)),
      violations_(std::move(violations)) {}

int rf_kernel_extent(const LayerSpec& layer) {
  switch (layer.kind) {
    case OpKind::pointwise_conv:
    case OpKind::identity:
      return 1;
    default:
      return layer.kernel.value();
  }
}

std::vector<Violation> validate_spec(const NetworkSpec& spec) {
  std::vector<Violation> out;
  auto flag = [&out](const std::string& layer_id, std::string message) {
    out.push_back({layer_id, std::move(message)});
  };

  if (spec.input_height < 1 || spec.input_width < 1) {
    flag("", fmt::format("input dimensions must be positive, got {}x{}",
                         spec.input_height, spec.input_width));
  }
  if (spec.input_channels < 1) {
    flag("", fmt::format("input channels must be positive, got {}",
                         spec.input_channels));
  }
  if (spec.layers.empty()) {
    flag("", "network must contain at least one layer");
    return out;
  }

  std::unordered_set<std::string> seen_ids;
  int expected_in = spec.input_channels;
  for (const auto& layer : spec.layers) {
    if (layer.id.empty()) {
      flag(layer.id, "layer id must be non-empty");
    } else if (!seen_ids.insert(layer.id).second) {
      flag(layer.id, "duplicate layer id");
    }
    if (layer.in_channels < 1) {
      flag(layer.id, fmt::format("in_channels must be positive, got {}",
                                 layer.in_channels));
    }
    if (layer.out_channels < 1) {
      flag(layer.id, fmt::format("out_channels must be positive, got {}",
                                 layer.out_channels));
    }
    if (layer.stride < 1) {
      flag(layer.id,
           fmt::format("stride must be positive, got {}", layer.stride));
    }

    if (layer.kernel.has_value()) {
      const int k = *layer.kernel;
      if (k < 1) {
        flag(layer.id, fmt::format("kernel must be >= 1, got {}", k));
      } else if (k % 2 == 0) {
        flag(layer.id, fmt::format("kernel must be odd, got {}", k));
      }
    } else if (!kernel_may_be_free(layer.kind)) {
      flag(layer.id, fmt::format("kernel 'free' is not allowed for {}",
                                 to_string(layer.kind)));
    }

    // pointwise is a fixed 1x1 channel mixer; identity carries no spatial
    // extent, so its kernel is pinned to 1 as well
    if ((layer.kind == OpKind::pointwise_conv ||
         layer.kind == OpKind::identity) &&
        layer.kernel.has_value() && *layer.kernel != 1) {
      flag(layer.id, fmt::format("{} requires kernel 1, got {}",
                                 to_string(layer.kind), *layer.kernel));
    }

    if (preserves_channels(layer.kind) &&
        layer.out_channels != layer.in_channels) {
      flag(layer.id,
           fmt::format("{} cannot change channel count ({} -> {})",
                       to_string(layer.kind), layer.in_channels,
                       layer.out_channels));
    }

    if (layer.in_channels != expected_in) {
      flag(layer.id,
           fmt::format("in_channels {} does not match preceding output {}",
                       layer.in_channels, expected_in));
    }
    expected_in = layer.out_channels;
  }
  return out;
}

ShapeTrace propagate_shapes(const NetworkSpec& spec) {
  if (auto violations = validate_spec(spec); !violations.empty()) {
    throw SpecError(std::move(violations));
  }
  ShapeTrace trace;
  trace.reserve(spec.layers.size());
  int height = spec.input_height;
  int width = spec.input_width;
  for (const auto& layer : spec.layers) {
    height = ceil_div(height, layer.stride);
    width = ceil_div(width, layer.stride);
    trace.push_back({layer.id, height, width, layer.out_channels});
  }
  return trace;
}

TensorShape layer_input_shape(const NetworkSpec& spec, const ShapeTrace& trace,
                              std::size_t index) {
  if (index == 0) {
    return {spec.input_height, spec.input_width, spec.input_channels};
  }
  const auto& prev = trace.at(index - 1);
  return {prev.out_height, prev.out_width, prev.out_channels};
}

RfTrace receptive_field_trace(const NetworkSpec& spec) {
  if (auto violations = validate_spec(spec); !violations.empty()) {
    throw SpecError(std::move(violations));
  }
  for (const auto& layer : spec.layers) {
    if (layer.kernel_free()) {
      throw SpecError(fmt::format(
          "cannot compute receptive field for unresolved kernels "
          "(layer '{}' is free)",
          layer.id));
    }
  }
  RfTrace trace;
  trace.reserve(spec.layers.size());
  std::int64_t rf = 1;
  std::int64_t jump = 1;
  for (const auto& layer : spec.layers) {
    rf += static_cast<std::int64_t>(rf_kernel_extent(layer) - 1) * jump;
    trace.push_back({layer.id, rf, jump});
    jump *= layer.stride;
  }
  return trace;
}

}  // namespace bksef
