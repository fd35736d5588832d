// Declarative CNN architecture description with shape and
// receptive-field propagation.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bksef {

enum class OpKind {
  standard_conv,
  depthwise_conv,
  pointwise_conv,
  dwsep_conv,  // depthwise k x k followed by pointwise 1x1, as one layer
  max_pool,
  identity,
};

std::string_view to_string(OpKind kind);
std::optional<OpKind> op_kind_from_string(std::string_view name);

// Only "same" padding exists in v1. With same padding the output spatial
// size is ceil(in / stride) regardless of kernel size, so candidate
// kernels can be compared at fixed feature-map dimensions.
enum class Padding { same };

struct LayerSpec {
  std::string id;
  OpKind kind = OpKind::standard_conv;
  int in_channels = 0;
  int out_channels = 0;
  std::optional<int> kernel;  // nullopt = "free": the optimizer decides
  int stride = 1;
  Padding padding = Padding::same;

  bool kernel_free() const { return !kernel.has_value(); }
  bool operator==(const LayerSpec&) const = default;
};

struct NetworkSpec {
  std::string name;
  int input_height = 0;
  int input_width = 0;
  int input_channels = 0;
  std::vector<LayerSpec> layers;

  bool operator==(const NetworkSpec&) const = default;
};

struct TensorShape {
  int height = 0;
  int width = 0;
  int channels = 0;

  bool operator==(const TensorShape&) const = default;
};

struct Violation {
  std::string layer_id;  // empty for network-level problems
  std::string message;
};

// Raised when an operation is handed a spec (or document) it must reject.
class SpecError : public std::runtime_error {
 public:
  explicit SpecError(std::string message)
      : std::runtime_error(std::move(message)) {}
  explicit SpecError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

struct ShapeEntry {
  std::string layer_id;
  int out_height = 0;
  int out_width = 0;
  int out_channels = 0;
};
using ShapeTrace = std::vector<ShapeEntry>;

struct RfEntry {
  std::string layer_id;
  std::int64_t receptive_field = 1;  // span in input pixels
  std::int64_t jump = 1;             // product of strides of preceding layers
};
using RfTrace = std::vector<RfEntry>;

constexpr int ceil_div(int value, int divisor) {
  return (value + divisor - 1) / divisor;
}

// Kernel extent a layer contributes to the receptive field. The pointwise
// half of dwsep_conv adds nothing (k = 1), so dwsep contributes its
// depthwise kernel once.
int rf_kernel_extent(const LayerSpec& layer);

// Returns every invariant violation (channel mismatch, even kernel, zero
// dimension, ...). Empty result iff the network is well-formed. Free
// kernels are legal on standard, depthwise and dwsep conv layers only.
std::vector<Violation> validate_spec(const NetworkSpec& spec);

// Per-layer output shapes under same padding: ceil(in / stride) spatial
// dims, channels per op-kind semantics. Throws SpecError on invalid specs.
ShapeTrace propagate_shapes(const NetworkSpec& spec);

// Input shape seen by layer `index` given the propagated trace.
TensorShape layer_input_shape(const NetworkSpec& spec, const ShapeTrace& trace,
                              std::size_t index);

// Receptive field and jump per layer, starting from R = 1 at the input:
//   R_l = R_{l-1} + (k_l - 1) * jump_l,   jump_l = product of earlier strides.
// Requires all kernels concrete; throws SpecError otherwise.
RfTrace receptive_field_trace(const NetworkSpec& spec);

}  // namespace bksef
