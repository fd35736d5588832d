#include <doctest.h>

#include "bksef/arch.hpp"

using namespace bksef;

namespace {

LayerSpec conv(std::string id, int in, int out, std::optional<int> k,
               int stride = 1, OpKind kind = OpKind::standard_conv) {
  LayerSpec layer;
  layer.id = std::move(id);
  layer.kind = kind;
  layer.in_channels = in;
  layer.out_channels = out;
  layer.kernel = k;
  layer.stride = stride;
  return layer;
}

NetworkSpec tiny(std::vector<LayerSpec> layers, int h = 32, int w = 32,
                 int c = 3) {
  NetworkSpec spec;
  spec.name = "tiny";
  spec.input_height = h;
  spec.input_width = w;
  spec.input_channels = c;
  spec.layers = std::move(layers);
  return spec;
}

bool has_violation(const std::vector<Violation>& violations,
                   const std::string& layer_id) {
  for (const auto& v : violations)
    if (v.layer_id == layer_id) return true;
  return false;
}

}  // namespace

TEST_CASE("op kind names round-trip") {
  for (OpKind kind : {OpKind::standard_conv, OpKind::depthwise_conv,
                      OpKind::pointwise_conv, OpKind::dwsep_conv,
                      OpKind::max_pool, OpKind::identity}) {
    CHECK(op_kind_from_string(to_string(kind)) == kind);
  }
  CHECK(!op_kind_from_string("transposed_conv").has_value());
  CHECK(!op_kind_from_string("").has_value());
}

TEST_CASE("ceil_div follows the same-padding convention") {
  CHECK(ceil_div(32, 1) == 32);
  CHECK(ceil_div(32, 2) == 16);
  CHECK(ceil_div(33, 2) == 17);
  CHECK(ceil_div(7, 7) == 1);
  CHECK(ceil_div(1, 2) == 1);
  CHECK(ceil_div(5, 3) == 2);
}

TEST_CASE("validate_spec accepts a well-formed network") {
  auto spec = tiny({conv("a", 3, 16, 3), conv("b", 16, 16, 5, 2),
                    conv("p", 16, 16, 3, 2, OpKind::max_pool)});
  CHECK(validate_spec(spec).empty());
}

TEST_CASE("validate_spec flags bad input dimensions") {
  auto spec = tiny({conv("a", 3, 16, 3)}, 0, 32, 0);
  auto violations = validate_spec(spec);
  // bad spatial dims, bad channel count, and the resulting chain mismatch
  REQUIRE(violations.size() == 3);
  CHECK(violations[0].layer_id.empty());
  CHECK(violations[1].layer_id.empty());
  CHECK(violations[2].layer_id == "a");
}

TEST_CASE("validate_spec flags empty layer list") {
  auto spec = tiny({});
  auto violations = validate_spec(spec);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].message ==
        "network must contain at least one layer");
}

TEST_CASE("validate_spec flags duplicate and empty ids") {
  auto spec = tiny({conv("a", 3, 8, 3), conv("a", 8, 8, 3),
                    conv("", 8, 8, 3)});
  auto violations = validate_spec(spec);
  CHECK(has_violation(violations, "a"));
  CHECK(has_violation(violations, ""));
}

TEST_CASE("validate_spec flags even and non-positive kernels") {
  auto even = tiny({conv("a", 3, 8, 4)});
  CHECK(validate_spec(even).size() == 1);
  auto negative = tiny({conv("a", 3, 8, -3)});
  CHECK(validate_spec(negative).size() == 1);
  auto zero = tiny({conv("a", 3, 8, 0)});
  CHECK(validate_spec(zero).size() == 1);
}

TEST_CASE("free kernels are only legal on kernel-bearing conv kinds") {
  CHECK(validate_spec(tiny({conv("a", 3, 8, std::nullopt)})).empty());
  CHECK(validate_spec(
            tiny({conv("a", 3, 3, std::nullopt, 1, OpKind::depthwise_conv)}))
            .empty());
  CHECK(validate_spec(
            tiny({conv("a", 3, 8, std::nullopt, 1, OpKind::dwsep_conv)}))
            .empty());
  for (OpKind kind :
       {OpKind::pointwise_conv, OpKind::max_pool, OpKind::identity}) {
    auto spec = tiny({conv("a", 3, 3, std::nullopt, 1, kind)});
    CHECK(!validate_spec(spec).empty());
  }
}

TEST_CASE("pointwise and identity require kernel 1") {
  auto pw = tiny({conv("a", 3, 8, 3, 1, OpKind::pointwise_conv)});
  CHECK(validate_spec(pw).size() == 1);
  auto id = tiny({conv("a", 3, 3, 3, 1, OpKind::identity)});
  CHECK(validate_spec(id).size() == 1);
  CHECK(validate_spec(tiny({conv("a", 3, 8, 1, 1, OpKind::pointwise_conv)}))
            .empty());
}

TEST_CASE("channel-preserving kinds reject channel changes") {
  for (OpKind kind :
       {OpKind::depthwise_conv, OpKind::max_pool, OpKind::identity}) {
    auto spec = tiny({conv("a", 3, 8,
                           kind == OpKind::identity ? 1 : 3, 1, kind)});
    CHECK(!validate_spec(spec).empty());
  }
}

TEST_CASE("validate_spec flags channel chain mismatches") {
  auto spec = tiny({conv("a", 3, 16, 3), conv("b", 8, 8, 3)});
  auto violations = validate_spec(spec);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].layer_id == "b");
}

TEST_CASE("validate_spec flags the first layer not matching the input") {
  auto spec = tiny({conv("a", 4, 16, 3)});
  CHECK(validate_spec(spec).size() == 1);
}

TEST_CASE("propagate_shapes halves spatial dims per stride-2 layer") {
  // 32 -> 16 -> 8 regardless of kernel size under same padding
  auto spec = tiny({conv("a", 3, 16, 3, 2), conv("b", 16, 32, 7, 2)});
  const ShapeTrace trace = propagate_shapes(spec);
  REQUIRE(trace.size() == 2);
  CHECK(trace[0].out_height == 16);
  CHECK(trace[0].out_width == 16);
  CHECK(trace[0].out_channels == 16);
  CHECK(trace[1].out_height == 8);
  CHECK(trace[1].out_width == 8);
  CHECK(trace[1].out_channels == 32);
}

TEST_CASE("propagate_shapes ceils odd dimensions") {
  // 48 -> 24 -> 12, and 49 -> 25 -> 13 by ceiling
  auto even = tiny({conv("a", 3, 8, 3, 2), conv("b", 8, 8, 3, 2)}, 48, 48);
  const ShapeTrace t1 = propagate_shapes(even);
  CHECK(t1[0].out_height == 24);
  CHECK(t1[1].out_height == 12);

  auto odd = tiny({conv("a", 3, 8, 3, 2), conv("b", 8, 8, 3, 2)}, 49, 49);
  const ShapeTrace t2 = propagate_shapes(odd);
  CHECK(t2[0].out_height == 25);
  CHECK(t2[1].out_height == 13);
}

TEST_CASE("propagate_shapes output is kernel-independent") {
  for (int k : {1, 3, 5, 7, 9}) {
    auto spec = tiny({conv("a", 3, 8, k, 2)});
    const ShapeTrace trace = propagate_shapes(spec);
    CHECK(trace[0].out_height == 16);
    CHECK(trace[0].out_width == 16);
  }
}

TEST_CASE("propagate_shapes throws SpecError on invalid specs") {
  auto spec = tiny({conv("a", 3, 16, 4)});
  CHECK_THROWS_AS(propagate_shapes(spec), SpecError);
  try {
    propagate_shapes(spec);
  } catch (const SpecError& error) {
    REQUIRE(error.violations().size() == 1);
    CHECK(error.violations()[0].layer_id == "a");
  }
}

TEST_CASE("layer_input_shape chains previous outputs") {
  auto spec = tiny({conv("a", 3, 16, 3, 2), conv("b", 16, 32, 3, 1)});
  const ShapeTrace trace = propagate_shapes(spec);
  const TensorShape first = layer_input_shape(spec, trace, 0);
  CHECK(first == TensorShape{32, 32, 3});
  const TensorShape second = layer_input_shape(spec, trace, 1);
  CHECK(second == TensorShape{16, 16, 16});
}

TEST_CASE("rf_kernel_extent ignores the pointwise half of dwsep") {
  CHECK(rf_kernel_extent(conv("a", 8, 8, 5, 1, OpKind::dwsep_conv)) == 5);
  CHECK(rf_kernel_extent(conv("a", 8, 8, 1, 1, OpKind::pointwise_conv)) == 1);
  CHECK(rf_kernel_extent(conv("a", 8, 8, 1, 1, OpKind::identity)) == 1);
  CHECK(rf_kernel_extent(conv("a", 8, 8, 7, 1, OpKind::max_pool)) == 7);
}

TEST_CASE("receptive field: conv k3 s2 then conv k3 s1 gives 3 then 7") {
  auto spec = tiny({conv("a", 3, 8, 3, 2), conv("b", 8, 8, 3, 1)});
  const RfTrace trace = receptive_field_trace(spec);
  REQUIRE(trace.size() == 2);
  CHECK(trace[0].receptive_field == 3);
  CHECK(trace[0].jump == 1);
  CHECK(trace[1].receptive_field == 7);  // 3 + (3-1)*2
  CHECK(trace[1].jump == 2);
}

TEST_CASE("receptive field: five k3 s1 convs reach 11") {
  std::vector<LayerSpec> layers;
  int channels = 3;
  for (int i = 0; i < 5; ++i) {
    layers.push_back(conv("c" + std::to_string(i), channels, 8, 3, 1));
    channels = 8;
  }
  auto spec = tiny(std::move(layers));
  const RfTrace trace = receptive_field_trace(spec);
  CHECK(trace.back().receptive_field == 11);  // each layer adds 2
  CHECK(trace.back().jump == 1);
}

TEST_CASE("receptive field treats dwsep by its depthwise kernel only") {
  auto a = tiny({conv("a", 3, 3, 5, 1, OpKind::depthwise_conv)});
  auto b = tiny({conv("a", 3, 8, 5, 1, OpKind::dwsep_conv)});
  CHECK(receptive_field_trace(a)[0].receptive_field ==
        receptive_field_trace(b)[0].receptive_field);
}

TEST_CASE("receptive_field_trace rejects free kernels") {
  auto spec = tiny({conv("a", 3, 8, std::nullopt)});
  CHECK_THROWS_AS(receptive_field_trace(spec), SpecError);
}

TEST_CASE("SpecError message lists layer ids") {
  auto spec = tiny({conv("a", 3, 16, 4), conv("b", 16, 16, 3, 0)});
  try {
    propagate_shapes(spec);
    FAIL("expected SpecError");
  } catch (const SpecError& error) {
    const std::string what = error.what();
    CHECK(what.find("[a]") != std::string::npos);
    CHECK(what.find("[b]") != std::string::npos);
  }
}
