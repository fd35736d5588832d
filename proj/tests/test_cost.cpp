#include <doctest.h>

#include "bksef/cost.hpp"
#include "support/properties.hpp"

using namespace bksef;

namespace {

LayerSpec layer_of(OpKind kind, int cin, int cout, int k, int stride = 1) {
  LayerSpec layer;
  layer.id = "probe";
  layer.kind = kind;
  layer.in_channels = cin;
  layer.out_channels = cout;
  layer.kernel = k;
  layer.stride = stride;
  return layer;
}

}  // namespace

TEST_CASE("standard conv MACs: 3x3, 64->64 at 32x32 is 37748736") {
  const auto layer = layer_of(OpKind::standard_conv, 64, 64, 3);
  CHECK(layer_macs(layer, {32, 32, 64}) == 37748736ULL);
}

TEST_CASE("standard conv MACs shrink with stride via output dims") {
  const auto layer = layer_of(OpKind::standard_conv, 16, 16, 3, 2);
  // out 16x16: 9 * 256 * 256 = 589824
  CHECK(layer_macs(layer, {32, 32, 16}) == 589824ULL);
}

TEST_CASE("depthwise conv MACs drop the output-channel factor") {
  const auto layer = layer_of(OpKind::depthwise_conv, 32, 32, 3);
  // 9 * 48*48 * 32 = 663552
  CHECK(layer_macs(layer, {48, 48, 32}) == 663552ULL);
}

TEST_CASE("pointwise conv MACs have no kernel factor") {
  const auto layer = layer_of(OpKind::pointwise_conv, 32, 64, 1);
  // 24*24 * 32 * 64 = 1179648
  CHECK(layer_macs(layer, {24, 24, 32}) == 1179648ULL);
}

TEST_CASE("dwsep conv MACs are the depthwise plus pointwise sum") {
  const auto layer = layer_of(OpKind::dwsep_conv, 32, 64, 3);
  // depthwise 663552 + pointwise 48*48*32*64 = 4718592
  CHECK(layer_macs(layer, {48, 48, 32}) == 663552ULL + 4718592ULL);
  CHECK(layer_macs(layer, {48, 48, 32}) == 5382144ULL);
}

TEST_CASE("pool and identity layers cost zero MACs and params") {
  for (OpKind kind : {OpKind::max_pool, OpKind::identity}) {
    const auto layer =
        layer_of(kind, 16, 16, kind == OpKind::identity ? 1 : 3);
    CHECK(layer_macs(layer, {32, 32, 16}) == 0);
    CHECK(layer_params(layer) == 0);
  }
}

TEST_CASE("params: 5x5 standard conv 3->32 has 2400 weights") {
  CHECK(layer_params(layer_of(OpKind::standard_conv, 3, 32, 5)) == 2400ULL);
}

TEST_CASE("params: 3x3 standard conv 64->64 has 36864 weights") {
  CHECK(layer_params(layer_of(OpKind::standard_conv, 64, 64, 3)) == 36864ULL);
}

TEST_CASE("params: depthwise and pointwise halves of dwsep") {
  CHECK(layer_params(layer_of(OpKind::depthwise_conv, 64, 64, 3)) == 576ULL);
  CHECK(layer_params(layer_of(OpKind::pointwise_conv, 32, 64, 1)) == 2048ULL);
  CHECK(layer_params(layer_of(OpKind::dwsep_conv, 32, 64, 3)) ==
        9 * 32 + 32 * 64);
}

TEST_CASE("free kernels are rejected by the cost functions") {
  auto layer = layer_of(OpKind::standard_conv, 3, 8, 3);
  layer.kernel = std::nullopt;
  CHECK_THROWS_AS(layer_macs(layer, {8, 8, 3}), SpecError);
  CHECK_THROWS_AS(layer_params(layer), SpecError);
}

TEST_CASE("network_cost totals a four-conv network with pools") {
  NetworkSpec spec;
  spec.name = "gtsrb_like";
  spec.input_height = 48;
  spec.input_width = 48;
  spec.input_channels = 3;
  auto push = [&spec](const char* id, OpKind kind, int cin, int cout, int k,
                      int s) {
    auto layer = layer_of(kind, cin, cout, k, s);
    layer.id = id;
    spec.layers.push_back(layer);
  };
  push("conv1", OpKind::standard_conv, 3, 32, 5, 1);
  push("conv2", OpKind::standard_conv, 32, 32, 5, 1);
  push("pool1", OpKind::max_pool, 32, 32, 3, 2);
  push("conv3", OpKind::standard_conv, 32, 64, 5, 1);
  push("conv4", OpKind::standard_conv, 64, 64, 5, 1);
  push("pool2", OpKind::max_pool, 64, 64, 3, 2);

  const CostReport report = network_cost(spec);
  REQUIRE(report.layers.size() == 6);
  CHECK(report.layers[0].macs == 5529600ULL);
  CHECK(report.layers[1].macs == 58982400ULL);
  CHECK(report.layers[2].macs == 0);
  CHECK(report.layers[3].macs == 29491200ULL);
  CHECK(report.layers[4].macs == 58982400ULL);
  CHECK(report.total_macs == 152985600ULL);
  CHECK(report.total_params == 181600ULL);
  CHECK(report.model_size_bytes == 726400ULL);
  CHECK(report.bytes_per_weight == 4);

  const CostReport half = network_cost(spec, 2);
  CHECK(half.model_size_bytes == 363200ULL);
  CHECK(half.total_params == report.total_params);
}

TEST_CASE("oracle agrees on a stride-2 odd-dimension edge case") {
  // 5x5 input, stride 2 -> 3 output positions per axis under same padding
  const auto layer = layer_of(OpKind::standard_conv, 1, 1, 3, 2);
  CHECK(layer_macs(layer, {5, 5, 1}) == 81ULL);
  CHECK(oracle_macs_bruteforce(layer, {5, 5, 1}) == 81ULL);
}

TEST_CASE("oracle refuses shapes beyond its enumeration bound") {
  const auto layer = layer_of(OpKind::standard_conv, 64, 64, 3);
  CHECK_THROWS_AS(oracle_macs_bruteforce(layer, {224, 224, 64}), SpecError);
}

TEST_CASE("layer_macs equals the brute-force oracle across the op grid") {
  const auto outcome = bksef::testing::mac_oracle_grid();
  CHECK(outcome.cases == 612);
  for (const auto& failure : outcome.failures) MESSAGE(failure);
  CHECK(outcome.ok());
}
