#include <gtest/gtest.h>

#include <random>

#include "mrdh/error.hpp"
#include "mrdh/payload.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace mrdh;

namespace {

Key key_from_seed(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Key k;
  for (auto& b : k.bytes) b = static_cast<std::uint8_t>(rng());
  return k;
}

std::vector<std::uint8_t> random_bytes(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::uint8_t> out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng());
  return out;
}

const Key kModelKey = key_from_seed(100);
const Key kDataKey = key_from_seed(200);

}  // namespace

TEST(Payload, CapacityAccounting) {
  LabelMap map{32, {0, 0, 0}};
  Capacity cap = capacity(map, 160, 6);
  EXPECT_EQ(cap.l_p, 0u);
  EXPECT_EQ(cap.net_bits, -160);
  EXPECT_EQ(cap.max_payload_bytes(), 0u);

  map.labels = {3, 7, 0, 10};
  cap = capacity(map, 40, 10);
  EXPECT_EQ(cap.l_p, 3u * 20u);
  EXPECT_EQ(cap.net_bits, 20);
  EXPECT_DOUBLE_EQ(cap.er_bpv, 2.0);
  EXPECT_EQ(cap.max_payload_bytes(), 2u);
}

TEST(Payload, PlanOrderAndSizeMatchOracle) {
  std::mt19937_64 rng(51);
  const Mesh m = synth::random_closed_mesh(rng, 10);
  const QuantizedMesh q = quantize(m, 5);
  const auto n = static_cast<std::size_t>(q.vertex_count());
  const Partition part = divide_vertices(q.faces, n, Strategy::kTopology);
  const LabelMap labels = build_label_map(q, part);
  const EmbeddingPlan plan = make_plan(part, labels);
  EXPECT_EQ(plan.total_bits(), labels.capacity_bits());

  const auto ref = oracle::enumerate_slots({part.embed_set.begin(), part.embed_set.end()},
                                           {labels.labels.begin(), labels.labels.end()}, q.l);
  std::size_t i = 0;
  for (const auto& slot : plan.slots) {
    for (int k = q.l - 1; k >= q.l - slot.planes; --k, ++i) {
      ASSERT_LT(i, ref.size());
      EXPECT_EQ(ref[i].vertex, slot.vertex);
      EXPECT_EQ(ref[i].axis, slot.axis);
      EXPECT_EQ(ref[i].plane, k);
    }
  }
  EXPECT_EQ(i, ref.size());
}

TEST(Payload, OnlySlotBitsChange) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 10; ++trial) {
    const Mesh m = synth::uv_sphere(3, 6, 0.7, 0.02, rng());  // 20 vertices
    ASSERT_EQ(m.vertex_count(), 20);
    const StegoContainer enc = encrypt_model(m, {5, Strategy::kTopology, false}, kModelKey, Nonce::random());
    const ContainerLayout layout = analyze(enc);
    const std::size_t max_bits = layout.plan.total_bits();
    const auto data = random_bytes(rng, max_bits / 8);
    const Words out = embed_bits(enc.coords, layout.plan, data, data.size() * 8);

    const auto slots = oracle::enumerate_slots({layout.partition.embed_set.begin(), layout.partition.embed_set.end()},
                                               {layout.labels.labels.begin(), layout.labels.labels.end()}, enc.l);
    std::vector<std::uint64_t> allowed(static_cast<std::size_t>(enc.coords.size()), 0);
    for (std::size_t i = 0; i < slots.size() && i < data.size() * 8; ++i) {
      allowed[(slots[i].vertex - 1) * 3 + static_cast<std::size_t>(slots[i].axis)] |= std::uint64_t{1} << slots[i].plane;
      // slot i carries payload bit i
      const bool bit = (data[i / 8] >> (7 - i % 8)) & 1U;
      ASSERT_EQ(((out(slots[i].vertex - 1, slots[i].axis) >> slots[i].plane) & 1U) != 0, bit);
    }
    for (Eigen::Index w = 0; w < enc.coords.size(); ++w) {
      const std::uint64_t diff = out.data()[w] ^ enc.coords.data()[w];
      ASSERT_EQ(diff & ~allowed[static_cast<std::size_t>(w)], 0u);
    }
  }
}

TEST(Payload, EndToEndAllThreeCases) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    const Mesh m = synth::random_closed_mesh(rng, 30 + static_cast<int>(rng() % 500));
    const int p = trial % 3 == 0 ? 2 : 5;
    const Strategy s = trial % 2 ? Strategy::kTopology : Strategy::kParityOnly;
    const StegoContainer enc = encrypt_model(m, {p, s, false}, kModelKey, Nonce::random());
    const std::size_t max_bytes = analyze(enc).capacity.max_payload_bytes();
    const auto data = random_bytes(rng, max_bytes ? rng() % (max_bytes + 1) : 0);
    const StegoContainer stego = hide(enc, data, kDataKey);

    EXPECT_EQ(extract(stego, kDataKey), data);
    const QuantizedMesh q = quantize(m, p);
    EXPECT_EQ(recover(stego, kModelKey), q);
    const auto [both_data, both_mesh] = extract_and_recover(stego, kDataKey, kModelKey);
    EXPECT_EQ(both_data, data);
    EXPECT_EQ(both_mesh, q);
    EXPECT_EQ(stego.faces, m.faces);
  }
}

TEST(Payload, ZeroPayloadLeavesContainerUnchanged) {
  std::mt19937_64 rng(54);
  const Mesh m = synth::random_closed_mesh(rng, 100);
  const StegoContainer enc = encrypt_model(m, {}, kModelKey, Nonce::random());
  const StegoContainer stego = embed(enc, std::vector<std::uint8_t>{});
  EXPECT_EQ(stego, enc);
  EXPECT_TRUE(extract(stego, kDataKey).empty());
  EXPECT_EQ(recover(stego, kModelKey), quantize(m, 5));
}

TEST(Payload, OversizePayloadReportsMaximum) {
  std::mt19937_64 rng(55);
  const Mesh m = synth::random_closed_mesh(rng, 200);
  const StegoContainer enc = encrypt_model(m, {}, kModelKey, Nonce::random());
  const std::size_t max_bytes = analyze(enc).capacity.max_payload_bytes();
  EXPECT_NO_THROW(embed(enc, random_bytes(rng, max_bytes)));
  try {
    embed(enc, random_bytes(rng, max_bytes + 1));
    FAIL() << "expected CapacityError";
  } catch (const CapacityError& e) {
    EXPECT_EQ(e.max_bytes(), max_bytes);
  }
}

TEST(Payload, ExtractionIgnoresModelKeyAndRecoveryIgnoresDataKey) {
  std::mt19937_64 rng(56);
  const Mesh m = synth::random_closed_mesh(rng, 300);
  const StegoContainer enc = encrypt_model(m, {}, kModelKey, Nonce::random());
  const auto data = random_bytes(rng, 64);
  const StegoContainer a = hide(enc, data, kDataKey);
  // same model, different model key: extraction unaffected
  const StegoContainer enc2 = encrypt_model(m, {}, key_from_seed(7), enc.nonce);
  const StegoContainer b = hide(enc2, data, kDataKey);
  EXPECT_EQ(extract(a, kDataKey), data);
  EXPECT_EQ(extract(b, kDataKey), data);
  // different data keys: recovery unaffected
  const StegoContainer c = hide(enc, data, key_from_seed(8));
  EXPECT_EQ(recover(a, kModelKey), recover(c, kModelKey));
  // wrong data key gives noise, not an error
  EXPECT_NE(extract(a, key_from_seed(9)), data);
}

TEST(Payload, PredictionSetIsPlainDecryption) {
  std::mt19937_64 rng(57);
  const Mesh m = synth::random_closed_mesh(rng, 400);
  const StegoContainer enc = encrypt_model(m, {}, kModelKey, Nonce::random());
  const StegoContainer stego = hide(enc, random_bytes(rng, analyze(enc).capacity.max_payload_bytes()), kDataKey);
  const Coords plain = from_words(encrypt_words(stego.coords, stego.l, kModelKey, stego.nonce), stego.l);
  const QuantizedMesh q = quantize(m, 5);
  for (auto v : analyze(stego).partition.predict_set) EXPECT_EQ(plain.row(v - 1), q.coords.row(v - 1));
}

TEST(Payload, RecoverThenExtractMatchesExtractThenRecover) {
  std::mt19937_64 rng(58);
  const Mesh m = synth::random_closed_mesh(rng, 250);
  const StegoContainer enc = encrypt_model(m, {}, kModelKey, Nonce::random());
  const auto data = random_bytes(rng, 40);
  const StegoContainer stego = hide(enc, data, kDataKey);
  const StegoContainer copy = stego;
  const QuantizedMesh first = recover(copy, kModelKey);
  const auto later = extract(copy, kDataKey);
  const auto [d, q] = extract_and_recover(stego, kDataKey, kModelKey);
  EXPECT_EQ(first, q);
  EXPECT_EQ(later, d);
}

TEST(Payload, NormalizedMeshRoundTrips) {
  std::mt19937_64 rng(59);
  Mesh m = synth::random_closed_mesh(rng, 300);
  m.vertices *= 173.0;
  const StegoContainer enc = encrypt_model(m, {5, Strategy::kTopology, true}, kModelKey, Nonce::random());
  ASSERT_TRUE(enc.normalization_exponent.has_value());
  const Mesh back = recover_mesh(enc, kModelKey);
  EXPECT_LT((back.vertices - m.vertices).cwiseAbs().maxCoeff(), std::ldexp(1e-5, *enc.normalization_exponent));
  EXPECT_EQ(read_container(write_container(enc)), enc);
}

TEST(Payload, CorruptAuxIsReported) {
  std::mt19937_64 rng(60);
  const Mesh m = synth::random_closed_mesh(rng, 100);
  StegoContainer enc = encrypt_model(m, {}, kModelKey, Nonce::random());
  StegoContainer bad = enc;
  bad.aux_info.resize(bad.aux_info.size() - 1);
  EXPECT_THROW(recover(bad, kModelKey), DecodeError);
  bad = enc;
  bad.aux_info[3] ^= 1;  // s_e_count
  EXPECT_THROW(extract(bad, kDataKey), DecodeError);
  bad = enc;
  bad.strategy = enc.strategy == Strategy::kTopology ? Strategy::kParityOnly : Strategy::kTopology;
  if (analyze(enc).partition.embed_set.size() != (static_cast<std::size_t>(m.vertex_count()) + 1) / 2) {
    EXPECT_THROW(analyze(bad), DecodeError);
  }
}
