#include "mrdh/payload.hpp"

#include <string>

#include "mrdh/error.hpp"

namespace mrdh {
namespace {

bool data_bit(std::span<const std::uint8_t> data, std::size_t i) { return (data[i / 8] >> (7 - i % 8)) & 1U; }

void check_words(const StegoContainer& c) {
  if (c.l != bit_length(c.p)) throw FormatError("container l does not match p");
}

}  // namespace

std::size_t EmbeddingPlan::total_bits() const {
  std::size_t sum = 0;
  for (const auto& s : slots) sum += static_cast<std::size_t>(s.planes);
  return sum;
}

EmbeddingPlan make_plan(const Partition& partition, const LabelMap& labels) {
  if (labels.labels.size() != partition.embed_set.size()) {
    throw DecodeError("label count " + std::to_string(labels.labels.size()) + " does not match embedding set size " +
                      std::to_string(partition.embed_set.size()));
  }
  EmbeddingPlan plan;
  plan.l = labels.l;
  for (std::size_t i = 0; i < partition.embed_set.size(); ++i) {
    const int t = labels.labels[i];
    if (t == 0) continue;
    for (int axis = 0; axis < 3; ++axis) plan.slots.push_back({partition.embed_set[i], axis, t});
  }
  return plan;
}

Capacity capacity(const LabelMap& labels, std::size_t aux_bits, std::size_t vertex_count) {
  Capacity cap;
  cap.l_p = labels.capacity_bits();
  cap.l_ai = aux_bits;
  cap.net_bits = static_cast<std::int64_t>(cap.l_p) - static_cast<std::int64_t>(cap.l_ai);
  cap.er_bpv = vertex_count ? static_cast<double>(cap.net_bits) / static_cast<double>(vertex_count) : 0.0;
  return cap;
}

Words embed_bits(const Words& words, const EmbeddingPlan& plan, std::span<const std::uint8_t> data, std::size_t bit_len) {
  if (bit_len > plan.total_bits()) throw CapacityError(bit_len, plan.total_bits() / 8);
  if (data.size() * 8 < bit_len) throw std::invalid_argument("data shorter than bit length");
  Words out = words;
  std::size_t next = 0;
  for (const auto& slot : plan.slots) {
    if (next == bit_len) break;
    auto& w = out(slot.vertex - 1, slot.axis);
    for (int k = plan.l - 1; k >= plan.l - slot.planes && next < bit_len; --k, ++next) {
      const std::uint64_t bit = std::uint64_t{1} << k;
      w = data_bit(data, next) ? (w | bit) : (w & ~bit);
    }
  }
  return out;
}

std::vector<std::uint8_t> read_slot_bits(const Words& words, const EmbeddingPlan& plan, std::size_t bit_len) {
  if (bit_len > plan.total_bits()) {
    throw DecodeError("declared payload of " + std::to_string(bit_len) + " bits exceeds slot capacity");
  }
  std::vector<std::uint8_t> out((bit_len + 7) / 8, 0);
  std::size_t next = 0;
  for (const auto& slot : plan.slots) {
    if (next == bit_len) break;
    const std::uint64_t w = words(slot.vertex - 1, slot.axis);
    for (int k = plan.l - 1; k >= plan.l - slot.planes && next < bit_len; --k, ++next) {
      if ((w >> k) & 1U) out[next / 8] |= static_cast<std::uint8_t>(1U << (7 - next % 8));
    }
  }
  return out;
}

StegoContainer encrypt_model(const QuantizedMesh& q, Strategy strategy, const Key& k_m, const Nonce& nonce) {
  validate_faces(q.faces, q.vertex_count());
  const auto n = static_cast<std::size_t>(q.vertex_count());
  const Partition partition = divide_vertices(q.faces, n, strategy);
  const LabelMap labels = build_label_map(q, partition);

  StegoContainer c;
  c.p = q.p;
  c.l = q.l;
  c.strategy = strategy;
  c.nonce = nonce;
  c.aux_info = serialize_aux(make_aux(labels.labels, q.l, 0));
  c.coords = encrypt_mesh(q, k_m, nonce);
  c.faces = q.faces;
  return c;
}

StegoContainer encrypt_model(const Mesh& mesh, const OwnerOptions& options, const Key& k_m, const Nonce& nonce) {
  validate_mesh(mesh);
  if (!options.normalize) return encrypt_model(quantize(mesh, options.p), options.strategy, k_m, nonce);
  const int e = normalization_exponent(mesh);
  StegoContainer c = encrypt_model(quantize(scale_pow2(mesh, -e), options.p), options.strategy, k_m, nonce);
  c.normalization_exponent = static_cast<std::int16_t>(e);
  return c;
}

ContainerLayout analyze(const StegoContainer& c) {
  check_words(c);
  ContainerLayout layout;
  const auto n = static_cast<std::size_t>(c.vertex_count());
  layout.partition = divide_vertices(c.faces, n, c.strategy);
  layout.aux = parse_aux(c.aux_info);
  if (layout.aux.s_e_count != layout.partition.embed_set.size()) {
    throw DecodeError("auxiliary info lists " + std::to_string(layout.aux.s_e_count) +
                      " embedding vertices, face data yields " + std::to_string(layout.partition.embed_set.size()));
  }
  layout.labels.l = c.l;
  layout.labels.labels = decode_aux_labels(layout.aux, c.l);
  layout.plan = make_plan(layout.partition, layout.labels);
  layout.capacity = capacity(layout.labels, layout.aux.bit_length(), n);
  return layout;
}

StegoContainer embed(const StegoContainer& encrypted, const LabelMap& labels, AuxInfo aux,
                     std::span<const std::uint8_t> cipher_data) {
  check_words(encrypted);
  const auto n = static_cast<std::size_t>(encrypted.vertex_count());
  const Partition partition = divide_vertices(encrypted.faces, n, encrypted.strategy);
  const EmbeddingPlan plan = make_plan(partition, labels);
  const std::size_t bits = cipher_data.size() * 8;
  const Capacity cap = capacity(labels, aux.bit_length(), n);
  if (bits > 0 && static_cast<std::int64_t>(bits) > cap.net_bits) throw CapacityError(bits, cap.max_payload_bytes());

  StegoContainer out = encrypted;
  aux.payload_bit_len = bits;
  out.aux_info = serialize_aux(aux);
  out.coords = embed_bits(encrypted.coords, plan, cipher_data, bits);
  return out;
}

StegoContainer embed(const StegoContainer& encrypted, std::span<const std::uint8_t> cipher_data) {
  const ContainerLayout layout = analyze(encrypted);
  return embed(encrypted, layout.labels, layout.aux, cipher_data);
}

StegoContainer hide(const StegoContainer& encrypted, std::span<const std::uint8_t> data, const Key& k_a) {
  return embed(encrypted, encrypt_payload(data, k_a, encrypted.nonce));
}

std::vector<std::uint8_t> extract_cipher(const StegoContainer& c) {
  const ContainerLayout layout = analyze(c);
  return read_slot_bits(c.coords, layout.plan, layout.aux.payload_bit_len);
}

std::vector<std::uint8_t> extract(const StegoContainer& c, const Key& k_a) {
  return encrypt_payload(extract_cipher(c), k_a, c.nonce);
}

QuantizedMesh recover(const StegoContainer& c, const Key& k_m) {
  const ContainerLayout layout = analyze(c);
  const Words plain = encrypt_words(c.coords, c.l, k_m, c.nonce);
  Words restored = plain;
  const auto& part = layout.partition;
  for (std::size_t i = 0; i < part.embed_set.size(); ++i) {
    const int t = layout.labels.labels[i];
    if (t == 0) continue;
    const std::uint32_t u = part.embed_set[i];
    const auto predicted = predict_vertex(plain, part.predictors[i], c.l);
    for (int a = 0; a < 3; ++a) restored(u - 1, a) = restore_prefix(plain(u - 1, a), predicted(a), t, c.l);
  }
  QuantizedMesh q;
  q.p = c.p;
  q.l = c.l;
  q.coords = from_words(restored, c.l);
  q.faces = c.faces;
  return q;
}

std::pair<std::vector<std::uint8_t>, QuantizedMesh> extract_and_recover(const StegoContainer& c, const Key& k_a,
                                                                        const Key& k_m) {
  auto data = extract(c, k_a);
  return {std::move(data), recover(c, k_m)};
}

Mesh to_mesh(const QuantizedMesh& q, const StegoContainer& c) {
  Mesh m = dequantize(q);
  if (c.normalization_exponent) m = scale_pow2(m, *c.normalization_exponent);
  return m;
}

Mesh recover_mesh(const StegoContainer& c, const Key& k_m) { return to_mesh(recover(c, k_m), c); }

}  // namespace mrdh
