#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mrdh/cipher.hpp"
#include "mrdh/container.hpp"
#include "mrdh/locmap_codec.hpp"
#include "mrdh/predictor.hpp"
#include "mrdh/topology.hpp"

namespace mrdh {

/// Top `planes` bit planes of one coordinate of an embedding vertex.
struct Slot {
  std::uint32_t vertex;
  int axis;
  int planes;

  friend bool operator==(const Slot&, const Slot&) = default;
};

/// Slots in normative order: embedding vertices ascending, axis x, y, z, planes from the
/// MSB downward. Payload bit i is bit (7 - i mod 8) of byte i / 8.
struct EmbeddingPlan {
  int l = 32;
  std::vector<Slot> slots;

  std::size_t total_bits() const;
};

EmbeddingPlan make_plan(const Partition& partition, const LabelMap& labels);

struct Capacity {
  std::size_t l_p = 0;   // total slot bits
  std::size_t l_ai = 0;  // auxiliary information bits
  std::int64_t net_bits = 0;
  double er_bpv = 0.0;  // (l_p - l_ai) / n

  std::size_t max_payload_bytes() const { return net_bits > 0 ? static_cast<std::size_t>(net_bits) / 8 : 0; }
};

Capacity capacity(const LabelMap& labels, std::size_t aux_bits, std::size_t vertex_count);

/// Substitutes `bit_len` data bits into the slots; every other bit is copied unchanged.
Words embed_bits(const Words& words, const EmbeddingPlan& plan, std::span<const std::uint8_t> data, std::size_t bit_len);
/// Reads `bit_len` bits back out of the slots.
std::vector<std::uint8_t> read_slot_bits(const Words& words, const EmbeddingPlan& plan, std::size_t bit_len);

// ---- content owner ------------------------------------------------------------------

struct OwnerOptions {
  int p = 5;
  Strategy strategy = Strategy::kTopology;
  /// Scale into (-1, 1) by a power of two before quantizing; the exponent is stored.
  bool normalize = false;
};

/// Quantizes, partitions, labels and encrypts a mesh. The result carries the auxiliary
/// information (with a zero payload length) and is ready for the data hider.
StegoContainer encrypt_model(const Mesh& mesh, const OwnerOptions& options, const Key& k_m, const Nonce& nonce);
StegoContainer encrypt_model(const QuantizedMesh& q, Strategy strategy, const Key& k_m, const Nonce& nonce);

// ---- data hider ---------------------------------------------------------------------

/// Everything a party holding only the container can re-derive.
struct ContainerLayout {
  Partition partition;
  LabelMap labels;
  AuxInfo aux;
  EmbeddingPlan plan;
  Capacity capacity;
};

/// Rebuilds partition, labels and plan from face data and auxiliary info. No key needed.
ContainerLayout analyze(const StegoContainer& c);

/// Embeds already-encrypted data. Throws CapacityError when it exceeds the net capacity.
StegoContainer embed(const StegoContainer& encrypted, std::span<const std::uint8_t> cipher_data);
/// Lower-level form: embeds into `enc_words` under an explicit label map and aux record,
/// whose payload length is overwritten with the data length.
StegoContainer embed(const StegoContainer& encrypted, const LabelMap& labels, AuxInfo aux,
                     std::span<const std::uint8_t> cipher_data);
/// Encrypts `data` with k_a and embeds it.
StegoContainer hide(const StegoContainer& encrypted, std::span<const std::uint8_t> data, const Key& k_a);

// ---- receiver -----------------------------------------------------------------------

/// Embedded bits as stored (still under k_a).
std::vector<std::uint8_t> extract_cipher(const StegoContainer& c);
/// Case 1: only k_a.
std::vector<std::uint8_t> extract(const StegoContainer& c, const Key& k_a);
/// Case 2: only k_m. Bit-exact original quantized mesh.
QuantizedMesh recover(const StegoContainer& c, const Key& k_m);
/// Case 3: extraction first, then model decryption and recovery.
std::pair<std::vector<std::uint8_t>, QuantizedMesh> extract_and_recover(const StegoContainer& c, const Key& k_a,
                                                                        const Key& k_m);

/// Dequantizes and undoes the optional normalization recorded in the container.
Mesh to_mesh(const QuantizedMesh& q, const StegoContainer& c);
Mesh recover_mesh(const StegoContainer& c, const Key& k_m);

}  // namespace mrdh
