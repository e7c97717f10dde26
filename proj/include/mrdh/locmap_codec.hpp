#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace mrdh {

/// Adaptive order-0 range coding of labels over the alphabet {0..l}.
///
/// The model starts from uniform counts and adds one to a symbol after coding it; counts
/// are halved once their total reaches 2^16. The stream starts with the label count as an
/// LEB128 varint, followed by the range-coded symbols. The coder keeps a 32-bit range and a 64-bit
/// low with delayed carry propagation, and flushes five bytes, so the decoder consumes
/// exactly the bytes the encoder produced. Anything else (short stream, trailing bytes,
/// wrong count) is reported as DecodeError.
std::vector<std::uint8_t> encode_labels(std::span<const std::uint8_t> labels, int l);
std::vector<std::uint8_t> decode_labels(std::span<const std::uint8_t> bytes, std::size_t count, int l);

/// Auxiliary information shipped in the container header.
///
/// Byte layout (big-endian): u32 s_e_count | u64 payload_bit_len | u32 map length | map.
struct AuxInfo {
  std::uint32_t s_e_count = 0;
  std::uint64_t payload_bit_len = 0;
  std::vector<std::uint8_t> compressed_map;

  /// l_ai: the full serialized size in bits.
  std::size_t bit_length() const { return 8 * (kFixedBytes + compressed_map.size()); }

  static constexpr std::size_t kFixedBytes = 16;

  friend bool operator==(const AuxInfo&, const AuxInfo&) = default;
};

std::vector<std::uint8_t> serialize_aux(const AuxInfo& aux);
AuxInfo parse_aux(std::span<const std::uint8_t> bytes);

AuxInfo make_aux(std::span<const std::uint8_t> labels, int l, std::uint64_t payload_bit_len);
std::vector<std::uint8_t> decode_aux_labels(const AuxInfo& aux, int l);

}  // namespace mrdh
