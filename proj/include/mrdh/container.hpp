#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mrdh/cipher.hpp"
#include "mrdh/mesh.hpp"
#include "mrdh/quantizer.hpp"
#include "mrdh/topology.hpp"

namespace mrdh {

/// Encrypted (and possibly data-carrying) mesh as exchanged between owner, hider and receiver.
///
/// On-disk layout, all integers little-endian:
///
///   offset  size  field
///        0     4  magic "MRDH"
///        4     2  version (1)
///        6     1  p
///        7     1  l
///        8     1  strategy (0 topology, 1 parity_only)
///        9     1  flags (bit 0: coordinates were pre-normalized)
///       10     2  normalization exponent e, signed; original = stored * 2^e
///       12    12  nonce
///       24     4  n
///       28     4  m
///       32     4  aux_info length A
///       36     A  aux_info
///        .  3n*l/8  coordinate words, vertex order, x y z, l/8 bytes each
///        .   12m  faces, three u32 1-based indices each (cleartext)
struct StegoContainer {
  static constexpr std::array<std::uint8_t, 4> kMagic{'M', 'R', 'D', 'H'};
  static constexpr std::uint16_t kVersion = 1;
  static constexpr std::size_t kHeaderBytes = 36;

  std::uint16_t version = kVersion;
  int p = 5;
  int l = 32;
  Strategy strategy = Strategy::kTopology;
  /// Set when the owner scaled the mesh by 2^-e before quantizing.
  std::optional<std::int16_t> normalization_exponent;
  Nonce nonce;
  std::vector<std::uint8_t> aux_info;
  Words coords;
  Faces faces;

  Eigen::Index vertex_count() const { return coords.rows(); }
  Eigen::Index face_count() const { return faces.rows(); }
  std::size_t coord_payload_bits() const { return static_cast<std::size_t>(coords.size()) * static_cast<std::size_t>(l); }

  friend bool operator==(const StegoContainer& a, const StegoContainer& b) {
    return a.version == b.version && a.p == b.p && a.l == b.l && a.strategy == b.strategy &&
           a.normalization_exponent == b.normalization_exponent && a.nonce == b.nonce &&
           a.aux_info == b.aux_info && a.coords.rows() == b.coords.rows() && a.coords == b.coords &&
           a.faces.rows() == b.faces.rows() && a.faces == b.faces;
  }
};

std::vector<std::uint8_t> write_container(const StegoContainer& c);
/// Throws FormatError on bad magic, unsupported version, inconsistent header fields,
/// truncation or trailing bytes.
StegoContainer read_container(std::span<const std::uint8_t> bytes);

bool looks_like_container(std::span<const std::uint8_t> bytes);

}  // namespace mrdh
