#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mrdh/quantizer.hpp"

namespace mrdh {

/// 256-bit stream-cipher key (k_m for the model, k_a for the additional data).
struct Key {
  std::array<std::uint8_t, 32> bytes{};

  /// Parses exactly 64 hex characters.
  static Key from_hex(std::string_view hex);
  std::string to_hex() const;

  friend bool operator==(const Key&, const Key&) = default;
};

/// 96-bit per-mesh nonce; travels in clear in the container header.
struct Nonce {
  std::array<std::uint8_t, 12> bytes{};

  static Nonce from_hex(std::string_view hex);
  static Nonce random();
  std::string to_hex() const;

  friend bool operator==(const Nonce&, const Nonce&) = default;
};

/// ChaCha20 (IETF) keystream bytes. Prefix-consistent in `byte_count`.
std::vector<std::uint8_t> keystream_bytes(const Key& key, const Nonce& nonce, std::size_t byte_count);

/// Keystream as individual bits; bit i is bit (i mod 8) of byte i/8, LSB first.
std::vector<std::uint8_t> keystream(const Key& key, const Nonce& nonce, std::size_t bit_count);

/// XORs every l-bit word with the keystream. Words are taken in vertex order, x, y, z, and
/// each consumes l/8 keystream bytes little-endian, so keystream bit k of a word meets
/// plane k (k = 0 is the LSB). `stream` must hold at least 3 * n * l / 8 bytes.
Words xor_words(const Words& words, int l, std::span<const std::uint8_t> stream);

Words encrypt_mesh(const QuantizedMesh& q, const Key& k_m, const Nonce& nonce);
Words encrypt_words(const Words& words, int l, const Key& k_m, const Nonce& nonce);

/// Inverse of encrypt_mesh. `faces` and p are carried over unchanged.
QuantizedMesh decrypt_mesh(const Words& encrypted, int p, const Faces& faces, const Key& k_m, const Nonce& nonce);

/// XOR of the data with the k_a keystream; its own inverse.
std::vector<std::uint8_t> encrypt_payload(std::span<const std::uint8_t> data, const Key& k_a, const Nonce& nonce);

}  // namespace mrdh
