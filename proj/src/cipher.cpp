#include "mrdh/cipher.hpp"

#include <sodium.h>

#include <stdexcept>

#include "mrdh/error.hpp"

namespace mrdh {
namespace {

static_assert(sizeof(Key{}.bytes) == crypto_stream_chacha20_ietf_KEYBYTES);
static_assert(sizeof(Nonce{}.bytes) == crypto_stream_chacha20_ietf_NONCEBYTES);

void ensure_sodium() {
  static const int status = sodium_init();
  if (status < 0) throw Error("libsodium initialization failed");
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

template <std::size_t N>
std::array<std::uint8_t, N> parse_hex(std::string_view hex, const char* what) {
  if (hex.size() != 2 * N) {
    throw Error(std::string(what) + " must be " + std::to_string(2 * N) + " hex characters, got " +
                std::to_string(hex.size()));
  }
  std::array<std::uint8_t, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    const int hi = hex_digit(hex[2 * i]);
    const int lo = hex_digit(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw Error(std::string(what) + " contains a non-hex character");
    out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return out;
}

template <std::size_t N>
std::string format_hex(const std::array<std::uint8_t, N>& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(2 * N);
  for (auto b : bytes) {
    s += kDigits[b >> 4];
    s += kDigits[b & 0xF];
  }
  return s;
}

}  // namespace

Key Key::from_hex(std::string_view hex) { return Key{parse_hex<32>(hex, "key")}; }
std::string Key::to_hex() const { return format_hex(bytes); }

Nonce Nonce::from_hex(std::string_view hex) { return Nonce{parse_hex<12>(hex, "nonce")}; }
std::string Nonce::to_hex() const { return format_hex(bytes); }

Nonce Nonce::random() {
  ensure_sodium();
  Nonce n;
  randombytes_buf(n.bytes.data(), n.bytes.size());
  return n;
}

std::vector<std::uint8_t> keystream_bytes(const Key& key, const Nonce& nonce, std::size_t byte_count) {
  std::vector<std::uint8_t> out(byte_count);
  if (byte_count == 0) return out;
  ensure_sodium();
  crypto_stream_chacha20_ietf(out.data(), out.size(), nonce.bytes.data(), key.bytes.data());
  return out;
}

std::vector<std::uint8_t> keystream(const Key& key, const Nonce& nonce, std::size_t bit_count) {
  const auto bytes = keystream_bytes(key, nonce, (bit_count + 7) / 8);
  std::vector<std::uint8_t> bits(bit_count);
  for (std::size_t i = 0; i < bit_count; ++i) bits[i] = (bytes[i / 8] >> (i % 8)) & 1U;
  return bits;
}

Words xor_words(const Words& words, int l, std::span<const std::uint8_t> stream) {
  const auto word_bytes = static_cast<std::size_t>(l / 8);
  const auto count = static_cast<std::size_t>(words.size());
  if (stream.size() < count * word_bytes) throw std::invalid_argument("keystream shorter than coordinate data");
  Words out(words.rows(), 3);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t ks = 0;
    for (std::size_t b = 0; b < word_bytes; ++b) ks |= static_cast<std::uint64_t>(stream[i * word_bytes + b]) << (8 * b);
    out.data()[i] = (words.data()[i] ^ ks) & word_mask(l);
  }
  return out;
}

Words encrypt_words(const Words& words, int l, const Key& k_m, const Nonce& nonce) {
  const auto stream = keystream_bytes(k_m, nonce, static_cast<std::size_t>(words.size()) * static_cast<std::size_t>(l / 8));
  return xor_words(words, l, stream);
}

Words encrypt_mesh(const QuantizedMesh& q, const Key& k_m, const Nonce& nonce) {
  return encrypt_words(to_words(q.coords, q.l), q.l, k_m, nonce);
}

QuantizedMesh decrypt_mesh(const Words& encrypted, int p, const Faces& faces, const Key& k_m, const Nonce& nonce) {
  QuantizedMesh q;
  q.p = p;
  q.l = bit_length(p);
  q.coords = from_words(encrypt_words(encrypted, q.l, k_m, nonce), q.l);
  q.faces = faces;
  return q;
}

std::vector<std::uint8_t> encrypt_payload(std::span<const std::uint8_t> data, const Key& k_a, const Nonce& nonce) {
  auto out = keystream_bytes(k_a, nonce, data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] ^= data[i];
  return out;
}

}  // namespace mrdh
