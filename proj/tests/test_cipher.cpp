#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mrdh/cipher.hpp"
#include "mrdh/error.hpp"
#include "support/synthetic.hpp"

using namespace mrdh;

namespace {

Key key_from_seed(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Key k;
  for (auto& b : k.bytes) b = static_cast<std::uint8_t>(rng());
  return k;
}

}  // namespace

// ChaCha20 block function test vector: all-zero key and nonce, block counter 0.
TEST(Cipher, KnownAnswerKeystream) {
  const std::vector<std::uint8_t> expect{
      0x76, 0xb8, 0xe0, 0xad, 0xa0, 0xf1, 0x3d, 0x90, 0x40, 0x5d, 0x6a, 0xe5, 0x53, 0x86, 0xbd, 0x28,
      0xbd, 0xd2, 0x19, 0xb8, 0xa0, 0x8d, 0xed, 0x1a, 0xa8, 0x36, 0xef, 0xcc, 0x8b, 0x77, 0x0d, 0xc7,
      0xda, 0x41, 0x59, 0x7c, 0x51, 0x57, 0x48, 0x8d, 0x77, 0x24, 0xe0, 0x3f, 0xb8, 0xd8, 0x4a, 0x37,
      0x6a, 0x43, 0xb8, 0xf4, 0x15, 0x18, 0xa1, 0x1c, 0xc3, 0x87, 0xb6, 0x69, 0xb2, 0xee, 0x65, 0x86};
  EXPECT_EQ(keystream_bytes(Key{}, Nonce{}, 64), expect);
  // bit order: LSB of byte 0 first (0x76 = 0b01110110)
  const auto bits = keystream(Key{}, Nonce{}, 8);
  EXPECT_EQ(bits, (std::vector<std::uint8_t>{0, 1, 1, 0, 1, 1, 1, 0}));
}

TEST(Cipher, KeystreamDeterministicAndPrefixConsistent) {
  const Key k = key_from_seed(1);
  const Nonce n = Nonce::from_hex("000102030405060708090a0b");
  EXPECT_EQ(keystream(k, n, 128), keystream(k, n, 128));
  EXPECT_TRUE(keystream(k, n, 0).empty());
  const auto long_stream = keystream(k, n, 1000);
  const auto short_stream = keystream(k, n, 333);
  EXPECT_TRUE(std::equal(short_stream.begin(), short_stream.end(), long_stream.begin()));
}

TEST(Cipher, DifferentNoncesDisagreeOnAboutHalfTheBits) {
  const Key k = key_from_seed(2);
  const std::size_t bits = 10000;
  const auto a = keystream(k, Nonce::from_hex("000000000000000000000001"), bits);
  const auto b = keystream(k, Nonce::from_hex("000000000000000000000002"), bits);
  std::size_t diff = 0;
  for (std::size_t i = 0; i < bits; ++i) diff += a[i] != b[i];
  const double sigma = std::sqrt(bits * 0.25);
  EXPECT_LT(std::abs(static_cast<double>(diff) - bits / 2.0), 3 * sigma);
}

TEST(Cipher, HexParsing) {
  const std::string hex(64, 'a');
  EXPECT_EQ(Key::from_hex(hex).to_hex(), hex);
  EXPECT_EQ(Key::from_hex(std::string(64, 'F')).bytes[0], 0xFF);
  EXPECT_THROW(Key::from_hex("abc"), Error);
  EXPECT_THROW(Key::from_hex(std::string(63, 'a') + "g"), Error);
  EXPECT_EQ(Nonce::from_hex("0102030405060708090a0b0c").bytes[11], 0x0c);
  EXPECT_NE(Nonce::random(), Nonce::random());
}

TEST(Cipher, MeshEncryptionIsAnInvolution) {
  std::mt19937_64 rng(41);
  for (int p : {2, 4, 5, 10}) {
    Mesh m = synth::random_closed_mesh(rng, 200);
    const QuantizedMesh q = quantize(m, p);
    const Key k = key_from_seed(static_cast<std::uint64_t>(p));
    const Nonce n = Nonce::random();
    const Words enc = encrypt_mesh(q, k, n);
    EXPECT_NE(enc, to_words(q.coords, q.l));
    EXPECT_EQ(decrypt_mesh(enc, p, q.faces, k, n), q);
    // a different key gives a different plaintext
    EXPECT_NE(decrypt_mesh(enc, p, q.faces, key_from_seed(99), n).coords, q.coords);
  }
}

TEST(Cipher, ZeroKeystreamIsIdentityAndBitsAreLocal) {
  std::mt19937_64 rng(42);
  const QuantizedMesh q = quantize(synth::random_closed_mesh(rng, 50), 5);
  const Words plain = to_words(q.coords, q.l);
  std::vector<std::uint8_t> stream(static_cast<std::size_t>(plain.size()) * 4, 0);
  EXPECT_EQ(xor_words(plain, q.l, stream), plain);
  // keystream byte 5 bit 3 -> word 1 (vertex 1, y axis), plane 8 + 3
  stream[5] = 0x08;
  const Words flipped = xor_words(plain, q.l, stream);
  EXPECT_EQ(flipped(0, 1) ^ plain(0, 1), std::uint64_t{1} << 11);
  Words rest = flipped;
  rest(0, 1) = plain(0, 1);
  EXPECT_EQ(rest, plain);
}

TEST(Cipher, KeystreamOrderFollowsVertexThenAxis) {
  std::mt19937_64 rng(43);
  const QuantizedMesh q = quantize(synth::random_closed_mesh(rng, 30), 3);  // l = 16
  const Key k = key_from_seed(3);
  const Nonce n = Nonce::from_hex("aabbccddeeff001122334455");
  const Words enc = encrypt_mesh(q, k, n);
  const auto bits = keystream(k, n, static_cast<std::size_t>(q.coords.size()) * 16);
  const Words plain = to_words(q.coords, 16);
  for (Eigen::Index i = 0; i < q.vertex_count(); ++i) {
    for (int a = 0; a < 3; ++a) {
      for (int kbit = 0; kbit < 16; ++kbit) {
        const auto idx = static_cast<std::size_t>((i * 3 + a) * 16 + kbit);
        const auto b = static_cast<std::uint8_t>((plain(i, a) >> kbit) & 1U);
        ASSERT_EQ(static_cast<std::uint8_t>((enc(i, a) >> kbit) & 1U), b ^ bits[idx]);
      }
    }
  }
}

TEST(Cipher, PayloadEncryption) {
  const Key k = key_from_seed(4);
  const Nonce n = Nonce::from_hex("0102030405060708090a0b0c");
  EXPECT_TRUE(encrypt_payload({}, k, n).empty());
  const std::vector<std::uint8_t> data{'h', 'e', 'l', 'l', 'o'};
  const auto enc = encrypt_payload(data, k, n);
  EXPECT_NE(enc, data);
  EXPECT_EQ(encrypt_payload(enc, k, n), data);
  const std::vector<std::uint8_t> golden{0x23, 0x9d, 0x27, 0x9b, 0x84};
  EXPECT_EQ(enc, golden);
}

TEST(Cipher, WordEncryptionGoldenVector) {
  // Zero key and nonce; words take keystream bytes little-endian.
  const Words zero = Words::Zero(1, 3);
  const Words w32 = encrypt_words(zero, 32, Key{}, Nonce{});
  EXPECT_EQ(w32(0, 0), 0xade0b876u);
  EXPECT_EQ(w32(0, 1), 0x903df1a0u);
  EXPECT_EQ(w32(0, 2), 0xe56a5d40u);
  const Words w16 = encrypt_words(zero, 16, Key{}, Nonce{});
  EXPECT_EQ(w16(0, 0), 0xb876u);
  EXPECT_EQ(w16(0, 1), 0xade0u);
  EXPECT_EQ(w16(0, 2), 0xf1a0u);
}
