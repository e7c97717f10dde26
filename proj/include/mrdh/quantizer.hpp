#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "mrdh/mesh.hpp"

namespace mrdh {

/// Signed quantized coordinates, in units of 10^-p.
using Coords = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 3, Eigen::RowMajor>;
/// Raw l-bit patterns (offset binary), one word per coordinate.
using Words = Eigen::Matrix<std::uint64_t, Eigen::Dynamic, 3, Eigen::RowMajor>;

inline constexpr int kMinPrecision = 1;
inline constexpr int kMaxPrecision = 33;

struct QuantizedMesh {
  int p = 5;
  int l = 32;
  Coords coords;
  Faces faces;

  Eigen::Index vertex_count() const { return coords.rows(); }

  friend bool operator==(const QuantizedMesh& a, const QuantizedMesh& b) {
    return a.p == b.p && a.l == b.l && a.coords.rows() == b.coords.rows() &&
           a.faces.rows() == b.faces.rows() && a.coords == b.coords && a.faces == b.faces;
  }
};

/// Bits per coordinate for a precision: 8 (p<=2), 16 (p<=4), 32 (p<=8), 64 otherwise.
int bit_length(int p);

/// floor(v * 10^p), computed exactly for p <= 27. Throws RangeError if the result does not
/// fit the l-bit encoding for this p.
std::int64_t quantize_value(double v, int p);
/// q * 10^-p, nudged up by at most an ulp so that quantize_value(dequantize_value(q)) == q.
double dequantize_value(std::int64_t q, int p);

QuantizedMesh quantize(const Mesh& mesh, int p);
Mesh dequantize(const QuantizedMesh& q);

inline constexpr std::uint64_t word_mask(int l) {
  return l >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << l) - 1;
}

/// Offset-binary encoding u = v + 2^(l-1); monotone in v, so MSB prefixes order like values.
std::uint64_t to_word(std::int64_t v, int l);
std::int64_t from_word(std::uint64_t u, int l);

/// Bit k of the encoded word at index k (k = 0 is the LSB).
std::vector<std::uint8_t> to_bits(std::int64_t v, int l);
std::int64_t from_bits(std::span<const std::uint8_t> bits, int l);

Words to_words(const Coords& coords, int l);
Coords from_words(const Words& words, int l);

/// Smallest e with max|coordinate| * 2^-e < 1. Scaling by a power of two is exact, so the
/// normalization can be undone bit-for-bit.
int normalization_exponent(const Mesh& mesh);
/// Multiplies every coordinate by 2^exponent.
Mesh scale_pow2(const Mesh& mesh, int exponent);

}  // namespace mrdh
