#include "mrdh/quantizer.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "mrdh/error.hpp"

namespace mrdh {
namespace {

__extension__ typedef __int128 i128;
__extension__ typedef unsigned __int128 u128;

void check_precision(int p) {
  if (p < kMinPrecision || p > kMaxPrecision) {
    throw RangeError("precision p=" + std::to_string(p) + " outside [1, 33]");
  }
}

i128 pow5(int p) {
  i128 r = 1;
  for (int i = 0; i < p; ++i) r *= 5;
  return r;
}

void check_representable(i128 q, int l, double v) {
  const i128 half = i128{1} << (l - 1);
  if (q < -half || q > half - 1) {
    throw RangeError("coordinate " + std::to_string(v) + " overflows " + std::to_string(l) + "-bit encoding");
  }
}

int bit_width128(i128 x) {
  auto u = static_cast<u128>(x < 0 ? -x : x);
  const auto hi = static_cast<std::uint64_t>(u >> 64);
  return hi ? 64 + std::bit_width(hi) : std::bit_width(static_cast<std::uint64_t>(u));
}

}  // namespace

int bit_length(int p) {
  check_precision(p);
  if (p <= 2) return 8;
  if (p <= 4) return 16;
  if (p <= 8) return 32;
  return 64;
}

std::int64_t quantize_value(double v, int p) {
  const int l = bit_length(p);
  if (!std::isfinite(v)) throw RangeError("non-finite coordinate");
  if (v == 0.0) return 0;

  if (p > 27) {
    // 5^p no longer fits beside a 53-bit mantissa in 128 bits.
    const long double x = std::floor(static_cast<long double>(v) * std::pow(10.0L, p));
    if (std::fabs(x) > 0x1p63L) check_representable(i128{x < 0 ? -1 : 1} << 64, l, v);
    const auto q = static_cast<i128>(x);
    check_representable(q, l, v);
    return static_cast<std::int64_t>(q);
  }

  // v = mant * 2^exp exactly, so v * 10^p = mant * 5^p * 2^(exp + p).
  int exp = 0;
  const double frac = std::frexp(v, &exp);
  const auto mant = static_cast<std::int64_t>(std::ldexp(frac, 53));
  const int shift = exp - 53 + p;
  const i128 prod = static_cast<i128>(mant) * pow5(p);
  i128 q;
  if (shift >= 0) {
    if (bit_width128(prod) + shift > 100) check_representable(i128{1} << 100, l, v);
    q = prod << shift;
  } else if (-shift >= 127) {
    q = prod < 0 ? -1 : 0;
  } else {
    q = prod >> (-shift);  // arithmetic shift: floor division by 2^-shift
  }
  check_representable(q, l, v);
  return static_cast<std::int64_t>(q);
}

double dequantize_value(std::int64_t q, int p) {
  double v = p <= 22 ? static_cast<double>(q) / std::pow(10.0, p)
                     : static_cast<double>(static_cast<long double>(q) / std::pow(10.0L, p));
  if (p > 27) return v;
  // Nearest double can sit just below q * 10^-p; step up so quantizing gives q back.
  while (quantize_value(v, p) < q) v = std::nextafter(v, std::numeric_limits<double>::infinity());
  return v;
}

QuantizedMesh quantize(const Mesh& mesh, int p) {
  QuantizedMesh out;
  out.p = p;
  out.l = bit_length(p);
  out.coords.resize(mesh.vertex_count(), 3);
  for (Eigen::Index i = 0; i < mesh.vertex_count(); ++i) {
    for (int c = 0; c < 3; ++c) out.coords(i, c) = quantize_value(mesh.vertices(i, c), p);
  }
  out.faces = mesh.faces;
  return out;
}

Mesh dequantize(const QuantizedMesh& q) {
  Mesh out;
  out.vertices.resize(q.vertex_count(), 3);
  for (Eigen::Index i = 0; i < q.vertex_count(); ++i) {
    for (int c = 0; c < 3; ++c) out.vertices(i, c) = dequantize_value(q.coords(i, c), q.p);
  }
  out.faces = q.faces;
  return out;
}

std::uint64_t to_word(std::int64_t v, int l) {
  if (l < 64) {
    const std::int64_t half = std::int64_t{1} << (l - 1);
    if (v < -half || v > half - 1) {
      throw RangeError("value " + std::to_string(v) + " outside " + std::to_string(l) + "-bit offset range");
    }
  }
  return (static_cast<std::uint64_t>(v) + (std::uint64_t{1} << (l - 1))) & word_mask(l);
}

std::int64_t from_word(std::uint64_t u, int l) {
  return static_cast<std::int64_t>((u & word_mask(l)) - (std::uint64_t{1} << (l - 1)));
}

std::vector<std::uint8_t> to_bits(std::int64_t v, int l) {
  const std::uint64_t u = to_word(v, l);
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(l));
  for (int k = 0; k < l; ++k) bits[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>((u >> k) & 1U);
  return bits;
}

std::int64_t from_bits(std::span<const std::uint8_t> bits, int l) {
  if (bits.size() != static_cast<std::size_t>(l)) throw RangeError("bit vector length differs from l");
  std::uint64_t u = 0;
  for (int k = 0; k < l; ++k) u |= static_cast<std::uint64_t>(bits[static_cast<std::size_t>(k)] & 1U) << k;
  return from_word(u, l);
}

Words to_words(const Coords& coords, int l) {
  Words w(coords.rows(), 3);
  for (Eigen::Index i = 0; i < coords.size(); ++i) w.data()[i] = to_word(coords.data()[i], l);
  return w;
}

Coords from_words(const Words& words, int l) {
  Coords c(words.rows(), 3);
  for (Eigen::Index i = 0; i < words.size(); ++i) c.data()[i] = from_word(words.data()[i], l);
  return c;
}

int normalization_exponent(const Mesh& mesh) {
  const double peak = mesh.vertices.size() ? mesh.vertices.cwiseAbs().maxCoeff() : 0.0;
  if (peak == 0.0) return 0;
  int e = 0;
  std::frexp(peak, &e);  // peak = f * 2^e with f in [0.5, 1)
  return e;
}

Mesh scale_pow2(const Mesh& mesh, int exponent) {
  Mesh out = mesh;
  out.vertices = mesh.vertices.unaryExpr([exponent](double v) { return std::ldexp(v, exponent); });
  return out;
}

}  // namespace mrdh
