#include "mrdh/container.hpp"

#include <algorithm>
#include <string>

#include "mrdh/error.hpp"

namespace mrdh {
namespace {

void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint64_t le(int bytes, const char* field) {
    need(static_cast<std::size_t>(bytes), field);
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(in_[pos_++]) << (8 * i);
    return v;
  }

  std::span<const std::uint8_t> take(std::size_t count, const char* field) {
    need(count, field);
    auto s = in_.subspan(pos_, count);
    pos_ += count;
    return s;
  }

  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  void need(std::size_t count, const char* field) const {
    if (in_.size() - pos_ < count) throw FormatError(std::string("container truncated in ") + field);
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace

bool looks_like_container(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 4 && std::equal(StegoContainer::kMagic.begin(), StegoContainer::kMagic.end(), bytes.begin());
}

std::vector<std::uint8_t> write_container(const StegoContainer& c) {
  if (c.l != bit_length(c.p)) throw FormatError("container l does not match p");
  const auto word_bytes = static_cast<std::size_t>(c.l / 8);
  std::vector<std::uint8_t> out;
  out.reserve(StegoContainer::kHeaderBytes + c.aux_info.size() + static_cast<std::size_t>(c.coords.size()) * word_bytes +
              static_cast<std::size_t>(c.faces.size()) * 4);
  out.insert(out.end(), StegoContainer::kMagic.begin(), StegoContainer::kMagic.end());
  put_le(out, c.version, 2);
  put_le(out, static_cast<std::uint64_t>(c.p), 1);
  put_le(out, static_cast<std::uint64_t>(c.l), 1);
  put_le(out, static_cast<std::uint64_t>(c.strategy), 1);
  put_le(out, c.normalization_exponent ? 1 : 0, 1);
  put_le(out, static_cast<std::uint16_t>(c.normalization_exponent.value_or(0)), 2);
  out.insert(out.end(), c.nonce.bytes.begin(), c.nonce.bytes.end());
  put_le(out, static_cast<std::uint64_t>(c.coords.rows()), 4);
  put_le(out, static_cast<std::uint64_t>(c.faces.rows()), 4);
  put_le(out, c.aux_info.size(), 4);
  out.insert(out.end(), c.aux_info.begin(), c.aux_info.end());
  for (Eigen::Index i = 0; i < c.coords.size(); ++i) put_le(out, c.coords.data()[i], static_cast<int>(word_bytes));
  for (Eigen::Index i = 0; i < c.faces.size(); ++i) put_le(out, c.faces.data()[i], 4);
  return out;
}

StegoContainer read_container(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) throw FormatError("container truncated in magic");
  if (!looks_like_container(bytes)) throw FormatError("bad magic: not an MRDH container");
  Reader rd(bytes.subspan(4));
  StegoContainer c;
  c.version = static_cast<std::uint16_t>(rd.le(2, "version"));
  if (c.version != StegoContainer::kVersion) {
    throw FormatError("unsupported container version " + std::to_string(c.version));
  }
  c.p = static_cast<int>(rd.le(1, "p"));
  c.l = static_cast<int>(rd.le(1, "l"));
  if (c.p < kMinPrecision || c.p > kMaxPrecision) throw FormatError("precision out of range");
  if (c.l != bit_length(c.p)) throw FormatError("bit length does not match precision");
  const auto strategy = rd.le(1, "strategy");
  if (strategy > 1) throw FormatError("unknown partition strategy " + std::to_string(strategy));
  c.strategy = static_cast<Strategy>(strategy);
  const auto flags = rd.le(1, "flags");
  if (flags > 1) throw FormatError("unknown header flags");
  const auto exponent = static_cast<std::int16_t>(rd.le(2, "normalization"));
  if (flags & 1) c.normalization_exponent = exponent;
  const auto nonce = rd.take(c.nonce.bytes.size(), "nonce");
  std::copy(nonce.begin(), nonce.end(), c.nonce.bytes.begin());
  const auto n = rd.le(4, "vertex count");
  const auto m = rd.le(4, "face count");
  const auto aux_len = rd.le(4, "aux length");
  const auto aux = rd.take(aux_len, "aux info");
  c.aux_info.assign(aux.begin(), aux.end());

  const auto word_bytes = static_cast<std::size_t>(c.l / 8);
  const std::size_t expected = 3 * n * word_bytes + 12 * m;
  if (rd.remaining() < expected) throw FormatError("container truncated: coordinate or face data missing");
  if (rd.remaining() > expected) throw FormatError("container has trailing bytes");

  c.coords.resize(static_cast<Eigen::Index>(n), 3);
  for (Eigen::Index i = 0; i < c.coords.size(); ++i) c.coords.data()[i] = rd.le(static_cast<int>(word_bytes), "coordinates");
  c.faces.resize(static_cast<Eigen::Index>(m), 3);
  for (Eigen::Index i = 0; i < c.faces.size(); ++i) c.faces.data()[i] = static_cast<std::uint32_t>(rd.le(4, "faces"));
  try {
    validate_faces(c.faces, c.vertex_count());
  } catch (const InvalidMesh& e) {
    throw FormatError(std::string("container face data invalid: ") + e.what());
  }
  return c;
}

}  // namespace mrdh
