#include "mrdh/locmap_codec.hpp"

#include <string>

#include "mrdh/error.hpp"

namespace mrdh {
namespace {

constexpr std::uint32_t kTop = 1U << 24;
constexpr std::uint32_t kMaxTotal = 1U << 16;

class FrequencyModel {
 public:
  explicit FrequencyModel(int symbols) : freq_(static_cast<std::size_t>(symbols), 1), total_(static_cast<std::uint32_t>(symbols)) {}

  std::uint32_t total() const { return total_; }
  std::size_t size() const { return freq_.size(); }
  std::uint32_t freq(std::size_t s) const { return freq_[s]; }

  std::uint32_t cumulative(std::size_t s) const {
    std::uint32_t c = 0;
    for (std::size_t i = 0; i < s; ++i) c += freq_[i];
    return c;
  }

  // Symbol whose cumulative interval holds `target`; writes its lower bound to `cum`.
  std::size_t find(std::uint32_t target, std::uint32_t& cum) const {
    std::uint32_t c = 0;
    for (std::size_t s = 0; s < freq_.size(); ++s) {
      if (target < c + freq_[s]) {
        cum = c;
        return s;
      }
      c += freq_[s];
    }
    cum = c;
    return freq_.size();
  }

  void update(std::size_t s) {
    ++freq_[s];
    if (++total_ >= kMaxTotal) {
      total_ = 0;
      for (auto& f : freq_) {
        f = (f + 1) / 2;
        total_ += f;
      }
    }
  }

 private:
  std::vector<std::uint32_t> freq_;
  std::uint32_t total_;
};

class RangeEncoder {
 public:
  void encode(std::uint32_t cum, std::uint32_t freq, std::uint32_t total) {
    const std::uint32_t r = range_ / total;
    low_ += static_cast<std::uint64_t>(r) * cum;
    range_ = r * freq;
    while (range_ < kTop) {
      range_ <<= 8;
      shift_low();
    }
  }

  std::vector<std::uint8_t> finish() {
    for (int i = 0; i < 5; ++i) shift_low();
    return std::move(out_);
  }

 private:
  void shift_low() {
    if (static_cast<std::uint32_t>(low_) < 0xFF000000U || (low_ >> 32) != 0) {
      const auto carry = static_cast<std::uint8_t>(low_ >> 32);
      std::uint8_t temp = cache_;
      do {
        out_.push_back(static_cast<std::uint8_t>(temp + carry));
        temp = 0xFF;
      } while (--cache_size_ != 0);
      cache_ = static_cast<std::uint8_t>(low_ >> 24);
    }
    ++cache_size_;
    low_ = (low_ & 0x00FFFFFFU) << 8;
  }

  std::uint64_t low_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFU;
  std::uint8_t cache_ = 0;
  std::uint64_t cache_size_ = 1;
  std::vector<std::uint8_t> out_;
};

class RangeDecoder {
 public:
  explicit RangeDecoder(std::span<const std::uint8_t> in) : in_(in) {
    if (next() != 0) throw DecodeError("label stream does not start with a zero byte");
    for (int i = 0; i < 4; ++i) code_ = (code_ << 8) | next();
  }

  std::size_t decode(FrequencyModel& model) {
    const std::uint32_t total = model.total();
    r_ = range_ / total;
    const std::uint32_t target = code_ / r_;
    if (target >= total) throw DecodeError("label stream is corrupt");
    std::uint32_t cum = 0;
    const std::size_t s = model.find(target, cum);
    code_ -= r_ * cum;
    range_ = r_ * model.freq(s);
    while (range_ < kTop) {
      code_ = (code_ << 8) | next();
      range_ <<= 8;
    }
    return s;
  }

  bool exhausted() const { return pos_ == in_.size(); }
  std::uint32_t code() const { return code_; }

 private:
  std::uint32_t next() {
    if (pos_ >= in_.size()) throw DecodeError("label stream ended prematurely");
    return in_[pos_++];
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
  std::uint32_t code_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFU;
  std::uint32_t r_ = 0;
};

void check_alphabet(int l) {
  if (l < 1 || l > 64) throw DecodeError("label alphabet size out of range: l=" + std::to_string(l));
}

void put_be(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = bytes - 1; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_be(std::span<const std::uint8_t> in, std::size_t at, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v = (v << 8) | in[at + static_cast<std::size_t>(i)];
  return v;
}

void write_varint(std::vector<std::uint8_t>& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(v | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint64_t read_varint(std::span<const std::uint8_t> in, std::size_t& pos) {
  std::uint64_t v = 0;
  for (int shift = 0; shift < 64; shift += 7) {
    if (pos >= in.size()) throw DecodeError("label stream ended inside its count prefix");
    const std::uint8_t b = in[pos++];
    v |= static_cast<std::uint64_t>(b & 0x7F) << shift;
    if (!(b & 0x80)) return v;
  }
  throw DecodeError("label count prefix is malformed");
}

}  // namespace

std::vector<std::uint8_t> encode_labels(std::span<const std::uint8_t> labels, int l) {
  check_alphabet(l);
  FrequencyModel model(l + 1);
  RangeEncoder enc;
  std::vector<std::uint8_t> out;
  write_varint(out, labels.size());
  for (auto t : labels) {
    if (t > l) throw DecodeError("label " + std::to_string(t) + " exceeds l=" + std::to_string(l));
    enc.encode(model.cumulative(t), model.freq(t), model.total());
    model.update(t);
  }
  const auto body = enc.finish();
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

std::vector<std::uint8_t> decode_labels(std::span<const std::uint8_t> bytes, std::size_t count, int l) {
  check_alphabet(l);
  FrequencyModel model(l + 1);
  std::size_t header = 0;
  const std::uint64_t stored = read_varint(bytes, header);
  if (stored != count) {
    throw DecodeError("label stream holds " + std::to_string(stored) + " labels, expected " + std::to_string(count));
  }
  RangeDecoder dec(bytes.subspan(header));
  std::vector<std::uint8_t> labels;
  labels.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t s = dec.decode(model);
    labels.push_back(static_cast<std::uint8_t>(s));
    model.update(s);
  }
  if (!dec.exhausted()) throw DecodeError("label stream has trailing bytes");
  if (dec.code() != 0) throw DecodeError("label stream does not terminate cleanly");
  return labels;
}

std::vector<std::uint8_t> serialize_aux(const AuxInfo& aux) {
  std::vector<std::uint8_t> out;
  out.reserve(AuxInfo::kFixedBytes + aux.compressed_map.size());
  put_be(out, aux.s_e_count, 4);
  put_be(out, aux.payload_bit_len, 8);
  put_be(out, aux.compressed_map.size(), 4);
  out.insert(out.end(), aux.compressed_map.begin(), aux.compressed_map.end());
  return out;
}

AuxInfo parse_aux(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < AuxInfo::kFixedBytes) throw DecodeError("auxiliary info truncated");
  AuxInfo aux;
  aux.s_e_count = static_cast<std::uint32_t>(get_be(bytes, 0, 4));
  aux.payload_bit_len = get_be(bytes, 4, 8);
  const auto map_len = get_be(bytes, 12, 4);
  if (bytes.size() != AuxInfo::kFixedBytes + map_len) {
    throw DecodeError("auxiliary info length " + std::to_string(bytes.size()) + " does not match map length " +
                      std::to_string(map_len));
  }
  aux.compressed_map.assign(bytes.begin() + AuxInfo::kFixedBytes, bytes.end());
  return aux;
}

AuxInfo make_aux(std::span<const std::uint8_t> labels, int l, std::uint64_t payload_bit_len) {
  AuxInfo aux;
  aux.s_e_count = static_cast<std::uint32_t>(labels.size());
  aux.payload_bit_len = payload_bit_len;
  aux.compressed_map = encode_labels(labels, l);
  return aux;
}

std::vector<std::uint8_t> decode_aux_labels(const AuxInfo& aux, int l) {
  return decode_labels(aux.compressed_map, aux.s_e_count, l);
}

}  // namespace mrdh
