#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mrdh/quantizer.hpp"
#include "mrdh/topology.hpp"

namespace mrdh {

/// Per embedding vertex (embed_set order): number of leading bit planes every coordinate
/// shares with its prediction.
struct LabelMap {
  int l = 32;
  std::vector<std::uint8_t> labels;

  /// l_p: each of the three coordinates of a vertex with label t carries t bits.
  std::size_t capacity_bits() const {
    std::size_t sum = 0;
    for (auto t : labels) sum += t;
    return 3 * sum;
  }

  friend bool operator==(const LabelMap&, const LabelMap&) = default;
};

/// Per-plane majority vote over the predictor words; a tie yields 1.
std::uint64_t predict_word(std::span<const std::uint64_t> patterns, int l);

/// Length of the common prefix of two l-bit words, counted from the MSB.
int axis_label(std::uint64_t target, std::uint64_t predicted, int l);

/// Predicted words of one vertex (x, y, z) from the words of its predictors.
Eigen::Matrix<std::uint64_t, 1, 3> predict_vertex(const Words& words, std::span<const std::uint32_t> predictors,
                                                  int l);

/// min over axes of axis_label; 0 when there are no predictors.
int vertex_label(const Words& words, int l, std::uint32_t vertex, std::span<const std::uint32_t> predictors);

LabelMap build_label_map(const QuantizedMesh& q, const Partition& partition);

/// Overwrites the top `planes` bits of `word` with those of `predicted`.
inline std::uint64_t restore_prefix(std::uint64_t word, std::uint64_t predicted, int planes, int l) {
  if (planes <= 0) return word;
  const std::uint64_t low = planes >= l ? 0 : word_mask(l - planes);
  const std::uint64_t high = word_mask(l) & ~low;
  return (word & low) | (predicted & high);
}

}  // namespace mrdh
