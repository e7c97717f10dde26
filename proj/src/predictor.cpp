#include "mrdh/predictor.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "mrdh/error.hpp"

namespace mrdh {

std::uint64_t predict_word(std::span<const std::uint64_t> patterns, int l) {
  const std::size_t count = patterns.size();
  std::uint64_t out = 0;
  for (int k = 0; k < l; ++k) {
    std::size_t ones = 0;
    for (auto w : patterns) ones += (w >> k) & 1U;
    if (2 * ones >= count) out |= std::uint64_t{1} << k;
  }
  return out;
}

int axis_label(std::uint64_t target, std::uint64_t predicted, int l) {
  const std::uint64_t diff = (target ^ predicted) & word_mask(l);
  return l - std::bit_width(diff);
}

Eigen::Matrix<std::uint64_t, 1, 3> predict_vertex(const Words& words, std::span<const std::uint32_t> predictors,
                                                  int l) {
  Eigen::Matrix<std::uint64_t, 1, 3> out;
  std::vector<std::uint64_t> column(predictors.size());
  for (int a = 0; a < 3; ++a) {
    for (std::size_t i = 0; i < predictors.size(); ++i) column[i] = words(predictors[i] - 1, a);
    out(a) = predict_word(column, l);
  }
  return out;
}

int vertex_label(const Words& words, int l, std::uint32_t vertex, std::span<const std::uint32_t> predictors) {
  if (predictors.empty()) return 0;
  const auto predicted = predict_vertex(words, predictors, l);
  int t = l;
  for (int a = 0; a < 3; ++a) t = std::min(t, axis_label(words(vertex - 1, a), predicted(a), l));
  return t;
}

LabelMap build_label_map(const QuantizedMesh& q, const Partition& partition) {
  if (partition.embed_set.size() + partition.predict_set.size() != static_cast<std::size_t>(q.vertex_count())) {
    throw InvalidMesh("partition does not cover the quantized mesh");
  }
  const Words words = to_words(q.coords, q.l);
  LabelMap map;
  map.l = q.l;
  map.labels.resize(partition.embed_set.size());
  for (std::size_t i = 0; i < partition.embed_set.size(); ++i) {
    map.labels[i] = static_cast<std::uint8_t>(vertex_label(words, q.l, partition.embed_set[i], partition.predictors[i]));
  }
  return map;
}

}  // namespace mrdh
