#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "mrdh/mesh.hpp"

namespace mrdh {

/// Vertex neighbourhoods derived from face data. Vertices are 1-based.
class Adjacency {
 public:
  Adjacency() = default;
  explicit Adjacency(std::vector<std::vector<std::uint32_t>> neighbors) : neighbors_(std::move(neighbors)) {}

  std::size_t vertex_count() const { return neighbors_.size(); }
  /// Sorted neighbours of vertex v (1-based).
  std::span<const std::uint32_t> neighbors(std::uint32_t v) const { return neighbors_[v - 1]; }

 private:
  std::vector<std::vector<std::uint32_t>> neighbors_;
};

Adjacency build_adjacency(const Faces& faces, std::size_t vertex_count);

enum class Strategy : std::uint8_t {
  kTopology = 0,
  kParityOnly = 1,
};

std::string_view to_string(Strategy s);
Strategy strategy_from_string(std::string_view name);

/// Split of the vertices into the embedding set and the prediction set.
struct Partition {
  std::vector<std::uint32_t> embed_set;    // ascending
  std::vector<std::uint32_t> predict_set;  // ascending
  /// predictors[i] = neighbours of embed_set[i] that belong to the prediction set, ascending.
  std::vector<std::vector<std::uint32_t>> predictors;

  double utilization(std::size_t vertex_count) const {
    return vertex_count ? static_cast<double>(embed_set.size()) / static_cast<double>(vertex_count) : 0.0;
  }
};

/// Divides vertices into embedding and prediction sets.
///
/// kParityOnly: odd indices embed, even indices predict.
///
/// kTopology: starts from the parity split, then scans even vertices in ascending order and
/// moves v into the embedding set when, with set membership as it stands at that moment,
///   (a) #neighbours in S_e <= 2 * #neighbours in S_p,
///   (b) v keeps at least 2 neighbours in S_p, and
///   (c) no previously moved vertex adjacent to v drops below 2 neighbours in S_p.
/// Depends on face data only, so sender, hider and receiver derive the same partition.
Partition divide_vertices(const Adjacency& adj, std::size_t vertex_count, Strategy strategy);

inline Partition divide_vertices(const Faces& faces, std::size_t vertex_count, Strategy strategy) {
  return divide_vertices(build_adjacency(faces, vertex_count), vertex_count, strategy);
}

/// Number of embedding vertices with fewer than 2 predictors.
std::size_t weakly_predicted_count(const Partition& partition);

}  // namespace mrdh
