#include "mrdh/topology.hpp"

#include <algorithm>
#include <string>

#include "mrdh/error.hpp"

namespace mrdh {

Adjacency build_adjacency(const Faces& faces, std::size_t vertex_count) {
  std::vector<std::vector<std::uint32_t>> nbrs(vertex_count);
  for (Eigen::Index f = 0; f < faces.rows(); ++f) {
    for (int c = 0; c < 3; ++c) {
      const std::uint32_t a = faces(f, c);
      const std::uint32_t b = faces(f, (c + 1) % 3);
      if (a < 1 || b < 1 || a > vertex_count || b > vertex_count) {
        throw InvalidMesh("face " + std::to_string(f + 1) + " has an out-of-range index");
      }
      if (a == b) continue;
      nbrs[a - 1].push_back(b);
      nbrs[b - 1].push_back(a);
    }
  }
  for (auto& list : nbrs) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return Adjacency(std::move(nbrs));
}

std::string_view to_string(Strategy s) { return s == Strategy::kTopology ? "topology" : "parity_only"; }

Strategy strategy_from_string(std::string_view name) {
  if (name == "topology") return Strategy::kTopology;
  if (name == "parity_only" || name == "parity") return Strategy::kParityOnly;
  throw Error("unknown strategy '" + std::string(name) + "' (expected topology or parity_only)");
}

Partition divide_vertices(const Adjacency& adj, std::size_t vertex_count, Strategy strategy) {
  const std::size_t n = vertex_count;
  if (adj.vertex_count() != n) throw InvalidMesh("adjacency size does not match vertex count");
  // index 0 unused
  std::vector<char> in_embed(n + 1, 0);
  for (std::size_t v = 1; v <= n; v += 2) in_embed[v] = 1;

  if (strategy == Strategy::kTopology) {
    std::vector<std::uint32_t> sp_neighbors(n + 1, 0);
    for (std::uint32_t v = 1; v <= n; ++v) {
      for (auto u : adj.neighbors(v)) sp_neighbors[v] += in_embed[u] ? 0 : 1;
    }
    std::vector<char> moved(n + 1, 0);
    for (std::uint32_t v = 2; v <= n; v += 2) {
      const auto nb = adj.neighbors(v);
      const std::size_t in_sp = sp_neighbors[v];
      const std::size_t in_se = nb.size() - in_sp;
      if (in_se > 2 * in_sp || in_sp < 2) continue;
      const bool starves_moved = std::any_of(nb.begin(), nb.end(), [&](std::uint32_t u) {
        return moved[u] && sp_neighbors[u] < 3;
      });
      if (starves_moved) continue;
      in_embed[v] = 1;
      moved[v] = 1;
      for (auto u : nb) --sp_neighbors[u];
    }
  }

  Partition part;
  for (std::uint32_t v = 1; v <= n; ++v) (in_embed[v] ? part.embed_set : part.predict_set).push_back(v);
  part.predictors.reserve(part.embed_set.size());
  for (auto u : part.embed_set) {
    auto& list = part.predictors.emplace_back();
    for (auto w : adj.neighbors(u)) {
      if (!in_embed[w]) list.push_back(w);
    }
  }
  return part;
}

std::size_t weakly_predicted_count(const Partition& partition) {
  return static_cast<std::size_t>(std::count_if(partition.predictors.begin(), partition.predictors.end(),
                                                [](const auto& p) { return p.size() < 2; }));
}

}  // namespace mrdh
