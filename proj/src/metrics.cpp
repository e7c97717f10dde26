#include "mrdh/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <vector>

#include "mrdh/payload.hpp"

namespace mrdh {

double directed_hausdorff(const Vertices& from, const Vertices& to) {
  if (from.rows() == 0 || to.rows() == 0) throw InvalidMesh("hausdorff distance of an empty vertex set");
  std::vector<Eigen::Index> order(static_cast<std::size_t>(to.rows()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return to(a, 0) < to(b, 0); });
  std::vector<double> xs(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) xs[i] = to(order[i], 0);

  double worst_sq = 0.0;
  for (Eigen::Index i = 0; i < from.rows(); ++i) {
    const Eigen::RowVector3d p = from.row(i);
    double best_sq = std::numeric_limits<double>::infinity();
    const auto start = static_cast<std::ptrdiff_t>(std::lower_bound(xs.begin(), xs.end(), p(0)) - xs.begin());
    const auto size = static_cast<std::ptrdiff_t>(xs.size());
    std::ptrdiff_t hi = start;
    std::ptrdiff_t lo = start - 1;
    // Grow outward in x; a side is done once its x-gap alone exceeds the best distance.
    // Stop early when this point cannot raise the running maximum.
    while ((hi < size || lo >= 0) && best_sq > worst_sq) {
      if (hi < size) {
        const double dx = xs[static_cast<std::size_t>(hi)] - p(0);
        if (dx * dx >= best_sq) {
          hi = size;
        } else {
          best_sq = std::min(best_sq, (to.row(order[static_cast<std::size_t>(hi)]) - p).squaredNorm());
          ++hi;
        }
      }
      if (lo >= 0) {
        const double dx = p(0) - xs[static_cast<std::size_t>(lo)];
        if (dx * dx >= best_sq) {
          lo = -1;
        } else {
          best_sq = std::min(best_sq, (to.row(order[static_cast<std::size_t>(lo)]) - p).squaredNorm());
          --lo;
        }
      }
    }
    worst_sq = std::max(worst_sq, best_sq);
  }
  return std::sqrt(worst_sq);
}

double hausdorff_brute_force(const Vertices& a, const Vertices& b) {
  if (a.rows() == 0 || b.rows() == 0) throw InvalidMesh("hausdorff distance of an empty vertex set");
  auto directed = [](const Vertices& from, const Vertices& to) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < from.rows(); ++i) {
      worst = std::max(worst, (to.rowwise() - from.row(i)).rowwise().squaredNorm().minCoeff());
    }
    return worst;
  };
  return std::sqrt(std::max(directed(a, b), directed(b, a)));
}

EvalReport evaluate(const Mesh& original, const StegoContainer& container, const Mesh& recovered) {
  if (original.vertex_count() != container.vertex_count() || recovered.vertex_count() != original.vertex_count()) {
    throw InvalidMesh("original, container and recovered mesh disagree on vertex count");
  }
  if (original.faces.rows() != container.faces.rows() || original.faces != container.faces) {
    throw InvalidMesh("container face data differs from the original mesh");
  }
  const ContainerLayout layout = analyze(container);
  EvalReport r;
  r.n = static_cast<std::size_t>(original.vertex_count());
  r.m = static_cast<std::size_t>(original.face_count());
  r.s_e = layout.partition.embed_set.size();
  r.utilization = layout.partition.utilization(r.n);
  r.l_p = layout.capacity.l_p;
  r.l_ai = layout.capacity.l_ai;
  r.er_bpv = layout.capacity.er_bpv;
  r.payload_bits = layout.aux.payload_bit_len;
  r.weakly_predicted = weakly_predicted_count(layout.partition);
  r.snr = snr(original, recovered);
  r.hausdorff = hausdorff(original, recovered);
  return r;
}

std::string_view csv_header() { return "mesh,n,m,strategy,p,|S_e|,utilization,l_p,l_ai,ER,snr,hausdorff"; }

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream ss;
  ss.precision(10);
  ss << v;
  return ss.str();
}

std::string csv_row(std::string_view mesh_name, Strategy strategy, int p, const EvalReport& r) {
  std::ostringstream ss;
  ss << mesh_name << ',' << r.n << ',' << r.m << ',' << to_string(strategy) << ',' << p << ',' << r.s_e << ','
     << format_number(r.utilization) << ',' << r.l_p << ',' << r.l_ai << ',' << format_number(r.er_bpv) << ','
     << format_number(r.snr) << ',' << format_number(r.hausdorff);
  return ss.str();
}

}  // namespace mrdh
