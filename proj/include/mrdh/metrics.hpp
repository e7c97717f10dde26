#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "mrdh/container.hpp"
#include "mrdh/error.hpp"
#include "mrdh/mesh.hpp"

namespace mrdh {

/// Reported when the recovered vertices equal the originals exactly.
inline constexpr double kInfiniteSnr = std::numeric_limits<double>::infinity();

/// 10 log10 of the spread of `original` around its per-axis mean over the squared
/// reconstruction error. Rows correspond one to one.
template <typename DerivedA, typename DerivedB>
double snr(const Eigen::MatrixBase<DerivedA>& original, const Eigen::MatrixBase<DerivedB>& recovered) {
  if (original.rows() != recovered.rows() || original.cols() != 3 || recovered.cols() != 3) {
    throw InvalidMesh("snr needs two n x 3 vertex sets of equal size");
  }
  if (original.rows() == 0) throw InvalidMesh("snr of an empty vertex set");
  const Eigen::RowVector3d mean = original.template cast<double>().colwise().mean();
  const double signal = (original.template cast<double>().rowwise() - mean).squaredNorm();
  const double noise = (recovered.template cast<double>() - original.template cast<double>()).squaredNorm();
  if (noise == 0.0) return kInfiniteSnr;
  return 10.0 * std::log10(signal / noise);
}

inline double snr(const Mesh& original, const Mesh& recovered) { return snr(original.vertices, recovered.vertices); }

/// max over `from` of the distance to the nearest vertex of `to`. Exact; uses an x-sorted
/// sweep with early termination instead of the full |A|*|B| scan.
double directed_hausdorff(const Vertices& from, const Vertices& to);

/// Symmetric vertex-set Hausdorff distance.
template <typename DerivedA, typename DerivedB>
double hausdorff(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() == 0 || b.rows() == 0) throw InvalidMesh("hausdorff distance of an empty vertex set");
  const Vertices va = a.template cast<double>();
  const Vertices vb = b.template cast<double>();
  return std::max(directed_hausdorff(va, vb), directed_hausdorff(vb, va));
}

inline double hausdorff(const Mesh& a, const Mesh& b) { return hausdorff(a.vertices, b.vertices); }

/// O(|A| * |B|) reference evaluation.
double hausdorff_brute_force(const Vertices& a, const Vertices& b);

struct EvalReport {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t s_e = 0;
  double utilization = 0.0;
  std::size_t l_p = 0;
  std::size_t l_ai = 0;
  double er_bpv = 0.0;
  std::uint64_t payload_bits = 0;
  /// Embedding vertices left with fewer than 2 predictors.
  std::size_t weakly_predicted = 0;
  double snr = kInfiniteSnr;
  double hausdorff = 0.0;
};

/// Aggregates fidelity and capacity figures for one pipeline run.
EvalReport evaluate(const Mesh& original, const StegoContainer& container, const Mesh& recovered);

std::string_view csv_header();
std::string csv_row(std::string_view mesh_name, Strategy strategy, int p, const EvalReport& report);
std::string format_number(double v);

}  // namespace mrdh
