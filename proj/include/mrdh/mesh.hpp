#pragma once

#include <cstdint>

#include <Eigen/Core>

namespace mrdh {

using Vertices = Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>;
/// Face rows hold 1-based vertex indices.
using Faces = Eigen::Matrix<std::uint32_t, Eigen::Dynamic, 3, Eigen::RowMajor>;

/// Triangular mesh: vertex positions plus faces in file order.
struct Mesh {
  Vertices vertices;
  Faces faces;

  Eigen::Index vertex_count() const { return vertices.rows(); }
  Eigen::Index face_count() const { return faces.rows(); }

  friend bool operator==(const Mesh& a, const Mesh& b) {
    return a.vertices.rows() == b.vertices.rows() && a.faces.rows() == b.faces.rows() &&
           a.vertices == b.vertices && a.faces == b.faces;
  }
};

/// Throws InvalidMesh unless n >= 3, m >= 1, every index is in [1, n] and every face has
/// three distinct corners.
void validate_faces(const Faces& faces, Eigen::Index vertex_count);
void validate_mesh(const Mesh& mesh);

}  // namespace mrdh
