#include "mrdh/mesh.hpp"

#include <string>

#include "mrdh/error.hpp"

namespace mrdh {

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kMalformedHeader: return "malformed header";
    case ParseErrorKind::kNonTriangularFace: return "non-triangular face";
    case ParseErrorKind::kIndexOutOfRange: return "index out of range";
    case ParseErrorKind::kNonNumeric: return "non-numeric value";
    case ParseErrorKind::kUnsupported: return "unsupported element";
    case ParseErrorKind::kDegenerateFace: return "degenerate face";
    case ParseErrorKind::kCountMismatch: return "count mismatch";
  }
  return "parse error";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail)
    : Error("line " + std::to_string(line) + ": " + to_string(kind) +
            (detail.empty() ? std::string() : ": " + detail)),
      kind_(kind),
      line_(line) {}

CapacityError::CapacityError(std::size_t requested_bits, std::size_t max_bytes)
    : Error("payload of " + std::to_string(requested_bits) +
            " bits exceeds net capacity; at most " + std::to_string(max_bytes) + " bytes fit"),
      requested_bits_(requested_bits),
      max_bytes_(max_bytes) {}

void validate_faces(const Faces& faces, Eigen::Index vertex_count) {
  if (vertex_count < 3) {
    throw InvalidMesh("mesh needs at least 3 vertices, got " + std::to_string(vertex_count));
  }
  if (faces.rows() < 1) throw InvalidMesh("mesh has no faces");
  const auto n = static_cast<std::uint64_t>(vertex_count);
  for (Eigen::Index f = 0; f < faces.rows(); ++f) {
    for (int c = 0; c < 3; ++c) {
      const std::uint32_t idx = faces(f, c);
      if (idx < 1 || idx > n) {
        throw InvalidMesh("face " + std::to_string(f + 1) + " references vertex " +
                          std::to_string(idx) + " outside [1, " + std::to_string(n) + "]");
      }
    }
    if (faces(f, 0) == faces(f, 1) || faces(f, 1) == faces(f, 2) || faces(f, 0) == faces(f, 2)) {
      throw InvalidMesh("face " + std::to_string(f + 1) + " repeats a vertex");
    }
  }
}

void validate_mesh(const Mesh& mesh) { validate_faces(mesh.faces, mesh.vertex_count()); }

}  // namespace mrdh
