#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "mrdh/mesh.hpp"

namespace mrdh {

enum class MeshFormat { kOff, kObj };

/// Picks the format from a file extension (.off / .obj, case-insensitive).
MeshFormat format_from_path(const std::filesystem::path& path);

/// Parses an OFF or OBJ document holding only vertices and triangular faces.
///
/// Vertex and face order are kept as in the file. OFF indices are 0-based on disk and
/// become 1-based here; OBJ indices are already 1-based (negative OBJ indices are resolved
/// relative to the vertices read so far). Normals, texture coordinates, polygon faces and
/// per-element attributes raise ParseError naming the offending line.
Mesh parse_mesh(std::string_view text, MeshFormat format);

/// Serializes a mesh. Coordinates use the shortest decimal form that reads back to the
/// same double, so parse_mesh(write_mesh(m)) == m.
std::string write_mesh(const Mesh& mesh, MeshFormat format);

Mesh load_mesh(const std::filesystem::path& path);
void save_mesh(const Mesh& mesh, const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace mrdh
