#include "mrdh/mesh_io.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "mrdh/error.hpp"

namespace mrdh {
namespace {

// Splits a document into lines while keeping the 1-based line number.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  // Next line with comments stripped and at least one token; false at end of input.
  bool next(std::vector<std::string_view>& tokens) {
    while (pos_ < text_.size()) {
      auto end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view line = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      ++line_no_;
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      tokenize(line, tokens);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  std::size_t line() const { return line_no_; }

 private:
  static void tokenize(std::string_view line, std::vector<std::string_view>& out) {
    out.clear();
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j > i) out.push_back(line.substr(i, j - i));
      i = j;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

double parse_double(std::string_view tok, std::size_t line) {
  double v = 0.0;
  const char* first = tok.data();
  if (!tok.empty() && tok.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
    throw ParseError(ParseErrorKind::kNonNumeric, line, "'" + std::string(tok) + "'");
  }
  return v;
}

std::int64_t parse_int(std::string_view tok, std::size_t line, ParseErrorKind kind) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(kind, line, "'" + std::string(tok) + "'");
  }
  return v;
}

void check_face(const std::array<std::int64_t, 3>& idx, std::int64_t n, std::size_t line) {
  for (auto i : idx) {
    if (i < 1 || i > n) {
      throw ParseError(ParseErrorKind::kIndexOutOfRange, line,
                       "vertex " + std::to_string(i) + " not in [1, " + std::to_string(n) + "]");
    }
  }
  if (idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2]) {
    throw ParseError(ParseErrorKind::kDegenerateFace, line, "repeated vertex index");
  }
}

Mesh assemble(const std::vector<double>& coords, const std::vector<std::uint32_t>& faces) {
  Mesh mesh;
  const auto n = static_cast<Eigen::Index>(coords.size() / 3);
  const auto m = static_cast<Eigen::Index>(faces.size() / 3);
  mesh.vertices = Eigen::Map<const Vertices>(coords.data(), n, 3);
  mesh.faces = Eigen::Map<const Faces>(faces.data(), m, 3);
  if (n < 3) throw ParseError(ParseErrorKind::kCountMismatch, 0, "fewer than 3 vertices");
  if (m < 1) throw ParseError(ParseErrorKind::kCountMismatch, 0, "no faces");
  return mesh;
}

Mesh parse_off(std::string_view text) {
  LineReader reader(text);
  std::vector<std::string_view> tok;
  if (!reader.next(tok)) throw ParseError(ParseErrorKind::kMalformedHeader, 0, "empty document");
  if (tok[0] != "OFF") {
    throw ParseError(ParseErrorKind::kMalformedHeader, reader.line(),
                     "expected 'OFF', found '" + std::string(tok[0]) + "'");
  }
  // Counts may share the header line ("OFF 8 12 0").
  std::vector<std::string_view> counts(tok.begin() + 1, tok.end());
  if (counts.empty()) {
    if (!reader.next(tok)) throw ParseError(ParseErrorKind::kMalformedHeader, reader.line(), "missing counts");
    counts = tok;
  }
  if (counts.size() != 3) {
    throw ParseError(ParseErrorKind::kMalformedHeader, reader.line(), "counts line needs 'nv nf ne'");
  }
  const auto nv = parse_int(counts[0], reader.line(), ParseErrorKind::kMalformedHeader);
  const auto nf = parse_int(counts[1], reader.line(), ParseErrorKind::kMalformedHeader);
  parse_int(counts[2], reader.line(), ParseErrorKind::kMalformedHeader);
  if (nv < 0 || nf < 0) throw ParseError(ParseErrorKind::kMalformedHeader, reader.line(), "negative count");

  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(nv) * 3);
  for (std::int64_t i = 0; i < nv; ++i) {
    if (!reader.next(tok)) {
      throw ParseError(ParseErrorKind::kCountMismatch, reader.line(),
                       "expected " + std::to_string(nv) + " vertices, found " + std::to_string(i));
    }
    if (tok.size() != 3) {
      throw ParseError(tok.size() > 3 ? ParseErrorKind::kUnsupported : ParseErrorKind::kNonNumeric,
                       reader.line(), "vertex line must hold exactly x y z");
    }
    for (auto t : tok) coords.push_back(parse_double(t, reader.line()));
  }

  std::vector<std::uint32_t> faces;
  faces.reserve(static_cast<std::size_t>(nf) * 3);
  for (std::int64_t f = 0; f < nf; ++f) {
    if (!reader.next(tok)) {
      throw ParseError(ParseErrorKind::kCountMismatch, reader.line(),
                       "expected " + std::to_string(nf) + " faces, found " + std::to_string(f));
    }
    const auto k = parse_int(tok[0], reader.line(), ParseErrorKind::kNonNumeric);
    if (k != 3) {
      throw ParseError(ParseErrorKind::kNonTriangularFace, reader.line(),
                       "face has " + std::to_string(k) + " corners");
    }
    if (tok.size() < 4) throw ParseError(ParseErrorKind::kCountMismatch, reader.line(), "face lists fewer than 3 indices");
    if (tok.size() > 4) throw ParseError(ParseErrorKind::kUnsupported, reader.line(), "face attributes are not supported");
    std::array<std::int64_t, 3> idx{};
    for (int c = 0; c < 3; ++c) idx[c] = parse_int(tok[c + 1], reader.line(), ParseErrorKind::kNonNumeric) + 1;
    check_face(idx, nv, reader.line());
    for (auto i : idx) faces.push_back(static_cast<std::uint32_t>(i));
  }
  if (reader.next(tok)) throw ParseError(ParseErrorKind::kCountMismatch, reader.line(), "trailing data after faces");
  return assemble(coords, faces);
}

std::int64_t resolve_obj_index(std::string_view tok, std::int64_t n, std::size_t line) {
  if (tok.find('/') != std::string_view::npos) {
    throw ParseError(ParseErrorKind::kUnsupported, line, "texture/normal face references are not supported");
  }
  const auto raw = parse_int(tok, line, ParseErrorKind::kNonNumeric);
  if (raw < 0) return n + 1 + raw;
  if (raw == 0) throw ParseError(ParseErrorKind::kIndexOutOfRange, line, "OBJ indices start at 1");
  return raw;
}

Mesh parse_obj(std::string_view text) {
  LineReader reader(text);
  std::vector<std::string_view> tok;
  std::vector<double> coords;
  std::vector<std::uint32_t> faces;
  // Face references are checked against the final vertex count.
  std::vector<std::size_t> face_lines;
  while (reader.next(tok)) {
    const auto key = tok[0];
    if (key == "v") {
      if (tok.size() != 4) {
        throw ParseError(tok.size() > 4 ? ParseErrorKind::kUnsupported : ParseErrorKind::kNonNumeric,
                         reader.line(), "vertex line must hold exactly x y z");
      }
      for (int c = 1; c <= 3; ++c) coords.push_back(parse_double(tok[c], reader.line()));
    } else if (key == "f") {
      if (tok.size() != 4) {
        throw ParseError(ParseErrorKind::kNonTriangularFace, reader.line(),
                         "face has " + std::to_string(tok.size() - 1) + " corners");
      }
      const auto n_so_far = static_cast<std::int64_t>(coords.size() / 3);
      for (int c = 1; c <= 3; ++c) {
        const auto idx = resolve_obj_index(tok[c], n_so_far, reader.line());
        if (idx < 1 || idx > std::int64_t{UINT32_MAX}) {
          throw ParseError(ParseErrorKind::kIndexOutOfRange, reader.line(), std::string(tok[c]));
        }
        faces.push_back(static_cast<std::uint32_t>(idx));
      }
      face_lines.push_back(reader.line());
    } else if (key == "vn" || key == "vt" || key == "vp") {
      throw ParseError(ParseErrorKind::kUnsupported, reader.line(),
                       "'" + std::string(key) + "' elements are not supported");
    } else if (key == "o" || key == "g" || key == "s" || key == "mtllib" || key == "usemtl") {
      continue;
    } else {
      throw ParseError(ParseErrorKind::kUnsupported, reader.line(), "unknown element '" + std::string(key) + "'");
    }
  }
  const auto n = static_cast<std::int64_t>(coords.size() / 3);
  for (std::size_t f = 0; f < face_lines.size(); ++f) {
    check_face({faces[3 * f], faces[3 * f + 1], faces[3 * f + 2]}, n, face_lines[f]);
  }
  return assemble(coords, faces);
}

void append_double(std::string& out, double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), ptr);
}

}  // namespace

MeshFormat format_from_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".off") return MeshFormat::kOff;
  if (ext == ".obj") return MeshFormat::kObj;
  throw Error("unrecognized mesh extension '" + ext + "' (expected .off or .obj)");
}

Mesh parse_mesh(std::string_view text, MeshFormat format) {
  return format == MeshFormat::kOff ? parse_off(text) : parse_obj(text);
}

std::string write_mesh(const Mesh& mesh, MeshFormat format) {
  std::string out;
  out.reserve(static_cast<std::size_t>(mesh.vertex_count()) * 64 + static_cast<std::size_t>(mesh.face_count()) * 24);
  const bool off = format == MeshFormat::kOff;
  if (off) {
    out += "OFF\n";
    out += std::to_string(mesh.vertex_count()) + ' ' + std::to_string(mesh.face_count()) + " 0\n";
  }
  for (Eigen::Index i = 0; i < mesh.vertex_count(); ++i) {
    if (!off) out += "v ";
    for (int c = 0; c < 3; ++c) {
      if (c) out += ' ';
      append_double(out, mesh.vertices(i, c));
    }
    out += '\n';
  }
  for (Eigen::Index f = 0; f < mesh.face_count(); ++f) {
    out += off ? "3" : "f";
    for (int c = 0; c < 3; ++c) {
      out += ' ';
      out += std::to_string(off ? mesh.faces(f, c) - 1 : mesh.faces(f, c));
    }
    out += '\n';
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

Mesh load_mesh(const std::filesystem::path& path) { return parse_mesh(read_file(path), format_from_path(path)); }

void save_mesh(const Mesh& mesh, const std::filesystem::path& path) {
  write_file(path, write_mesh(mesh, format_from_path(path)));
}

}  // namespace mrdh
