#pragma once

#include "fbmono/curve.hpp"
#include "fbmono/mesh.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace fbmono {

enum class MeshFormat { Off, Obj };

/// Picks the format from the file extension (.off / .obj).
MeshFormat mesh_format_from_path(const std::filesystem::path& path);

TriangleMesh load_mesh(const std::filesystem::path& path, MeshFormat format);
TriangleMesh load_mesh(const std::filesystem::path& path);
TriangleMesh read_off(std::istream& in);
TriangleMesh read_obj(std::istream& in);

/// Writes ASCII OFF with round-trip exact coordinates.
void write_off(std::ostream& out, const TriangleMesh& mesh);
void save_off(const std::filesystem::path& path, const TriangleMesh& mesh);

/// Curve files: {"closed": true, "points": [[x, y, z], ...]}
ClosedPolyline load_curve(const std::filesystem::path& path);
ClosedPolyline parse_curve_json(const std::string& text);
std::string curve_to_json(const ClosedPolyline& curve);
void save_curve(const std::filesystem::path& path, const ClosedPolyline& curve);

/// Writes text to a file, throwing IoError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace fbmono
