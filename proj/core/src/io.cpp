#include "fbmono/io.hpp"

#include "fbmono/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

namespace fbmono {

namespace {

/// Next non-empty line with '#' comments stripped.
bool next_data_line(std::istream& in, std::string& line)
{
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
}

std::ifstream open_input(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return in;
}

std::string format_double(double v)
{
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

}  // namespace

MeshFormat mesh_format_from_path(const std::filesystem::path& path)
{
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".off") return MeshFormat::Off;
    if (ext == ".obj") return MeshFormat::Obj;
    throw ParseError("unrecognized mesh extension '" + ext + "'");
}

TriangleMesh load_mesh(const std::filesystem::path& path, MeshFormat format)
{
    std::ifstream in = open_input(path);
    return format == MeshFormat::Off ? read_off(in) : read_obj(in);
}

TriangleMesh load_mesh(const std::filesystem::path& path)
{
    return load_mesh(path, mesh_format_from_path(path));
}

TriangleMesh read_off(std::istream& in)
{
    std::string line;
    if (!next_data_line(in, line)) throw ParseError("empty OFF file");
    std::istringstream header(line);
    std::string magic;
    header >> magic;
    if (magic != "OFF") throw ParseError("missing OFF header");
    long nv = -1;
    long nf = -1;
    if (!(header >> nv >> nf)) {
        if (!next_data_line(in, line)) throw ParseError("missing OFF counts");
        std::istringstream counts(line);
        if (!(counts >> nv >> nf)) throw ParseError("malformed OFF counts");
    }
    if (nv < 0 || nf < 0) throw ParseError("negative OFF counts");

    std::vector<Vec3> verts;
    verts.reserve(static_cast<std::size_t>(nv));
    for (long i = 0; i < nv; ++i) {
        if (!next_data_line(in, line)) throw ParseError("OFF file ends inside vertex list");
        std::istringstream ls(line);
        Vec3 v;
        if (!(ls >> v.x >> v.y >> v.z)) throw ParseError("malformed OFF vertex line " + std::to_string(i));
        verts.push_back(v);
    }
    std::vector<Face> faces;
    faces.reserve(static_cast<std::size_t>(nf));
    for (long f = 0; f < nf; ++f) {
        if (!next_data_line(in, line)) throw ParseError("OFF file ends inside face list");
        std::istringstream ls(line);
        int k = 0;
        if (!(ls >> k) || k < 3) throw ParseError("malformed OFF face line " + std::to_string(f));
        std::vector<int> idx(static_cast<std::size_t>(k));
        for (int& i : idx) {
            if (!(ls >> i)) throw ParseError("malformed OFF face line " + std::to_string(f));
        }
        for (int j = 1; j + 1 < k; ++j) faces.push_back({idx[0], idx[static_cast<std::size_t>(j)], idx[static_cast<std::size_t>(j) + 1]});
    }
    return TriangleMesh(std::move(verts), std::move(faces));
}

TriangleMesh read_obj(std::istream& in)
{
    std::vector<Vec3> verts;
    std::vector<Face> faces;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "v") {
            Vec3 v;
            if (!(ls >> v.x >> v.y >> v.z)) throw ParseError("malformed OBJ vertex at line " + std::to_string(line_no));
            verts.push_back(v);
        } else if (tag == "f") {
            std::vector<int> idx;
            std::string tok;
            while (ls >> tok) {
                int i = 0;
                const auto slash = tok.find('/');
                const std::string head = tok.substr(0, slash);
                auto [p, ec] = std::from_chars(head.data(), head.data() + head.size(), i);
                if (ec != std::errc() || i == 0) throw ParseError("malformed OBJ face at line " + std::to_string(line_no));
                idx.push_back(i > 0 ? i - 1 : static_cast<int>(verts.size()) + i);
            }
            if (idx.size() < 3) throw ParseError("OBJ face with fewer than 3 vertices at line " + std::to_string(line_no));
            for (std::size_t j = 1; j + 1 < idx.size(); ++j) faces.push_back({idx[0], idx[j], idx[j + 1]});
        }
    }
    return TriangleMesh(std::move(verts), std::move(faces));
}

void write_off(std::ostream& out, const TriangleMesh& mesh)
{
    out << "OFF\n" << mesh.vertex_count() << ' ' << mesh.face_count() << " 0\n";
    for (const Vec3& v : mesh.vertices()) {
        out << format_double(v.x) << ' ' << format_double(v.y) << ' ' << format_double(v.z) << '\n';
    }
    for (const Face& f : mesh.faces()) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

void save_off(const std::filesystem::path& path, const TriangleMesh& mesh)
{
    std::ostringstream os;
    write_off(os, mesh);
    write_text_file(path, os.str());
}

ClosedPolyline parse_curve_json(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("curve JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("points") || !j["points"].is_array()) {
        throw ParseError("curve JSON needs a \"points\" array");
    }
    if (j.contains("closed") && !(j["closed"].is_boolean() && j["closed"].get<bool>())) {
        throw ParseError("only closed curves are supported");
    }
    std::vector<Vec3> pts;
    for (const auto& p : j["points"]) {
        if (!p.is_array() || p.size() != 3 || !p[0].is_number() || !p[1].is_number() || !p[2].is_number()) {
            throw ParseError("curve point must be [x, y, z]");
        }
        pts.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
    }
    return ClosedPolyline(std::move(pts));
}

ClosedPolyline load_curve(const std::filesystem::path& path)
{
    std::ifstream in = open_input(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_curve_json(ss.str());
}

std::string curve_to_json(const ClosedPolyline& curve)
{
    nlohmann::json pts = nlohmann::json::array();
    for (const Vec3& p : curve.points()) pts.push_back({p.x, p.y, p.z});
    nlohmann::json j;
    j["closed"] = true;
    j["points"] = std::move(pts);
    return j.dump() + "\n";
}

void save_curve(const std::filesystem::path& path, const ClosedPolyline& curve)
{
    write_text_file(path, curve_to_json(curve));
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace fbmono
