#include "sdclip/io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <string_view>
#include <utility>

#include <json.hpp>

namespace sdclip {

namespace {

using json = nlohmann::json;

json read_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

// shortest round-trip decimal form
std::string fmt_exact(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// fixed six significant digits for result rows
std::string fmt_g6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double parse_double(std::string_view tok, const std::string& path, std::size_t lineno) {
    while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) {
        tok.remove_prefix(1);
    }
    while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t')) {
        tok.remove_suffix(1);
    }
    double value = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
        throw ParseError(path + ":" + std::to_string(lineno) + ": bad number '" +
                         std::string(tok) + "'");
    }
    return value;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

// reads all nonempty lines, stripping a trailing carriage return
std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

json point_json(const Point2& p) { return json::array({p.x, p.y}); }
json point_json(const Point3& p) { return json::array({p.x, p.y, p.z}); }

double json_double(const json& j, const std::string& path, const char* what) {
    if (!j.is_number()) throw ParseError(path + ": " + what + " is not a number");
    return j.get<double>();
}

int json_count(const json& j, const std::string& path, const char* what) {
    if (!j.is_number_integer()) {
        throw ParseError(path + ": " + what + " is not an integer");
    }
    const auto v = j.get<std::int64_t>();
    if (v < 1 || v > (std::int64_t{1} << 30)) {
        throw ParseError(path + ": " + what + " out of range");
    }
    return static_cast<int>(v);
}

Point2 json_point2(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) {
        throw ParseError(path + ": vertex is not a pair");
    }
    return {json_double(j[0], path, "coordinate"), json_double(j[1], path, "coordinate")};
}

Point3 json_point3(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3) {
        throw ParseError(path + ": vertex is not a triple");
    }
    return {json_double(j[0], path, "coordinate"), json_double(j[1], path, "coordinate"),
            json_double(j[2], path, "coordinate")};
}

std::vector<Point2> json_vertices2(const json& j, const std::string& path) {
    if (!j.contains("vertices") || !j["vertices"].is_array()) {
        throw ParseError(path + ": missing vertices array");
    }
    std::vector<Point2> vs;
    for (const json& v : j["vertices"]) vs.push_back(json_point2(v, path));
    return vs;
}

std::vector<Point3> json_vertices3(const json& j, const std::string& path) {
    if (!j.contains("vertices") || !j["vertices"].is_array()) {
        throw ParseError(path + ": missing vertices array");
    }
    std::vector<Point3> vs;
    for (const json& v : j["vertices"]) vs.push_back(json_point3(v, path));
    return vs;
}

std::vector<std::array<std::uint32_t, 3>> json_facets(const json& j,
                                                      const std::string& path) {
    if (!j.contains("facets") || !j["facets"].is_array()) {
        throw ParseError(path + ": missing facets array");
    }
    std::vector<std::array<std::uint32_t, 3>> fs;
    for (const json& f : j["facets"]) {
        if (!f.is_array() || f.size() != 3) {
            throw ParseError(path + ": facet is not an index triple");
        }
        std::array<std::uint32_t, 3> tri{};
        for (int c = 0; c < 3; ++c) {
            if (!f[static_cast<std::size_t>(c)].is_number_integer()) {
                throw ParseError(path + ": facet index is not an integer");
            }
            const auto v = f[static_cast<std::size_t>(c)].get<std::int64_t>();
            if (v < 0 || v > 0xffffffffLL) {
                throw ParseError(path + ": facet index out of range");
            }
            tri[static_cast<std::size_t>(c)] = static_cast<std::uint32_t>(v);
        }
        fs.push_back(tri);
    }
    return fs;
}

json box_json(const BoundingBox2& box) {
    json j;
    j["center"] = point_json(box.center);
    j["half_x"] = box.half_x;
    j["half_y"] = box.half_y;
    j["h"] = box.h;
    return j;
}

BoundingBox2 json_box(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("center")) {
        throw ParseError(path + ": malformed box");
    }
    BoundingBox2 box;
    box.center = json_point2(j["center"], path);
    box.half_x = json_double(j.at("half_x"), path, "half_x");
    box.half_y = json_double(j.at("half_y"), path, "half_y");
    box.h = json_double(j.at("h"), path, "h");
    return box;
}

constexpr char kHexDigits[] = "0123456789abcdef";

// little-endian byte order, two hex digits per byte
std::string words_to_hex(const std::vector<std::uint64_t>& words) {
    std::string hex;
    hex.reserve(words.size() * 16);
    for (const std::uint64_t w : words) {
        for (int b = 0; b < 8; ++b) {
            const auto byte = static_cast<unsigned>((w >> (8 * b)) & 0xff);
            hex.push_back(kHexDigits[byte >> 4]);
            hex.push_back(kHexDigits[byte & 0xf]);
        }
    }
    return hex;
}

std::vector<std::uint64_t> hex_to_words(const std::string& hex, std::size_t nwords,
                                        const std::string& path) {
    if (hex.size() != nwords * 16) {
        throw ParseError(path + ": bitmap payload has wrong length");
    }
    const auto nibble = [&](char c) -> std::uint64_t {
        if (c >= '0' && c <= '9') return static_cast<std::uint64_t>(c - '0');
        if (c >= 'a' && c <= 'f') return static_cast<std::uint64_t>(c - 'a' + 10);
        throw ParseError(path + ": bitmap payload has a non-hex digit");
    };
    std::vector<std::uint64_t> words(nwords, 0);
    for (std::size_t w = 0; w < nwords; ++w) {
        std::uint64_t value = 0;
        for (int b = 0; b < 8; ++b) {
            const std::size_t at = w * 16 + static_cast<std::size_t>(2 * b);
            const std::uint64_t byte = (nibble(hex[at]) << 4) | nibble(hex[at + 1]);
            value |= byte << (8 * b);
        }
        words[w] = value;
    }
    return words;
}

void check_clipper_header(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("format") || !j["format"].is_string() ||
        j["format"].get<std::string>() != "sdclip-clipper") {
        throw ParseError(path + ": not a clipper file");
    }
    if (!j.contains("version") || !j["version"].is_number_integer() ||
        j["version"].get<std::int64_t>() != 1) {
        throw ParseError(path + ": unsupported clipper version");
    }
}

const char* kHeader2 = "x0,y0,x1,y1";
const char* kHeader3 = "x0,y0,z0,x1,y1,z1";

}  // namespace

ConvexPolygon load_polygon(const std::string& path) {
    const json j = read_json(path);
    try {
        return ConvexPolygon::from_vertices(json_vertices2(j, path));
    } catch (const std::invalid_argument& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void save_polygon(const ConvexPolygon& poly, const std::string& path) {
    json j;
    json vs = json::array();
    for (const Point2& v : poly.vertices()) vs.push_back(point_json(v));
    j["vertices"] = std::move(vs);
    write_text(path, j.dump() + "\n");
}

ConvexPolyhedron load_polyhedron(const std::string& path) {
    const json j = read_json(path);
    try {
        return ConvexPolyhedron::from_data(json_vertices3(j, path), json_facets(j, path));
    } catch (const std::invalid_argument& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void save_polyhedron(const ConvexPolyhedron& poly, const std::string& path) {
    json j;
    json vs = json::array();
    for (const Point3& v : poly.vertices()) vs.push_back(point_json(v));
    json fs = json::array();
    for (const auto& f : poly.facets()) fs.push_back(json::array({f[0], f[1], f[2]}));
    j["vertices"] = std::move(vs);
    j["facets"] = std::move(fs);
    write_text(path, j.dump() + "\n");
}

int region_dimension(const std::string& path) {
    const json j = read_json(path);
    if (!j.is_object() || !j.contains("vertices")) {
        throw ParseError(path + ": not a region file");
    }
    return j.contains("facets") ? 3 : 2;
}

std::vector<Segment2> load_lines_2d(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || lines[0] != kHeader2) {
        throw ParseError(path + ":1: expected header " + kHeader2);
    }
    std::vector<Segment2> out;
    for (std::size_t ln = 1; ln < lines.size(); ++ln) {
        if (lines[ln].empty()) continue;
        const auto tok = split_csv(lines[ln]);
        if (tok.size() != 4) {
            throw ParseError(path + ":" + std::to_string(ln + 1) + ": expected 4 fields");
        }
        out.push_back({{parse_double(tok[0], path, ln + 1), parse_double(tok[1], path, ln + 1)},
                       {parse_double(tok[2], path, ln + 1), parse_double(tok[3], path, ln + 1)}});
    }
    return out;
}

std::vector<Segment3> load_lines_3d(const std::string& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || lines[0] != kHeader3) {
        throw ParseError(path + ":1: expected header " + kHeader3);
    }
    std::vector<Segment3> out;
    for (std::size_t ln = 1; ln < lines.size(); ++ln) {
        if (lines[ln].empty()) continue;
        const auto tok = split_csv(lines[ln]);
        if (tok.size() != 6) {
            throw ParseError(path + ":" + std::to_string(ln + 1) + ": expected 6 fields");
        }
        out.push_back({{parse_double(tok[0], path, ln + 1), parse_double(tok[1], path, ln + 1),
                        parse_double(tok[2], path, ln + 1)},
                       {parse_double(tok[3], path, ln + 1), parse_double(tok[4], path, ln + 1),
                        parse_double(tok[5], path, ln + 1)}});
    }
    return out;
}

void save_lines(const std::vector<Segment2>& lines, const std::string& path) {
    std::string text = kHeader2;
    text.push_back('\n');
    for (const Segment2& s : lines) {
        text += fmt_exact(s.p0.x) + "," + fmt_exact(s.p0.y) + "," + fmt_exact(s.p1.x) +
                "," + fmt_exact(s.p1.y) + "\n";
    }
    write_text(path, text);
}

void save_lines(const std::vector<Segment3>& lines, const std::string& path) {
    std::string text = kHeader3;
    text.push_back('\n');
    for (const Segment3& s : lines) {
        text += fmt_exact(s.p0.x) + "," + fmt_exact(s.p0.y) + "," + fmt_exact(s.p0.z) +
                "," + fmt_exact(s.p1.x) + "," + fmt_exact(s.p1.y) + "," +
                fmt_exact(s.p1.z) + "\n";
    }
    write_text(path, text);
}

int lines_dimension(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::string header;
    std::getline(in, header);
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header == kHeader2) return 2;
    if (header == kHeader3) return 3;
    throw ParseError(path + ":1: unrecognized line file header");
}

void save_results(const std::vector<ClipResult>& results,
                  const std::vector<Segment2>& lines, const std::string& path) {
    if (results.size() != lines.size()) {
        throw std::invalid_argument("results and lines sizes differ");
    }
    std::string text = "index,status,t_enter,t_exit,ex0,ey0,ex1,ey1\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const ClipResult& r = results[i];
        if (r.is_empty()) {
            text += std::to_string(i) + ",empty,,,,,,\n";
            continue;
        }
        const Segment2& s = lines[i];
        const Point2 d = s.p1 - s.p0;
        const Point2 a = s.p0 + r.t_enter * d;
        const Point2 b = s.p0 + r.t_exit * d;
        text += std::to_string(i) + ",interval," + fmt_g6(r.t_enter) + "," +
                fmt_g6(r.t_exit) + "," + fmt_g6(a.x) + "," + fmt_g6(a.y) + "," +
                fmt_g6(b.x) + "," + fmt_g6(b.y) + "\n";
    }
    write_text(path, text);
}

void save_results(const std::vector<ClipResult>& results,
                  const std::vector<Segment3>& lines, const std::string& path) {
    if (results.size() != lines.size()) {
        throw std::invalid_argument("results and lines sizes differ");
    }
    std::string text = "index,status,t_enter,t_exit,ex0,ey0,ez0,ex1,ey1,ez1\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const ClipResult& r = results[i];
        if (r.is_empty()) {
            text += std::to_string(i) + ",empty,,,,,,,,\n";
            continue;
        }
        const Segment3& s = lines[i];
        const Point3 d = s.p1 - s.p0;
        const Point3 a = s.p0 + r.t_enter * d;
        const Point3 b = s.p0 + r.t_exit * d;
        text += std::to_string(i) + ",interval," + fmt_g6(r.t_enter) + "," +
                fmt_g6(r.t_exit) + "," + fmt_g6(a.x) + "," + fmt_g6(a.y) + "," +
                fmt_g6(a.z) + "," + fmt_g6(b.x) + "," + fmt_g6(b.y) + "," +
                fmt_g6(b.z) + "\n";
    }
    write_text(path, text);
}

namespace {

json grid_json_2d(const SemidualGrid& grid) {
    json j;
    j["n_slope"] = grid.n_slope;
    j["n_intercept"] = grid.n_intercept;
    json cells = json::array();
    for (const auto& cell : grid.cells) {
        json ael = json::array();
        for (const std::uint32_t e : cell) ael.push_back(e);
        cells.push_back(std::move(ael));
    }
    j["cells"] = std::move(cells);
    return j;
}

SemidualGrid json_grid_2d(const json& j, Branch branch, double h, std::size_t edges,
                          const std::string& path, std::uint64_t& entries) {
    if (!j.is_object()) throw ParseError(path + ": malformed grid");
    SemidualGrid grid;
    grid.branch = branch;
    grid.n_slope = json_count(j.at("n_slope"), path, "n_slope");
    grid.n_intercept = json_count(j.at("n_intercept"), path, "n_intercept");
    grid.h = h;
    const json& cells = j.at("cells");
    const std::size_t expect = static_cast<std::size_t>(grid.n_slope) *
                               static_cast<std::size_t>(grid.n_intercept);
    if (!cells.is_array() || cells.size() != expect) {
        throw ParseError(path + ": cell array size mismatch");
    }
    grid.cells.resize(expect);
    for (std::size_t c = 0; c < expect; ++c) {
        if (!cells[c].is_array()) throw ParseError(path + ": malformed cell");
        auto& ael = grid.cells[c];
        ael.reserve(cells[c].size());
        for (const json& e : cells[c]) {
            if (!e.is_number_integer()) {
                throw ParseError(path + ": edge index is not an integer");
            }
            const auto v = e.get<std::int64_t>();
            if (v < 0 || v >= static_cast<std::int64_t>(edges)) {
                throw ParseError(path + ": edge index out of range");
            }
            ael.push_back(static_cast<std::uint32_t>(v));
        }
        entries += ael.size();
    }
    return grid;
}

json grid_json_3d(const AflGrid& grid) {
    json j;
    j["n_slope"] = grid.n_slope;
    j["n_intercept"] = grid.n_intercept;
    j["bits"] = words_to_hex(grid.bits);
    return j;
}

AflGrid json_grid_3d(const json& j, Branch branch, double h, std::uint32_t nbits,
                     const std::string& path) {
    if (!j.is_object()) throw ParseError(path + ": malformed grid");
    AflGrid grid;
    grid.branch = branch;
    grid.n_slope = json_count(j.at("n_slope"), path, "n_slope");
    grid.n_intercept = json_count(j.at("n_intercept"), path, "n_intercept");
    grid.h = h;
    grid.nbits = nbits;
    grid.words_per_cell = (static_cast<std::size_t>(nbits) + 63) / 64;
    const json& bits = j.at("bits");
    if (!bits.is_string()) throw ParseError(path + ": bitmap payload is not a string");
    const std::size_t nwords = static_cast<std::size_t>(grid.n_slope) *
                               static_cast<std::size_t>(grid.n_intercept) *
                               grid.words_per_cell;
    grid.bits = hex_to_words(bits.get<std::string>(), nwords, path);
    return grid;
}

const char* kPlaneNames[3] = {"xy", "xz", "yz"};

}  // namespace

void save_clipper(const SemidualClipper2D& clipper, const std::string& path) {
    json j;
    j["format"] = "sdclip-clipper";
    j["version"] = 1;
    j["dimension"] = 2;
    json vs = json::array();
    for (const Point2& v : clipper.polygon.vertices()) vs.push_back(point_json(v));
    j["vertices"] = std::move(vs);
    j["box"] = box_json(clipper.box);
    j["grid_kq"] = grid_json_2d(clipper.grid_kq);
    j["grid_mp"] = grid_json_2d(clipper.grid_mp);
    write_text(path, j.dump() + "\n");
}

void save_clipper(const SemidualClipper3D& clipper, const std::string& path) {
    json j;
    j["format"] = "sdclip-clipper";
    j["version"] = 1;
    j["dimension"] = 3;
    json vs = json::array();
    for (const Point3& v : clipper.poly.vertices()) vs.push_back(point_json(v));
    json fs = json::array();
    for (const auto& f : clipper.poly.facets()) {
        fs.push_back(json::array({f[0], f[1], f[2]}));
    }
    j["vertices"] = std::move(vs);
    j["facets"] = std::move(fs);
    json planes = json::array();
    for (int p = 0; p < 3; ++p) {
        const PlaneData& pd = clipper.planes[p];
        json pj;
        pj["plane"] = kPlaneNames[p];
        pj["box"] = box_json(pd.box);
        pj["grid_kq"] = grid_json_3d(pd.grid_kq);
        pj["grid_mp"] = grid_json_3d(pd.grid_mp);
        planes.push_back(std::move(pj));
    }
    j["planes"] = std::move(planes);
    write_text(path, j.dump() + "\n");
}

SemidualClipper2D load_clipper_2d(const std::string& path) {
    const json j = read_json(path);
    check_clipper_header(j, path);
    if (j.at("dimension").get<std::int64_t>() != 2) {
        throw ParseError(path + ": not a 2D clipper");
    }
    SemidualClipper2D clipper;
    try {
        clipper.polygon = ConvexPolygon::from_vertices(json_vertices2(j, path));
    } catch (const std::invalid_argument& e) {
        throw ParseError(path + ": " + e.what());
    }
    clipper.box = json_box(j.at("box"), path);
    clipper.grid_kq = json_grid_2d(j.at("grid_kq"), Branch::KQ, clipper.box.h,
                                   clipper.polygon.size(), path, clipper.ael_entries);
    clipper.grid_mp = json_grid_2d(j.at("grid_mp"), Branch::MP, clipper.box.h,
                                   clipper.polygon.size(), path, clipper.ael_entries);
    return clipper;
}

SemidualClipper3D load_clipper_3d(const std::string& path) {
    const json j = read_json(path);
    check_clipper_header(j, path);
    if (j.at("dimension").get<std::int64_t>() != 3) {
        throw ParseError(path + ": not a 3D clipper");
    }
    SemidualClipper3D clipper;
    try {
        clipper.poly =
            ConvexPolyhedron::from_data(json_vertices3(j, path), json_facets(j, path));
    } catch (const std::invalid_argument& e) {
        throw ParseError(path + ": " + e.what());
    }
    const json& planes = j.at("planes");
    if (!planes.is_array() || planes.size() != 3) {
        throw ParseError(path + ": expected three planes");
    }
    const auto nbits = static_cast<std::uint32_t>(clipper.poly.facet_count());
    for (int p = 0; p < 3; ++p) {
        const json& pj = planes[static_cast<std::size_t>(p)];
        if (!pj.is_object() || !pj.contains("plane") || !pj["plane"].is_string() ||
            pj["plane"].get<std::string>() != kPlaneNames[p]) {
            throw ParseError(path + ": planes out of order");
        }
        PlaneData& pd = clipper.planes[p];
        pd.plane = static_cast<Plane>(p);
        pd.box = json_box(pj.at("box"), path);
        pd.grid_kq = json_grid_3d(pj.at("grid_kq"), Branch::KQ, pd.box.h, nbits, path);
        pd.grid_mp = json_grid_3d(pj.at("grid_mp"), Branch::MP, pd.box.h, nbits, path);
    }
    return clipper;
}

int clipper_dimension(const std::string& path) {
    const json j = read_json(path);
    check_clipper_header(j, path);
    const json& d = j.at("dimension");
    if (!d.is_number_integer()) throw ParseError(path + ": malformed dimension");
    const auto v = d.get<std::int64_t>();
    if (v != 2 && v != 3) throw ParseError(path + ": unsupported dimension");
    return static_cast<int>(v);
}

}  // namespace sdclip
