#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sdclip/cyrus_beck.hpp"
#include "sdclip/io.hpp"
#include "sdclip/oracle.hpp"
#include "sdclip/semidual2.hpp"
#include "sdclip/semidual3.hpp"
#include "sdclip/workload.hpp"

namespace {

using namespace sdclip;

/// Differential runs that disagree exit with a dedicated code.
struct MismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr double kEquivTol = 1e-9;
constexpr int kDefaultSubdiv3D = 15;

std::string fmt_g6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

// empty path means stdout
void emit(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
        write_file(out, text);
    }
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == ',') {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (const std::string& tok : split_list(s)) {
        int v = 0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
            throw std::invalid_argument("bad integer '" + tok + "' in list '" + s + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty list '" + s + "'");
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    for (const std::string& tok : split_list(s)) {
        double v = 0.0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
            throw std::invalid_argument("bad number '" + tok + "' in list '" + s + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty list '" + s + "'");
    return out;
}

/// Equivalence up to tolerance: Empty also matches an interval no wider than
/// the tolerance (tangencies land on either side of the cut).
bool results_equal(const ClipResult& x, const ClipResult& y, double tol) {
    const auto degenerate = [&](const ClipResult& r) {
        return r.is_empty() || r.t_exit - r.t_enter <= tol;
    };
    if (x.is_empty() || y.is_empty()) return degenerate(x) && degenerate(y);
    return std::abs(x.t_enter - y.t_enter) <= tol && std::abs(x.t_exit - y.t_exit) <= tol;
}

std::string describe_result(const ClipResult& r) {
    if (r.is_empty()) return "empty";
    return "interval " + fmt_full(r.t_enter) + " " + fmt_full(r.t_exit);
}

// explicit counts override the per-dimension default; zeros mean auto
SubdivisionChoice subdiv_2d(const ConvexPolygon& poly, int nk, int nq, int nm, int np) {
    SubdivisionChoice c = adequate_subdivision(static_cast<int>(poly.size()));
    if (nk > 0) c.n_k = nk;
    if (nq > 0) c.n_q = nq;
    if (nm > 0) c.n_m = nm;
    if (np > 0) c.n_p = np;
    return c;
}

SubdivisionChoice subdiv_3d(int nk, int nq, int nm, int np) {
    SubdivisionChoice c;
    c.n_k = nk > 0 ? nk : kDefaultSubdiv3D;
    c.n_q = nq > 0 ? nq : kDefaultSubdiv3D;
    c.n_m = nm > 0 ? nm : kDefaultSubdiv3D;
    c.n_p = np > 0 ? np : kDefaultSubdiv3D;
    return c;
}

struct GenOpts {
    int dim = 2;
    int n = 4;
    int m = 0;
    double pr = 0.5;
    std::uint64_t seed = 1;
    double extent = 10.0;
    std::string out;
};

void run_gen(const GenOpts& o) {
    const std::string region_path = o.out + ".region.json";
    const std::string lines_path = o.out + ".lines.csv";
    if (o.dim == 2) {
        const ConvexPolygon poly = gen_convex_polygon(o.n, o.seed, o.extent);
        save_polygon(poly, region_path);
        if (o.m > 0) save_lines(gen_lines(poly, o.m, o.pr, mix_seed(o.seed, 1)), lines_path);
    } else {
        const ConvexPolyhedron poly = gen_convex_polyhedron(o.n, o.seed, o.extent);
        save_polyhedron(poly, region_path);
        if (o.m > 0) save_lines(gen_lines(poly, o.m, o.pr, mix_seed(o.seed, 1)), lines_path);
    }
}

struct BuildOpts {
    std::string region;
    int nk = 0, nq = 0, nm = 0, np = 0;
    std::string out;
};

void run_build(const BuildOpts& o) {
    std::string report;
    const int dim = region_dimension(o.region);
    if (dim == 2) {
        const ConvexPolygon poly = load_polygon(o.region);
        const SubdivisionChoice c = subdiv_2d(poly, o.nk, o.nq, o.nm, o.np);
        const SemidualClipper2D clipper = build_clipper_2d(poly, c);
        const AelStatistics stats = ael_statistics(clipper);
        report += "dimension=2\n";
        report += "size=" + std::to_string(poly.size()) + "\n";
        report += "n_k=" + std::to_string(c.n_k) + "\n";
        report += "n_q=" + std::to_string(c.n_q) + "\n";
        report += "n_m=" + std::to_string(c.n_m) + "\n";
        report += "n_p=" + std::to_string(c.n_p) + "\n";
        report += "entries=" + std::to_string(stats.entries) + "\n";
        report += "prep_cost=" + fmt_g6(stats.build_cost) + "\n";
        report += "kq_mean=" + fmt_g6(stats.kq.mean) + "\n";
        report += "kq_max=" + std::to_string(stats.kq.max) + "\n";
        report += "mp_mean=" + fmt_g6(stats.mp.mean) + "\n";
        report += "mp_max=" + std::to_string(stats.mp.max) + "\n";
        if (!o.out.empty()) save_clipper(clipper, o.out);
        std::fprintf(stderr, "# build wall-clock %.3fs\n", clipper.build_seconds);
    } else {
        const ConvexPolyhedron poly = load_polyhedron(o.region);
        const SubdivisionChoice c = subdiv_3d(o.nk, o.nq, o.nm, o.np);
        const SemidualClipper3D clipper = build_clipper_3d(poly, c.n_k, c.n_q, c.n_m, c.n_p);
        const AflStatistics stats = afl_statistics(clipper, {});
        report += "dimension=3\n";
        report += "facets=" + std::to_string(poly.facet_count()) + "\n";
        report += "n_k=" + std::to_string(c.n_k) + "\n";
        report += "n_q=" + std::to_string(c.n_q) + "\n";
        report += "n_m=" + std::to_string(c.n_m) + "\n";
        report += "n_p=" + std::to_string(c.n_p) + "\n";
        report += "prep_cost=" + fmt_g6(weighted_cost(clipper.build_ops)) + "\n";
        static const char* kGridNames[6] = {"xy_kq", "xy_mp", "xz_kq",
                                            "xz_mp", "yz_kq", "yz_mp"};
        for (int g = 0; g < 6; ++g) {
            report += std::string(kGridNames[g]) + "_mean=" +
                      fmt_g6(stats.grids[g].mean_popcount) + "\n";
            report += std::string(kGridNames[g]) + "_max=" +
                      std::to_string(stats.grids[g].max_popcount) + "\n";
        }
        if (!o.out.empty()) save_clipper(clipper, o.out);
        std::fprintf(stderr, "# build wall-clock %.3fs\n", clipper.build_seconds);
    }
    std::fwrite(report.data(), 1, report.size(), stdout);
}

struct ClipOpts {
    std::string region;
    std::string lines;
    std::string algo = "o1";
    int nk = 0, nq = 0, nm = 0, np = 0;
    bool verify = false;
    std::string out;
};

void run_clip(const ClipOpts& o) {
    const int dim = region_dimension(o.region);
    if (dim == 2) {
        const ConvexPolygon poly = load_polygon(o.region);
        const std::vector<Segment2> lines = load_lines_2d(o.lines);
        std::optional<SemidualClipper2D> clipper;
        if (o.algo == "o1" || o.verify) {
            clipper.emplace(build_clipper_2d(poly, subdiv_2d(poly, o.nk, o.nq, o.nm, o.np)));
        }
        std::vector<ClipResult> results;
        results.reserve(lines.size());
        for (std::size_t i = 0; i < lines.size(); ++i) {
            const Segment2& seg = lines[i];
            if (o.verify) {
                const ClipResult cb = clip_cyrus_beck_2d(poly, seg);
                const ClipResult o1 = clip_o1_2d(*clipper, seg);
                const ClipResult oc = clip_halfspace_oracle(poly, seg);
                if (!results_equal(cb, oc, kEquivTol) || !results_equal(o1, oc, kEquivTol) ||
                    !results_equal(cb, o1, kEquivTol)) {
                    throw MismatchError(
                        "algorithms disagree on line " + std::to_string(i) + ": (" +
                        fmt_full(seg.p0.x) + "," + fmt_full(seg.p0.y) + ")-(" +
                        fmt_full(seg.p1.x) + "," + fmt_full(seg.p1.y) + ")\n  cb: " +
                        describe_result(cb) + "\n  o1: " + describe_result(o1) +
                        "\n  oracle: " + describe_result(oc));
                }
            }
            if (o.algo == "cb") {
                results.push_back(clip_cyrus_beck_2d(poly, seg));
            } else if (o.algo == "oracle") {
                results.push_back(clip_halfspace_oracle(poly, seg));
            } else {
                results.push_back(clip_o1_2d(*clipper, seg));
            }
        }
        save_results(results, lines, o.out);
    } else {
        const ConvexPolyhedron poly = load_polyhedron(o.region);
        const std::vector<Segment3> lines = load_lines_3d(o.lines);
        std::optional<SemidualClipper3D> clipper;
        if (o.algo == "o1" || o.verify) {
            const SubdivisionChoice c = subdiv_3d(o.nk, o.nq, o.nm, o.np);
            clipper.emplace(build_clipper_3d(poly, c.n_k, c.n_q, c.n_m, c.n_p));
        }
        std::vector<ClipResult> results;
        results.reserve(lines.size());
        for (std::size_t i = 0; i < lines.size(); ++i) {
            const Segment3& seg = lines[i];
            if (o.verify) {
                const ClipResult cb = clip_cyrus_beck_3d(poly, seg);
                const ClipResult o1 = clip_o1_3d(*clipper, seg);
                const ClipResult oc = clip_halfspace_oracle(poly, seg);
                if (!results_equal(cb, oc, kEquivTol) || !results_equal(o1, oc, kEquivTol) ||
                    !results_equal(cb, o1, kEquivTol)) {
                    throw MismatchError(
                        "algorithms disagree on line " + std::to_string(i) + ": (" +
                        fmt_full(seg.p0.x) + "," + fmt_full(seg.p0.y) + "," +
                        fmt_full(seg.p0.z) + ")-(" + fmt_full(seg.p1.x) + "," +
                        fmt_full(seg.p1.y) + "," + fmt_full(seg.p1.z) + ")\n  cb: " +
                        describe_result(cb) + "\n  o1: " + describe_result(o1) +
                        "\n  oracle: " + describe_result(oc));
                }
            }
            if (o.algo == "cb") {
                results.push_back(clip_cyrus_beck_3d(poly, seg));
            } else if (o.algo == "oracle") {
                results.push_back(clip_halfspace_oracle(poly, seg));
            } else {
                results.push_back(clip_o1_3d(*clipper, seg));
            }
        }
        save_results(results, lines, o.out);
    }
}

struct BenchOpts {
    std::string n_list;
    std::string m_list;
    std::string pr_list;
    int nk = 0, nq = 0, nm = 0, np = 0;
    std::uint64_t seed = 1;
    std::string out;
};

// both efficiencies are recomputed from the emitted totals; the definitional
// identity must hold exactly
void check_identities(double v1, double v2, double cb, double o1, double prep) {
    if (v1 != cb / o1 || v2 != cb / (o1 + prep)) {
        throw std::logic_error("efficiency identity violated");
    }
}

void run_bench_e2(const BenchOpts& o) {
    const std::vector<int> ns = parse_int_list(o.n_list.empty() ? "3,4,5,10,20,50" : o.n_list);
    const std::vector<int> ms = parse_int_list(o.m_list.empty() ? "10000" : o.m_list);
    const std::vector<double> prs =
        parse_double_list(o.pr_list.empty() ? "0.5" : o.pr_list);

    std::string csv =
        "n,m,pr,n_k,n_q,n_m,n_p,prep_cost,cb_cost,o1_cost,v1,v2,"
        "ael_kq_mean,ael_kq_max,ael_mp_mean,ael_mp_max\n";
    for (const int n : ns) {
        const std::uint64_t region_seed = mix_seed(o.seed, static_cast<std::uint64_t>(n));
        const ConvexPolygon poly = gen_convex_polygon(n, region_seed, 10.0);
        for (const int m : ms) {
            for (const double pr : prs) {
                const auto wall0 = std::chrono::steady_clock::now();
                const std::uint64_t line_seed = mix_seed(
                    region_seed, static_cast<std::uint64_t>(m) * 1024 +
                                     static_cast<std::uint64_t>(pr * 1000.0));
                const std::vector<Segment2> lines = gen_lines(poly, m, pr, line_seed);
                const SubdivisionChoice c = subdiv_2d(poly, o.nk, o.nq, o.nm, o.np);
                const SemidualClipper2D clipper = build_clipper_2d(poly, c);
                OpCounter cb_ops, o1_ops;
                for (const Segment2& seg : lines) clip_cyrus_beck_2d(poly, seg, &cb_ops);
                for (const Segment2& seg : lines) clip_o1_2d(clipper, seg, &o1_ops);
                const double prep = weighted_cost(clipper.build_ops);
                const double cb = weighted_cost(cb_ops);
                const double o1 = weighted_cost(o1_ops);
                const double v1 = cb / o1;
                const double v2 = cb / (o1 + prep);
                check_identities(v1, v2, cb, o1, prep);
                const AelStatistics stats = ael_statistics(clipper);
                csv += std::to_string(n) + "," + std::to_string(m) + "," + fmt_g6(pr) +
                       "," + std::to_string(c.n_k) + "," + std::to_string(c.n_q) + "," +
                       std::to_string(c.n_m) + "," + std::to_string(c.n_p) + "," +
                       fmt_g6(prep) + "," + fmt_g6(cb) + "," + fmt_g6(o1) + "," +
                       fmt_g6(v1) + "," + fmt_g6(v2) + "," + fmt_g6(stats.kq.mean) +
                       "," + std::to_string(stats.kq.max) + "," + fmt_g6(stats.mp.mean) +
                       "," + std::to_string(stats.mp.max) + "\n";
                const double wall = std::chrono::duration<double>(
                                        std::chrono::steady_clock::now() - wall0)
                                        .count();
                std::fprintf(stderr, "# bench-e2 n=%d m=%d pr=%g wall %.3fs\n", n, m, pr,
                             wall);
            }
        }
    }
    emit(o.out, csv);
}

void run_bench_e3(const BenchOpts& o) {
    const std::vector<int> ns =
        parse_int_list(o.n_list.empty() ? "4,12,24,60,120,250,500" : o.n_list);
    const std::vector<int> ms = parse_int_list(o.m_list.empty() ? "5000" : o.m_list);
    const std::vector<double> prs =
        parse_double_list(o.pr_list.empty() ? "0.5" : o.pr_list);

    std::string csv =
        "n,m,pr,n_k,n_q,n_m,n_p,prep_cost,cb_cost,o1_cost,v1,v2,"
        "afl_before_mean,afl_after_mean\n";
    for (const int n : ns) {
        const std::uint64_t region_seed = mix_seed(o.seed, static_cast<std::uint64_t>(n));
        const ConvexPolyhedron poly = gen_convex_polyhedron(n, region_seed, 10.0);
        const SubdivisionChoice c = subdiv_3d(o.nk, o.nq, o.nm, o.np);
        const SemidualClipper3D clipper = build_clipper_3d(poly, c.n_k, c.n_q, c.n_m, c.n_p);
        for (const int m : ms) {
            for (const double pr : prs) {
                const auto wall0 = std::chrono::steady_clock::now();
                const std::uint64_t line_seed = mix_seed(
                    region_seed, static_cast<std::uint64_t>(m) * 1024 +
                                     static_cast<std::uint64_t>(pr * 1000.0));
                const std::vector<Segment3> lines = gen_lines(poly, m, pr, line_seed);
                OpCounter cb_ops, o1_ops;
                for (const Segment3& seg : lines) clip_cyrus_beck_3d(poly, seg, &cb_ops);
                for (const Segment3& seg : lines) clip_o1_3d(clipper, seg, &o1_ops);
                const double prep = weighted_cost(clipper.build_ops);
                const double cb = weighted_cost(cb_ops);
                const double o1 = weighted_cost(o1_ops);
                const double v1 = cb / o1;
                const double v2 = cb / (o1 + prep);
                check_identities(v1, v2, cb, o1, prep);
                const AflStatistics stats = afl_statistics(clipper, lines);
                csv += std::to_string(n) + "," + std::to_string(m) + "," + fmt_g6(pr) +
                       "," + std::to_string(c.n_k) + "," + std::to_string(c.n_q) + "," +
                       std::to_string(c.n_m) + "," + std::to_string(c.n_p) + "," +
                       fmt_g6(prep) + "," + fmt_g6(cb) + "," + fmt_g6(o1) + "," +
                       fmt_g6(v1) + "," + fmt_g6(v2) + "," +
                       fmt_g6(stats.mean_before_intersection) + "," +
                       fmt_g6(stats.mean_after_intersection) + "\n";
                const double wall = std::chrono::duration<double>(
                                        std::chrono::steady_clock::now() - wall0)
                                        .count();
                std::fprintf(stderr, "# bench-e3 n=%d m=%d pr=%g wall %.3fs\n", n, m, pr,
                             wall);
            }
        }
    }
    emit(o.out, csv);
}

struct StatsOpts {
    std::string region;
    std::string lines;
    int nk = 0, nq = 0, nm = 0, np = 0;
    std::string format = "csv";
    std::string out;
};

void run_stats(const StatsOpts& o) {
    using json = nlohmann::json;
    const int dim = region_dimension(o.region);
    std::string text;
    if (dim == 2) {
        const ConvexPolygon poly = load_polygon(o.region);
        const SubdivisionChoice c = subdiv_2d(poly, o.nk, o.nq, o.nm, o.np);
        const SemidualClipper2D clipper = build_clipper_2d(poly, c);
        const AelStatistics stats = ael_statistics(clipper);
        if (o.format == "json") {
            json j;
            j["dimension"] = 2;
            j["n_k"] = c.n_k;
            j["n_q"] = c.n_q;
            j["n_m"] = c.n_m;
            j["n_p"] = c.n_p;
            j["entries"] = stats.entries;
            j["build_cost"] = stats.build_cost;
            j["kq"] = {{"mean", stats.kq.mean},
                       {"max", stats.kq.max},
                       {"histogram", stats.kq.histogram}};
            j["mp"] = {{"mean", stats.mp.mean},
                       {"max", stats.mp.max},
                       {"histogram", stats.mp.histogram}};
            text = j.dump() + "\n";
        } else {
            text = "metric,value\n";
            text += "n_k," + std::to_string(c.n_k) + "\n";
            text += "n_q," + std::to_string(c.n_q) + "\n";
            text += "n_m," + std::to_string(c.n_m) + "\n";
            text += "n_p," + std::to_string(c.n_p) + "\n";
            text += "entries," + std::to_string(stats.entries) + "\n";
            text += "build_cost," + fmt_g6(stats.build_cost) + "\n";
            text += "kq_mean," + fmt_g6(stats.kq.mean) + "\n";
            text += "kq_max," + std::to_string(stats.kq.max) + "\n";
            text += "mp_mean," + fmt_g6(stats.mp.mean) + "\n";
            text += "mp_max," + std::to_string(stats.mp.max) + "\n";
        }
    } else {
        const ConvexPolyhedron poly = load_polyhedron(o.region);
        const SubdivisionChoice c = subdiv_3d(o.nk, o.nq, o.nm, o.np);
        const SemidualClipper3D clipper = build_clipper_3d(poly, c.n_k, c.n_q, c.n_m, c.n_p);
        std::vector<Segment3> sample;
        if (!o.lines.empty()) sample = load_lines_3d(o.lines);
        const AflStatistics stats = afl_statistics(clipper, sample);
        static const char* kGridNames[6] = {"xy_kq", "xy_mp", "xz_kq",
                                            "xz_mp", "yz_kq", "yz_mp"};
        if (o.format == "json") {
            json j;
            j["dimension"] = 3;
            j["n_k"] = c.n_k;
            j["n_q"] = c.n_q;
            j["n_m"] = c.n_m;
            j["n_p"] = c.n_p;
            j["build_cost"] = weighted_cost(clipper.build_ops);
            for (int g = 0; g < 6; ++g) {
                j["grids"][kGridNames[g]] = {{"mean", stats.grids[g].mean_popcount},
                                             {"max", stats.grids[g].max_popcount}};
            }
            if (!sample.empty()) {
                j["before_mean"] = stats.mean_before_intersection;
                j["after_mean"] = stats.mean_after_intersection;
                j["sampled"] = stats.sampled_lines;
                j["misses"] = stats.misses;
            }
            text = j.dump() + "\n";
        } else {
            text = "metric,value\n";
            text += "n_k," + std::to_string(c.n_k) + "\n";
            text += "n_q," + std::to_string(c.n_q) + "\n";
            text += "n_m," + std::to_string(c.n_m) + "\n";
            text += "n_p," + std::to_string(c.n_p) + "\n";
            text += "build_cost," + fmt_g6(weighted_cost(clipper.build_ops)) + "\n";
            for (int g = 0; g < 6; ++g) {
                text += std::string(kGridNames[g]) + "_mean," +
                        fmt_g6(stats.grids[g].mean_popcount) + "\n";
                text += std::string(kGridNames[g]) + "_max," +
                        std::to_string(stats.grids[g].max_popcount) + "\n";
            }
            if (!sample.empty()) {
                text += "before_mean," + fmt_g6(stats.mean_before_intersection) + "\n";
                text += "after_mean," + fmt_g6(stats.mean_after_intersection) + "\n";
                text += "sampled," + std::to_string(stats.sampled_lines) + "\n";
                text += "misses," + std::to_string(stats.misses) + "\n";
            }
        }
    }
    emit(o.out, text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semidual-space line clipping toolkit"};
    app.require_subcommand(1);

    GenOpts g;
    CLI::App* gen = app.add_subcommand("gen", "generate a region and line workload");
    gen->add_option("--dim", g.dim, "region dimension")->check(CLI::IsMember({2, 3}));
    gen->add_option("--n", g.n, "vertex count (2D) or facet count (3D)");
    gen->add_option("--m", g.m, "number of lines");
    gen->add_option("--pr", g.pr, "fraction of lines that hit the region");
    gen->add_option("--seed", g.seed, "workload seed");
    gen->add_option("--extent", g.extent, "world scale of the region");
    gen->add_option("--out", g.out, "output path prefix")->required();
    gen->callback([&] { run_gen(g); });

    BuildOpts b;
    CLI::App* build = app.add_subcommand("build", "build a clipper, report prep stats");
    build->add_option("--region", b.region, "region file")->required();
    build->add_option("--nk", b.nk, "slope cells, KQ branch (0 = auto)");
    build->add_option("--nq", b.nq, "intercept cells, KQ branch (0 = auto)");
    build->add_option("--nm", b.nm, "slope cells, MP branch (0 = auto)");
    build->add_option("--np", b.np, "intercept cells, MP branch (0 = auto)");
    build->add_option("--out", b.out, "serialized clipper path");
    build->callback([&] { run_build(b); });

    ClipOpts cl;
    CLI::App* clip = app.add_subcommand("clip", "batch clip a line file");
    clip->add_option("--region", cl.region, "region file")->required();
    clip->add_option("--lines", cl.lines, "line file")->required();
    clip->add_option("--algo", cl.algo, "clipper to run")
        ->check(CLI::IsMember({"cb", "o1", "oracle"}));
    clip->add_option("--nk", cl.nk, "slope cells, KQ branch (0 = auto)");
    clip->add_option("--nq", cl.nq, "intercept cells, KQ branch (0 = auto)");
    clip->add_option("--nm", cl.nm, "slope cells, MP branch (0 = auto)");
    clip->add_option("--np", cl.np, "intercept cells, MP branch (0 = auto)");
    clip->add_flag("--verify", cl.verify, "run all three clippers and compare");
    clip->add_option("--out", cl.out, "results file")->required();
    clip->callback([&] { run_clip(cl); });

    BenchOpts b2;
    CLI::App* bench2 = app.add_subcommand("bench-e2", "polygon benchmark sweep");
    bench2->add_option("--n", b2.n_list, "vertex counts (comma list)");
    bench2->add_option("--m", b2.m_list, "line counts (comma list)");
    bench2->add_option("--pr", b2.pr_list, "hit fractions (comma list)");
    bench2->add_option("--nk", b2.nk, "slope cells, KQ branch (0 = auto)");
    bench2->add_option("--nq", b2.nq, "intercept cells, KQ branch (0 = auto)");
    bench2->add_option("--nm", b2.nm, "slope cells, MP branch (0 = auto)");
    bench2->add_option("--np", b2.np, "intercept cells, MP branch (0 = auto)");
    bench2->add_option("--seed", b2.seed, "sweep seed");
    bench2->add_option("--out", b2.out, "CSV path (default stdout)");
    bench2->callback([&] { run_bench_e2(b2); });

    BenchOpts b3;
    CLI::App* bench3 = app.add_subcommand("bench-e3", "polyhedron benchmark sweep");
    bench3->add_option("--n", b3.n_list, "facet counts (comma list)");
    bench3->add_option("--m", b3.m_list, "line counts (comma list)");
    bench3->add_option("--pr", b3.pr_list, "hit fractions (comma list)");
    bench3->add_option("--nk", b3.nk, "slope cells, KQ branch (0 = auto)");
    bench3->add_option("--nq", b3.nq, "intercept cells, KQ branch (0 = auto)");
    bench3->add_option("--nm", b3.nm, "slope cells, MP branch (0 = auto)");
    bench3->add_option("--np", b3.np, "intercept cells, MP branch (0 = auto)");
    bench3->add_option("--seed", b3.seed, "sweep seed");
    bench3->add_option("--out", b3.out, "CSV path (default stdout)");
    bench3->callback([&] { run_bench_e3(b3); });

    StatsOpts st;
    CLI::App* stats = app.add_subcommand("stats", "AEL/AFL statistics report");
    stats->add_option("--region", st.region, "region file")->required();
    stats->add_option("--lines", st.lines, "3D sample lines for fetched-bitmap stats");
    stats->add_option("--nk", st.nk, "slope cells, KQ branch (0 = auto)");
    stats->add_option("--nq", st.nq, "intercept cells, KQ branch (0 = auto)");
    stats->add_option("--nm", st.nm, "slope cells, MP branch (0 = auto)");
    stats->add_option("--np", st.np, "intercept cells, MP branch (0 = auto)");
    stats->add_option("--format", st.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    stats->add_option("--out", st.out, "output path (default stdout)");
    stats->callback([&] { run_stats(st); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const MismatchError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
