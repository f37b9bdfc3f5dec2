#include "sdclip/workload.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sdclip/hull3.hpp"
#include "sdclip/oracle.hpp"

namespace sdclip {

namespace {

constexpr double kTwoPi = 6.283185307179586;

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// number of distinct values after sorting
int distinct_count(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    int count = values.empty() ? 0 : 1;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[i - 1]) ++count;
    }
    return count;
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t state = seed;
    for (auto& word : s_) word = splitmix64(state);
}

std::uint64_t Rng::next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

double Rng::gauss() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps the log finite
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = kTwoPi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

std::uint64_t Rng::below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // rejection removes modulo bias
    std::uint64_t v;
    do {
        v = next();
    } while (v < threshold);
    return v % n;
}

ConvexPolygon gen_convex_polygon(int n, std::uint64_t seed, double extent) {
    if (n < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
    if (!(extent > 0.0)) throw std::invalid_argument("extent must be positive");
    Rng rng(seed);
    const double rx = extent;
    const double ry = 0.7 * extent;

    for (int attempt = 0; attempt < 64; ++attempt) {
        // angles with a guaranteed minimum gap: sample on a circle shortened
        // by n gap quanta, sort, then re-insert one quantum per point
        const double min_gap = 0.25 * (kTwoPi / n);
        std::vector<double> angles(static_cast<std::size_t>(n));
        for (double& t : angles) t = rng.uniform(0.0, kTwoPi - n * min_gap);
        std::sort(angles.begin(), angles.end());
        for (std::size_t i = 0; i < angles.size(); ++i) {
            angles[i] += min_gap * static_cast<double>(i + 1);
        }

        // jitter small enough to keep the ellipse's convexity at this gap
        const double jitter = std::min(0.02, 0.03 * min_gap * min_gap);
        std::vector<Point2> vs(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < vs.size(); ++i) {
            const double r = 1.0 + rng.uniform(-jitter, jitter);
            vs[i] = {rx * r * std::cos(angles[i]), ry * r * std::sin(angles[i])};
        }

        bool convex = true;
        for (std::size_t i = 0; i < vs.size() && convex; ++i) {
            const Point2 e0 = vs[(i + 1) % vs.size()] - vs[i];
            const Point2 e1 = vs[(i + 2) % vs.size()] - vs[(i + 1) % vs.size()];
            convex = cross(e0, e1) > 0.0;
        }
        if (!convex) continue;

        std::vector<double> xs, ys, kq_slopes, mp_slopes;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            xs.push_back(vs[i].x);
            ys.push_back(vs[i].y);
            const Point2 d = vs[(i + 1) % vs.size()] - vs[i];
            if (std::abs(d.y) <= std::abs(d.x)) {
                kq_slopes.push_back(d.y / d.x);
            } else {
                mp_slopes.push_back(d.x / d.y);
            }
        }
        if (distinct_count(xs) < 2 || distinct_count(ys) < 2) continue;
        // with five or more edges both slope criteria must be definable
        if (n >= 5 &&
            (distinct_count(kq_slopes) < 2 || distinct_count(mp_slopes) < 2)) {
            continue;
        }
        return ConvexPolygon::from_vertices(std::move(vs));
    }

    // deterministic fallback: regular ellipse polygon, irrationally rotated
    // so no vertex or edge aligns with the axes
    const double rotation = 2.399963229728653;
    std::vector<Point2> vs(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const double t = rotation + kTwoPi * static_cast<double>(i) / n;
        vs[i] = {rx * std::cos(t), ry * std::sin(t)};
    }
    return ConvexPolygon::from_vertices(std::move(vs));
}

ConvexPolyhedron gen_convex_polyhedron(int target_facets, std::uint64_t seed,
                                       double extent) {
    if (target_facets < 4 || target_facets % 2 != 0) {
        throw std::invalid_argument("target facet count must be even and at least 4");
    }
    if (!(extent > 0.0)) throw std::invalid_argument("extent must be positive");
    const std::size_t nv = static_cast<std::size_t>(target_facets) / 2 + 2;
    Rng rng(seed);

    for (int attempt = 0; attempt < 32; ++attempt) {
        std::vector<Point3> pts(nv);
        for (Point3& p : pts) {
            double gx, gy, gz, len;
            do {
                gx = rng.gauss();
                gy = rng.gauss();
                gz = rng.gauss();
                len = std::sqrt(gx * gx + gy * gy + gz * gz);
            } while (len < 1e-6);
            p = {extent * gx / len, extent * gy / len, extent * gz / len};
        }
        std::vector<std::array<std::uint32_t, 3>> facets;
        try {
            facets = convex_hull(pts);
        } catch (const std::invalid_argument&) {
            continue;
        }
        if (facets.size() != static_cast<std::size_t>(target_facets)) continue;
        try {
            return ConvexPolyhedron::from_data(std::move(pts), std::move(facets));
        } catch (const std::invalid_argument&) {
            continue;
        }
    }
    throw std::runtime_error("polyhedron generation failed; try another seed");
}

std::vector<Segment2> gen_lines(const ConvexPolygon& region, int m, double pr,
                                std::uint64_t seed) {
    if (m < 0) throw std::invalid_argument("line count must be non-negative");
    if (!(pr >= 0.0 && pr <= 1.0)) throw std::invalid_argument("pr must be in [0, 1]");
    Rng rng(seed);

    double lo_x = region.vertex(0).x, hi_x = lo_x;
    double lo_y = region.vertex(0).y, hi_y = lo_y;
    for (const Point2& v : region.vertices()) {
        lo_x = std::min(lo_x, v.x);
        hi_x = std::max(hi_x, v.x);
        lo_y = std::min(lo_y, v.y);
        hi_y = std::max(hi_y, v.y);
    }
    const double span_x = hi_x - lo_x;
    const double span_y = hi_y - lo_y;
    const double diam = norm(Point2{span_x, span_y});
    const double margin = region.eps();

    const auto interior_point = [&] {
        for (;;) {
            const Point2 p{rng.uniform(lo_x, hi_x), rng.uniform(lo_y, hi_y)};
            if (region.contains(p, -margin)) return p;
        }
    };

    const int hits = static_cast<int>(std::llround(pr * m));
    std::vector<Segment2> out;
    out.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < hits; ++i) {
        for (;;) {
            const Point2 p1 = interior_point();
            const Point2 p2 = interior_point();
            const double len = norm(p2 - p1);
            if (len < 0.05 * diam) continue;
            const Point2 u = (1.0 / len) * (p2 - p1);
            const Segment2 s{p1 - (1.2 * diam) * u, p2 + (1.2 * diam) * u};
            if (!clip_halfspace_oracle(region, s).is_empty()) {
                out.push_back(s);
                break;
            }
        }
    }
    for (int i = hits; i < m; ++i) {
        for (;;) {
            const Point2 a{rng.uniform(lo_x - span_x, hi_x + span_x),
                           rng.uniform(lo_y - span_y, hi_y + span_y)};
            const Point2 b{rng.uniform(lo_x - span_x, hi_x + span_x),
                           rng.uniform(lo_y - span_y, hi_y + span_y)};
            if (norm(b - a) < 1e-6 * diam) continue;
            const Segment2 s{a, b};
            if (clip_halfspace_oracle(region, s).is_empty()) {
                out.push_back(s);
                break;
            }
        }
    }
    for (std::size_t i = out.size(); i > 1; --i) {
        std::swap(out[i - 1], out[rng.below(i)]);
    }
    return out;
}

std::vector<Segment3> gen_lines(const ConvexPolyhedron& region, int m, double pr,
                                std::uint64_t seed) {
    if (m < 0) throw std::invalid_argument("line count must be non-negative");
    if (!(pr >= 0.0 && pr <= 1.0)) throw std::invalid_argument("pr must be in [0, 1]");
    Rng rng(seed);

    double lo_x = region.vertices()[0].x, hi_x = lo_x;
    double lo_y = region.vertices()[0].y, hi_y = lo_y;
    double lo_z = region.vertices()[0].z, hi_z = lo_z;
    for (const Point3& v : region.vertices()) {
        lo_x = std::min(lo_x, v.x);
        hi_x = std::max(hi_x, v.x);
        lo_y = std::min(lo_y, v.y);
        hi_y = std::max(hi_y, v.y);
        lo_z = std::min(lo_z, v.z);
        hi_z = std::max(hi_z, v.z);
    }
    const double span_x = hi_x - lo_x;
    const double span_y = hi_y - lo_y;
    const double span_z = hi_z - lo_z;
    const double diam = norm(Point3{span_x, span_y, span_z});
    const double margin = region.eps();

    const auto interior_point = [&] {
        for (;;) {
            const Point3 p{rng.uniform(lo_x, hi_x), rng.uniform(lo_y, hi_y),
                           rng.uniform(lo_z, hi_z)};
            if (region.contains(p, -margin)) return p;
        }
    };

    const int hits = static_cast<int>(std::llround(pr * m));
    std::vector<Segment3> out;
    out.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < hits; ++i) {
        for (;;) {
            const Point3 p1 = interior_point();
            const Point3 p2 = interior_point();
            const double len = norm(p2 - p1);
            if (len < 0.05 * diam) continue;
            const Point3 u = (1.0 / len) * (p2 - p1);
            const Segment3 s{p1 - (1.2 * diam) * u, p2 + (1.2 * diam) * u};
            if (!clip_halfspace_oracle(region, s).is_empty()) {
                out.push_back(s);
                break;
            }
        }
    }
    for (int i = hits; i < m; ++i) {
        for (;;) {
            const Point3 a{rng.uniform(lo_x - span_x, hi_x + span_x),
                           rng.uniform(lo_y - span_y, hi_y + span_y),
                           rng.uniform(lo_z - span_z, hi_z + span_z)};
            const Point3 b{rng.uniform(lo_x - span_x, hi_x + span_x),
                           rng.uniform(lo_y - span_y, hi_y + span_y),
                           rng.uniform(lo_z - span_z, hi_z + span_z)};
            if (norm(b - a) < 1e-6 * diam) continue;
            const Segment3 s{a, b};
            if (clip_halfspace_oracle(region, s).is_empty()) {
                out.push_back(s);
                break;
            }
        }
    }
    for (std::size_t i = out.size(); i > 1; --i) {
        std::swap(out[i - 1], out[rng.below(i)]);
    }
    return out;
}

}  // namespace sdclip
