#include "sdclip/hull3.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace sdclip {

namespace {

struct Facet {
    std::uint32_t a, b, c;
    Point3 raw_normal;  // cross(b - a, c - a), outward, unnormalized
    bool alive = true;
};

Point3 raw_normal(const std::vector<Point3>& pts, std::uint32_t a, std::uint32_t b,
                  std::uint32_t c) {
    return cross(pts[b] - pts[a], pts[c] - pts[a]);
}

}  // namespace

std::vector<std::array<std::uint32_t, 3>> convex_hull(const std::vector<Point3>& points) {
    const std::size_t n = points.size();
    if (n < 4) throw std::invalid_argument("convex hull needs at least 4 points");

    double lo_x = points[0].x, hi_x = lo_x;
    double lo_y = points[0].y, hi_y = lo_y;
    double lo_z = points[0].z, hi_z = lo_z;
    for (const Point3& p : points) {
        lo_x = std::min(lo_x, p.x);
        hi_x = std::max(hi_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_y = std::max(hi_y, p.y);
        lo_z = std::min(lo_z, p.z);
        hi_z = std::max(hi_z, p.z);
    }
    const double scale =
        norm(Point3{hi_x - lo_x, hi_y - lo_y, hi_z - lo_z});
    const double tol = 1e-12 * (1.0 + scale * scale);

    // seed tetrahedron from the first sufficiently independent quadruple
    const std::uint32_t i0 = 0;
    std::uint32_t i1 = 0, i2 = 0, i3 = 0;
    for (std::uint32_t i = 1; i < n && i1 == 0; ++i) {
        if (norm(points[i] - points[i0]) > tol) i1 = i;
    }
    if (i1 == 0) throw std::invalid_argument("all points coincide");
    for (std::uint32_t i = 1; i < n && i2 == 0; ++i) {
        if (i == i1) continue;
        if (norm(cross(points[i1] - points[i0], points[i] - points[i0])) > tol) i2 = i;
    }
    if (i2 == 0) throw std::invalid_argument("all points collinear");
    const Point3 seed_n = cross(points[i1] - points[i0], points[i2] - points[i0]);
    double seed_side = 0.0;
    for (std::uint32_t i = 1; i < n && i3 == 0; ++i) {
        if (i == i1 || i == i2) continue;
        const double side = dot(seed_n, points[i] - points[i0]);
        if (std::abs(side) > tol) {
            i3 = i;
            seed_side = side;
        }
    }
    if (i3 == 0) throw std::invalid_argument("all points coplanar");
    // arrange so i3 lies on the inner side of (i0, i1, i2)
    if (seed_side > 0.0) std::swap(i1, i2);

    std::vector<Facet> facets;
    facets.reserve(4 * n);  // dead facets linger until the final compaction
    const auto add_facet = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
        facets.push_back({a, b, c, raw_normal(points, a, b, c), true});
    };
    add_facet(i0, i1, i2);
    add_facet(i1, i0, i3);
    add_facet(i2, i1, i3);
    add_facet(i0, i2, i3);

    std::vector<std::size_t> visible;
    std::unordered_set<std::uint64_t> visible_edges;
    for (std::uint32_t p = 0; p < n; ++p) {
        if (p == i0 || p == i1 || p == i2 || p == i3) continue;

        visible.clear();
        for (std::size_t f = 0; f < facets.size(); ++f) {
            if (!facets[f].alive) continue;
            if (dot(facets[f].raw_normal, points[p] - points[facets[f].a]) > tol) {
                visible.push_back(f);
            }
        }
        if (visible.empty()) continue;  // inside the current hull

        visible_edges.clear();
        for (const std::size_t f : visible) {
            const std::uint32_t v[3] = {facets[f].a, facets[f].b, facets[f].c};
            for (int c = 0; c < 3; ++c) {
                const std::uint64_t a = v[c];
                const std::uint64_t b = v[(c + 1) % 3];
                visible_edges.insert((a << 32) | b);
            }
        }
        // horizon: directed edges of visible facets whose reverse is not visible
        for (const std::size_t f : visible) facets[f].alive = false;
        for (const std::size_t f : visible) {
            const std::uint32_t v[3] = {facets[f].a, facets[f].b, facets[f].c};
            for (int c = 0; c < 3; ++c) {
                const std::uint32_t a = v[c];
                const std::uint32_t b = v[(c + 1) % 3];
                const std::uint64_t rev =
                    (static_cast<std::uint64_t>(b) << 32) | a;
                if (visible_edges.count(rev) == 0) add_facet(a, b, p);
            }
        }
    }

    std::vector<std::array<std::uint32_t, 3>> result;
    for (const Facet& f : facets) {
        if (f.alive) result.push_back({f.a, f.b, f.c});
    }
    return result;
}

}  // namespace sdclip
