#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "fractalc/geometry.hpp"

namespace fractalc::geometry {

namespace {

double cross(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

double dist(const Point& p, const Point& q) { return std::hypot(p.x - q.x, p.y - q.y); }

}  // namespace

bool segments_overlap(const Segment& s, const Segment& t, double eps) {
    if (std::max(s.a.x, s.b.x) + eps < std::min(t.a.x, t.b.x) ||
        std::max(t.a.x, t.b.x) + eps < std::min(s.a.x, s.b.x) ||
        std::max(s.a.y, s.b.y) + eps < std::min(t.a.y, t.b.y) ||
        std::max(t.a.y, t.b.y) + eps < std::min(s.a.y, s.b.y))
        return false;

    const double d1x = s.b.x - s.a.x, d1y = s.b.y - s.a.y;
    const double d2x = t.b.x - t.a.x, d2y = t.b.y - t.a.y;
    const double len1 = std::hypot(d1x, d1y);
    const double len2 = std::hypot(d2x, d2y);
    const double wx = t.a.x - s.a.x, wy = t.a.y - s.a.y;
    const double denom = cross(d1x, d1y, d2x, d2y);

    if (std::abs(denom) <= 1e-12 * len1 * len2) {
        // parallel: only collinear pieces can meet
        if (std::abs(cross(d1x, d1y, wx, wy)) > eps * len1)
            return false;
        const double p0 = (wx * d1x + wy * d1y) / len1;
        const double p1 = p0 + (d2x * d1x + d2y * d1y) / len1;
        const double shared = std::min(len1, std::max(p0, p1)) - std::max(0.0, std::min(p0, p1));
        return shared > eps;
    }

    const double ts = cross(wx, wy, d2x, d2y) / denom;
    const double tt = cross(wx, wy, d1x, d1y) / denom;
    const double es = eps / len1;
    const double et = eps / len2;
    if (ts < -es || ts > 1.0 + es || tt < -et || tt > 1.0 + et)
        return false;

    const Point hit{s.a.x + ts * d1x, s.a.y + ts * d1y};
    const bool end_of_s = dist(hit, s.a) <= eps || dist(hit, s.b) <= eps;
    const bool end_of_t = dist(hit, t.a) <= eps || dist(hit, t.b) <= eps;
    return !(end_of_s && end_of_t);
}

bool detect_overlap(const SegmentSet& s) {
    const auto& segs = s.segments;
    if (segs.size() < 2)
        return false;

    double minx = segs[0].a.x, miny = segs[0].a.y, maxx = minx, maxy = miny, cell = 0.0;
    for (const auto& g : segs) {
        for (const Point& p : {g.a, g.b}) {
            minx = std::min(minx, p.x);
            miny = std::min(miny, p.y);
            maxx = std::max(maxx, p.x);
            maxy = std::max(maxy, p.y);
        }
        cell = std::max(cell, g.length());
    }
    const double eps = overlap_tolerance * std::max({1.0, maxx - minx, maxy - miny});
    cell = std::max(cell, eps);

    // Bucket segments by every grid cell their padded bounding box touches.
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> grid;
    auto index = [&](double v, double lo) { return static_cast<std::int64_t>(std::floor((v - lo) / cell)); };
    for (std::uint32_t i = 0; i < segs.size(); ++i) {
        const auto& g = segs[i];
        const auto x0 = index(std::min(g.a.x, g.b.x) - eps, minx);
        const auto x1 = index(std::max(g.a.x, g.b.x) + eps, minx);
        const auto y0 = index(std::min(g.a.y, g.b.y) - eps, miny);
        const auto y1 = index(std::max(g.a.y, g.b.y) + eps, miny);
        for (auto cx = x0; cx <= x1; ++cx)
            for (auto cy = y0; cy <= y1; ++cy) {
                const auto key = (static_cast<std::uint64_t>(cx + 1) << 32) |
                                 static_cast<std::uint32_t>(cy + 1);
                grid[key].push_back(i);
            }
    }

    std::vector<const std::vector<std::uint32_t>*> buckets;
    buckets.reserve(grid.size());
    for (const auto& [key, members] : grid)
        if (members.size() > 1)
            buckets.push_back(&members);

    std::atomic<bool> found{false};
    const std::int64_t nb = static_cast<std::int64_t>(buckets.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t b = 0; b < nb; ++b) {
        if (found.load(std::memory_order_relaxed))
            continue;
        const auto& m = *buckets[b];
        for (std::size_t i = 0; i < m.size() && !found.load(std::memory_order_relaxed); ++i)
            for (std::size_t j = i + 1; j < m.size(); ++j)
                if (segments_overlap(segs[m[i]], segs[m[j]], eps)) {
                    found.store(true, std::memory_order_relaxed);
                    break;
                }
    }
    return found.load();
}

}  // namespace fractalc::geometry
