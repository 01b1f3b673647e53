#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "json.hpp"

#include "fractalc/geometry.hpp"

namespace fractalc::boxcount {

class ScaleLadderInvalid : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DegenerateGeometry : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct BoxCountReport {
    std::vector<double> scales;  // strictly decreasing
    std::vector<std::uint64_t> counts;
    double slope = 0.0;  // least squares of ln N against ln(1/eps)
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t fit_begin = 0;  // coarse scales excluded from the fit
    std::optional<double> theoretical;
};

/// Grid of square boxes of side `side`, anchored at `origin` and covering
/// `cols` x `rows` boxes. Boxes are half-open; points on the far edge of
/// the covered region fall into the last row/column.
struct Grid {
    geometry::Point origin;
    double side = 1.0;
    std::int64_t cols = 1;
    std::int64_t rows = 1;
};

Grid make_grid(std::span<const geometry::Segment> segs, double side);

/// Calls visit(col, row) for each box the segment passes through. A box may
/// be reported more than once.
template <class F>
void for_each_box(const Grid& g, const geometry::Segment& s, F&& visit) {
    auto col = [&](double u) {
        return std::clamp(static_cast<std::int64_t>(std::floor(u)), std::int64_t{0}, g.cols - 1);
    };
    auto row = [&](double v) {
        return std::clamp(static_cast<std::int64_t>(std::floor(v)), std::int64_t{0}, g.rows - 1);
    };
    double u0 = (s.a.x - g.origin.x) / g.side, v0 = (s.a.y - g.origin.y) / g.side;
    double u1 = (s.b.x - g.origin.x) / g.side, v1 = (s.b.y - g.origin.y) / g.side;
    if (u0 > u1) {
        std::swap(u0, u1);
        std::swap(v0, v1);
    }
    const std::int64_t c0 = col(u0), c1 = col(u1);
    // walk the columns; within each, the segment spans a contiguous run of rows
    for (std::int64_t c = c0; c <= c1; ++c) {
        double ya = v0, yb = v1;
        if (u1 > u0) {
            const double slope = (v1 - v0) / (u1 - u0);
            const double xa = c == c0 ? u0 : static_cast<double>(c);
            const double xb = c == c1 ? u1 : static_cast<double>(c + 1);
            ya = v0 + (xa - u0) * slope;
            yb = v0 + (xb - u0) * slope;
        }
        const std::int64_t r0 = row(std::min(ya, yb)), r1 = row(std::max(ya, yb));
        for (std::int64_t r = r0; r <= r1; ++r)
            visit(c, r);
    }
}

/// Number of distinct occupied boxes (sort + unique).
std::uint64_t count_boxes(std::span<const geometry::Segment> segs, double side);

/// Largest box side of the ladder: a quarter of the bounding-box diagonal.
double ladder_top(const geometry::SegmentSet& s);

/// Count-weighted geometric mean of the census lengths: the typical segment
/// size of a stage. Equals the common length for uniform generators.
double typical_length(const geometry::Census& c);

/// Geometric ladder of scale_count sides from diagonal/4 down to min_scale.
std::vector<double> scale_ladder(const geometry::SegmentSet& s, int scale_count, double min_scale);

/// Counts every scale of the ladder (parallel over scales) and fits the slope.
BoxCountReport estimate_dimension(const geometry::SegmentSet& s, int scale_count, double min_scale);

struct LineFit {
    double slope;
    double intercept;
    double r_squared;
};
LineFit least_squares(std::span<const double> x, std::span<const double> y);

nlohmann::json to_json(const BoxCountReport& r);

}  // namespace fractalc::boxcount
