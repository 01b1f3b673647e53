#include "fractalc/boxcount.hpp"

#include <numeric>

namespace fractalc::boxcount {

using geometry::Segment;

Grid make_grid(std::span<const Segment> segs, double side) {
    if (segs.empty())
        throw DegenerateGeometry("no segments");
    if (!(side > 0.0))
        throw ScaleLadderInvalid("box side must be positive");
    double minx = segs[0].a.x, maxx = minx, miny = segs[0].a.y, maxy = miny;
    for (const auto& s : segs)
        for (const auto& p : {s.a, s.b}) {
            minx = std::min(minx, p.x);
            maxx = std::max(maxx, p.x);
            miny = std::min(miny, p.y);
            maxy = std::max(maxy, p.y);
        }
    Grid g;
    g.origin = {minx, miny};
    g.side = side;
    g.cols = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil((maxx - minx) / side)));
    g.rows = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil((maxy - miny) / side)));
    return g;
}

std::uint64_t count_boxes(std::span<const Segment> segs, double side) {
    const Grid g = make_grid(segs, side);
    std::vector<std::uint64_t> keys;
    keys.reserve(segs.size() * 2);
    for (const auto& s : segs)
        for_each_box(g, s, [&](std::int64_t c, std::int64_t r) {
            keys.push_back(static_cast<std::uint64_t>(c) * static_cast<std::uint64_t>(g.rows) +
                           static_cast<std::uint64_t>(r));
        });
    std::sort(keys.begin(), keys.end());
    return static_cast<std::uint64_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
}

double ladder_top(const geometry::SegmentSet& s) {
    const Grid unit = make_grid(s.segments, 1.0);
    double maxx = unit.origin.x, maxy = unit.origin.y;
    for (const auto& g : s.segments)
        for (const auto& p : {g.a, g.b}) {
            maxx = std::max(maxx, p.x);
            maxy = std::max(maxy, p.y);
        }
    const double diag = std::hypot(maxx - unit.origin.x, maxy - unit.origin.y);
    if (!(diag > 0.0))
        throw DegenerateGeometry("all points coincide");
    return diag / 4.0;
}

double typical_length(const geometry::Census& c) {
    const double total = geometry::census_total(c).convert_to<double>();
    double acc = 0.0;
    for (const auto& e : c)
        acc += e.count.convert_to<double>() / total * std::log(e.length);
    return std::exp(acc);
}

std::vector<double> scale_ladder(const geometry::SegmentSet& s, int scale_count, double min_scale) {
    const double top = ladder_top(s);
    double shortest = s.segments[0].length();
    for (const auto& g : s.segments)
        shortest = std::min(shortest, g.length());
    if (scale_count < 4)
        throw ScaleLadderInvalid("need at least 4 scales");
    if (!(min_scale > 0.0) || !(min_scale < top))
        throw ScaleLadderInvalid("minimum scale must lie in (0, diagonal/4)");
    if (min_scale < shortest * (1.0 - 1e-9))
        throw ScaleLadderInvalid("minimum scale is finer than the shortest segment");

    std::vector<double> scales(scale_count);
    const double q = std::pow(min_scale / top, 1.0 / (scale_count - 1));
    for (int i = 0; i < scale_count; ++i)
        scales[i] = top * std::pow(q, i);
    scales.back() = min_scale;
    return scales;
}

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return f;
}

BoxCountReport estimate_dimension(const geometry::SegmentSet& s, int scale_count, double min_scale) {
    BoxCountReport rep;
    rep.scales = scale_ladder(s, scale_count, min_scale);
    rep.counts.assign(rep.scales.size(), 0);

    const std::int64_t n = static_cast<std::int64_t>(rep.scales.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i)
        rep.counts[i] = count_boxes(s.segments, rep.scales[i]);

    rep.fit_begin = scale_count >= 6 ? 2 : 0;
    std::vector<double> x, y;
    for (std::size_t i = rep.fit_begin; i < rep.scales.size(); ++i) {
        x.push_back(std::log(1.0 / rep.scales[i]));
        y.push_back(std::log(static_cast<double>(rep.counts[i])));
    }
    const LineFit fit = least_squares(x, y);
    rep.slope = fit.slope;
    rep.intercept = fit.intercept;
    rep.r_squared = fit.r_squared;
    return rep;
}

nlohmann::json to_json(const BoxCountReport& r) {
    nlohmann::json j;
    j["scales"] = r.scales;
    j["counts"] = r.counts;
    j["slope"] = r.slope;
    j["r_squared"] = r.r_squared;
    j["theoretical"] = r.theoretical ? nlohmann::json(*r.theoretical) : nlohmann::json(nullptr);
    j["fit_excluded_coarse_scales"] = r.fit_begin;
    return j;
}

}  // namespace fractalc::boxcount
