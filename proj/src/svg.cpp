#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

#include "fractalc/geometry.hpp"

namespace fractalc::geometry {

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s(buf);
    if (s == "-0.000000")
        s = "0.000000";
    return s;
}

}  // namespace

void write_svg(std::ostream& os, const SegmentSet& s, const SvgStyle& style) {
    if (s.segments.size() > svg_segment_limit)
        throw std::invalid_argument("too many segments to render: " +
                                    std::to_string(s.segments.size()));

    double minx = 0.0, maxx = s.initiator_length, miny = 0.0, maxy = 0.0;
    if (!s.segments.empty()) {
        minx = maxx = s.segments[0].a.x;
        miny = maxy = -s.segments[0].a.y;
    }
    for (const auto& g : s.segments)
        for (const Point& p : {g.a, g.b}) {
            minx = std::min(minx, p.x);
            maxx = std::max(maxx, p.x);
            miny = std::min(miny, -p.y);
            maxy = std::max(maxy, -p.y);
        }
    double span = std::max(maxx - minx, maxy - miny);
    if (span <= 0.0)
        span = 1.0;
    const double margin = 0.05 * span;
    const double vx = minx - margin, vy = miny - margin;
    const double vw = (maxx - minx) + 2 * margin, vh = (maxy - miny) + 2 * margin;
    const double height_px = style.width_px * vh / vw;
    const double stroke = style.stroke_px * vw / style.width_px;

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fixed6(style.width_px)
       << "\" height=\"" << fixed6(height_px) << "\" viewBox=\"" << fixed6(vx) << ' ' << fixed6(vy)
       << ' ' << fixed6(vw) << ' ' << fixed6(vh) << "\">\n"
       << "<rect x=\"" << fixed6(vx) << "\" y=\"" << fixed6(vy) << "\" width=\"" << fixed6(vw)
       << "\" height=\"" << fixed6(vh) << "\" fill=\"" << style.background << "\"/>\n"
       << "<g fill=\"none\" stroke=\"" << style.stroke << "\" stroke-width=\"" << fixed6(stroke)
       << "\" stroke-linecap=\"round\" stroke-linejoin=\"round\">\n";

    const double join_tol = 1e-12 * span;
    auto joined = [](const Point& p, const Point& q, double tol) {
        return std::abs(p.x - q.x) <= tol && std::abs(p.y - q.y) <= tol;
    };

    // SVG y grows downward; flip so figures render upright.
    std::size_t i = 0;
    while (i < s.segments.size()) {
        os << "<polyline points=\"" << fixed6(s.segments[i].a.x) << ',' << fixed6(-s.segments[i].a.y);
        std::size_t j = i;
        do {
            os << ' ' << fixed6(s.segments[j].b.x) << ',' << fixed6(-s.segments[j].b.y);
            ++j;
        } while (j < s.segments.size() && joined(s.segments[j - 1].b, s.segments[j].a, join_tol));
        os << "\"/>\n";
        i = j;
    }
    os << "</g>\n</svg>\n";
}

void export_svg(const SegmentSet& s, const std::filesystem::path& path, const SvgStyle& style) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_svg(out, s, style);
    out.flush();
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

void write_csv(std::ostream& os, const SegmentSet& s) {
    char buf[160];
    for (const auto& g : s.segments) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g\n", g.a.x, g.a.y, g.b.x, g.b.y);
        os << buf;
    }
}

}  // namespace fractalc::geometry
