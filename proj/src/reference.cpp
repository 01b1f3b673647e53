#include "fractalc/reference.hpp"

#include <algorithm>
#include <set>

#include "fractalc/boxcount.hpp"
#include "transform.hpp"

namespace fractalc::reference {

using geometry::Segment;

namespace {

struct Expander {
    std::vector<std::vector<geometry::detail::LocalPiece>> stages;
    std::vector<Segment>* out;

    void expand(const Segment& seg, std::size_t depth) {
        if (depth == stages.size()) {
            out->push_back(seg);
            return;
        }
        for (const auto& p : stages[depth])
            expand(geometry::detail::place(seg, p), depth + 1);
    }
};

}  // namespace

geometry::SegmentSet iterate_serial(const geometry::Schedule& s, unsigned k, std::uint64_t budget) {
    geometry::detail::check_budget(s, k, budget);
    geometry::SegmentSet result;
    result.stage = k;
    result.initiator_length = s.initiator_length;
    Expander ex;
    for (const auto* g : geometry::detail::substages(s, k))
        ex.stages.push_back(geometry::detail::local_pieces(*g));
    ex.out = &result.segments;
    ex.expand(geometry::detail::initiator(s), 0);
    return result;
}

std::vector<std::uint64_t> box_counts_serial(std::span<const Segment> segs, std::span<const double> scales) {
    std::vector<std::uint64_t> counts;
    for (double side : scales) {
        const auto grid = boxcount::make_grid(segs, side);
        std::set<std::pair<std::int64_t, std::int64_t>> boxes;
        for (const auto& s : segs)
            boxcount::for_each_box(grid, s, [&](std::int64_t c, std::int64_t r) { boxes.insert({c, r}); });
        counts.push_back(boxes.size());
    }
    return counts;
}

bool detect_overlap_brute(const geometry::SegmentSet& s) {
    const auto& segs = s.segments;
    if (segs.size() < 2)
        return false;
    double minx = segs[0].a.x, maxx = minx, miny = segs[0].a.y, maxy = miny;
    for (const auto& g : segs)
        for (const auto& p : {g.a, g.b}) {
            minx = std::min(minx, p.x);
            maxx = std::max(maxx, p.x);
            miny = std::min(miny, p.y);
            maxy = std::max(maxy, p.y);
        }
    const double eps = geometry::overlap_tolerance * std::max({1.0, maxx - minx, maxy - miny});
    for (std::size_t i = 0; i < segs.size(); ++i)
        for (std::size_t j = i + 1; j < segs.size(); ++j)
            if (geometry::segments_overlap(segs[i], segs[j], eps))
                return true;
    return false;
}

}  // namespace fractalc::reference
