#include <algorithm>
#include <cmath>
#include <map>

#include "fractalc/geometry.hpp"

namespace fractalc::geometry {

namespace {

struct RatioGroup {
    double ratio;
    unsigned multiplicity;
};

std::vector<RatioGroup> group_ratios(const Generator& g) {
    std::map<double, unsigned> m;
    for (double r : g.draw_ratios())
        ++m[r];
    std::vector<RatioGroup> out;
    for (auto [r, c] : m)
        out.push_back({r, c});
    return out;
}

// Visits every g with sum g_j = total, g_j >= 0, over groups.size() parts.
template <class F>
void for_each_composition(std::size_t parts, unsigned total, F&& visit) {
    std::vector<unsigned> g(parts, 0);
    auto rec = [&](auto&& self, std::size_t idx, unsigned left) -> void {
        if (idx + 1 == parts) {
            g[idx] = left;
            visit(g);
            return;
        }
        for (unsigned v = 0; v <= left; ++v) {
            g[idx] = v;
            self(self, idx + 1, left - v);
        }
    };
    rec(rec, 0, total);
}

// Census of a single generator applied `times` times on a unit segment.
Census generator_census(const Generator& gen, unsigned times) {
    const auto groups = group_ratios(gen);
    std::vector<BigCount> fact(times + 1);
    fact[0] = 1;
    for (unsigned i = 1; i <= times; ++i)
        fact[i] = fact[i - 1] * i;

    Census out;
    for_each_composition(groups.size(), times, [&](const std::vector<unsigned>& g) {
        BigCount count = fact[times];
        double length = 1.0;
        for (std::size_t j = 0; j < groups.size(); ++j) {
            count /= fact[g[j]];
            count *= boost::multiprecision::pow(BigCount(groups[j].multiplicity), g[j]);
            length *= std::pow(groups[j].ratio, static_cast<double>(g[j]));
        }
        out.push_back({length, std::move(count)});
    });
    return merge_census(std::move(out));
}

}  // namespace

Census merge_census(Census c, double rel_tol, double abs_tol) {
    std::sort(c.begin(), c.end(),
              [](const CensusEntry& a, const CensusEntry& b) { return a.length < b.length; });
    Census out;
    for (auto& e : c) {
        if (!out.empty() && std::abs(e.length - out.back().length) <= rel_tol * out.back().length + abs_tol)
            out.back().count += e.count;
        else
            out.push_back(std::move(e));
    }
    return out;
}

Census segment_census(const Schedule& s, unsigned k) {
    Census acc{{s.initiator_length, BigCount(1)}};
    for (const auto& e : s.entries) {
        const Census part = generator_census(e.generator, e.repeat * k);
        Census next;
        next.reserve(acc.size() * part.size());
        for (const auto& a : acc)
            for (const auto& b : part)
                next.push_back({a.length * b.length, a.count * b.count});
        acc = merge_census(std::move(next));
    }
    return acc;
}

BigCount census_total(const Census& c) {
    BigCount total = 0;
    for (const auto& e : c)
        total += e.count;
    return total;
}

Census length_histogram(const SegmentSet& s, double rel_tol) {
    Census c;
    c.reserve(s.segments.size());
    double magnitude = s.initiator_length;
    for (const auto& seg : s.segments) {
        c.push_back({seg.length(), BigCount(1)});
        for (const auto& p : {seg.a, seg.b})
            magnitude = std::max({magnitude, std::abs(p.x), std::abs(p.y)});
    }
    // lengths come from coordinate differences, so their error is absolute
    return merge_census(std::move(c), rel_tol, coordinate_rounding * magnitude);
}

}  // namespace fractalc::geometry
