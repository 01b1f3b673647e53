#pragma once

// Generators and independent oracles shared by the test suites. Nothing in
// here calls into the code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fractalc/geometry.hpp"
#include "fractalc/moran.hpp"

namespace testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Plain bisection on a decreasing function, no logarithms, no early exit.
inline double bisect_decreasing(const std::function<double(double)>& f, double lo, double hi) {
    for (int i = 0; i < 400; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        (f(mid) > 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Direct product prod_i (sum_j r_ij^a)^n_i from raw component lists.
inline double raw_product(const std::vector<std::pair<std::vector<double>, unsigned>>& comps, double a) {
    double p = 1.0;
    for (const auto& [ratios, n] : comps) {
        double s = 0.0;
        for (double r : ratios)
            s += std::pow(r, a);
        p *= std::pow(s, n);
    }
    return p;
}

struct UniformPart {
    std::uint64_t copies;
    double ratio;
    unsigned repeat;
};

inline std::vector<UniformPart> random_uniform_parts(Rng& rng) {
    std::vector<UniformPart> parts(uniform_int(rng, 1, 5));
    for (auto& p : parts)
        p = {static_cast<std::uint64_t>(uniform_int(rng, 1, 12)), uniform(rng, 0.05, 0.95),
             static_cast<unsigned>(uniform_int(rng, 1, 4))};
    return parts;
}

inline fractalc::moran::ScaleSpectrum random_spectrum(Rng& rng, int max_components = 4,
                                                      int max_ratios = 4) {
    std::vector<fractalc::moran::ScaleSpectrum::Component> comps(uniform_int(rng, 1, max_components));
    for (auto& c : comps) {
        c.ratios.resize(uniform_int(rng, 1, max_ratios));
        for (auto& r : c.ratios)
            r = uniform(rng, 0.05, 0.95);
        c.repeat = static_cast<unsigned>(uniform_int(rng, 1, 4));
    }
    return fractalc::moran::ScaleSpectrum(std::move(comps));
}

/// Random schedule text drawn from the primitives a figure could use.
inline std::string random_schedule_text(Rng& rng, int max_items = 3) {
    static const char* const kochs[] = {"K[pi/3]", "K[pi/4]", "K[pi/5]", "K[1.2]", "Q[pi/2]"};
    static const char* const cantors[] = {"C[1/3,1/3]", "C[1/2,1/3]", "C[1/2,1/4,1/6]",
                                          "C[0.3,0.45]", "C[1/5,2/5,1/7]", "C[3/4]"};
    std::string out;
    const int items = uniform_int(rng, 1, max_items);
    for (int i = 0; i < items; ++i) {
        if (!out.empty())
            out += ' ';
        if (uniform_int(rng, 0, 1))
            out += kochs[uniform_int(rng, 0, 4)];
        else
            out += cantors[uniform_int(rng, 0, 5)];
        if (uniform_int(rng, 0, 3) == 0)
            out += "^2";
    }
    return out;
}

/// Census by walking every root-to-leaf path of draw-piece choices and
/// multiplying ratios. Exponential; only for small stages.
inline std::map<double, std::uint64_t> path_census(const fractalc::geometry::Schedule& s, unsigned k) {
    std::vector<std::vector<double>> levels;
    for (unsigned stage = 0; stage < k; ++stage)
        for (const auto& e : s.entries)
            for (unsigned r = 0; r < e.repeat; ++r)
                levels.push_back(e.generator.draw_ratios());
    std::vector<double> lengths;
    std::function<void(std::size_t, double)> walk = [&](std::size_t d, double len) {
        if (d == levels.size()) {
            lengths.push_back(len);
            return;
        }
        for (double r : levels[d])
            walk(d + 1, len * r);
    };
    walk(0, s.initiator_length);
    std::sort(lengths.begin(), lengths.end());
    std::map<double, std::uint64_t> out;
    double key = -1.0;
    for (double l : lengths) {
        if (key < 0 || std::abs(l - key) > 1e-12 * key)
            key = l;
        ++out[key];
    }
    return out;
}

inline std::string random_ratio(Rng& rng) {
    if (uniform_int(rng, 0, 1)) {
        const int den = uniform_int(rng, 2, 50);
        return std::to_string(uniform_int(rng, 1, den - 1)) + "/" + std::to_string(den);
    }
    return std::to_string(uniform(rng, 0.001, 0.999));
}

inline std::string random_angle(Rng& rng) {
    std::string sign = uniform_int(rng, 0, 3) == 0 ? "-" : "";
    switch (uniform_int(rng, 0, 2)) {
    case 0: return sign + "pi/" + std::to_string(uniform_int(rng, 2, 24));
    case 1: return sign + std::to_string(uniform(rng, 0.0, 3.0));
    default: return sign + "0." + std::to_string(uniform_int(rng, 0, 99999));
    }
}

/// Random well-formed expression with irregular whitespace, covering every
/// primitive kind and both number forms.
inline std::string random_expression(Rng& rng) {
    std::string out;
    const int items = uniform_int(rng, 1, 5);
    for (int i = 0; i < items; ++i) {
        out += std::string(uniform_int(rng, 0, 2), ' ');
        switch (uniform_int(rng, 0, 3)) {
        case 0: out += "K[" + random_angle(rng) + "]"; break;
        case 1: out += "Q[pi/2]"; break;
        case 2: {
            out += "C[";
            const int n = uniform_int(rng, 1, 4);
            for (int j = 0; j < n; ++j)
                out += (j ? ", " : "") + random_ratio(rng);
            out += "]";
            break;
        }
        default: {
            out += "G[";
            const int n = uniform_int(rng, 1, 4);
            for (int j = 0; j < n; ++j)
                out += std::string(j ? ";" : "") + "(" + random_ratio(rng) + "," + random_angle(rng) + "," +
                       (j == 0 || uniform_int(rng, 0, 1) ? "draw" : "gap") + ")";
            out += "]";
        }
        }
        if (uniform_int(rng, 0, 2) == 0)
            out += "^" + std::to_string(uniform_int(rng, 1, 9));
    }
    return out;
}

inline double max_coordinate(const fractalc::geometry::SegmentSet& s) {
    double m = s.initiator_length;
    for (const auto& g : s.segments)
        m = std::max({m, std::abs(g.a.x), std::abs(g.a.y), std::abs(g.b.x), std::abs(g.b.y)});
    return m;
}

inline bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace testing
