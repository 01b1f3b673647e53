#include "fractalc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace fractalc::geometry {

std::vector<double> Generator::draw_ratios() const {
    std::vector<double> out;
    for (const auto& p : pieces)
        if (p.draw)
            out.push_back(p.ratio);
    return out;
}

std::size_t Generator::draw_count() const {
    return static_cast<std::size_t>(
        std::count_if(pieces.begin(), pieces.end(), [](const GeneratorPiece& p) { return p.draw; }));
}

Generator koch_generator(double theta) {
    if (!(theta > 0.0 && theta < std::numbers::pi / 2))
        throw InvalidAngle("Koch angle must lie in (0, pi/2)");
    // closes the four-piece chain over the unit segment
    const double rho = 1.0 / (2.0 * (1.0 + std::cos(theta)));
    Generator g;
    g.kind = GeneratorKind::koch;
    for (double h : {0.0, theta, -theta, 0.0})
        g.pieces.push_back({rho, h, true});
    return g;
}

Generator quadratic_koch_generator() {
    constexpr double quarter = std::numbers::pi / 2;
    Generator g;
    g.kind = GeneratorKind::quadratic;
    for (double h : {0.0, quarter, 0.0, -quarter, 0.0})
        g.pieces.push_back({1.0 / 3.0, h, true});
    return g;
}

Generator cantor_generator(std::span<const double> ratios) {
    if (ratios.empty())
        throw std::invalid_argument("Cantor generator needs at least one ratio");
    for (double r : ratios)
        if (!(r > 0.0 && r < 1.0))
            throw std::invalid_argument("Cantor ratio must lie in (0,1)");
    const double total = std::accumulate(ratios.begin(), ratios.end(), 0.0);
    if (total > 1.0 + 1e-12)
        throw RatiosExceedUnit("Cantor ratios sum to more than one");

    Generator g;
    g.kind = GeneratorKind::cantor;
    const double gap = ratios.size() > 1 ? std::max(0.0, 1.0 - total) / (ratios.size() - 1) : 0.0;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        if (i > 0 && gap > 0.0)
            g.pieces.push_back({gap, 0.0, false});
        g.pieces.push_back({ratios[i], 0.0, true});
    }
    return g;
}

Generator general_generator(std::vector<GeneratorPiece> pieces) {
    bool any_draw = false;
    for (const auto& p : pieces) {
        if (!(p.ratio > 0.0 && p.ratio < 1.0))
            throw std::invalid_argument("piece ratio must lie in (0,1)");
        if (!(std::abs(p.heading) < std::numbers::pi))
            throw InvalidAngle("piece heading magnitude must be below pi");
        any_draw = any_draw || p.draw;
    }
    if (!any_draw)
        throw std::invalid_argument("generator has no draw piece");
    Generator g;
    g.kind = GeneratorKind::general;
    g.pieces = std::move(pieces);
    return g;
}

Generator builtin_generator(const parser::Primitive& p) {
    using Kind = parser::Primitive::Kind;
    switch (p.kind) {
    case Kind::koch:
        return koch_generator(p.angle.value);
    case Kind::quadratic:
        if (std::abs(p.angle.value - std::numbers::pi / 2) > 1e-12)
            throw InvalidAngle("quadratic Koch supports only pi/2");
        return quadratic_koch_generator();
    case Kind::cantor: {
        std::vector<double> r;
        for (const auto& x : p.ratios)
            r.push_back(x.value);
        return cantor_generator(r);
    }
    case Kind::general: {
        std::vector<GeneratorPiece> pieces;
        for (const auto& pc : p.pieces)
            pieces.push_back({pc.ratio.value, pc.angle.value, pc.draw});
        return general_generator(std::move(pieces));
    }
    }
    throw std::invalid_argument("unknown primitive");
}

bool Schedule::connected() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const ScheduleEntry& e) { return e.generator.connected(); });
}

Schedule build_schedule(const parser::ScheduleExpr& expr, double initiator_length) {
    if (!(initiator_length > 0.0))
        throw std::invalid_argument("initiator length must be positive");
    Schedule s;
    s.initiator_length = initiator_length;
    for (const auto& it : expr.items)
        s.entries.push_back({builtin_generator(it.primitive), it.repeat});
    if (s.entries.empty())
        throw std::invalid_argument("empty schedule");
    return s;
}

Schedule build_schedule(std::string_view text, double initiator_length) {
    return build_schedule(parser::parse(text), initiator_length);
}

moran::ScaleSpectrum spectrum(const Schedule& s) {
    std::vector<moran::ScaleSpectrum::Component> comps;
    for (const auto& e : s.entries)
        comps.push_back({e.generator.draw_ratios(), e.repeat});
    return moran::ScaleSpectrum(std::move(comps));
}

}  // namespace fractalc::geometry
