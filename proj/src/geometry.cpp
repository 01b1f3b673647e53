#include "fractalc/geometry.hpp"

#include <cmath>

#include "transform.hpp"

namespace fractalc::geometry {

namespace detail {

std::vector<LocalPiece> local_pieces(const Generator& g) {
    std::vector<LocalPiece> out;
    double u = 0.0;
    double v = 0.0;
    for (const auto& p : g.pieces) {
        const double nu = u + p.ratio * std::cos(p.heading);
        const double nv = v + p.ratio * std::sin(p.heading);
        if (p.draw)
            out.push_back({u, v, nu, nv});
        u = nu;
        v = nv;
    }
    return out;
}

std::vector<const Generator*> substages(const Schedule& s, unsigned k) {
    std::vector<const Generator*> out;
    for (unsigned stage = 0; stage < k; ++stage)
        for (const auto& e : s.entries)
            for (unsigned r = 0; r < e.repeat; ++r)
                out.push_back(&e.generator);
    return out;
}

void check_budget(const Schedule& s, unsigned k, std::uint64_t budget) {
    BigCount predicted = predicted_segment_count(s, k);
    if (predicted > budget)
        throw SegmentBudgetExceeded(std::move(predicted));
}

Segment initiator(const Schedule& s) {
    return {{0.0, 0.0}, {s.initiator_length, 0.0}};
}

}  // namespace detail

double Segment::length() const {
    return std::hypot(b.x - a.x, b.y - a.y);
}

SegmentBudgetExceeded::SegmentBudgetExceeded(BigCount predicted)
    : std::runtime_error("segment budget exceeded: stage would produce " + predicted.str() +
                         " segments"),
      predicted_(std::move(predicted)) {}

BigCount predicted_segment_count(const Schedule& s, unsigned k) {
    BigCount total = 1;
    for (const auto& e : s.entries) {
        BigCount l = e.generator.draw_count();
        total *= boost::multiprecision::pow(l, e.repeat * k);
    }
    return total;
}

SegmentSet iterate(const Schedule& s, unsigned k, std::uint64_t budget) {
    detail::check_budget(s, k, budget);

    std::vector<Segment> current{detail::initiator(s)};
    std::vector<Segment> next;
    for (const Generator* g : detail::substages(s, k)) {
        const auto pieces = detail::local_pieces(*g);
        const std::int64_t parents = static_cast<std::int64_t>(current.size());
        const std::size_t fan = pieces.size();
        next.resize(current.size() * fan);
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < parents; ++i) {
            const Segment parent = current[i];
            Segment* out = next.data() + i * fan;
            for (std::size_t j = 0; j < fan; ++j)
                out[j] = detail::place(parent, pieces[j]);
        }
        current.swap(next);
    }
    return {std::move(current), k, s.initiator_length};
}

double total_length(const SegmentSet& s) {
    double sum = 0.0;
    for (const auto& seg : s.segments)
        sum += seg.length();
    return sum;
}

double predicted_length(const Schedule& s, unsigned k) {
    return content(s, k, 1.0);
}

double content(const Schedule& s, unsigned k, double beta) {
    if (!(beta >= 0.0))
        throw std::invalid_argument("content order must be nonnegative");
    double log_factor = 0.0;
    for (const auto& e : s.entries) {
        double sum = 0.0;
        for (double r : e.generator.draw_ratios())
            sum += std::pow(r, beta);
        log_factor += e.repeat * std::log(sum);
    }
    return std::exp(k * log_factor + beta * std::log(s.initiator_length));
}

}  // namespace fractalc::geometry
