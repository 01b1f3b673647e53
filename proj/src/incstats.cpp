#include "fractalc/incstats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fractalc::incstats {

using geometry::Census;
using geometry::Schedule;

namespace {

double sum_powers(const Census& c, double alpha) {
    double total = 0.0;
    for (const auto& e : c)
        total += static_cast<double>(e.count) * std::pow(e.length, alpha);
    return total;
}

Census normalized_census(const Schedule& s, unsigned k) {
    Census c = geometry::segment_census(s, k);
    for (auto& e : c)
        e.length /= s.initiator_length;
    return c;
}

}  // namespace

double IncompleteDistribution::normalization() const {
    return sum_powers(probabilities, alpha);
}

IncompleteDistribution distribution(const Schedule& s, unsigned k) {
    IncompleteDistribution d;
    d.probabilities = normalized_census(s, k);
    d.alpha = moran::solve_moran(geometry::spectrum(s)).alpha;
    d.stage = k;
    return d;
}

Census outer_product(std::span<const Census> parts) {
    Census acc{{1.0, geometry::BigCount(1)}};
    for (const auto& part : parts) {
        Census next;
        next.reserve(acc.size() * part.size());
        for (const auto& a : acc)
            for (const auto& b : part)
                next.push_back({a.length * b.length, a.count * b.count});
        acc = geometry::merge_census(std::move(next));
    }
    return acc;
}

FactorizationReport joint_factorization_check(std::span<const Schedule> parts, unsigned k) {
    if (parts.empty())
        throw std::invalid_argument("need at least one subsystem");

    FactorizationReport rep;
    Schedule joint;
    std::vector<Census> part_dists;
    for (const auto& p : parts) {
        for (const auto& e : p.entries)
            joint.entries.push_back(e);
        IncompleteDistribution d = distribution(p, k);
        rep.part_alphas.push_back(d.alpha);
        rep.max_normalization_residual = std::max(rep.max_normalization_residual, std::abs(d.residual()));
        part_dists.push_back(std::move(d.probabilities));
    }

    const IncompleteDistribution joint_dist = distribution(joint, k);
    rep.alpha = joint_dist.alpha;
    rep.joint_entries = joint_dist.probabilities.size();
    rep.max_normalization_residual =
        std::max(rep.max_normalization_residual, std::abs(joint_dist.residual()));

    const Census product = outer_product(part_dists);
    rep.multiplicities_match = product.size() == joint_dist.probabilities.size();
    for (std::size_t i = 0; rep.multiplicities_match && i < product.size(); ++i) {
        const auto& p = product[i];
        const auto& q = joint_dist.probabilities[i];
        rep.max_value_rel_error = std::max(rep.max_value_rel_error, std::abs(p.length - q.length) / q.length);
        rep.multiplicities_match = p.count == q.count;
    }
    rep.factorization_ok = rep.multiplicities_match &&
                           rep.max_value_rel_error <= factorization_value_tolerance &&
                           rep.max_normalization_residual < normalization_tolerance;

    // p^alpha(joint) against prod p_i^alpha_i, over every combination of
    // subsystem values. Reported, not enforced.
    struct Partial {
        double p;
        double weighted;
    };
    double combinations = 1.0;
    for (const auto& d : part_dists)
        combinations *= static_cast<double>(d.size());
    if (combinations > 1e6) {
        rep.complete_hypothesis_residual = std::numeric_limits<double>::quiet_NaN();
        return rep;
    }
    std::vector<Partial> combos{{1.0, 1.0}};
    for (std::size_t i = 0; i < part_dists.size(); ++i) {
        std::vector<Partial> next;
        for (const auto& c : combos)
            for (const auto& e : part_dists[i])
                next.push_back({c.p * e.length, c.weighted * std::pow(e.length, rep.part_alphas[i])});
        combos.swap(next);
    }
    for (const auto& c : combos)
        rep.complete_hypothesis_residual =
            std::max(rep.complete_hypothesis_residual, std::abs(std::pow(c.p, rep.alpha) - c.weighted));
    return rep;
}

FactorizationReport joint_factorization_check(const Schedule& a, const Schedule& b, unsigned k) {
    const Schedule parts[] = {a, b};
    return joint_factorization_check(parts, k);
}

nlohmann::json to_json(const FactorizationReport& r) {
    return {{"alpha", r.alpha},
            {"part_alphas", r.part_alphas},
            {"max_normalization_residual", r.max_normalization_residual},
            {"factorization_ok", r.factorization_ok},
            {"multiplicities_match", r.multiplicities_match},
            {"max_value_rel_error", r.max_value_rel_error},
            {"complete_hypothesis_residual", r.complete_hypothesis_residual},
            {"joint_entries", r.joint_entries}};
}

}  // namespace fractalc::incstats
