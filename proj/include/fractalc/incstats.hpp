#pragma once

#include <span>
#include <vector>

#include "json.hpp"

#include "fractalc/geometry.hpp"

namespace fractalc::incstats {

/// Segment-length probabilities p = delta / L0 at one stage, kept as
/// (value, multiplicity) pairs, with the exponent that normalizes them.
struct IncompleteDistribution {
    geometry::Census probabilities;
    double alpha = 0.0;
    unsigned stage = 0;

    /// sum of multiplicity * p^alpha
    double normalization() const;
    double residual() const { return normalization() - 1.0; }
};

/// alpha is the composite dimension of the schedule.
IncompleteDistribution distribution(const geometry::Schedule& s, unsigned k);

/// Multiset of products p_i * p_j * ... over independent subsystems.
geometry::Census outer_product(std::span<const geometry::Census> parts);

struct FactorizationReport {
    double alpha = 0.0;  // composite exponent
    std::vector<double> part_alphas;
    double max_normalization_residual = 0.0;
    bool multiplicities_match = false;
    double max_value_rel_error = 0.0;
    bool factorization_ok = false;
    double complete_hypothesis_residual = 0.0;  // diagnostic only
    std::size_t joint_entries = 0;
};

inline constexpr double factorization_value_tolerance = 1e-12;
inline constexpr double normalization_tolerance = 1e-9;

/// Compares the stage-k distribution of the concatenated schedule with the
/// product of the parts' distributions and checks the joint normalization.
FactorizationReport joint_factorization_check(std::span<const geometry::Schedule> parts, unsigned k);
FactorizationReport joint_factorization_check(const geometry::Schedule& a, const geometry::Schedule& b,
                                              unsigned k);

nlohmann::json to_json(const FactorizationReport& r);

}  // namespace fractalc::incstats
