#pragma once

// Shared by the parallel kernels and the serial references so both place
// child segments with the same arithmetic.

#include <vector>

#include "fractalc/geometry.hpp"

namespace fractalc::geometry::detail {

/// Draw piece endpoints in the parent's unit frame (parent runs (0,0)->(1,0)).
struct LocalPiece {
    double u0, v0, u1, v1;
};

std::vector<LocalPiece> local_pieces(const Generator& g);

inline Segment place(const Segment& parent, const LocalPiece& p) {
    const double dx = parent.b.x - parent.a.x;
    const double dy = parent.b.y - parent.a.y;
    return {{parent.a.x + dx * p.u0 - dy * p.v0, parent.a.y + dy * p.u0 + dx * p.v0},
            {parent.a.x + dx * p.u1 - dy * p.v1, parent.a.y + dy * p.u1 + dx * p.v1}};
}

/// Generators applied in order for k periods.
std::vector<const Generator*> substages(const Schedule& s, unsigned k);

void check_budget(const Schedule& s, unsigned k, std::uint64_t budget);

Segment initiator(const Schedule& s);

}  // namespace fractalc::geometry::detail
