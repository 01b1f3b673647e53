#pragma once

// Straightforward serial versions of the parallel kernels. Kept for tests
// and benchmarks; not meant for large inputs.

#include <cstdint>
#include <span>
#include <vector>

#include "fractalc/geometry.hpp"

namespace fractalc::reference {

/// Recursive depth-first expansion; same output order as geometry::iterate.
geometry::SegmentSet iterate_serial(const geometry::Schedule& s, unsigned k,
                                    std::uint64_t budget = geometry::default_segment_budget);

/// Occupied boxes per scale, one std::set per scale, no threading.
std::vector<std::uint64_t> box_counts_serial(std::span<const geometry::Segment> segs,
                                             std::span<const double> scales);

/// All pairs.
bool detect_overlap_brute(const geometry::SegmentSet& s);

}  // namespace fractalc::reference
