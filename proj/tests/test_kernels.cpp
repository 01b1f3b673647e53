#include "doctest.h"

#include "fractalc/boxcount.hpp"
#include "fractalc/reference.hpp"
#include "support.hpp"

using namespace fractalc;

TEST_CASE("parallel iteration is bit-identical to the serial reference") {
    testing::Rng rng(31);
    for (int i = 0; i < 30; ++i) {
        auto sched = geometry::build_schedule(testing::random_schedule_text(rng), testing::uniform(rng, 0.5, 4.0));
        unsigned k = 0;
        while (k < 5 && geometry::predicted_segment_count(sched, k + 1) <= 50000)
            ++k;
        auto par = geometry::iterate(sched, k);
        auto ser = reference::iterate_serial(sched, k);
        CHECK(par.stage == ser.stage);
        CHECK(par.segments == ser.segments);
    }
}

TEST_CASE("parallel box counts match the serial reference") {
    for (const char* text : {"K[pi/3]", "C[1/2,1/12] K[pi/3]", "C[1/3,1/3] Q[pi/2] K[pi/3]"}) {
        auto s = geometry::iterate(geometry::build_schedule(text), 3);
        double shortest = s.segments[0].length();
        for (const auto& g : s.segments)
            shortest = std::min(shortest, g.length());
        auto rep = boxcount::estimate_dimension(s, 8, shortest);
        CHECK(reference::box_counts_serial(s.segments, rep.scales) == rep.counts);
    }
}

TEST_CASE("grid overlap detection agrees with brute force") {
    testing::Rng rng(32);
    for (const char* text : {"K[pi/3]", "K[1.4]", "K[1.5]^2", "C[1/3,1/3] Q[pi/2]", "K[pi/4] K[pi/3]"}) {
        for (unsigned k = 1; k <= 3; ++k) {
            auto s = geometry::iterate(geometry::build_schedule(text), k);
            CHECK(geometry::detect_overlap(s) == reference::detect_overlap_brute(s));
        }
    }
    for (int i = 0; i < 50; ++i) {
        geometry::SegmentSet s;
        const int n = testing::uniform_int(rng, 2, 40);
        for (int j = 0; j < n; ++j) {
            const double x = testing::uniform(rng, 0, 10), y = testing::uniform(rng, 0, 10);
            s.segments.push_back({{x, y}, {x + testing::uniform(rng, -1, 1), y + testing::uniform(rng, -1, 1)}});
        }
        CHECK(geometry::detect_overlap(s) == reference::detect_overlap_brute(s));
    }
}
