#include <cmath>
#include <numbers>

#include "doctest.h"

#include "fractalc/moran.hpp"
#include "support.hpp"

using namespace fractalc::moran;
using Parts = std::vector<std::pair<UniformFractal, unsigned>>;

namespace {

const double koch_rho = 1.0 / 3.0;
const double koch45_rho = 1.0 / (2.0 + std::numbers::sqrt2);

double binary_koch_oracle() {
    return testing::bisect_decreasing(
        [](double a) { return (std::pow(0.5, a) + std::pow(1.0 / 3, a)) * 4 * std::pow(1.0 / 3, a); }, 0.0,
        4.0);
}

}  // namespace

TEST_CASE("single dimension") {
    CHECK(single_dimension({4, koch_rho}) == doctest::Approx(std::log(4.0) / std::log(3.0)).epsilon(1e-15));
    CHECK(single_dimension({4, koch_rho}) == doctest::Approx(1.26).epsilon(0.005));
    CHECK(single_dimension({2, 0.5}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(single_dimension({2, koch_rho}) == doctest::Approx(0.6309297535714574).epsilon(1e-14));
    CHECK(single_dimension({1, 0.3}) == 0.0);
    CHECK_THROWS_AS(single_dimension({0, 0.3}), std::invalid_argument);
    CHECK_THROWS_AS(single_dimension({3, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(single_dimension({3, 0.0}), std::invalid_argument);
}

TEST_CASE("composite dimension of uniform fractals") {
    // mpmath values, 40 digits, truncated
    CHECK(composite_dimension_uniform(Parts{{{4, koch45_rho}, 1}, {{4, koch_rho}, 1}}) ==
          doctest::Approx(1.1917119518312636).epsilon(1e-13));
    CHECK(composite_dimension_uniform(Parts{{{2, koch_rho}, 1}, {{5, koch_rho}, 1}, {{4, koch_rho}, 1}}) ==
          doctest::Approx(1.1192542604774332).epsilon(1e-13));
    CHECK(composite_dimension_uniform(Parts{{{2, koch_rho}, 1}, {{4, koch_rho}, 2}}) ==
          doctest::Approx(1.0515495892857624).epsilon(1e-13));
    CHECK(composite_dimension_uniform(Parts{{{4, koch_rho}, 1}, {{4, koch_rho}, 1}}) ==
          doctest::Approx(single_dimension({4, koch_rho})).epsilon(1e-15));
    CHECK(composite_dimension_uniform(Parts{{{1, 0.2}, 3}, {{1, 0.7}, 1}}) == 0.0);
    CHECK_THROWS_AS(composite_dimension_uniform(Parts{}), std::invalid_argument);
}

TEST_CASE("barycentric form agrees with the log-ratio form") {
    testing::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        auto parts = testing::random_uniform_parts(rng);
        Parts in;
        double num = 0.0, den = 0.0;
        for (const auto& p : parts) {
            in.push_back({{p.copies, p.ratio}, p.repeat});
            const double a = single_dimension({p.copies, p.ratio});
            num += p.repeat * a * std::log(p.ratio);
            den += p.repeat * std::log(p.ratio);
        }
        CHECK(composite_dimension_uniform(in) == doctest::Approx(num / den).epsilon(1e-12));
    }
}

TEST_CASE("spectrum canonical form") {
    ScaleSpectrum a({{{0.5, 0.25}, 1}, {{0.3, 0.3, 0.3}, 2}});
    ScaleSpectrum b({{{0.3, 0.3, 0.3}, 2}, {{0.25, 0.5}, 1}});
    CHECK(a == b);
    ScaleSpectrum merged({{{0.3, 0.3, 0.3}, 1}, {{0.5, 0.25}, 1}, {{0.3, 0.3, 0.3}, 1}});
    CHECK(merged == a);
    CHECK_THROWS_AS(ScaleSpectrum(std::vector<ScaleSpectrum::Component>{}), std::invalid_argument);
    CHECK_THROWS_AS(ScaleSpectrum(std::vector<ScaleSpectrum::Component>{{{}, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(ScaleSpectrum(std::vector<ScaleSpectrum::Component>{{{0.5}, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(ScaleSpectrum(std::vector<ScaleSpectrum::Component>{{{1.5}, 1}}), std::invalid_argument);
}

TEST_CASE("solve_moran on the binary multifractal composed with Koch") {
    ScaleSpectrum s({{{0.5, 1.0 / 3}, 1}, {{koch_rho, koch_rho, koch_rho, koch_rho}, 1}});
    const auto rep = solve_moran(s);
    CHECK(rep.method == Method::moran_numeric);
    CHECK(rep.alpha == doctest::Approx(1.053951276533946).epsilon(1e-12));
    CHECK(rep.alpha == doctest::Approx(binary_koch_oracle()).epsilon(1e-12));
    CHECK(std::abs(rep.residual) <= default_tolerance);
    CHECK(std::abs(moran_product(s, rep.alpha) - 1.0) <= 1e-12);
    CHECK(rep.bracket_lo <= rep.alpha);
    CHECK(rep.alpha <= rep.bracket_hi);
    CHECK(rep.iterations <= max_bisection_steps);
}

TEST_CASE("solve_moran reduces to the uniform relation") {
    ScaleSpectrum s({{{koch_rho, koch_rho, koch_rho, koch_rho}, 1}});
    CHECK(std::abs(solve_moran(s).alpha - single_dimension({4, koch_rho})) <= 1e-9);
}

TEST_CASE("solve_moran on the three-generator schedule") {
    ScaleSpectrum s({{{0.5, 0.25, 1.0 / 6}, 1},
                     {{koch45_rho, koch45_rho, koch45_rho, koch45_rho}, 1},
                     {{koch_rho, koch_rho, koch_rho, koch_rho}, 1}});
    const auto rep = solve_moran(s);
    CHECK(std::abs(rep.residual) <= 1e-12);
    CHECK(rep.alpha == doctest::Approx(1.105654297323437).epsilon(1e-12));
}

TEST_CASE("degenerate spectrum") {
    ScaleSpectrum s({{{0.5}, 2}, {{0.2}, 1}});
    const auto rep = solve_moran(s);
    CHECK(rep.alpha == 0.0);
    CHECK(rep.method == Method::closed_form);
    CHECK(rep.residual == 0.0);
    CHECK_THROWS_AS(solve_moran(s, 0.0), std::invalid_argument);
}

TEST_CASE("ratios close to one") {
    ScaleSpectrum s({{{0.999, 0.9995}, 1}});
    const auto rep = solve_moran(s);
    CHECK(std::abs(rep.residual) <= 1e-12);
    CHECK(rep.alpha > 100.0);
}

TEST_CASE("binary special case") {
    const double a = binary_special_dimension(0.5, {4, koch_rho});
    CHECK(a == doctest::Approx(0.8787567721117390).epsilon(1e-13));
    CHECK(a == doctest::Approx(0.88).epsilon(0.006));
    ScaleSpectrum s({{{0.5, 1.0 / 12}, 1}, {{koch_rho, koch_rho, koch_rho, koch_rho}, 1}});
    CHECK(std::abs(solve_moran(s).alpha - a) <= 1e-9);
    const auto match = match_binary_special(s);
    REQUIRE(match);
    CHECK(match->r1 == 0.5);
    CHECK(match->fractal.copies == 4);
    auto [lo, hi] = dimension_bounds(std::vector<double>{component_dimension(std::vector<double>{0.5, 1.0 / 12}),
                                                         single_dimension({4, koch_rho})});
    CHECK(lo <= a);
    CHECK(a <= hi);
    CHECK_FALSE(match_binary_special(ScaleSpectrum({{{0.5, 0.3}, 1}, {{0.3, 0.3}, 1}})));
}

TEST_CASE("dimension bounds") {
    auto [lo, hi] = dimension_bounds(std::vector<double>{0.6309, 1.2618});
    CHECK(lo == 0.6309);
    CHECK(hi == 1.2618);
    CHECK_THROWS(dimension_bounds(std::vector<double>{}));
}

TEST_CASE("component dimension") {
    CHECK(component_dimension(std::vector<double>{koch_rho, koch_rho}) ==
          doctest::Approx(0.6309297535714574).epsilon(1e-14));
    CHECK(component_dimension(std::vector<double>{0.5, 0.5}) == doctest::Approx(1.0).epsilon(1e-15));
    // x = (1/2)^a solves x + x^2 = 1
    const double golden = std::log((std::sqrt(5.0) - 1) / 2) / std::log(0.5);
    CHECK(component_dimension(std::vector<double>{0.5, 0.25}) == doctest::Approx(golden).epsilon(1e-13));
    CHECK(component_dimension(std::vector<double>{0.4}) == 0.0);
    CHECK_THROWS(component_dimension(std::vector<double>{}));
}

TEST_CASE("rational limit") {
    const UniformFractal koch{4, koch_rho};
    CHECK(std::abs(rational_limit_dimension(koch, 1, 1, 1'000'000) - 1.0) < 0.04);
    CHECK(rational_limit_dimension(koch, 1, 1, 1'000'000) == doctest::Approx(1.0192892384895931).epsilon(1e-13));
    const double e2 = std::abs(rational_limit_dimension(koch, 1, 2, 100) - 0.5);
    const double e6 = std::abs(rational_limit_dimension(koch, 1, 2, 1'000'000) - 0.5);
    CHECK(e6 < e2);
    // huge n and exponents stay finite because nothing is exponentiated
    CHECK(std::abs(rational_limit_dimension(koch, 7, 3, std::uint64_t{1} << 62) - 7.0 / 3) < 0.05);
    CHECK_THROWS(rational_limit_dimension(koch, 0, 1, 10));
    CHECK_THROWS(rational_limit_dimension(koch, 1, 1, 1));
}

TEST_CASE("analyze picks the most specific route") {
    auto koch_only = analyze(ScaleSpectrum({{{koch_rho, koch_rho, koch_rho, koch_rho}, 1}}));
    CHECK(koch_only.report.method == Method::closed_form);
    CHECK(koch_only.closed_form);
    CHECK_FALSE(koch_only.binary_analytic);

    auto bin = analyze(ScaleSpectrum({{{0.5, 1.0 / 12}, 1}, {{koch_rho, koch_rho, koch_rho, koch_rho}, 1}}));
    CHECK(bin.report.method == Method::binary_analytic);
    CHECK(std::abs(bin.report.alpha - bin.numeric.alpha) <= 1e-9);

    auto multi = analyze(ScaleSpectrum({{{0.5, 1.0 / 3}, 1}, {{koch_rho, koch_rho, koch_rho, koch_rho}, 1}}));
    CHECK(multi.report.method == Method::moran_numeric);
    CHECK(multi.bounds.first <= multi.report.alpha);
    CHECK(multi.report.alpha <= multi.bounds.second);
}

TEST_CASE("property: uniform spectra agree with the closed form") {
    testing::Rng rng(1);
    for (int i = 0; i < 300; ++i) {
        Parts parts;
        for (const auto& p : testing::random_uniform_parts(rng))
            parts.push_back({{p.copies, p.ratio}, p.repeat});
        const double closed = composite_dimension_uniform(parts);
        const double numeric = solve_moran(ScaleSpectrum::uniform(parts)).alpha;
        CHECK(std::abs(closed - numeric) <= 1e-9);
    }
}

TEST_CASE("property: moran product changes sign around the root") {
    testing::Rng rng(2);
    for (int i = 0; i < 300; ++i) {
        const auto s = testing::random_spectrum(rng);
        const double a = solve_moran(s).alpha;
        CHECK(moran_product(s, a - 10 * default_tolerance) > 1.0);
        CHECK(moran_product(s, a + 10 * default_tolerance) < 1.0);
    }
}

TEST_CASE("property: composite lies between component dimensions") {
    testing::Rng rng(3);
    for (int i = 0; i < 300; ++i) {
        const auto s = testing::random_spectrum(rng);
        std::vector<double> dims;
        for (const auto& c : s.components())
            dims.push_back(component_dimension(c.ratios));
        auto [lo, hi] = dimension_bounds(dims);
        const double a = solve_moran(s).alpha;
        CHECK(a >= lo - 1e-12);
        CHECK(a <= hi + 1e-12);
    }
}

TEST_CASE("property: solver matches an independent bisection") {
    testing::Rng rng(4);
    for (int i = 0; i < 100; ++i) {
        const auto s = testing::random_spectrum(rng);
        if (s.degenerate())
            continue;
        std::vector<std::pair<std::vector<double>, unsigned>> raw;
        for (const auto& c : s.components())
            raw.push_back({c.ratios, c.repeat});
        const double oracle = testing::bisect_decreasing([&](double a) { return testing::raw_product(raw, a); },
                                                         0.0, 1e3);
        CHECK(solve_moran(s).alpha == doctest::Approx(oracle).epsilon(1e-9));
    }
}
