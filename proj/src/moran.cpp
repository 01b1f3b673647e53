#include "fractalc/moran.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace fractalc::moran {

namespace {

void check_ratio(double r) {
    if (!(r > 0.0 && r < 1.0))
        throw std::invalid_argument("scale factor must lie in (0,1)");
}

// log of the Moran product; same sign as (product - 1)
double log_moran_product(const ScaleSpectrum& s, double alpha) {
    double acc = 0.0;
    for (const auto& c : s.components()) {
        double sum = 0.0;
        for (double r : c.ratios)
            sum += std::exp(alpha * std::log(r));
        acc += static_cast<double>(c.repeat) * std::log(sum);
    }
    return acc;
}

std::vector<std::pair<UniformFractal, unsigned>> merge_uniform(
    std::span<const std::pair<UniformFractal, unsigned>> parts) {
    std::map<std::pair<std::uint64_t, double>, unsigned> merged;
    for (const auto& [f, n] : parts) {
        f.validate();
        if (n == 0)
            throw std::invalid_argument("repeat count must be positive");
        merged[{f.copies, f.ratio}] += n;
    }
    std::vector<std::pair<UniformFractal, unsigned>> out;
    for (const auto& [key, n] : merged)
        out.push_back({UniformFractal{key.first, key.second}, n});
    return out;
}

}  // namespace

void UniformFractal::validate() const {
    if (copies < 1)
        throw std::invalid_argument("uniform fractal needs at least one copy");
    check_ratio(ratio);
}

ScaleSpectrum::ScaleSpectrum(std::vector<Component> components) {
    if (components.empty())
        throw std::invalid_argument("scale spectrum needs at least one component");
    for (auto& c : components) {
        if (c.ratios.empty())
            throw std::invalid_argument("spectrum component has no ratios");
        if (c.repeat == 0)
            throw std::invalid_argument("repeat count must be positive");
        for (double r : c.ratios)
            check_ratio(r);
        std::sort(c.ratios.begin(), c.ratios.end());
    }
    std::sort(components.begin(), components.end(), [](const Component& a, const Component& b) {
        if (a.ratios != b.ratios)
            return a.ratios < b.ratios;
        return a.repeat < b.repeat;
    });
    for (auto& c : components) {
        if (!components_.empty() && components_.back().ratios == c.ratios)
            components_.back().repeat += c.repeat;
        else
            components_.push_back(std::move(c));
    }
}

ScaleSpectrum ScaleSpectrum::uniform(std::span<const std::pair<UniformFractal, unsigned>> parts) {
    std::vector<Component> comps;
    for (const auto& [f, n] : parts) {
        f.validate();
        comps.push_back({std::vector<double>(f.copies, f.ratio), n});
    }
    return ScaleSpectrum(std::move(comps));
}

bool ScaleSpectrum::degenerate() const {
    return std::all_of(components_.begin(), components_.end(),
                       [](const Component& c) { return c.ratios.size() == 1; });
}

std::string_view to_string(Method m) {
    switch (m) {
    case Method::closed_form: return "closed-form";
    case Method::moran_numeric: return "moran-numeric";
    case Method::binary_analytic: return "binary-analytic";
    }
    return "unknown";
}

double single_dimension(const UniformFractal& f) {
    f.validate();
    if (f.copies == 1)
        return 0.0;
    return std::log(static_cast<double>(f.copies)) / -std::log(f.ratio);
}

double composite_dimension_uniform(std::span<const std::pair<UniformFractal, unsigned>> parts) {
    if (parts.empty())
        throw std::invalid_argument("composition needs at least one component");
    double num = 0.0;
    double den = 0.0;
    for (const auto& [f, n] : merge_uniform(parts)) {
        num += n * std::log(static_cast<double>(f.copies));
        den += n * -std::log(f.ratio);
    }
    return num / den;
}

double moran_product(const ScaleSpectrum& s, double alpha) {
    return std::exp(log_moran_product(s, alpha));
}

DimensionReport solve_moran(const ScaleSpectrum& s, double tol) {
    if (!(tol > 0.0))
        throw std::invalid_argument("solver tolerance must be positive");
    if (s.components().empty())
        throw std::invalid_argument("empty scale spectrum");

    DimensionReport rep;
    if (s.degenerate()) {
        rep.method = Method::closed_form;
        return rep;
    }
    rep.method = Method::moran_numeric;

    double lo = 0.0;
    double hi = 1.0;
    while (log_moran_product(s, hi) >= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi))
            throw std::runtime_error("moran product could not be bracketed");
    }
    rep.bracket_lo = lo;
    rep.bracket_hi = hi;

    // Bisect to full precision; the residual tolerance is checked at the end.
    int it = 0;
    for (; it < max_bisection_steps; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        double g = log_moran_product(s, mid);
        if (g == 0.0) {
            lo = hi = mid;
            break;
        }
        (g > 0.0 ? lo : hi) = mid;
    }
    double res_lo = std::expm1(log_moran_product(s, lo));
    double res_hi = std::expm1(log_moran_product(s, hi));
    if (std::abs(res_lo) <= std::abs(res_hi)) {
        rep.alpha = lo;
        rep.residual = res_lo;
    } else {
        rep.alpha = hi;
        rep.residual = res_hi;
    }
    rep.iterations = it;
    if (std::abs(rep.residual) > tol)
        throw std::runtime_error("moran solver did not reach the requested tolerance");
    return rep;
}

double binary_special_dimension(double r1, const UniformFractal& f) {
    check_ratio(r1);
    f.validate();
    const double n = static_cast<double>(f.copies);
    const double x = (-1.0 + std::sqrt(1.0 + 4.0 / n)) / 2.0;
    return std::log(x) / std::log(r1 * f.ratio);
}

std::pair<double, double> dimension_bounds(std::span<const double> dims) {
    if (dims.empty())
        throw std::invalid_argument("no component dimensions");
    auto [lo, hi] = std::minmax_element(dims.begin(), dims.end());
    return {*lo, *hi};
}

double component_dimension(std::span<const double> ratios) {
    if (ratios.empty())
        throw std::invalid_argument("empty ratio list");
    for (double r : ratios)
        check_ratio(r);
    if (std::all_of(ratios.begin(), ratios.end(), [&](double r) { return r == ratios.front(); }))
        return single_dimension({ratios.size(), ratios.front()});
    ScaleSpectrum s({{std::vector<double>(ratios.begin(), ratios.end()), 1}});
    return solve_moran(s).alpha;
}

double rational_limit_dimension(const UniformFractal& base, std::uint64_t a1, std::uint64_t a2,
                                std::uint64_t n) {
    base.validate();
    if (a1 == 0 || a2 == 0)
        throw std::invalid_argument("target exponents must be positive");
    if (n < 2)
        throw std::invalid_argument("n must be at least 2");
    const double ln_n = std::log(static_cast<double>(n));
    const double num = std::log(static_cast<double>(base.copies)) + static_cast<double>(a1) * ln_n;
    const double den = -std::log(base.ratio) + static_cast<double>(a2) * ln_n;
    return num / den;
}

std::optional<std::vector<std::pair<UniformFractal, unsigned>>> as_uniform(const ScaleSpectrum& s) {
    std::vector<std::pair<UniformFractal, unsigned>> out;
    for (const auto& c : s.components()) {
        // ratios are sorted, so uniform iff first == last
        if (c.ratios.front() != c.ratios.back())
            return std::nullopt;
        out.push_back({UniformFractal{c.ratios.size(), c.ratios.front()}, c.repeat});
    }
    return out;
}

std::optional<BinarySpecialCase> match_binary_special(const ScaleSpectrum& s, double rel_tol) {
    const auto& comps = s.components();
    if (comps.size() != 2)
        return std::nullopt;
    for (int b = 0; b < 2; ++b) {
        const auto& bin = comps[b];
        const auto& uni = comps[1 - b];
        if (bin.repeat != 1 || uni.repeat != 1 || bin.ratios.size() != 2)
            continue;
        if (uni.ratios.front() != uni.ratios.back())
            continue;
        const double rho = uni.ratios.front();
        for (int i = 0; i < 2; ++i) {
            const double r1 = bin.ratios[i];
            const double r2 = bin.ratios[1 - i];
            const double want = r1 * r1 * rho;
            if (std::abs(r2 - want) <= rel_tol * want)
                return BinarySpecialCase{r1, UniformFractal{uni.ratios.size(), rho}};
        }
    }
    return std::nullopt;
}

Analysis analyze(const ScaleSpectrum& s, double tol) {
    Analysis a;
    a.numeric = solve_moran(s, tol);
    for (const auto& c : s.components())
        a.component_dimensions.push_back(component_dimension(c.ratios));
    a.bounds = dimension_bounds(a.component_dimensions);

    if (auto parts = as_uniform(s))
        a.closed_form = composite_dimension_uniform(*parts);
    if (auto bin = match_binary_special(s))
        a.binary_analytic = binary_special_dimension(bin->r1, bin->fractal);

    a.report = a.numeric;
    if (a.binary_analytic) {
        a.report.method = Method::binary_analytic;
        a.report.alpha = *a.binary_analytic;
    } else if (a.closed_form) {
        a.report.method = Method::closed_form;
        a.report.alpha = *a.closed_form;
    }
    if (a.report.method != Method::moran_numeric) {
        a.report.residual = std::expm1(log_moran_product(s, a.report.alpha));
        a.report.bracket_lo = a.report.bracket_hi = a.report.alpha;
        a.report.iterations = 0;
    }
    return a;
}

}  // namespace fractalc::moran
