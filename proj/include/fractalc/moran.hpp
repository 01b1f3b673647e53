#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace fractalc::moran {

/// A standard IFS: `copies` contractions, all with the same scale factor.
struct UniformFractal {
    std::uint64_t copies = 1;
    double ratio = 0.5;

    /// Throws std::invalid_argument unless copies >= 1 and 0 < ratio < 1.
    void validate() const;
};

/// Multiset of (ratio list, repeat count) pairs describing one period of a
/// composition. Stored canonically: ratios sorted inside each component,
/// components sorted, and identical ratio lists merged by summing repeats.
class ScaleSpectrum {
public:
    struct Component {
        std::vector<double> ratios;
        unsigned repeat = 1;

        friend bool operator==(const Component&, const Component&) = default;
    };

    ScaleSpectrum() = default;
    explicit ScaleSpectrum(std::vector<Component> components);

    static ScaleSpectrum uniform(std::span<const std::pair<UniformFractal, unsigned>> parts);

    const std::vector<Component>& components() const { return components_; }
    bool degenerate() const;

    friend bool operator==(const ScaleSpectrum&, const ScaleSpectrum&) = default;

private:
    std::vector<Component> components_;
};

enum class Method { closed_form, moran_numeric, binary_analytic };

std::string_view to_string(Method m);

struct DimensionReport {
    double alpha = 0.0;
    Method method = Method::moran_numeric;
    double residual = 0.0;  // moran product at alpha, minus one
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int iterations = 0;
};

inline constexpr double default_tolerance = 1e-12;
inline constexpr int max_bisection_steps = 200;

double single_dimension(const UniformFractal& f);

/// sum n_i ln N_i / sum n_i ln(1/rho_i)
double composite_dimension_uniform(std::span<const std::pair<UniformFractal, unsigned>> parts);

/// prod_i (sum_j r_ij^alpha)^n_i
double moran_product(const ScaleSpectrum& s, double alpha);

/// Bisection on the generalized Moran product. The product is strictly
/// decreasing in alpha, so the root is unique.
DimensionReport solve_moran(const ScaleSpectrum& s, double tol = default_tolerance);

/// Closed form for a binary multifractal [r1, r1^2 rho] composed with f.
double binary_special_dimension(double r1, const UniformFractal& f);

std::pair<double, double> dimension_bounds(std::span<const double> component_dimensions);

/// Unique alpha with sum_j r_j^alpha = 1.
double component_dimension(std::span<const double> ratios);

/// Dimension of base composed with (n^a1 copies, ratio n^-a2); tends to a1/a2.
double rational_limit_dimension(const UniformFractal& base, std::uint64_t a1, std::uint64_t a2,
                                std::uint64_t n);

/// If every component has equal ratios, the (fractal, repeat) list it encodes.
std::optional<std::vector<std::pair<UniformFractal, unsigned>>> as_uniform(const ScaleSpectrum& s);

/// Matches a spectrum of the form {[r1, r1^2 rho] x1, [rho x N] x1}.
struct BinarySpecialCase {
    double r1;
    UniformFractal fractal;
};
std::optional<BinarySpecialCase> match_binary_special(const ScaleSpectrum& s, double rel_tol = 1e-12);

/// Everything known about a spectrum's dimension: the preferred answer plus
/// each independent route that applies.
struct Analysis {
    DimensionReport report;
    DimensionReport numeric;
    std::optional<double> closed_form;
    std::optional<double> binary_analytic;
    std::vector<double> component_dimensions;
    std::pair<double, double> bounds;
};

Analysis analyze(const ScaleSpectrum& s, double tol = default_tolerance);

}  // namespace fractalc::moran
