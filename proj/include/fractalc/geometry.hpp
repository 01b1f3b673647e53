#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fractalc/moran.hpp"
#include "fractalc/parser.hpp"

namespace fractalc::geometry {

using BigCount = boost::multiprecision::cpp_int;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

struct Segment {
    Point a;
    Point b;

    double length() const;
    friend bool operator==(const Segment&, const Segment&) = default;
};

enum class GeneratorKind { koch, quadratic, cantor, general };

/// Heading is measured from the parent segment's direction; ratio is the
/// piece length relative to the parent.
struct GeneratorPiece {
    double ratio = 0.0;
    double heading = 0.0;
    bool draw = true;
};

struct Generator {
    GeneratorKind kind = GeneratorKind::general;
    std::vector<GeneratorPiece> pieces;

    std::vector<double> draw_ratios() const;
    std::size_t draw_count() const;
    bool connected() const { return kind == GeneratorKind::koch || kind == GeneratorKind::quadratic; }
};

class InvalidAngle : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class RatiosExceedUnit : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SegmentBudgetExceeded : public std::runtime_error {
public:
    explicit SegmentBudgetExceeded(BigCount predicted);
    const BigCount& predicted() const { return predicted_; }

private:
    BigCount predicted_;
};

/// Four pieces with headings [0, theta, -theta, 0]; requires 0 < theta < pi/2.
Generator koch_generator(double theta);
/// Five pieces with headings [0, pi/2, 0, -pi/2, 0], ratio 1/3.
Generator quadratic_koch_generator();
/// Kept pieces on the baseline separated by equal gaps.
Generator cantor_generator(std::span<const double> ratios);
Generator general_generator(std::vector<GeneratorPiece> pieces);

Generator builtin_generator(const parser::Primitive& p);

struct ScheduleEntry {
    Generator generator;
    unsigned repeat = 1;
};

/// One period of a composition, applied on an initiator of length
/// initiator_length lying on the x axis from the origin.
struct Schedule {
    std::vector<ScheduleEntry> entries;
    double initiator_length = 1.0;

    bool connected() const;
};

Schedule build_schedule(const parser::ScheduleExpr& expr, double initiator_length = 1.0);
Schedule build_schedule(std::string_view text, double initiator_length = 1.0);

moran::ScaleSpectrum spectrum(const Schedule& s);

struct SegmentSet {
    std::vector<Segment> segments;
    unsigned stage = 0;
    double initiator_length = 1.0;
};

inline constexpr std::uint64_t default_segment_budget = 10'000'000;

/// prod_i l_i^(n_i k)
BigCount predicted_segment_count(const Schedule& s, unsigned k);

/// Applies the schedule k times. Segments are in depth-first order of the
/// piece indices. Parallel over parent segments.
SegmentSet iterate(const Schedule& s, unsigned k, std::uint64_t budget = default_segment_budget);

struct CensusEntry {
    double length = 0.0;
    BigCount count;
};
using Census = std::vector<CensusEntry>;

inline constexpr double census_merge_tolerance = 1e-12;
/// Absolute length error of a materialized segment, per unit of coordinate magnitude.
inline constexpr double coordinate_rounding = 1e-12;

/// Sorts by length and merges entries within rel_tol * length + abs_tol of
/// the first length of their group.
Census merge_census(Census c, double rel_tol = census_merge_tolerance, double abs_tol = 0.0);

/// Exact (length, count) multiset at stage k from the multinomial expansion
/// of each generator; ascending by length.
Census segment_census(const Schedule& s, unsigned k);

BigCount census_total(const Census& c);

/// Histogram of materialized segment lengths, merged like a census plus an
/// absolute slack of coordinate_rounding times the largest coordinate.
Census length_histogram(const SegmentSet& s, double rel_tol = census_merge_tolerance);

double total_length(const SegmentSet& s);
double predicted_length(const Schedule& s, unsigned k);

/// [prod_i (sum_j r_ij^beta)^n_i]^k L0^beta
double content(const Schedule& s, unsigned k, double beta);

struct SvgStyle {
    std::string stroke = "black";
    double stroke_px = 1.0;
    std::string background = "white";
    double width_px = 800.0;
};

inline constexpr std::size_t svg_segment_limit = 1'000'000;

void write_svg(std::ostream& os, const SegmentSet& s, const SvgStyle& style = {});
void export_svg(const SegmentSet& s, const std::filesystem::path& path, const SvgStyle& style = {});

/// One `x1,y1,x2,y2` line per segment, 12 significant digits.
void write_csv(std::ostream& os, const SegmentSet& s);

/// True iff the two segments share more than a common endpoint. eps is an
/// absolute distance tolerance.
bool segments_overlap(const Segment& s, const Segment& t, double eps);

inline constexpr double overlap_tolerance = 1e-12;

/// Grid-bucketed pair test, parallel over buckets.
bool detect_overlap(const SegmentSet& s);

inline constexpr std::string_view overlap_caveat =
    "warning: the figure overlaps itself; the composite dimension is an upper bound "
    "for the dimension of the overlapping figure";

}  // namespace fractalc::geometry
