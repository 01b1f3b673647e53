#include "fractalc/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "fractalc/boxcount.hpp"
#include "fractalc/geometry.hpp"
#include "fractalc/incstats.hpp"
#include "fractalc/moran.hpp"
#include "fractalc/parser.hpp"

namespace fractalc::cli {

namespace {

using nlohmann::ordered_json;

struct CommandFailure {
    int code;
    std::string message;
};

std::string sig6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::uint64_t segment_budget(std::optional<std::uint64_t> flag) {
    if (flag)
        return *flag;
    if (const char* env = std::getenv("FRACTALC_SEGMENT_BUDGET")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw CommandFailure{usage, "invalid FRACTALC_SEGMENT_BUDGET: " + std::string(env)};
        }
    }
    return geometry::default_segment_budget;
}

struct Parsed {
    parser::ScheduleExpr expr;
    geometry::Schedule schedule;
    std::string canonical;
};

Parsed load(const std::string& text, double initiator_length = 1.0) {
    Parsed p;
    p.expr = parser::parse(text);
    p.schedule = geometry::build_schedule(p.expr, initiator_length);
    p.canonical = parser::format(p.expr);
    return p;
}

ordered_json nullable(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::vector<double> item_dimensions(const geometry::Schedule& s) {
    std::vector<double> out;
    for (const auto& e : s.entries)
        out.push_back(moran::component_dimension(e.generator.draw_ratios()));
    return out;
}

// ---------------------------------------------------------------- dim

struct DimOptions {
    std::string expression;
    bool closed_form_only = false;
    bool check = false;
    bool human = false;
};

int cmd_dim(const DimOptions& o, std::ostream& out) {
    const Parsed p = load(o.expression);
    const moran::Analysis a = moran::analyze(geometry::spectrum(p.schedule));
    const auto dims = item_dimensions(p.schedule);
    const auto bounds = moran::dimension_bounds(dims);

    if (o.closed_form_only && a.report.method == moran::Method::moran_numeric)
        throw CommandFailure{solver_failure, "no closed form applies to " + p.canonical};

    constexpr double agree_tol = 1e-9;
    bool agree = true;
    ordered_json check;
    if (o.check) {
        check["numeric"] = a.numeric.alpha;
        check["closed_form"] = nullable(a.closed_form);
        check["binary_analytic"] = nullable(a.binary_analytic);
        double worst = 0.0;
        for (const auto& v : {a.closed_form, a.binary_analytic})
            if (v)
                worst = std::max(worst, std::abs(*v - a.numeric.alpha));
        agree = worst <= agree_tol;
        check["max_difference"] = worst;
        check["agree"] = agree;
    }

    if (o.human) {
        out << "expression   " << p.canonical << "\n"
            << "alpha        " << sig6(a.report.alpha) << "\n"
            << "method       " << moran::to_string(a.report.method) << "\n"
            << "residual     " << sig6(a.report.residual) << "\n"
            << "bounds       [" << sig6(bounds.first) << ", " << sig6(bounds.second) << "]\n"
            << "components  ";
        for (double d : dims)
            out << ' ' << sig6(d);
        out << "\n";
        if (o.check)
            out << "check        " << (agree ? "agree" : "DISAGREE") << " (max difference "
                << sig6(check["max_difference"].get<double>()) << ")\n";
    } else {
        ordered_json j;
        j["expression"] = p.canonical;
        j["alpha"] = a.report.alpha;
        j["method"] = moran::to_string(a.report.method);
        j["residual"] = a.report.residual;
        j["bracket"] = {a.report.bracket_lo, a.report.bracket_hi};
        j["iterations"] = a.report.iterations;
        j["bounds"] = {bounds.first, bounds.second};
        j["component_dimensions"] = dims;
        if (o.check)
            j["check"] = check;
        out << j.dump(2) << "\n";
    }
    return agree ? ok : solver_failure;
}

// ---------------------------------------------------------------- render

struct RenderOptions {
    std::string expression;
    unsigned stage = 3;
    std::string svg_path;
    std::string csv_path;
    geometry::SvgStyle style;
    std::optional<std::uint64_t> budget;
    bool human = false;
};

int cmd_render(const RenderOptions& o, std::ostream& out, std::ostream& err) {
    const Parsed p = load(o.expression);
    const auto segs = geometry::iterate(p.schedule, o.stage, segment_budget(o.budget));

    std::optional<bool> overlap;
    if (segs.segments.size() <= geometry::svg_segment_limit) {
        overlap = geometry::detect_overlap(segs);
        if (*overlap)
            err << geometry::overlap_caveat << "\n";
    }
    if (!o.svg_path.empty()) {
        if (segs.segments.size() > geometry::svg_segment_limit)
            throw CommandFailure{budget_exceeded, "too many segments to render as SVG: " +
                                                      std::to_string(segs.segments.size())};
        try {
            geometry::export_svg(segs, o.svg_path, o.style);
        } catch (const std::runtime_error& e) {
            throw CommandFailure{usage, e.what()};
        }
    }
    if (!o.csv_path.empty()) {
        std::ofstream csv(o.csv_path, std::ios::binary);
        if (!csv)
            throw CommandFailure{usage, "cannot open " + o.csv_path + " for writing"};
        geometry::write_csv(csv, segs);
    }

    const double total = geometry::total_length(segs);
    const double predicted = geometry::predicted_length(p.schedule, o.stage);
    if (o.human) {
        out << "expression        " << p.canonical << "\n"
            << "stage             " << o.stage << "\n"
            << "segments          " << segs.segments.size() << "\n"
            << "total length      " << sig6(total) << "\n"
            << "predicted length  " << sig6(predicted) << "\n"
            << "overlap           " << (overlap ? (*overlap ? "yes" : "no") : "not checked") << "\n";
    } else {
        ordered_json j;
        j["expression"] = p.canonical;
        j["stage"] = o.stage;
        j["segments"] = segs.segments.size();
        j["total_length"] = total;
        j["predicted_length"] = predicted;
        j["overlap"] = overlap ? ordered_json(*overlap) : ordered_json(nullptr);
        j["svg"] = o.svg_path.empty() ? ordered_json(nullptr) : ordered_json(o.svg_path);
        j["csv"] = o.csv_path.empty() ? ordered_json(nullptr) : ordered_json(o.csv_path);
        out << j.dump(2) << "\n";
    }
    return ok;
}

// ---------------------------------------------------------------- census

struct StageOptions {
    std::string expression;
    unsigned stage = 1;
    double initiator = 1.0;
    bool human = false;
};

int cmd_census(const StageOptions& o, std::ostream& out) {
    const Parsed p = load(o.expression, o.initiator);
    const auto census = geometry::segment_census(p.schedule, o.stage);
    const auto total = geometry::census_total(census);
    if (o.human) {
        out << "expression  " << p.canonical << "\n"
            << "stage       " << o.stage << "\n"
            << "segments    " << total.str() << "\n\n"
            << "      length  count\n";
        for (const auto& e : census) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%12.6g", e.length);
            out << buf << "  " << e.count.str() << "\n";
        }
    } else {
        ordered_json entries = ordered_json::array();
        for (const auto& e : census)
            entries.push_back({{"length", e.length}, {"count", e.count.str()}});
        ordered_json j;
        j["expression"] = p.canonical;
        j["stage"] = o.stage;
        j["initiator_length"] = o.initiator;
        j["total_count"] = total.str();
        j["distinct_lengths"] = census.size();
        j["total_length"] = geometry::predicted_length(p.schedule, o.stage);
        j["entries"] = entries;
        out << j.dump(2) << "\n";
    }
    return ok;
}

// ---------------------------------------------------------------- validate

struct ValidateOptions {
    std::string expression;
    unsigned stage = 6;
    int scales = 0;
    double min_scale = 0.0;
    double tolerance = 0.05;
    std::optional<std::uint64_t> budget;
    bool human = false;
};

int cmd_validate(const ValidateOptions& o, std::ostream& out, std::ostream& err) {
    const Parsed p = load(o.expression);
    const double theory = moran::analyze(geometry::spectrum(p.schedule)).report.alpha;
    const auto segs = geometry::iterate(p.schedule, o.stage, segment_budget(o.budget));

    // default finest box: the typical segment length of the stage
    double min_scale = o.min_scale;
    if (min_scale <= 0.0) {
        if (o.stage == 0)
            throw CommandFailure{usage, "validate needs --stage of at least 1"};
        min_scale = boxcount::typical_length(geometry::segment_census(p.schedule, o.stage));
    }
    int scales = o.scales;
    if (scales <= 0) {
        const double top = boxcount::ladder_top(segs);
        scales = std::max(4, static_cast<int>(std::lround(std::log2(top / min_scale))) + 1);
    }

    auto rep = boxcount::estimate_dimension(segs, scales, min_scale);
    rep.theoretical = theory;
    const double diff = std::abs(rep.slope - theory);
    const bool pass = diff <= o.tolerance;
    if (segs.segments.size() <= geometry::svg_segment_limit && geometry::detect_overlap(segs))
        err << geometry::overlap_caveat << "\n";

    if (o.human) {
        out << "expression   " << p.canonical << "\n"
            << "stage        " << o.stage << "\n"
            << "theoretical  " << sig6(theory) << "\n"
            << "box-count    " << sig6(rep.slope) << " (r^2 " << sig6(rep.r_squared) << ", "
            << rep.scales.size() << " scales)\n"
            << "difference   " << sig6(diff) << " (tolerance " << sig6(o.tolerance) << ")\n"
            << "verdict      " << (pass ? "PASS" : "FAIL") << "\n";
    } else {
        ordered_json j;
        j["expression"] = p.canonical;
        j["stage"] = o.stage;
        j["theoretical"] = theory;
        j["slope"] = rep.slope;
        j["difference"] = diff;
        j["tolerance"] = o.tolerance;
        j["verdict"] = pass ? "PASS" : "FAIL";
        j["boxcount"] = boxcount::to_json(rep);
        out << j.dump(2) << "\n";
    }
    return ok;
}

// ---------------------------------------------------------------- stats

int cmd_stats(const StageOptions& o, std::ostream& out) {
    const Parsed p = load(o.expression);

    double worst = 0.0;
    for (unsigned k = 0; k <= o.stage; ++k)
        worst = std::max(worst, std::abs(incstats::distribution(p.schedule, k).residual()));

    // every item of the schedule is treated as an independent subsystem
    std::vector<geometry::Schedule> parts;
    for (const auto& e : p.schedule.entries)
        parts.push_back(geometry::Schedule{{e}, 1.0});
    const auto fact = incstats::joint_factorization_check(parts, o.stage);
    worst = std::max(worst, fact.max_normalization_residual);
    const auto dist = incstats::distribution(p.schedule, o.stage);

    if (o.human) {
        out << "expression                  " << p.canonical << "\n"
            << "stage                       " << o.stage << "\n"
            << "alpha                       " << sig6(dist.alpha) << "\n"
            << "distinct probabilities      " << dist.probabilities.size() << "\n"
            << "max normalization residual  " << sig6(worst) << "\n"
            << "factorization               " << (fact.factorization_ok ? "ok" : "FAILED") << "\n";
    } else {
        ordered_json j;
        j["expression"] = p.canonical;
        j["stage"] = o.stage;
        j["alpha"] = dist.alpha;
        j["max_normalization_residual"] = worst;
        j["factorization_ok"] = fact.factorization_ok;
        j["subsystems"] = parts.size();
        j["subsystem_alphas"] = fact.part_alphas;
        j["distinct_probabilities"] = dist.probabilities.size();
        j["complete_hypothesis_residual"] = fact.complete_hypothesis_residual;
        out << j.dump(2) << "\n";
    }
    return ok;
}

// ---------------------------------------------------------------- limit

struct LimitOptions {
    std::string base;
    std::string target;
    std::uint64_t n = 1'000'000;
    bool human = false;
};

std::pair<std::uint64_t, std::uint64_t> parse_target(const std::string& text) {
    std::uint64_t a1 = 0, a2 = 1;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lu/%lu%c", &a1, &a2, &tail) == 2 ||
        std::sscanf(text.c_str(), "%lu%c", &a1, &tail) == 1) {
        if (a1 > 0 && a2 > 0 && text.find('-') == std::string::npos)
            return {a1, a2};
    }
    throw CommandFailure{usage, "target must be a positive rational a1/a2, got '" + text + "'"};
}

int cmd_limit(const LimitOptions& o, std::ostream& out) {
    const Parsed p = load(o.base);
    const auto parts = moran::as_uniform(geometry::spectrum(p.schedule));
    if (!parts || parts->size() != 1 || parts->front().second != 1)
        throw CommandFailure{usage, "limit base must be a single uniform generator without repeats"};
    const auto [a1, a2] = parse_target(o.target);
    if (o.n < 2)
        throw CommandFailure{usage, "--n must be at least 2"};

    const auto base = parts->front().first;
    const double alpha = moran::rational_limit_dimension(base, a1, a2, o.n);
    const double target = static_cast<double>(a1) / static_cast<double>(a2);
    if (o.human) {
        out << "base    " << p.canonical << " (N=" << base.copies << ", ratio=" << sig6(base.ratio) << ")\n"
            << "target  " << a1 << "/" << a2 << "\n"
            << "n       " << o.n << "\n"
            << "alpha   " << sig6(alpha) << "\n"
            << "error   " << sig6(std::abs(alpha - target)) << "\n";
    } else {
        ordered_json j;
        j["base"] = p.canonical;
        j["base_copies"] = base.copies;
        j["base_ratio"] = base.ratio;
        j["a1"] = a1;
        j["a2"] = a2;
        j["n"] = o.n;
        j["alpha"] = alpha;
        j["target"] = target;
        j["error"] = std::abs(alpha - target);
        out << j.dump(2) << "\n";
    }
    return ok;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Composite fractal dimensions: analytic, numeric and empirical"};
    app.name(args.empty() ? "fractalc" : args[0]);
    app.require_subcommand(1);

    DimOptions dim;
    auto* dim_cmd = app.add_subcommand("dim", "Composite dimension of a schedule");
    dim_cmd->add_option("expression", dim.expression, "Schedule expression")->required();
    dim_cmd->add_flag("--closed-form-only", dim.closed_form_only, "Fail unless a closed form applies");
    dim_cmd->add_flag("--check", dim.check, "Cross-validate closed forms against the numeric solver");
    dim_cmd->add_flag("--human", dim.human, "Human-readable output");

    RenderOptions render;
    auto* render_cmd = app.add_subcommand("render", "Materialize a stage and write SVG/CSV");
    render_cmd->add_option("expression", render.expression, "Schedule expression")->required();
    render_cmd->add_option("--stage,-k", render.stage, "Stage");
    render_cmd->add_option("-o,--output", render.svg_path, "SVG output path");
    render_cmd->add_option("--csv", render.csv_path, "CSV segment dump path");
    render_cmd->add_option("--stroke", render.style.stroke, "Stroke color");
    render_cmd->add_option("--stroke-width", render.style.stroke_px, "Stroke width in pixels");
    render_cmd->add_option("--background", render.style.background, "Background color");
    render_cmd->add_option("--width", render.style.width_px, "Image width in pixels");
    render_cmd->add_option("--budget", render.budget, "Segment budget");
    render_cmd->add_flag("--human", render.human, "Human-readable output");

    StageOptions census;
    auto* census_cmd = app.add_subcommand("census", "Exact segment-length census");
    census_cmd->add_option("expression", census.expression, "Schedule expression")->required();
    census_cmd->add_option("--stage,-k", census.stage, "Stage");
    census_cmd->add_option("--initiator", census.initiator, "Initiator length")
        ->check(CLI::PositiveNumber);
    census_cmd->add_flag("--human", census.human, "Human-readable output");

    ValidateOptions validate;
    auto* validate_cmd = app.add_subcommand("validate", "Compare theory with box counting");
    validate_cmd->add_option("expression", validate.expression, "Schedule expression")->required();
    validate_cmd->add_option("--stage,-k", validate.stage, "Stage");
    validate_cmd->add_option("--scales", validate.scales, "Number of box sizes (default: octaves)");
    validate_cmd->add_option("--min-scale", validate.min_scale,
                             "Smallest box side (default: typical segment length of the stage)");
    validate_cmd->add_option("--tolerance", validate.tolerance, "Allowed |slope - alpha|");
    validate_cmd->add_option("--budget", validate.budget, "Segment budget");
    validate_cmd->add_flag("--human", validate.human, "Human-readable output");

    StageOptions stats;
    auto* stats_cmd = app.add_subcommand("stats", "Incomplete-statistics normalization checks");
    stats_cmd->add_option("expression", stats.expression, "Schedule expression")->required();
    stats_cmd->add_option("--stage,-k", stats.stage, "Stage");
    stats_cmd->add_flag("--human", stats.human, "Human-readable output");

    LimitOptions limit;
    auto* limit_cmd = app.add_subcommand("limit", "Approach a rational dimension a1/a2");
    limit_cmd->add_option("--base", limit.base, "Base uniform generator")->required();
    limit_cmd->add_option("--target", limit.target, "Target a1/a2")->required();
    limit_cmd->add_option("--n", limit.n, "Construction parameter n >= 2");
    limit_cmd->add_flag("--human", limit.human, "Human-readable output");

    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    if (argv.empty())
        argv.push_back("fractalc");

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        if (*dim_cmd)
            return cmd_dim(dim, out);
        if (*render_cmd)
            return cmd_render(render, out, err);
        if (*census_cmd)
            return cmd_census(census, out);
        if (*validate_cmd)
            return cmd_validate(validate, out, err);
        if (*stats_cmd)
            return cmd_stats(stats, out);
        if (*limit_cmd)
            return cmd_limit(limit, out);
    } catch (const CommandFailure& f) {
        err << "error: " << f.message << "\n";
        return f.code;
    } catch (const parser::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const geometry::SegmentBudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return budget_exceeded;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return solver_failure;
    }
    return usage;
}

}  // namespace fractalc::cli
