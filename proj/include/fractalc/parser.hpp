#pragma once

// Composition-schedule expressions.
//
//   schedule  := item { item } ;
//   item      := primitive [ "^" INT ] ;
//   primitive := "K[" angle "]" | "Q[" angle "]" | "C[" ratio { "," ratio } "]"
//              | "G[" piece { ";" piece } "]" ;
//   piece     := "(" ratio "," angle "," ( "draw" | "gap" ) ")" ;
//   ratio     := rational | decimal ;
//   angle     := [ "-" ] ( "pi" [ "/" INT ] | decimal ) ;
//
// Whitespace between tokens is ignored. The whole expression is one period of
// the composition; it is repeated for every stage.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fractalc::parser {

struct Ratio {
    enum class Form { rational, decimal };
    Form form = Form::rational;
    std::int64_t num = 1;  // rational form only, reduced
    std::int64_t den = 2;
    double value = 0.5;

    static Ratio rational(std::int64_t num, std::int64_t den);
    static Ratio decimal(double v);

    friend bool operator==(const Ratio& a, const Ratio& b);
};

struct Angle {
    enum class Form { pi_fraction, decimal };
    Form form = Form::pi_fraction;
    bool negative = false;     // pi_fraction only
    std::int64_t divisor = 1;  // pi_fraction only: value = +-pi/divisor
    double value = 0.0;

    static Angle pi_over(std::int64_t divisor, bool negative = false);
    static Angle decimal(double v);

    friend bool operator==(const Angle& a, const Angle& b);
};

struct Piece {
    Ratio ratio;
    Angle angle;
    bool draw = true;

    friend bool operator==(const Piece&, const Piece&) = default;
};

struct Primitive {
    enum class Kind { koch, quadratic, cantor, general };
    Kind kind = Kind::koch;
    Angle angle;                // koch, quadratic
    std::vector<Ratio> ratios;  // cantor
    std::vector<Piece> pieces;  // general

    friend bool operator==(const Primitive&, const Primitive&) = default;
};

struct Item {
    Primitive primitive;
    unsigned repeat = 1;
    std::size_t begin = 0;  // source span, not part of equality
    std::size_t end = 0;

    friend bool operator==(const Item& a, const Item& b) {
        return a.primitive == b.primitive && a.repeat == b.repeat;
    }
};

struct ScheduleExpr {
    std::vector<Item> items;

    friend bool operator==(const ScheduleExpr&, const ScheduleExpr&) = default;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class SyntaxError : public ParseError {
public:
    SyntaxError(std::size_t offset, std::vector<std::string> expected);
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::vector<std::string> expected_;
};

class SemanticError : public ParseError {
public:
    using ParseError::ParseError;
};

inline constexpr unsigned max_repeat = 1'000'000;

/// Throws SyntaxError or SemanticError; offsets never exceed text.size().
ScheduleExpr parse(std::string_view text);

std::string format(const ScheduleExpr& e);
std::string format(const Ratio& r);
std::string format(const Angle& a);

}  // namespace fractalc::parser
