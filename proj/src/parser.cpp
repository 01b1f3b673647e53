#include "fractalc/parser.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>

namespace fractalc::parser {

namespace {

std::string join_expected(const std::vector<std::string>& expected) {
    std::string out;
    for (const auto& e : expected) {
        if (!out.empty())
            out += ", ";
        out += '\'' + e + '\'';
    }
    return out;
}

std::string shortest(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ScheduleExpr schedule() {
        ScheduleExpr e;
        skip_ws();
        e.items.push_back(item());
        skip_ws();
        while (pos_ < text_.size()) {
            e.items.push_back(item());
            skip_ws();
        }
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        throw SyntaxError(pos_, std::move(expected));
    }
    [[noreturn]] void reject(std::size_t at, const std::string& msg) const {
        throw SemanticError(msg + " at offset " + std::to_string(at), at);
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c != ' ' && c != '\t' && c != '\n' && c != '\r')
                break;
            ++pos_;
        }
    }

    bool peek(std::string_view tok) {
        skip_ws();
        return text_.substr(pos_).starts_with(tok);
    }

    bool accept(std::string_view tok) {
        if (!peek(tok))
            return false;
        pos_ += tok.size();
        return true;
    }

    void expect(std::string_view tok) {
        if (!accept(tok))
            fail({std::string(tok)});
    }

    Item item() {
        skip_ws();
        Item it;
        it.begin = pos_;
        it.primitive = primitive();
        if (accept("^")) {
            skip_ws();
            std::size_t at = pos_;
            std::int64_t n = integer();
            if (n < 1)
                reject(at, "repeat count must be at least 1");
            if (n > static_cast<std::int64_t>(max_repeat))
                reject(at, "repeat count too large");
            it.repeat = static_cast<unsigned>(n);
        }
        it.end = pos_;
        return it;
    }

    Primitive primitive() {
        skip_ws();
        std::size_t at = pos_;
        Primitive p;
        if (accept("K")) {
            expect("[");
            p.kind = Primitive::Kind::koch;
            p.angle = angle();
            expect("]");
        } else if (accept("Q")) {
            expect("[");
            p.kind = Primitive::Kind::quadratic;
            std::size_t angle_at = pos_;
            p.angle = angle();
            if (std::abs(p.angle.value - std::numbers::pi / 2) > 1e-12)
                reject(angle_at, "unsupported quadratic Koch angle (only pi/2)");
            expect("]");
        } else if (accept("C")) {
            expect("[");
            p.kind = Primitive::Kind::cantor;
            if (peek("]"))
                reject(pos_, "empty ratio list");
            p.ratios.push_back(ratio());
            while (accept(","))
                p.ratios.push_back(ratio());
            expect("]");
        } else if (accept("G")) {
            expect("[");
            p.kind = Primitive::Kind::general;
            p.pieces.push_back(piece());
            while (accept(";"))
                p.pieces.push_back(piece());
            expect("]");
            bool any_draw = false;
            for (const auto& pc : p.pieces)
                any_draw = any_draw || pc.draw;
            if (!any_draw)
                reject(at, "empty ratio list (generator has no draw piece)");
        } else {
            fail({"K[", "Q[", "C[", "G["});
        }
        return p;
    }

    Piece piece() {
        expect("(");
        Piece pc;
        pc.ratio = ratio();
        expect(",");
        pc.angle = angle();
        expect(",");
        if (accept("draw"))
            pc.draw = true;
        else if (accept("gap"))
            pc.draw = false;
        else
            fail({"draw", "gap"});
        expect(")");
        return pc;
    }

    std::int64_t integer() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_digit(text_[pos_]))
            ++pos_;
        if (pos_ == start)
            fail({"INT"});
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (ec != std::errc())
            reject(start, "integer out of range");
        return v;
    }

    // Scans a decimal literal (digits, optional fraction, optional exponent)
    // starting at pos_. Returns its length, or 0 if none.
    std::size_t scan_decimal() const {
        std::size_t i = pos_;
        std::size_t digits = 0;
        while (i < text_.size() && is_digit(text_[i]))
            ++i, ++digits;
        if (i < text_.size() && text_[i] == '.') {
            ++i;
            while (i < text_.size() && is_digit(text_[i]))
                ++i, ++digits;
        }
        if (digits == 0)
            return 0;
        if (i < text_.size() && (text_[i] == 'e' || text_[i] == 'E')) {
            std::size_t j = i + 1;
            if (j < text_.size() && (text_[j] == '+' || text_[j] == '-'))
                ++j;
            std::size_t exp_start = j;
            while (j < text_.size() && is_digit(text_[j]))
                ++j;
            if (j > exp_start)
                i = j;
        }
        return i - pos_;
    }

    double decimal_value(std::size_t start, std::size_t len) const {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + start + len, v);
        if (ec != std::errc() || ptr != text_.data() + start + len || !std::isfinite(v))
            reject(start, "number out of range");
        return v;
    }

    Ratio ratio() {
        skip_ws();
        std::size_t start = pos_;
        std::size_t int_len = 0;
        while (start + int_len < text_.size() && is_digit(text_[start + int_len]))
            ++int_len;
        std::size_t dec_len = scan_decimal();
        if (dec_len == 0)
            fail({"ratio"});

        Ratio r;
        if (dec_len == int_len) {
            // integer, possibly the numerator of a rational
            std::int64_t num = integer();
            std::int64_t den = 1;
            if (accept("/")) {
                skip_ws();
                std::size_t den_at = pos_;
                den = integer();
                if (den == 0)
                    reject(den_at, "zero denominator");
            }
            if (num == 0 || num >= den)
                reject(start, "ratio must lie in (0,1)");
            r = Ratio::rational(num, den);
        } else {
            double v = decimal_value(start, dec_len);
            pos_ += dec_len;
            if (!(v > 0.0 && v < 1.0))
                reject(start, "ratio must lie in (0,1)");
            r = Ratio::decimal(v);
        }
        return r;
    }

    Angle angle() {
        skip_ws();
        std::size_t start = pos_;
        bool negative = accept("-");
        skip_ws();
        Angle a;
        if (accept("pi") || accept("π")) {
            std::int64_t div = 1;
            if (accept("/")) {
                skip_ws();
                std::size_t div_at = pos_;
                div = integer();
                if (div == 0)
                    reject(div_at, "zero divisor");
            }
            a = Angle::pi_over(div, negative);
        } else {
            std::size_t len = scan_decimal();
            if (len == 0)
                fail({"pi", "decimal"});
            double v = decimal_value(pos_, len);
            pos_ += len;
            a = Angle::decimal(negative ? -v : v);
        }
        if (!(std::abs(a.value) < std::numbers::pi))
            reject(start, "angle magnitude must be below pi");
        return a;
    }
};

}  // namespace

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected)
    : ParseError("syntax error at offset " + std::to_string(offset) + ": expected " +
                     join_expected(expected),
                 offset),
      expected_(std::move(expected)) {}

Ratio Ratio::rational(std::int64_t num, std::int64_t den) {
    std::int64_t g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    Ratio r;
    r.form = Form::rational;
    r.num = num;
    r.den = den;
    r.value = static_cast<double>(num) / static_cast<double>(den);
    return r;
}

Ratio Ratio::decimal(double v) {
    Ratio r;
    r.form = Form::decimal;
    r.num = r.den = 0;
    r.value = v;
    return r;
}

bool operator==(const Ratio& a, const Ratio& b) {
    if (a.form != b.form)
        return false;
    if (a.form == Ratio::Form::rational)
        return a.num == b.num && a.den == b.den;
    return a.value == b.value;
}

Angle Angle::pi_over(std::int64_t divisor, bool negative) {
    Angle a;
    a.form = Form::pi_fraction;
    a.negative = negative;
    a.divisor = divisor;
    a.value = (negative ? -std::numbers::pi : std::numbers::pi) / static_cast<double>(divisor);
    return a;
}

Angle Angle::decimal(double v) {
    Angle a;
    a.form = Form::decimal;
    a.divisor = 0;
    a.value = v;
    return a;
}

bool operator==(const Angle& a, const Angle& b) {
    if (a.form != b.form)
        return false;
    if (a.form == Angle::Form::pi_fraction)
        return a.negative == b.negative && a.divisor == b.divisor;
    return a.value == b.value;
}

ScheduleExpr parse(std::string_view text) {
    return Parser(text).schedule();
}

std::string format(const Ratio& r) {
    if (r.form == Ratio::Form::rational)
        return std::to_string(r.num) + "/" + std::to_string(r.den);
    return shortest(r.value);
}

std::string format(const Angle& a) {
    if (a.form == Angle::Form::decimal)
        return shortest(a.value);
    std::string out = a.negative ? "-pi" : "pi";
    if (a.divisor != 1)
        out += "/" + std::to_string(a.divisor);
    return out;
}

std::string format(const ScheduleExpr& e) {
    std::string out;
    for (const auto& it : e.items) {
        if (!out.empty())
            out += ' ';
        const auto& p = it.primitive;
        switch (p.kind) {
        case Primitive::Kind::koch:
            out += "K[" + format(p.angle) + "]";
            break;
        case Primitive::Kind::quadratic:
            out += "Q[" + format(p.angle) + "]";
            break;
        case Primitive::Kind::cantor:
            out += "C[";
            for (std::size_t i = 0; i < p.ratios.size(); ++i)
                out += (i ? "," : "") + format(p.ratios[i]);
            out += "]";
            break;
        case Primitive::Kind::general:
            out += "G[";
            for (std::size_t i = 0; i < p.pieces.size(); ++i) {
                const auto& pc = p.pieces[i];
                out += (i ? ";(" : "(") + format(pc.ratio) + "," + format(pc.angle) + "," +
                       (pc.draw ? "draw" : "gap") + ")";
            }
            out += "]";
            break;
        }
        if (it.repeat > 1)
            out += "^" + std::to_string(it.repeat);
    }
    return out;
}

}  // namespace fractalc::parser
