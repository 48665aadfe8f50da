#include "certival/parse.hpp"

#include <cctype>

namespace certival {

namespace {

// rational-function value during parsing: num/den with den never zero
struct Value {
    UniPoly num;
    UniPoly den;
};

Value make_const(Rational c) { return {UniPoly::constant(std::move(c)), UniPoly::constant(Rational(1))}; }

Value add(const Value& a, const Value& b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
Value sub(const Value& a, const Value& b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
Value mul(const Value& a, const Value& b) { return {a.num * b.num, a.den * b.den}; }

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    Value parse() {
        Value v = expression();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    // atoms start a factor; used to detect implicit multiplication
    bool at_atom_start() {
        skip_ws();
        if (pos_ >= text_.size()) return false;
        char c = text_[pos_];
        return c == 'x' || c == '(' || std::isdigit(static_cast<unsigned char>(c));
    }

    Value expression() {
        skip_ws();
        bool neg = false;
        while (peek('+') || peek('-')) {
            if (accept('-')) neg = !neg;
            else accept('+');
        }
        Value acc = term();
        if (neg) acc.num = -acc.num;
        while (true) {
            skip_ws();
            if (accept('+')) {
                acc = add(acc, term());
            } else if (accept('-')) {
                acc = sub(acc, term());
            } else {
                break;
            }
        }
        return acc;
    }

    Value term() {
        Value acc = factor();
        while (true) {
            skip_ws();
            if (accept('*')) {
                acc = mul(acc, factor());
            } else if (accept('/')) {
                Value rhs = factor();
                if (rhs.num.is_zero()) fail("division by zero");
                acc = mul(acc, Value{rhs.den, rhs.num});
            } else if (at_atom_start()) {
                acc = mul(acc, factor());  // implicit multiplication: 21x^8, 2(x+1)
            } else {
                break;
            }
        }
        return acc;
    }

    Value factor() {
        skip_ws();
        bool neg = false;
        while (peek('-') || peek('+')) {
            if (accept('-')) neg = !neg;
            else accept('+');
        }
        Value v = atom();
        skip_ws();
        if (accept('^')) {
            long e = integer_literal();
            bool invert = e < 0;
            if (invert) e = -e;
            UniPoly pn = UniPoly::constant(Rational(1));
            UniPoly pd = UniPoly::constant(Rational(1));
            for (long i = 0; i < e; ++i) {
                pn = pn * v.num;
                pd = pd * v.den;
            }
            v = invert ? Value{pd, pn} : Value{pn, pd};
            if (v.den.is_zero()) fail("zero raised to a negative power");
        }
        if (neg) v.num = -v.num;
        return v;
    }

    Value atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Value v = expression();
            if (!accept(')')) fail("expected ')'");
            return v;
        }
        if (c == 'x') {
            ++pos_;
            return {UniPoly::variable(), UniPoly::constant(Rational(1))};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return make_const(number_literal());
        fail("expected a number, 'x' or '('");
    }

    long integer_literal() {
        skip_ws();
        bool neg = accept('-');
        if (!neg) accept('+');
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected an integer");
        long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > 1000000) fail("exponent too large");
            ++pos_;
        }
        return neg ? -v : v;
    }

    Rational number_literal() {
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        // decimal point produces an exact rational as well
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        return Rational::from_string(text_.substr(start, pos_ - start));
    }

    const std::string& text_;
    size_t pos_ = 0;
};

}  // namespace

UniPoly PolyExpr::as_polynomial() const {
    if (!is_polynomial()) throw std::invalid_argument("expression is not a polynomial: " + source);
    return num * (Rational(1) / den.coeff(0));
}

EvalFunction PolyExpr::as_function() const {
    if (is_polynomial()) return EvalFunction(as_polynomial());
    return EvalFunction(as_rational());
}

PolyExpr parse_polynomial(const std::string& text) {
    Parser parser(text);
    Value v = parser.parse();
    if (v.den.is_zero()) throw ParseError("denominator is identically zero", 0);
    PolyExpr out;
    out.source = text;
    // normalize: reduce and clear a constant denominator
    RationalFn reduced(v.num, v.den);
    if (reduced.den.degree() == 0) {
        out.num = reduced.num * (Rational(1) / reduced.den.coeff(0));
        out.den = UniPoly::constant(Rational(1));
    } else {
        out.num = reduced.num;
        out.den = reduced.den;
    }
    return out;
}

}  // namespace certival
