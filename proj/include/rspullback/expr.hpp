#pragma once

// Text format for parameter-field elements, polynomials and rational
// functions: infix with + - * / ^, implicit multiplication, integers only.
// Identifiers are x, the parameter name, the extension generator and any
// named bindings supplied by the caller.

#include "ratfunc.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace rspb {

struct ParseError : std::runtime_error {
    size_t position;
    ParseError(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

// Either an x-free field element or a rational function of x.
struct Value {
    RatFunc f;

    Value() = default;
    Value(RatFunc r) : f(std::move(r)) {}
    Value(const ParamElem& c) : f(c) {}
    Value(const Poly& p) : f(p) {}

    bool has_x() const { return !f.is_constant(); }
    ParamElem constant() const {
        if (has_x()) throw std::invalid_argument("expression depends on x");
        return f.num().coeff(0) / f.den().coeff(0);
    }
    Poly poly() const {
        if (!f.is_poly()) throw std::invalid_argument("expression is not a polynomial in x");
        return f.den().coeff(0).inverse() * f.num();
    }
};

struct ExprContext {
    std::string param = "p";
    ExtensionPtr ext;  // may be null
    std::map<std::string, Value> bindings;
};

namespace detail {

class Parser {
public:
    Parser(const std::string& text, const ExprContext& ctx) : s_(text), ctx_(ctx) {}

    Value parse() {
        Value v = expr();
        skip();
        if (i_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[i_]) + "'", i_);
        return v;
    }

private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool peek(char c) {
        skip();
        return i_ < s_.size() && s_[i_] == c;
    }
    bool starts_atom() {
        skip();
        if (i_ >= s_.size()) return false;
        char c = s_[i_];
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
               c == '(';
    }

    static Value mul(const Value& a, const Value& b) {
        if (!a.has_x() && !b.has_x()) return Value(a.constant() * b.constant());
        return Value(a.f * b.f);
    }
    static Value div(const Value& a, const Value& b, size_t pos) {
        if (!b.has_x()) {
            ParamElem c = b.constant();
            if (c.is_zero()) throw ParseError("division by zero", pos);
            if (!a.has_x()) return Value(a.constant() / c);
            return Value(c.inverse() * a.f);
        }
        if (b.f.is_zero()) throw ParseError("division by zero", pos);
        return Value(a.f / b.f);
    }
    static Value add(const Value& a, const Value& b, bool minus) {
        if (!a.has_x() && !b.has_x()) return Value(minus ? a.constant() - b.constant() : a.constant() + b.constant());
        return Value(minus ? a.f - b.f : a.f + b.f);
    }

    Value expr() {
        Value v = term();
        for (;;) {
            if (peek('+')) {
                ++i_;
                v = add(v, term(), false);
            } else if (peek('-')) {
                ++i_;
                v = add(v, term(), true);
            } else {
                return v;
            }
        }
    }
    Value term() {
        Value v = unary();
        for (;;) {
            if (peek('*')) {
                ++i_;
                v = mul(v, unary());
            } else if (peek('/')) {
                size_t pos = i_++;
                v = div(v, unary(), pos);
            } else if (starts_atom()) {
                v = mul(v, power());
            } else {
                return v;
            }
        }
    }
    Value unary() {
        if (peek('-')) {
            ++i_;
            Value v = unary();
            return v.has_x() ? Value(-v.f) : Value(-v.constant());
        }
        if (peek('+')) {
            ++i_;
            return unary();
        }
        return power();
    }
    Value power() {
        Value b = atom();
        if (!peek('^')) return b;
        ++i_;
        skip();
        bool neg = false;
        if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) {
            neg = s_[i_] == '-';
            ++i_;
        }
        skip();
        size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (start == i_) throw ParseError("expected integer exponent", start);
        long e = std::stol(s_.substr(start, i_ - start));
        if (neg) e = -e;
        if (!b.has_x()) return Value(b.constant().pow(e));
        return Value(b.f.pow(static_cast<int>(e)));
    }
    Value atom() {
        skip();
        if (i_ >= s_.size()) throw ParseError("unexpected end of input", i_);
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            Value v = expr();
            if (!peek(')')) throw ParseError("expected ')'", i_);
            ++i_;
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            return Value(ParamElem(Rational(Integer(s_.substr(start, i_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = i_;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '\'')) ++i_;
            std::string name = s_.substr(start, i_ - start);
            auto it = ctx_.bindings.find(name);
            if (it != ctx_.bindings.end()) return it->second;
            if (name == "x") return Value(Poly::x());
            if (name == ctx_.param) return Value(ParamElem::param());
            if (ctx_.ext && name == ctx_.ext->name) return Value(ParamElem::w(ctx_.ext));
            throw ParseError("unknown identifier '" + name + "'", start);
        }
        throw ParseError("unexpected '" + std::string(1, c) + "'", i_);
    }

    const std::string& s_;
    const ExprContext& ctx_;
    size_t i_ = 0;
};

}  // namespace detail

inline Value parse_value(const std::string& text, const ExprContext& ctx) { return detail::Parser(text, ctx).parse(); }
inline ParamElem parse_elem(const std::string& text, const ExprContext& ctx) { return parse_value(text, ctx).constant(); }
inline Poly parse_poly(const std::string& text, const ExprContext& ctx) { return parse_value(text, ctx).poly(); }
inline RatFunc parse_ratfunc(const std::string& text, const ExprContext& ctx) { return parse_value(text, ctx).f; }

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline std::string monomial(const std::string& var, int k) {
    if (k == 0) return "";
    if (k == 1) return var;
    return var + "^" + std::to_string(k);
}

// Sum of c_k var^k with rational c_k, highest degree first.
inline std::string print_sum(const std::vector<Rational>& c, const std::string& var) {
    std::string out;
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
        if (sgn(c[k]) == 0) continue;
        Rational a = abs(c[k]);
        bool neg = sgn(c[k]) < 0;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        std::string mono = monomial(var, k);
        if (mono.empty())
            out += a.get_str();
        else if (a == 1)
            out += mono;
        else
            out += a.get_str() + "*" + mono;
    }
    return out.empty() ? "0" : out;
}

inline int term_count(const std::vector<Rational>& c) {
    int n = 0;
    for (const auto& v : c) n += sgn(v) != 0;
    return n;
}

inline std::vector<Rational> rational_coeffs(const ParamPoly& p) {
    std::vector<Rational> c(p.degree() + 1);
    for (int i = 0; i <= p.degree(); ++i) c[i] = p.coeff(i);
    return c;
}

}  // namespace detail

inline std::string to_string(const ParamPoly& p, const std::string& var = "p") {
    return detail::print_sum(detail::rational_coeffs(p), var);
}

inline std::string to_string(const ParamFrac& f, const std::string& var = "p") {
    auto n = detail::rational_coeffs(f.numerator());
    std::string ns = detail::print_sum(n, var);
    if (f.den_primitive().size() == 1) return ns;
    auto d = detail::rational_coeffs(f.denominator());
    std::string ds = detail::print_sum(d, var);
    if (detail::term_count(n) > 1 || (ns.size() > 0 && ns[0] == '-')) ns = "(" + ns + ")";
    return ns + "/(" + ds + ")";
}

// `compound` is set when the result is a sum and needs parentheses as a factor.
inline std::string to_string(const ParamElem& e, const std::string& var = "p", bool* compound = nullptr) {
    std::string b = to_string(e.base(), var);
    bool bsum = detail::term_count(detail::rational_coeffs(e.base().numerator())) > 1 && e.base().den_primitive().size() == 1;
    if (!e.has_ext()) {
        if (compound) *compound = bsum || (!b.empty() && b[0] == '-');
        return b;
    }
    std::string w = e.extension()->name;
    std::string x = to_string(e.ext_part(), var);
    std::string xs = (x == "1") ? w : (x == "-1") ? "-" + w : "(" + x + ")*" + w;
    if (compound) *compound = true;
    if (e.base().is_zero()) return xs;
    if (xs[0] == '-') return b + " - " + xs.substr(1);
    return b + " + " + xs;
}

inline std::string to_string(const Poly& p, const std::string& var = "p", const std::string& xname = "x") {
    std::string out;
    for (int k = p.degree(); k >= 0; --k) {
        const ParamElem& c = p.coeffs()[k];
        if (c.is_zero()) continue;
        bool compound = false;
        std::string cs = to_string(c, var, &compound);
        std::string mono = detail::monomial(xname, k);
        std::string term;
        bool neg = false;
        if (mono.empty()) {
            term = cs;
            if (!compound && cs[0] == '-') {
                neg = true;
                term = cs.substr(1);
            } else if (compound) {
                term = "(" + cs + ")";
            }
        } else if (cs == "1") {
            term = mono;
        } else if (cs == "-1") {
            term = mono;
            neg = true;
        } else if (compound) {
            term = "(" + cs + ")*" + mono;
        } else {
            if (cs[0] == '-') {
                neg = true;
                cs = cs.substr(1);
            }
            term = cs + "*" + mono;
        }
        if (out.empty())
            out = neg ? "-" + term : term;
        else
            out += (neg ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

inline std::string to_string(const RatFunc& f, const std::string& var = "p", const std::string& xname = "x") {
    if (f.is_poly()) return to_string(f.num(), var, xname);
    return "(" + to_string(f.num(), var, xname) + ")/(" + to_string(f.den(), var, xname) + ")";
}

inline std::string to_string(const Mobius& m, const std::string& var = "p") {
    RatFunc f(Poly(std::vector<ParamElem>{m.b, m.a}), Poly(std::vector<ParamElem>{m.d, m.c}));
    return to_string(f, var);
}

}  // namespace rspb
