#pragma once

// Polynomials and rational functions in the parameter p over Q.
//
// A ParamPoly is stored as scale * prim with prim a primitive integer
// polynomial of positive leading coefficient, so gcds and exact divisions
// stay in Z[p]. A ParamFrac is scale * num/den with num, den primitive,
// coprime and of positive leading coefficient, which makes equality a
// structural comparison.

#include "zpoly.hpp"

#include <string>
#include <utility>

namespace rspb {

class ParamPoly {
public:
    ParamPoly() = default;
    ParamPoly(long v) : ParamPoly(Rational(v)) {}
    ParamPoly(const Integer& v) : ParamPoly(Rational(v)) {}
    ParamPoly(const Rational& v) {
        if (sgn(v) != 0) {
            scale_ = v;
            prim_ = {Integer(1)};
        }
    }

    static ParamPoly from_rationals(const std::vector<Rational>& coeffs) {
        Integer den = 1;
        for (const auto& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
        zpoly::Coeffs z(coeffs.size());
        for (size_t i = 0; i < coeffs.size(); ++i) z[i] = coeffs[i].get_num() * (den / coeffs[i].get_den());
        return from_integers(std::move(z), Rational(1) / Rational(den));
    }

    // scale * z, where z need not be primitive.
    static ParamPoly from_integers(zpoly::Coeffs z, Rational scale = 1) {
        ParamPoly r;
        Integer g = zpoly::make_primitive(z);
        if (g == 0 || sgn(scale) == 0) return r;
        r.scale_ = scale * g;
        r.scale_.canonicalize();
        r.prim_ = std::move(z);
        return r;
    }

    static ParamPoly variable() { return from_integers({Integer(0), Integer(1)}); }

    bool is_zero() const { return prim_.empty(); }
    int degree() const { return static_cast<int>(prim_.size()) - 1; }
    const Rational& scale() const { return scale_; }
    const zpoly::Coeffs& primitive() const { return prim_; }

    Rational coeff(int i) const {
        if (i < 0 || i > degree()) return 0;
        Rational r(prim_[i]);
        return r * scale_;
    }
    Rational leading() const { return is_zero() ? Rational(0) : coeff(degree()); }
    bool is_constant() const { return degree() <= 0; }

    friend bool operator==(const ParamPoly& a, const ParamPoly& b) {
        return a.scale_ == b.scale_ && a.prim_ == b.prim_;
    }
    friend bool operator!=(const ParamPoly& a, const ParamPoly& b) { return !(a == b); }

    ParamPoly operator-() const {
        ParamPoly r = *this;
        r.scale_ = -r.scale_;
        return r;
    }

    friend ParamPoly operator+(const ParamPoly& a, const ParamPoly& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        // bring both scales to a common denominator
        Integer den;
        mpz_lcm(den.get_mpz_t(), a.scale_.get_den_mpz_t(), b.scale_.get_den_mpz_t());
        Integer ca = a.scale_.get_num() * (den / a.scale_.get_den());
        Integer cb = b.scale_.get_num() * (den / b.scale_.get_den());
        return from_integers(zpoly::add_scaled(a.prim_, ca, b.prim_, cb), Rational(1) / Rational(den));
    }
    friend ParamPoly operator-(const ParamPoly& a, const ParamPoly& b) { return a + (-b); }

    friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
        ParamPoly r;
        if (a.is_zero() || b.is_zero()) return r;
        r.scale_ = a.scale_ * b.scale_;
        r.prim_ = zpoly::mul(a.prim_, b.prim_);
        return r;
    }
    ParamPoly& operator+=(const ParamPoly& o) { return *this = *this + o; }
    ParamPoly& operator-=(const ParamPoly& o) { return *this = *this - o; }
    ParamPoly& operator*=(const ParamPoly& o) { return *this = *this * o; }

    // Exact quotient; throws if b does not divide a.
    friend ParamPoly divide_exact(const ParamPoly& a, const ParamPoly& b) {
        if (b.is_zero()) throw std::domain_error("ParamPoly: division by zero");
        ParamPoly r;
        if (a.is_zero()) return r;
        zpoly::Coeffs q;
        if (!zpoly::divide(a.prim_, b.prim_, q)) throw std::domain_error("ParamPoly: inexact division");
        r.scale_ = a.scale_ / b.scale_;
        r.prim_ = std::move(q);
        return r;
    }

    ParamPoly derivative() const { return from_integers(zpoly::derivative(prim_), scale_); }

    Rational evaluate(const Rational& v) const {
        Rational acc = 0;
        for (size_t i = prim_.size(); i-- > 0;) acc = acc * v + Rational(prim_[i]);
        return acc * scale_;
    }

private:
    friend class ParamFrac;
    Rational scale_ = 0;
    zpoly::Coeffs prim_;
};

// Monic gcd over Q[p]; gcd(0,0) is 0.
inline ParamPoly gcd(const ParamPoly& a, const ParamPoly& b) {
    if (a.is_zero() && b.is_zero()) return {};
    zpoly::Coeffs g = zpoly::gcd(a.primitive(), b.primitive());
    return ParamPoly::from_integers(g, Rational(1) / Rational(g.back()));
}

class ParamFrac {
public:
    ParamFrac() : den_{Integer(1)} {}
    ParamFrac(long v) : ParamFrac(Rational(v)) {}
    ParamFrac(const Rational& v) : den_{Integer(1)} {
        if (sgn(v) != 0) {
            scale_ = v;
            num_ = {Integer(1)};
        }
    }
    ParamFrac(const ParamPoly& p) : den_{Integer(1)} {
        if (!p.is_zero()) {
            scale_ = p.scale_;
            num_ = p.prim_;
        }
    }
    ParamFrac(const ParamPoly& n, const ParamPoly& d) {
        if (d.is_zero()) throw std::domain_error("ParamFrac: zero denominator");
        *this = ParamFrac(n) / ParamFrac(d);
    }

    static ParamFrac variable() { return ParamFrac(ParamPoly::variable()); }

    bool is_zero() const { return num_.empty(); }
    bool is_rational() const { return num_.size() <= 1 && den_.size() == 1; }
    Rational as_rational() const {
        if (!is_rational()) throw std::domain_error("ParamFrac: not a rational constant");
        return scale_;
    }
    // numerator and denominator with the scale folded into the numerator
    ParamPoly numerator() const { return ParamPoly::from_integers(num_, scale_); }
    ParamPoly denominator() const { return ParamPoly::from_integers(den_); }
    const Rational& scale() const { return scale_; }
    const zpoly::Coeffs& num_primitive() const { return num_; }
    const zpoly::Coeffs& den_primitive() const { return den_; }

    friend bool operator==(const ParamFrac& a, const ParamFrac& b) {
        return a.scale_ == b.scale_ && a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const ParamFrac& a, const ParamFrac& b) { return !(a == b); }

    ParamFrac operator-() const {
        ParamFrac r = *this;
        r.scale_ = -r.scale_;
        return r;
    }

    friend ParamFrac operator+(const ParamFrac& a, const ParamFrac& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) {
            // common denominator; cancel against it afterwards
            Integer den;
            mpz_lcm(den.get_mpz_t(), a.scale_.get_den_mpz_t(), b.scale_.get_den_mpz_t());
            Integer ca = a.scale_.get_num() * (den / a.scale_.get_den());
            Integer cb = b.scale_.get_num() * (den / b.scale_.get_den());
            zpoly::Coeffs n = zpoly::add_scaled(a.num_, ca, b.num_, cb);
            return make(std::move(n), a.den_, Rational(1) / Rational(den));
        }
        zpoly::Coeffs g = zpoly::gcd(a.den_, b.den_);
        zpoly::Coeffs da, db;
        zpoly::divide(a.den_, g, da);
        zpoly::divide(b.den_, g, db);
        Integer den;
        mpz_lcm(den.get_mpz_t(), a.scale_.get_den_mpz_t(), b.scale_.get_den_mpz_t());
        Integer ca = a.scale_.get_num() * (den / a.scale_.get_den());
        Integer cb = b.scale_.get_num() * (den / b.scale_.get_den());
        zpoly::Coeffs n = zpoly::add_scaled(zpoly::mul(a.num_, db), ca, zpoly::mul(b.num_, da), cb);
        ParamFrac r;
        Integer c = zpoly::make_primitive(n);
        if (c == 0) return r;
        // n is already coprime to da*db; only g can share factors with it
        zpoly::Coeffs h = g.size() > 1 ? zpoly::gcd(n, g) : zpoly::Coeffs{Integer(1)};
        if (h.size() > 1) {
            zpoly::Coeffs t;
            zpoly::divide(n, h, t);
            n = std::move(t);
            zpoly::divide(g, h, t);
            g = std::move(t);
        }
        r.scale_ = Rational(c) / Rational(den);
        r.scale_.canonicalize();
        r.num_ = std::move(n);
        r.den_ = zpoly::mul(zpoly::mul(g, da), db);
        return r;
    }
    friend ParamFrac operator-(const ParamFrac& a, const ParamFrac& b) { return a + (-b); }

    friend ParamFrac operator*(const ParamFrac& a, const ParamFrac& b) {
        ParamFrac r;
        if (a.is_zero() || b.is_zero()) return r;
        zpoly::Coeffs n1 = a.num_, d2 = b.den_, n2 = b.num_, d1 = a.den_;
        cancel_pair(n1, d2);
        cancel_pair(n2, d1);
        r.scale_ = a.scale_ * b.scale_;
        r.num_ = zpoly::mul(n1, n2);
        r.den_ = zpoly::mul(d1, d2);
        return r;
    }

    ParamFrac inverse() const {
        if (is_zero()) throw std::domain_error("ParamFrac: division by zero");
        ParamFrac r;
        r.scale_ = 1 / scale_;
        r.num_ = den_;
        r.den_ = num_;
        return r;
    }
    friend ParamFrac operator/(const ParamFrac& a, const ParamFrac& b) { return a * b.inverse(); }

    ParamFrac& operator+=(const ParamFrac& o) { return *this = *this + o; }
    ParamFrac& operator-=(const ParamFrac& o) { return *this = *this - o; }
    ParamFrac& operator*=(const ParamFrac& o) { return *this = *this * o; }
    ParamFrac& operator/=(const ParamFrac& o) { return *this = *this / o; }

    ParamFrac pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        ParamFrac r(1), b = *this;
        while (e) {
            if (e & 1) r *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return r;
    }

    // d/dp (n/d) = (n'd - nd')/d^2; the result is already coprime up to
    // a possible common factor with d, which `make` removes.
    ParamFrac derivative() const {
        if (is_zero()) return {};
        zpoly::Coeffs dn = zpoly::derivative(num_), dd = zpoly::derivative(den_);
        zpoly::Coeffs top = zpoly::add_scaled(zpoly::mul(dn, den_), Integer(1), zpoly::mul(num_, dd), Integer(-1));
        if (top.empty()) return {};
        zpoly::Coeffs bottom = zpoly::mul(den_, den_);
        return make(std::move(top), std::move(bottom), scale_);
    }

    // Value at a rational point; throws if the denominator vanishes.
    Rational evaluate(const Rational& v) const {
        Rational d = ParamPoly::from_integers(den_).evaluate(v);
        if (sgn(d) == 0) throw std::domain_error("ParamFrac: pole at evaluation point");
        return ParamPoly::from_integers(num_, scale_).evaluate(v) / d;
    }

    // scale * n / d with arbitrary integer polynomials n, d.
    static ParamFrac make(zpoly::Coeffs n, zpoly::Coeffs d, Rational scale) {
        ParamFrac r;
        Integer cn = zpoly::make_primitive(n);
        if (cn == 0 || sgn(scale) == 0) return r;
        Integer cd = zpoly::make_primitive(d);
        if (cd == 0) throw std::domain_error("ParamFrac: zero denominator");
        cancel_pair(n, d);
        r.scale_ = scale * Rational(cn) / Rational(cd);
        r.scale_.canonicalize();
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        return r;
    }

private:
    static void cancel_pair(zpoly::Coeffs& n, zpoly::Coeffs& d) {
        if (n.size() <= 1 || d.size() <= 1) return;
        zpoly::Coeffs g = zpoly::gcd(n, d);
        if (g.size() <= 1) return;
        zpoly::Coeffs t;
        zpoly::divide(n, g, t);
        n = std::move(t);
        zpoly::divide(d, g, t);
        d = std::move(t);
    }

    Rational scale_ = 0;
    zpoly::Coeffs num_;
    zpoly::Coeffs den_;
};

}  // namespace rspb
