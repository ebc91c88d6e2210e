#pragma once

// Rational functions in x and fractional-linear maps.

#include "poly.hpp"

namespace rspb {

class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(long v) : num_(v), den_(1) {}
    RatFunc(const ParamElem& c) : num_(c), den_(1) {}
    RatFunc(const Poly& p) : num_(p), den_(1) {}
    RatFunc(const Poly& n, const Poly& d) : num_(n), den_(d) { canonicalize_in_place(); }

    // Trusted constructor: n, d already coprime; only normalizes d to be monic.
    static RatFunc coprime(const Poly& n, const Poly& d) {
        if (d.is_zero()) throw std::domain_error("RatFunc: zero denominator");
        RatFunc r;
        r.num_ = n;
        r.den_ = d;
        r.make_monic();
        return r;
    }

    static RatFunc x() { return RatFunc(Poly::x()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.degree() == 0; }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc operator-() const { return coprime_unchecked(-num_, den_); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        if (a.is_poly()) return coprime_unchecked(a.num_ * b.den_ + b.num_, b.den_);
        if (b.is_poly()) return coprime_unchecked(a.num_ + b.num_ * a.den_, a.den_);
        Poly g = gcd(a.den_, b.den_);
        if (g.degree() == 0) return coprime_unchecked(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
        Poly da = divide_exact(a.den_, g), db = divide_exact(b.den_, g);
        Poly n = a.num_ * db + b.num_ * da;
        if (n.is_zero()) return {};
        Poly h = gcd(n, g);
        if (h.degree() > 0) {
            n = divide_exact(n, h);
            g = divide_exact(g, h);
        }
        return coprime_unchecked(n, g * da * db);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return {};
        Poly n1 = a.num_, d2 = b.den_, n2 = b.num_, d1 = a.den_;
        cancel(n1, d2);
        cancel(n2, d1);
        return coprime_unchecked(n1 * n2, d1 * d2);
    }
    friend RatFunc operator*(const ParamElem& s, const RatFunc& a) {
        if (s.is_zero()) return {};
        return coprime_unchecked(s * a.num_, a.den_);
    }
    RatFunc inverse() const {
        if (is_zero()) throw std::domain_error("RatFunc: division by zero");
        return coprime(den_, num_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    RatFunc pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        return coprime_unchecked(num_.pow(e), den_.pow(e));
    }

    RatFunc derivative() const {
        if (is_poly()) return RatFunc(num_.derivative() * den_.leading().inverse());
        // (n'd - nd')/d^2, cancelling the part of d shared with d'
        Poly g = gcd(den_, den_.derivative());
        Poly dq = divide_exact(den_, g);
        Poly n = num_.derivative() * dq - num_ * divide_exact(den_.derivative() * dq, den_);
        return RatFunc(n, den_ * dq);
    }

    RatFunc param_derivative() const {
        // (n_p d - n d_p)/d^2
        return RatFunc(num_.param_derivative() * den_ - num_ * den_.param_derivative(), den_ * den_);
    }

    ParamElem evaluate(const ParamElem& v) const {
        ParamElem d = den_.evaluate(v);
        if (d.is_zero()) throw std::domain_error("RatFunc: pole at evaluation point");
        return num_.evaluate(v) / d;
    }

    template <class F>
    RatFunc map_coeffs(F&& f) const {
        return RatFunc(num_.map_coeffs(f), den_.map_coeffs(f));
    }

private:
    static RatFunc coprime_unchecked(const Poly& n, const Poly& d) {
        RatFunc r;
        r.num_ = n;
        r.den_ = d;
        r.make_monic();
        return r;
    }
    static void cancel(Poly& n, Poly& d) {
        if (n.degree() <= 0 || d.degree() <= 0) return;
        Poly g = gcd(n, d);
        if (g.degree() <= 0) return;
        n = divide_exact(n, g);
        d = divide_exact(d, g);
    }
    void make_monic() {
        if (num_.is_zero()) {
            den_ = Poly(1);
            return;
        }
        ParamElem lc = den_.leading();
        if (!lc.is_one()) {
            ParamElem inv = lc.inverse();
            num_ = inv * num_;
            den_ = inv * den_;
        }
    }
    void canonicalize_in_place() {
        if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
        cancel(num_, den_);
        make_monic();
    }

    Poly num_;
    Poly den_;
};

inline RatFunc canonicalize(const RatFunc& f) { return RatFunc(f.num(), f.den()); }

inline RatFunc differentiate(const RatFunc& f) { return f.derivative(); }

inline RatFunc log_deriv(const RatFunc& f) {
    if (f.is_zero()) throw std::domain_error("log_deriv: zero input");
    // n'/n - d'/d without forming the quotient first
    RatFunc a = f.num().degree() > 0 ? RatFunc(f.num().derivative(), f.num()) : RatFunc();
    RatFunc b = f.den().degree() > 0 ? RatFunc(f.den().derivative(), f.den()) : RatFunc();
    return a - b;
}

// x -> (a x + b)/(c x + d)
struct Mobius {
    ParamElem a = 1, b = 0, c = 0, d = 1;

    static Mobius identity() { return {}; }
    ParamElem det() const { return a * d - b * c; }
    bool is_affine() const { return c.is_zero(); }

    void check() const {
        if (det().is_zero()) throw std::invalid_argument("Mobius: singular map");
    }

    // (this o other)(x) = this(other(x))
    Mobius compose(const Mobius& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mobius inverse() const { return {d, -b, -c, a}; }

    friend bool operator==(const Mobius& m, const Mobius& n) {
        // projective equality
        return m.a * n.b == m.b * n.a && m.a * n.c == m.c * n.a && m.a * n.d == m.d * n.a &&
               m.b * n.c == m.c * n.b && m.b * n.d == m.d * n.b && m.c * n.d == m.d * n.c;
    }
};

// A point of the projective line over the parameter field.
struct ProjPoint {
    ParamElem value;
    bool infinite = false;

    static ProjPoint at(const ParamElem& v) { return {v, false}; }
    static ProjPoint inf() { return {ParamElem(), true}; }
    friend bool operator==(const ProjPoint& p, const ProjPoint& q) {
        return p.infinite == q.infinite && (p.infinite || p.value == q.value);
    }
};

inline ProjPoint apply(const Mobius& m, const ProjPoint& p) {
    if (p.infinite) {
        if (m.c.is_zero()) return ProjPoint::inf();
        return ProjPoint::at(m.a / m.c);
    }
    ParamElem den = m.c * p.value + m.d;
    if (den.is_zero()) return ProjPoint::inf();
    return ProjPoint::at((m.a * p.value + m.b) / den);
}

// (c x + d)^n f((a x + b)/(c x + d)) for a formal degree n >= deg f.
inline Poly compose_homogeneous(const Poly& f, const Mobius& m, int n) {
    if (f.is_zero()) return {};
    Poly lin_a(std::vector<ParamElem>{m.b, m.a});
    Poly lin_c(std::vector<ParamElem>{m.d, m.c});
    std::vector<Poly> pa{Poly(1)}, pc{Poly(1)};
    for (int i = 1; i <= n; ++i) {
        pa.push_back(pa.back() * lin_a);
        pc.push_back(pc.back() * lin_c);
    }
    Poly r;
    for (int i = 0; i <= f.degree(); ++i) {
        if (f.coeff(i).is_zero()) continue;
        r += f.coeff(i) * (pa[i] * pc[n - i]);
    }
    return r;
}

// f(m(x)); no gcd is needed since an invertible m keeps numerator and
// denominator coprime.
inline RatFunc compose_mobius(const RatFunc& f, const Mobius& m) {
    m.check();
    int dn = f.num().degree(), dd = f.den().degree();
    int n = std::max(dn, dd);
    Poly num = compose_homogeneous(f.num(), m, n);
    Poly den = compose_homogeneous(f.den(), m, n);
    return RatFunc::coprime(num, den);
}

inline RatFunc compose_mobius(const Poly& f, const Mobius& m) { return compose_mobius(RatFunc(f), m); }

// g(f(x)) for a rational function g (as num/den polynomials) and f.
inline RatFunc compose(const RatFunc& g, const RatFunc& f) {
    int n = std::max(g.num().degree(), g.den().degree());
    auto hom = [&](const Poly& p) {
        Poly r;
        Poly fp(1);
        std::vector<Poly> nd{Poly(1)};
        for (int i = 1; i <= n; ++i) nd.push_back(nd.back() * f.den());
        for (int i = 0; i <= p.degree(); ++i) {
            if (!p.coeff(i).is_zero()) r += p.coeff(i) * (fp * nd[n - i]);
            fp *= f.num();
        }
        return r;
    };
    return RatFunc(hom(g.num()), hom(g.den()));
}

inline Poly substitute_param(const Poly& f, const ParamElem& r) {
    return f.map_coeffs([&](const ParamElem& c) { return substitute_param(c, r); });
}
inline RatFunc substitute_param(const RatFunc& f, const ParamElem& r) {
    return RatFunc(substitute_param(f.num(), r), substitute_param(f.den(), r));
}
inline Mobius substitute_param(const Mobius& m, const ParamElem& r) {
    return {substitute_param(m.a, r), substitute_param(m.b, r), substitute_param(m.c, r), substitute_param(m.d, r)};
}

}  // namespace rspb
