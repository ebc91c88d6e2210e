#pragma once

// Dense polynomials in x with coefficients in Q(p) or its quadratic extension.

#include "param_elem.hpp"

#include <vector>

namespace rspb {

class Poly {
public:
    Poly() = default;
    Poly(long v) : Poly(ParamElem(v)) {}
    Poly(const Rational& v) : Poly(ParamElem(v)) {}
    Poly(const ParamElem& c) {
        if (!c.is_zero()) c_.push_back(c);
    }
    explicit Poly(std::vector<ParamElem> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly x() { return Poly(std::vector<ParamElem>{ParamElem(0), ParamElem(1)}); }
    static Poly monomial(const ParamElem& c, int k) {
        std::vector<ParamElem> v(k + 1);
        v[k] = c;
        return Poly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<ParamElem>& coeffs() const { return c_; }
    ParamElem coeff(int i) const { return (i < 0 || i > degree()) ? ParamElem() : c_[i]; }
    ParamElem leading() const { return is_zero() ? ParamElem() : c_.back(); }
    bool has_ext() const {
        for (const auto& c : c_)
            if (c.has_ext()) return true;
        return false;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly operator-() const {
        Poly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<ParamElem> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) {
            if (i < a.c_.size() && i < b.c_.size())
                r[i] = a.c_[i] + b.c_[i];
            else
                r[i] = i < a.c_.size() ? a.c_[i] : b.c_[i];
        }
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<ParamElem> r(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j].is_zero()) continue;
                r[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return Poly(std::move(r));
    }
    friend Poly operator*(const ParamElem& s, const Poly& a) {
        if (s.is_zero()) return {};
        Poly r = a;
        for (auto& c : r.c_) c = s * c;
        return r;
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly pow(int e) const {
        Poly r(1), b = *this;
        while (e) {
            if (e & 1) r *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return r;
    }

    Poly shift(int k) const {
        if (is_zero()) return {};
        std::vector<ParamElem> v(k, ParamElem());
        v.insert(v.end(), c_.begin(), c_.end());
        return Poly(std::move(v));
    }

    Poly monic() const {
        if (is_zero()) return {};
        if (leading().is_one()) return *this;
        ParamElem inv = leading().inverse();
        return inv * *this;
    }

    // Euclidean division over the coefficient field.
    static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
        if (b.is_zero()) throw std::domain_error("Poly: division by zero");
        r = a;
        q = Poly();
        if (a.degree() < b.degree()) return;
        std::vector<ParamElem> qc(a.degree() - b.degree() + 1);
        ParamElem inv = b.leading().inverse();
        std::vector<ParamElem> rc = a.c_;
        for (int k = static_cast<int>(qc.size()) - 1; k >= 0; --k) {
            const ParamElem& top = rc[k + b.degree()];
            if (top.is_zero()) continue;
            ParamElem f = top * inv;
            for (int j = 0; j <= b.degree(); ++j)
                if (!b.c_[j].is_zero()) rc[k + j] -= f * b.c_[j];
            qc[k] = f;
        }
        rc.resize(b.degree());
        q = Poly(std::move(qc));
        r = Poly(std::move(rc));
    }
    friend Poly operator/(const Poly& a, const Poly& b) {
        Poly q, r;
        divmod(a, b, q, r);
        return q;
    }
    friend Poly operator%(const Poly& a, const Poly& b) {
        Poly q, r;
        divmod(a, b, q, r);
        return r;
    }
    friend Poly divide_exact(const Poly& a, const Poly& b) {
        Poly q, r;
        divmod(a, b, q, r);
        if (!r.is_zero()) throw std::domain_error("Poly: inexact division");
        return q;
    }
    bool divides(const Poly& a) const { return (a % *this).is_zero(); }

    Poly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<ParamElem> v(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = ParamElem(static_cast<long>(i)) * c_[i];
        return Poly(std::move(v));
    }
    // coefficient-wise d/dp
    Poly param_derivative() const {
        std::vector<ParamElem> v(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) v[i] = c_[i].derivative();
        return Poly(std::move(v));
    }

    ParamElem evaluate(const ParamElem& v) const {
        ParamElem acc;
        for (size_t i = c_.size(); i-- > 0;) acc = acc * v + c_[i];
        return acc;
    }

    // x^n f(1/x) for n = degree (or a larger formal degree).
    Poly invert_x(int formal_degree = -1) const {
        int n = formal_degree < 0 ? degree() : formal_degree;
        if (is_zero()) return {};
        if (n < degree()) throw std::invalid_argument("invert_x: formal degree below degree");
        std::vector<ParamElem> v(n + 1);
        for (int i = 0; i <= degree(); ++i) v[n - i] = c_[i];
        return Poly(std::move(v));
    }

    template <class F>
    Poly map_coeffs(F&& f) const {
        std::vector<ParamElem> v(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) v[i] = f(c_[i]);
        return Poly(std::move(v));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<ParamElem> c_;
};

namespace detail {

// Bivariate integer polynomials: index = power of x, entries in Z[p].
using ZZPoly = std::vector<zpoly::Coeffs>;

inline bool to_zz(const Poly& a, ZZPoly& out) {
    if (a.has_ext()) return false;
    zpoly::Coeffs den{Integer(1)};
    Integer qden = 1;
    for (const auto& c : a.coeffs()) {
        const ParamFrac& f = c.base();
        if (f.is_zero()) continue;
        zpoly::Coeffs g = zpoly::gcd(den, f.den_primitive()), t;
        zpoly::divide(f.den_primitive(), g, t);
        den = zpoly::mul(den, t);
        mpz_lcm(qden.get_mpz_t(), qden.get_mpz_t(), f.scale().get_den_mpz_t());
    }
    out.assign(a.coeffs().size(), {});
    for (size_t i = 0; i < a.coeffs().size(); ++i) {
        const ParamFrac& f = a.coeffs()[i].base();
        if (f.is_zero()) continue;
        zpoly::Coeffs cofactor;
        zpoly::divide(den, f.den_primitive(), cofactor);
        Integer s = f.scale().get_num() * (qden / f.scale().get_den());
        zpoly::Coeffs v = zpoly::mul(f.num_primitive(), cofactor);
        for (auto& x : v) x *= s;
        out[i] = std::move(v);
    }
    return true;
}

inline void zz_make_primitive(ZZPoly& a) {
    while (!a.empty() && a.back().empty()) a.pop_back();
    if (a.empty()) return;
    Integer ic = 0;
    for (const auto& c : a) {
        Integer k = zpoly::content(c);
        mpz_gcd(ic.get_mpz_t(), ic.get_mpz_t(), k.get_mpz_t());
    }
    if (ic != 1 && ic != 0)
        for (auto& c : a) zpoly::divide_exact(c, ic);
    zpoly::Coeffs g;
    for (const auto& c : a) {
        if (c.empty()) continue;
        g = g.empty() ? c : zpoly::gcd(g, c);
        if (g.size() == 1) break;
    }
    if (g.size() > 1) {
        for (auto& c : a) {
            if (c.empty()) continue;
            zpoly::Coeffs t;
            zpoly::divide(c, g, t);
            c = std::move(t);
        }
    }
}

// Primitive pseudo-remainder sequence over Z[p][x].
inline ZZPoly zz_gcd(ZZPoly a, ZZPoly b) {
    zz_make_primitive(a);
    zz_make_primitive(b);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        if (b.size() == 1) return {{Integer(1)}};
        // pseudo-remainder of a by b
        const zpoly::Coeffs lb = b.back();
        while (a.size() >= b.size()) {
            zpoly::Coeffs la = a.back();
            size_t shift = a.size() - b.size();
            for (auto& c : a) c = zpoly::mul(c, lb);
            for (size_t j = 0; j < b.size(); ++j) {
                zpoly::Coeffs t = zpoly::mul(la, b[j]);
                a[shift + j] = zpoly::add_scaled(a[shift + j], Integer(1), t, Integer(-1));
            }
            while (!a.empty() && a.back().empty()) a.pop_back();
            if (a.empty()) break;
            // keep intermediate sizes down
            if (a.size() >= b.size()) zz_make_primitive(a);
        }
        zz_make_primitive(a);
        std::swap(a, b);
    }
    return a;
}

inline Poly from_zz(const ZZPoly& a) {
    std::vector<ParamElem> v(a.size());
    for (size_t i = 0; i < a.size(); ++i) v[i] = ParamElem(ParamPoly::from_integers(a[i]));
    return Poly(std::move(v));
}

}  // namespace detail

// Monic gcd over the coefficient field; gcd(0,0) is an error.
inline Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("poly_gcd: both arguments are zero");
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.degree() == 0 || b.degree() == 0) return Poly(1);
    detail::ZZPoly za, zb;
    if (detail::to_zz(a, za) && detail::to_zz(b, zb)) return detail::from_zz(detail::zz_gcd(za, zb)).monic();
    Poly r0 = a.monic(), r1 = b.monic();
    if (r0.degree() < r1.degree()) std::swap(r0, r1);
    while (!r1.is_zero()) {
        Poly r = (r0 % r1).monic();
        r0 = std::move(r1);
        r1 = std::move(r);
    }
    return r0;
}

inline Poly poly_gcd(const Poly& a, const Poly& b) { return gcd(a, b); }

// Yun's square-free decomposition: returns s[1], s[2], ... with
// f = lc * prod s[i]^i, each s[i] monic and square-free, pairwise coprime.
// Index 0 is unused (left as 1).
inline std::vector<Poly> squarefree_decomposition(const Poly& f) {
    if (f.degree() < 1) return {Poly(1)};
    std::vector<Poly> out{Poly(1)};
    Poly fm = f.monic();
    Poly d = fm.derivative();
    Poly a = gcd(fm, d);
    Poly b = divide_exact(fm, a);
    Poly c = divide_exact(d, a);
    Poly dd = c - b.derivative();
    while (b.degree() > 0) {
        Poly g = gcd(b, dd);
        out.push_back(g);
        b = divide_exact(b, g);
        c = divide_exact(dd, g);
        dd = c - b.derivative();
    }
    while (out.size() > 1 && out.back().degree() == 0) out.pop_back();
    return out;
}

}  // namespace rspb
