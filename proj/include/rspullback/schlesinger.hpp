#pragma once

// 2x2 traceless Fuchsian systems, the matrix hypergeometric system and
// RS-pullbacks by a covering and a Schlesinger transformation.

#include "expr.hpp"
#include "records.hpp"
#include "syzygy.hpp"

#include <optional>

namespace rspb {

struct ExponentTriple {
    Rational e0, e1, einf;

    Rational f0() const { return (e1 - e0 + einf) / 2; }
    Rational f1() const { return (e0 - e1 + einf) / 2; }
    Rational finf() const { return (e0 + e1 - einf) / 2; }
    Rational h() const {
        Rational d = (e0 + e1 - einf) * (e0 - e1 + einf) * (e0 - e1 - einf);
        if (sgn(d) == 0) throw std::domain_error("exponent triple has e0 +- e1 +- einf = 0");
        return 2 * einf / d;
    }
    const Rational& operator[](int i) const { return i == 0 ? e0 : i == 1 ? e1 : einf; }
};

inline ExponentTriple parse_exponents(const std::string& text) {
    auto parts = split(text, ',');
    if (parts.size() != 3) throw std::invalid_argument("exponents need three values e0,e1,einf");
    ExponentTriple e;
    Rational* out[3] = {&e.e0, &e.e1, &e.einf};
    for (int i = 0; i < 3; ++i) {
        ParamElem v = parse_elem(parts[i], ExprContext{});
        if (!v.is_rational()) throw std::invalid_argument("exponent '" + parts[i] + "' is not a rational number");
        *out[i] = v.as_rational();
    }
    return e;
}

inline std::string to_string(const ExponentTriple& e) {
    return e.e0.get_str() + "," + e.e1.get_str() + "," + e.einf.get_str();
}

struct FuchsianSystem {
    RatFunc m[2][2];

    RatFunc trace() const { return m[0][0] + m[1][1]; }
    bool traceless() const { return trace().is_zero(); }
    friend bool operator==(const FuchsianSystem& a, const FuchsianSystem& b) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (a.m[i][j] != b.m[i][j]) return false;
        return true;
    }
};

// d/dz Psi = M(z) Psi with exponent differences e0, e1, einf at 0, 1, inf.
inline FuchsianSystem hypergeometric_system(const ExponentTriple& e) {
    if (sgn(e.einf) == 0) throw std::domain_error("hypergeometric_system: einf = 0");
    const Rational &a = e.e0, &b = e.e1, &c = e.einf;
    Poly z = Poly::x();
    Poly den = ParamElem(Rational(4 * c)) * z * (Poly(1) - z);
    auto lin = [&](const Rational& c0, const Rational& c1) { return Poly(c0) + ParamElem(c1) * z; };
    FuchsianSystem s;
    s.m[0][0] = RatFunc(lin(a * a - b * b + c * c, -2 * c * c), den);
    s.m[0][1] = RatFunc(lin(c * c - (a + b) * (a + b), 0), den);
    s.m[1][0] = RatFunc(lin((a - b) * (a - b) - c * c, 0), den);
    s.m[1][1] = RatFunc(lin(-a * a + b * b - c * c, 2 * c * c), den);
    return s;
}

// phi'(x) M(phi(x))
inline FuchsianSystem direct_pullback(const FuchsianSystem& M, const RatFunc& phi) {
    RatFunc dphi = phi.derivative();
    FuchsianSystem r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.m[i][j] = dphi * compose(M.m[i][j], phi);
    return r;
}

// Inverse Schlesinger matrix N with det N = K = F G H.
struct SchlesingerMatrix {
    Poly N[2][2];
    Poly K;

    Poly det() const { return N[0][0] * N[1][1] - N[0][1] * N[1][0]; }
};

// A, B from the upper syzygy and C, D from the lower one; the lower row is
// divided by det/K.
inline SchlesingerMatrix build_inverse_schlesinger(const Syzygy& upper, const Syzygy& lower, const ExponentTriple& e,
                                                   const Triple& t) {
    require_syzygy(upper, t);
    require_syzygy(lower, t);
    Rational sA = e.e0 + e.e1 - e.einf;
    Rational sB = (e.e0 - e.e1) * (e.e0 - e.e1) - e.einf * e.einf;
    if (sgn(sA) == 0 || sgn(sB) == 0) throw std::domain_error("build_inverse_schlesinger: degenerate exponents");
    auto first = [&](const Syzygy& s) { return ParamElem(Rational(1 / sA)) * (t.H * s.W); };
    auto second = [&](const Syzygy& s) {
        return ParamElem(Rational(1 / sB)) *
               (ParamElem(Rational(2 * e.einf)) * t.F * s.U + ParamElem(Rational(e.e1 - e.e0 + e.einf)) * t.H * s.W);
    };
    SchlesingerMatrix S;
    S.K = t.F * t.G * t.H;
    S.N[0][0] = first(upper);
    S.N[0][1] = second(upper);
    S.N[1][0] = first(lower);
    S.N[1][1] = second(lower);
    Poly q, r;
    Poly::divmod(S.det(), S.K, q, r);
    if (!r.is_zero() || q.degree() != 0) throw std::logic_error("det N is not a constant multiple of F G H");
    ParamElem c = q.coeff(0).inverse();
    S.N[1][0] = c * S.N[1][0];
    S.N[1][1] = c * S.N[1][1];
    return S;
}

// M~ = phi' N M(phi) adj(N)/K - N adj(N)'/K + K'/(2K) I.
inline FuchsianSystem rs_pullback(const FuchsianSystem& M, const RatFunc& phi, const SchlesingerMatrix& S) {
    if (S.det() != S.K) throw std::invalid_argument("rs_pullback: det N must equal K");
    FuchsianSystem P = direct_pullback(M, phi);
    const Poly(&N)[2][2] = S.N;
    Poly adj[2][2] = {{N[1][1], -N[0][1]}, {-N[1][0], N[0][0]}};
    RatFunc invK = RatFunc(Poly(1), S.K);
    RatFunc half_log = ParamElem(Rational(1, 2)) * RatFunc(S.K.derivative(), S.K);
    // N M(phi) phi'
    RatFunc NM[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) NM[i][j] = RatFunc(N[i][0]) * P.m[0][j] + RatFunc(N[i][1]) * P.m[1][j];
    FuchsianSystem r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            RatFunc conj = NM[i][0] * RatFunc(adj[0][j]) + NM[i][1] * RatFunc(adj[1][j]);
            Poly corr = N[i][0] * adj[0][j].derivative() + N[i][1] * adj[1][j].derivative();
            RatFunc e = (conj - RatFunc(corr)) * invK;
            if (i == j) e += half_log;
            r.m[i][j] = e;
        }
    if (!r.traceless()) throw std::logic_error("rs_pullback: trace does not vanish");
    return r;
}

// ---------------------------------------------------------------------------
// Residues and local exponent differences

// a^{-1} mod f
inline Poly inverse_mod(const Poly& a, const Poly& f) {
    Poly r0 = f, r1 = a % f, s0, s1(1);
    while (!r1.is_zero()) {
        Poly q, r;
        Poly::divmod(r0, r1, q, r);
        Poly s2 = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.degree() != 0) throw std::domain_error("inverse_mod: not invertible");
    return r0.coeff(0).inverse() * s0;
}

// Residue of n/d at the roots of the square-free factor f, as a
// polynomial mod f.
inline Poly residue_mod(const RatFunc& e, const Poly& f) {
    if (e.is_zero()) return Poly();
    Poly g, r;
    Poly::divmod(e.den(), f, g, r);
    if (!r.is_zero()) {
        if (gcd(e.den(), f).degree() > 0) throw std::domain_error("residue_mod: factor partially divides denominator");
        return Poly();
    }
    if (gcd(g, f).degree() > 0) throw std::domain_error("residue_mod: pole of order > 1");
    return (e.num() * inverse_mod((g * f.derivative()) % f, f)) % f;
}

// lim x e(x) as x -> inf
inline ParamElem limit_x_times(const RatFunc& e) {
    if (e.is_zero()) return ParamElem();
    int d = e.num().degree() - e.den().degree();
    if (d > -1) throw std::domain_error("limit_x_times: pole of order > 1 at infinity");
    return d == -1 ? e.num().leading() / e.den().leading() : ParamElem();
}

inline std::optional<Rational> rational_sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    Integer n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Rational(rn, rd);
}

struct SingularPoint {
    Poly factor;              // roots of this square-free factor; unused at infinity
    bool at_infinity = false;
    Poly difference_squared;  // mod factor; constant when all roots agree
    std::optional<Rational> difference;
    bool apparent = false;

    int point_count() const { return at_infinity ? 1 : factor.degree(); }
};

// Squared exponent difference 4 (R11^2 + R12 R21) of the residue at the
// roots of f.
inline Poly difference_squared(const FuchsianSystem& M, const Poly& f) {
    Poly R[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) R[i][j] = residue_mod(M.m[i][j], f);
    return (ParamElem(4) * (R[0][0] * R[0][0] + R[0][1] * R[1][0])) % f;
}

inline ParamElem difference_squared_at_infinity(const FuchsianSystem& M) {
    ParamElem r11 = limit_x_times(M.m[0][0]), r12 = limit_x_times(M.m[0][1]), r21 = limit_x_times(M.m[1][0]);
    return ParamElem(4) * (r11 * r11 + r12 * r21);
}

namespace detail {

inline void classify(SingularPoint& sp) {
    if (sp.difference_squared.degree() > 0) return;
    ParamElem c = sp.difference_squared.coeff(0);
    if (!c.is_rational()) return;
    sp.difference = rational_sqrt(c.as_rational());
    sp.apparent = sp.difference && sgn(*sp.difference) != 0 && sp.difference->get_den() == 1;
}

}  // namespace detail

// Poles of M, grouped by square-free factors of the common denominator and
// refined by the hint polynomials, with their exponent differences. A pole
// is flagged apparent when its difference is a nonzero integer.
inline std::vector<SingularPoint> singularity_report(const FuchsianSystem& M, const std::vector<Poly>& hints = {}) {
    Poly L(1);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const Poly& d = M.m[i][j].den();
            if (d.degree() > 0) L = divide_exact(L * d, gcd(L, d));
        }
    auto sqf = squarefree_decomposition(L);
    if (sqf.size() > 2) throw std::domain_error("singularity_report: system is not Fuchsian (pole of order > 1)");
    std::vector<Poly> pieces;
    if (sqf.size() == 2 && sqf[1].degree() > 0) pieces.push_back(sqf[1]);
    for (const Poly& h : hints) {
        if (h.degree() <= 0) continue;
        std::vector<Poly> next;
        for (const Poly& p : pieces) {
            Poly g = gcd(p, h);
            if (g.degree() > 0 && g.degree() < p.degree()) {
                next.push_back(g);
                next.push_back(divide_exact(p, g).monic());
            } else {
                next.push_back(p);
            }
        }
        pieces = std::move(next);
    }
    std::vector<SingularPoint> out;
    for (const Poly& p : pieces) {
        SingularPoint sp;
        sp.factor = p.monic();
        sp.difference_squared = difference_squared(M, sp.factor);
        detail::classify(sp);
        out.push_back(sp);
    }
    SingularPoint inf;
    inf.at_infinity = true;
    inf.difference_squared = Poly(difference_squared_at_infinity(M));
    bool regular = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) regular = regular && (M.m[i][j].is_zero() || M.m[i][j].num().degree() < M.m[i][j].den().degree() - 1);
    if (!regular) {
        detail::classify(inf);
        out.push_back(inf);
    }
    return out;
}

inline int essential_count(const std::vector<SingularPoint>& report) {
    int n = 0;
    for (const auto& sp : report)
        if (!sp.apparent) n += sp.point_count();
    return n;
}

}  // namespace rspb
