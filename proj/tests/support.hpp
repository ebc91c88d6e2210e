#pragma once

// Random instances, a brute-force syzygy oracle and the property checks
// shared by the unit tests and the acceptance runner.

#include "rspullback/reproduce.hpp"

#include <random>

namespace rspb::testing {

class Random {
public:
    explicit Random(unsigned seed) : rng_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    Rational rational(int bound = 5) {
        int den = integer(1, 3);
        return Rational(integer(-bound, bound)) / den;
    }

    // small element of Q(p): rational or linear in p
    ParamElem elem(bool with_param) {
        ParamElem c(rational());
        if (with_param && integer(0, 2) == 0) c += ParamElem(rational()) * ParamElem::param();
        return c;
    }

    ParamElem nonzero_elem(bool with_param) {
        for (;;) {
            ParamElem c = elem(with_param);
            if (!c.is_zero()) return c;
        }
    }

    Poly poly(int degree, bool with_param = false) {
        std::vector<ParamElem> c;
        for (int i = 0; i < degree; ++i) c.push_back(elem(with_param));
        c.push_back(nonzero_elem(with_param));
        return Poly(c);
    }

    Poly poly_upto(int max_degree, bool with_param = false) { return poly(integer(0, max_degree), with_param); }

    RatFunc ratfunc(int max_degree, bool with_param = false) {
        return RatFunc(poly_upto(max_degree, with_param), poly_upto(max_degree, with_param));
    }

    // coprime triple of nonzero polynomials with max degree at least one
    Triple coprime_triple(int max_degree, bool with_param = false) {
        for (;;) {
            Triple t{poly_upto(max_degree, with_param), poly_upto(max_degree, with_param), poly_upto(max_degree, with_param)};
            if (std::max({t.F.degree(), t.G.degree(), t.H.degree()}) < 1) continue;
            if (gcd(gcd(t.F, t.G), t.H).degree() == 0) return t;
        }
    }

private:
    std::mt19937 rng_;
};

// ---------------------------------------------------------------------------
// Brute-force oracle: all syzygies with deg U, V, W <= d, by plain Gauss-Jordan
// elimination over Q on the coefficient equations of U F + V G + W H.

inline std::vector<Syzygy> brute_force_syzygies(const Triple& t, int d) {
    const Poly* in[3] = {&t.F, &t.G, &t.H};
    int n = std::max({t.F.degree(), t.G.degree(), t.H.degree()});
    int unknowns = 3 * (d + 1), equations = n + d + 1;
    std::vector<std::vector<Rational>> a(equations, std::vector<Rational>(unknowns));
    for (int c = 0; c < 3; ++c)
        for (int j = 0; j <= d; ++j)
            for (int i = 0; i <= in[c]->degree(); ++i) a[i + j][c * (d + 1) + j] = in[c]->coeff(i).as_rational();
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < unknowns && row < equations; ++col) {
        int p = row;
        while (p < equations && a[p][col] == 0) ++p;
        if (p == equations) continue;
        std::swap(a[p], a[row]);
        Rational inv = 1 / a[row][col];
        for (auto& v : a[row]) v *= inv;
        for (int r = 0; r < equations; ++r) {
            if (r == row || a[r][col] == 0) continue;
            Rational f = a[r][col];
            for (int k = 0; k < unknowns; ++k) a[r][k] -= f * a[row][k];
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<Syzygy> out;
    for (int free = 0; free < unknowns; ++free) {
        if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) continue;
        std::vector<Rational> v(unknowns);
        v[free] = 1;
        for (size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -a[r][free];
        Syzygy s;
        for (int c = 0; c < 3; ++c) {
            std::vector<ParamElem> coeffs;
            for (int j = 0; j <= d; ++j) coeffs.push_back(ParamElem(v[c * (d + 1) + j]));
            s[c] = Poly(coeffs);
        }
        out.push_back(s);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Property checks. Each returns an empty string on success, otherwise the
// first failure.

inline std::string check_ring_axioms(int instances, unsigned seed) {
    Random r(seed);
    for (int i = 0; i < instances; ++i) {
        Poly a = r.poly_upto(4, true), b = r.poly_upto(4, true), c = r.poly_upto(4, true);
        if ((a + b) + c != a + (b + c)) return "Poly addition is not associative";
        if (a * (b + c) != a * b + a * c) return "Poly multiplication does not distribute";
        if (a * b != b * a) return "Poly multiplication is not commutative";
        RatFunc f = r.ratfunc(3, true), g = r.ratfunc(3, true), h = r.ratfunc(3, true);
        if ((f + g) + h != f + (g + h)) return "RatFunc addition is not associative";
        if (f * (g + h) != f * g + f * h) return "RatFunc multiplication does not distribute";
        if (canonicalize(canonicalize(f)) != canonicalize(f)) return "canonical form is not idempotent";
        if (!f.is_zero() && (f / f) != RatFunc(1)) return "f / f is not 1";
    }
    return "";
}

inline std::string check_gcd(int instances, unsigned seed) {
    Random r(seed);
    for (int i = 0; i < instances; ++i) {
        Poly g = r.poly_upto(3, true), a0 = r.poly_upto(4, true), b0 = r.poly_upto(4, true);
        Poly a = g * a0, b = g * b0;
        Poly d = poly_gcd(a, b);
        if (d.is_zero()) return "gcd of nonzero polynomials is zero";
        if (!d.divides(a) || !d.divides(b)) return "gcd does not divide its arguments";
        if (!d.divides(g)) return "common divisor does not divide the gcd";
        if (!d.divides(g * gcd(a0, b0))) return "gcd exceeds g * gcd(a0, b0)";
        if (d.degree() != (g * gcd(a0, b0)).degree()) return "gcd has the wrong degree";
    }
    return "";
}

inline std::string check_product_rule(int instances, unsigned seed) {
    Random r(seed);
    ExtensionPtr ext = make_extension(ParamPoly::variable() * ParamPoly::variable() + ParamPoly(Rational(3)), "w");
    for (int i = 0; i < instances; ++i) {
        RatFunc f = r.ratfunc(3, true), g = r.ratfunc(3, true);
        if ((f * g).derivative() != f.derivative() * g + f * g.derivative()) return "product rule fails in x";
        ParamElem a = r.elem(true) + r.elem(true) * ParamElem::w(ext), b = r.elem(true) + r.elem(true) * ParamElem::w(ext);
        if ((a * b).derivative() != a.derivative() * b + a * b.derivative()) return "product rule fails in the extension";
    }
    return "";
}

// Random syzygies from the oracle lie in the span of the computed basis, and
// random combinations of the basis are syzygies.
inline std::string check_syzygy_membership(int instances, unsigned seed) {
    Random r(seed);
    for (int i = 0; i < instances; ++i) {
        Triple t = r.coprime_triple(6);
        auto [s1, s2] = syzygy_basis(t);
        if (!is_syzygy(s1, t) || !is_syzygy(s2, t)) return "basis element is not a syzygy";
        Syzygy comb = r.poly_upto(3) * s1 + r.poly_upto(3) * s2;
        if (!is_syzygy(comb, t)) return "combination of basis elements is not a syzygy";
        int n = std::max({t.F.degree(), t.G.degree(), t.H.degree()});
        auto space = brute_force_syzygies(t, n);
        if (space.empty()) return "oracle found no syzygy of degree <= n";
        Syzygy z;
        for (const auto& s : space) z = z + Poly(r.rational()) * s;
        if (!is_syzygy(z, t)) return "oracle syzygy check failed";
        if (!decompose(z, s1, s2, t)) return "oracle syzygy is not in the span of the basis";
    }
    return "";
}

// cross(s1, s2) = c (F, G, H) with c a nonzero constant, antisymmetric in the
// pair; on homogeneous instances the basis degrees add up to n.
inline std::string check_hilbert_burch(int instances, unsigned seed) {
    Random r(seed);
    for (int i = 0; i < instances; ++i) {
        Triple t = r.coprime_triple(6);
        auto [s1, s2] = syzygy_basis(t);
        ParamElem c12 = cross_check(s1, s2, t), c21 = cross_check(s2, s1, t);
        if (c12.is_zero()) return "cross product vanishes";
        if (c21 != -c12) return "cross_check is not antisymmetric";
        Syzygy x = cross(s1, s2);
        if (x.U != c12 * t.F || x.V != c12 * t.G || x.W != c12 * t.H) return "cross product is not c (F, G, H)";
        if (t.F.degree() == t.G.degree() && t.G.degree() == t.H.degree()) {
            int n = t.F.degree();
            if (weighted_degree(s1, t) - n + weighted_degree(s2, t) - n != n) return "basis degrees do not add up to n";
        }
    }
    return "";
}

inline std::string check_homogeneous_degrees(int instances, unsigned seed) {
    Random r(seed);
    for (int i = 0; i < instances; ++i) {
        int n = r.integer(1, 6);
        Triple t;
        do {
            t = {r.poly(n), r.poly(n), r.poly(n)};
        } while (gcd(gcd(t.F, t.G), t.H).degree() > 0);
        auto [s1, s2] = syzygy_basis(t);
        auto deg = [](const Syzygy& s) { return std::max({s.U.degree(), s.V.degree(), s.W.degree()}); };
        if (deg(s1) + deg(s2) != n) return "deg s1 + deg s2 != n for a triple of common degree " + std::to_string(n);
    }
    return "";
}

// The rewritten forms agree with the direct expression on random coprime
// triples of degree <= 3 with a computed syzygy and a random map.
inline std::string check_alt_forms(int instances, unsigned seed) {
    Random r(seed);
    for (int i = 0; i < instances; ++i) {
        Triple t = r.coprime_triple(3);
        auto [s1, s2] = syzygy_basis(t);
        Syzygy s = s1 + r.poly_upto(1) * s2;
        RatFunc phi;
        do {
            phi = r.ratfunc(3);
        } while (phi.is_constant());
        ExponentTriple e;
        do {
            e = {r.rational(3), r.rational(3), r.rational(3)};
        } while (e.e0 == 0 || e.e1 == 0 || e.einf == 0);
        AltFormsResult res = alt_forms_check(phi, t, s, e);
        if (!res.all_equal) return "instance " + std::to_string(i) + ": form " + res.mismatches.front() + " differs";
    }
    return "";
}

}  // namespace rspb::testing
