#pragma once

// Syzygies (U, V, W) with U F + V G + W H = 0 for a coprime triple.

#include "linalg.hpp"
#include "ratfunc.hpp"

#include <optional>

namespace rspb {

struct Triple {
    Poly F, G, H;
};

struct Syzygy {
    Poly U, V, W;

    const Poly& operator[](int i) const { return i == 0 ? U : i == 1 ? V : W; }
    Poly& operator[](int i) { return i == 0 ? U : i == 1 ? V : W; }

    bool is_zero() const { return U.is_zero() && V.is_zero() && W.is_zero(); }
    friend bool operator==(const Syzygy& a, const Syzygy& b) { return a.U == b.U && a.V == b.V && a.W == b.W; }
    friend Syzygy operator+(const Syzygy& a, const Syzygy& b) { return {a.U + b.U, a.V + b.V, a.W + b.W}; }
    friend Syzygy operator-(const Syzygy& a, const Syzygy& b) { return {a.U - b.U, a.V - b.V, a.W - b.W}; }
    friend Syzygy operator*(const Poly& m, const Syzygy& s) { return {m * s.U, m * s.V, m * s.W}; }
    friend Syzygy operator*(const ParamElem& m, const Syzygy& s) { return {m * s.U, m * s.V, m * s.W}; }
};

inline bool is_syzygy(const Syzygy& s, const Triple& t) { return (s.U * t.F + s.V * t.G + s.W * t.H).is_zero(); }

inline void require_syzygy(const Syzygy& s, const Triple& t) {
    if (!is_syzygy(s, t)) throw std::logic_error("U*F + V*G + W*H is not zero");
}

// Cross product (V1 W2 - V2 W1, U2 W1 - U1 W2, U1 V2 - U2 V1).
inline Syzygy cross(const Syzygy& a, const Syzygy& b) {
    return {a.V * b.W - b.V * a.W, b.U * a.W - a.U * b.W, a.U * b.V - b.U * a.V};
}

// The polynomial c with cross(a, b) = c (F, G, H).
inline Poly cross_multiplier(const Syzygy& a, const Syzygy& b, const Triple& t) {
    Syzygy c = cross(a, b);
    const Poly* comps[3] = {&t.F, &t.G, &t.H};
    int k = 0;
    while (k < 3 && comps[k]->is_zero()) ++k;
    if (k == 3) throw std::invalid_argument("cross_check: zero triple");
    Poly q, r;
    Poly::divmod(c[k], *comps[k], q, r);
    if (!r.is_zero()) throw std::logic_error("cross product is not a multiple of (F, G, H)");
    for (int i = 0; i < 3; ++i)
        if (!(c[i] - q * *comps[i]).is_zero()) throw std::logic_error("cross product is not proportional to (F, G, H)");
    return q;
}

// Constant c with cross(a, b) = c (F, G, H); a nonzero value certifies
// that a, b form a basis of the syzygy module.
inline ParamElem cross_check(const Syzygy& a, const Syzygy& b, const Triple& t) {
    require_syzygy(a, t);
    require_syzygy(b, t);
    Poly q = cross_multiplier(a, b, t);
    if (q.degree() > 0) throw std::domain_error("cross product is a non-constant multiple of (F, G, H)");
    return q.coeff(0);
}

// Weighted degree: max(deg U + deg F, deg V + deg G, deg W + deg H).
inline int weighted_degree(const Syzygy& s, const Triple& t) {
    int d = -1;
    const Poly* f[3] = {&t.F, &t.G, &t.H};
    for (int i = 0; i < 3; ++i)
        if (!s[i].is_zero()) d = std::max(d, s[i].degree() + f[i]->degree());
    return d;
}

namespace detail {

inline std::vector<ParamElem> leading_vector(const Syzygy& s, const Triple& t, int wd) {
    const Poly* f[3] = {&t.F, &t.G, &t.H};
    std::vector<ParamElem> v(3);
    for (int i = 0; i < 3; ++i) v[i] = s[i].coeff(wd - f[i]->degree());
    return v;
}

// a = c b for some c; returns c
inline std::optional<ParamElem> proportional(const std::vector<ParamElem>& a, const std::vector<ParamElem>& b) {
    int k = 0;
    while (k < 3 && b[k].is_zero()) ++k;
    if (k == 3) return std::nullopt;
    ParamElem c = a[k] / b[k];
    for (int i = 0; i < 3; ++i)
        if (a[i] != c * b[i]) return std::nullopt;
    return c;
}

}  // namespace detail

// Basis of the syzygy module from a Bezout identity for F/D, G/D with
// D = gcd(F, G), then reduced until the leading vectors are independent.
inline std::pair<Syzygy, Syzygy> syzygy_basis(const Triple& t) {
    if (t.F.is_zero() || t.G.is_zero() || t.H.is_zero()) throw std::invalid_argument("syzygy_basis: zero polynomial in triple");
    Poly D = gcd(t.F, t.G);
    Poly g3 = gcd(D, t.H);
    if (g3.degree() > 0) throw std::invalid_argument("syzygy_basis: common factor " + std::to_string(g3.degree()) + "-degree gcd");
    Poly F1 = divide_exact(t.F, D), G1 = divide_exact(t.G, D);
    // extended Euclid: a F1 + b G1 = 1
    Poly r0 = F1, r1 = G1, a0(1), a1, b0, b1(1);
    while (!r1.is_zero()) {
        Poly q, r;
        Poly::divmod(r0, r1, q, r);
        Poly a2 = a0 - q * a1, b2 = b0 - q * b1;
        r0 = std::move(r1);
        r1 = std::move(r);
        a0 = std::move(a1);
        a1 = std::move(a2);
        b0 = std::move(b1);
        b1 = std::move(b2);
    }
    if (r0.degree() != 0) throw std::logic_error("syzygy_basis: F/D and G/D not coprime");
    ParamElem inv = r0.coeff(0).inverse();
    Poly a = inv * a0, b = inv * b0;
    Syzygy s1{G1, -F1, Poly()};
    Syzygy s2{a * t.H, b * t.H, -D};

    for (;;) {
        int w1 = weighted_degree(s1, t), w2 = weighted_degree(s2, t);
        if (w1 > w2) {
            std::swap(s1, s2);
            std::swap(w1, w2);
        }
        auto c = detail::proportional(detail::leading_vector(s2, t, w2), detail::leading_vector(s1, t, w1));
        if (!c) break;
        s2 = s2 - Poly::monomial(*c, w2 - w1) * s1;
    }
    require_syzygy(s1, t);
    require_syzygy(s2, t);
    return {s1, s2};
}

// Coefficients a, b with s = a s1 + b s2 when s lies in the span.
inline std::optional<std::pair<Poly, Poly>> decompose(const Syzygy& s, const Syzygy& s1, const Syzygy& s2, const Triple& t) {
    ParamElem c = cross_check(s1, s2, t);
    if (c.is_zero()) throw std::invalid_argument("decompose: dependent basis");
    Poly a = c.inverse() * cross_multiplier(s, s2, t);
    Poly b = c.inverse() * cross_multiplier(s1, s, t);
    if (!(s - a * s1 - b * s2).is_zero()) return std::nullopt;
    return std::make_pair(a, b);
}

// ---------------------------------------------------------------------------
// Degree specifications

enum class Row { Upper, Lower };

inline const char* to_string(Row r) { return r == Row::Upper ? "upper" : "lower"; }

inline Row parse_row(const std::string& s) {
    if (s == "upper") return Row::Upper;
    if (s == "lower") return Row::Lower;
    throw std::invalid_argument("row must be upper or lower, got '" + s + "'");
}

struct DegreeBound {
    enum Kind { Exact, Less } kind = Less;
    int value = 0;

    int max_degree() const { return kind == Exact ? value : value - 1; }
    bool admits(const Poly& p) const {
        if (kind == Exact) return value < 0 ? p.is_zero() : p.degree() == value;
        return p.degree() < value;
    }
    friend bool operator==(const DegreeBound& a, const DegreeBound& b) { return a.kind == b.kind && a.value == b.value; }
};

inline std::string to_string(const DegreeBound& b) {
    return (b.kind == DegreeBound::Exact ? "= " : "< ") + std::to_string(b.value);
}

struct DegreeSpec {
    DegreeBound bound[3];  // for U, V, W
    int delta = 0;
    int Delta = 0;
    int k = 0;
    Row row = Row::Lower;
};

// Bounds for the lower row and the upper row of the Schlesinger matrix.
// k is the pole order of the covering at x = inf.
inline DegreeSpec degree_spec(const Triple& t, int delta, int k, Row row) {
    DegreeSpec s;
    s.delta = delta;
    s.k = k;
    s.row = row;
    s.Delta = t.F.degree() + t.G.degree() + t.H.degree();
    if (delta < 0) throw std::invalid_argument("degree_spec: delta must be non-negative");
    if ((s.Delta + delta) % 2 != 0)
        throw std::invalid_argument("degree_spec: Delta + delta must be even (Delta = " + std::to_string(s.Delta) + ")");
    if (delta > std::max(2, k))
        throw std::invalid_argument("degree_spec: delta > max(2, k) needs extra constraints; not automated");
    int deg[3] = {t.F.degree(), t.G.degree(), t.H.degree()};
    using K = DegreeBound;
    int half = s.Delta / 2;
    int hi = (s.Delta + delta) / 2, lo = (s.Delta - delta) / 2;
    if (row == Row::Lower) {
        if (delta == 0) {
            s.bound[0] = {K::Exact, half - deg[0]};
            s.bound[1] = {K::Exact, half - deg[1]};
            s.bound[2] = {K::Less, half - deg[2]};
        } else {
            s.bound[0] = {K::Less, hi - deg[0]};
            s.bound[1] = {K::Less, hi - deg[1]};
            s.bound[2] = {K::Exact, lo - deg[2]};
        }
    } else {
        if (delta == 0) {
            for (int i = 0; i < 3; ++i) s.bound[i] = {K::Exact, half - deg[i]};
        } else {
            if (delta >= k) throw std::invalid_argument("degree_spec: upper row with delta > 0 needs delta < k");
            s.bound[0] = {K::Exact, hi - deg[0]};
            s.bound[1] = {K::Exact, hi - deg[1]};
            s.bound[2] = {K::Less, lo - deg[2]};
        }
    }
    return s;
}

// Coefficient of x^degree in cU U + cV V + cW W vanishes.
struct LinearConstraint {
    Poly c[3];
    int degree = 0;
};

// Upper row with delta = 0: the top coefficient of the numerator of the
// upper-left Schlesinger entry, 2 e_inf F U + (e1 - e0 + e_inf) H W, must
// vanish. Exponents are (e0, e1, e_inf) for (F, G, H).
inline LinearConstraint upper_row_constraint(const Triple& t, const Rational e[3]) {
    int Delta = t.F.degree() + t.G.degree() + t.H.degree();
    LinearConstraint c;
    c.c[0] = ParamElem(Rational(2 * e[2])) * t.F;
    c.c[1] = Poly();
    c.c[2] = ParamElem(Rational(e[1] - e[0] + e[2])) * t.H;
    c.degree = Delta / 2;
    return c;
}

// The printed variant for the inverted twelve-sheeted covering:
// deg(17 U F + 7 V G) < 6.
inline LinearConstraint printed_upper_constraint(const Triple& t) {
    LinearConstraint c;
    c.c[0] = ParamElem(17) * t.F;
    c.c[1] = ParamElem(7) * t.G;
    c.c[2] = Poly();
    c.degree = 6;
    return c;
}

struct SyzygySolveError : std::runtime_error {
    int dimension;
    SyzygySolveError(const std::string& m, int dim) : std::runtime_error(m), dimension(dim) {}
};

// Undetermined coefficients: unknowns are the coefficients of U, V, W up
// to the bounds, equations are the coefficients of U F + V G + W H and the
// extra constraints.
inline std::vector<Syzygy> syzygy_space(const Triple& t, const int maxdeg[3], const std::vector<LinearConstraint>& extra = {}) {
    const Poly* f[3] = {&t.F, &t.G, &t.H};
    int offset[4] = {0, 0, 0, 0};
    for (int i = 0; i < 3; ++i) offset[i + 1] = offset[i] + std::max(0, maxdeg[i] + 1);
    size_t n = offset[3];
    if (n == 0) return {};
    int top = -1;
    for (int i = 0; i < 3; ++i)
        if (maxdeg[i] >= 0) top = std::max(top, maxdeg[i] + f[i]->degree());
    Matrix a;
    for (int j = 0; j <= top; ++j) {
        std::vector<ParamElem> row(n);
        bool any = false;
        for (int i = 0; i < 3; ++i)
            for (int d = 0; d <= maxdeg[i]; ++d) {
                ParamElem c = f[i]->coeff(j - d);
                if (!c.is_zero()) {
                    row[offset[i] + d] = c;
                    any = true;
                }
            }
        if (any) a.push_back(std::move(row));
    }
    for (const auto& lc : extra) {
        std::vector<ParamElem> row(n);
        bool any = false;
        for (int i = 0; i < 3; ++i)
            for (int d = 0; d <= maxdeg[i]; ++d) {
                ParamElem c = lc.c[i].coeff(lc.degree - d);
                if (!c.is_zero()) {
                    row[offset[i] + d] = c;
                    any = true;
                }
            }
        if (any) a.push_back(std::move(row));
    }
    std::vector<Syzygy> out;
    for (const auto& v : nullspace(a, n)) {
        Syzygy s;
        for (int i = 0; i < 3; ++i) {
            std::vector<ParamElem> c(v.begin() + offset[i], v.begin() + offset[i + 1]);
            s[i] = Poly(std::move(c));
        }
        out.push_back(s);
    }
    return out;
}

// Scale so that W has the given leading coefficient (W monic by default;
// falls back to V, then U, when W vanishes).
inline Syzygy normalize_syzygy(const Syzygy& s, const std::optional<ParamElem>& wlead = std::nullopt) {
    for (int i = 2; i >= 0; --i) {
        if (s[i].is_zero()) continue;
        ParamElem target = (i == 2 && wlead) ? *wlead : ParamElem(1);
        return (target / s[i].leading()) * s;
    }
    return s;
}

inline Syzygy syzygy_with_degrees(const Triple& t, const DegreeSpec& spec, const std::vector<LinearConstraint>& extra = {},
                                  const std::optional<ParamElem>& wlead = std::nullopt) {
    int maxdeg[3];
    for (int i = 0; i < 3; ++i) maxdeg[i] = spec.bound[i].max_degree();
    auto space = syzygy_space(t, maxdeg, extra);
    if (space.empty()) throw SyzygySolveError("no syzygy satisfies the degree bounds", 0);
    if (space.size() > 1)
        throw SyzygySolveError("syzygies meeting the bounds form a space of dimension " + std::to_string(space.size()),
                               static_cast<int>(space.size()));
    Syzygy s = space[0];
    for (int i = 0; i < 3; ++i)
        if (!spec.bound[i].admits(s[i]))
            throw SyzygySolveError(std::string("component ") + "UVW"[i] + " has degree " + std::to_string(s[i].degree()) +
                                       ", bound " + to_string(spec.bound[i]),
                                   1);
    require_syzygy(s, t);
    return normalize_syzygy(s, wlead);
}

}  // namespace rspb
