#pragma once

// Almost Belyi coverings: ramification verification, the extra
// ramification point and proper normalization.

#include "expr.hpp"
#include "records.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace rspb {

enum Fiber { kZero = 0, kOne = 1, kInf = 2 };

inline const char* fiber_name(int f) {
    static const char* names[] = {"z=0", "z=1", "z=inf"};
    return names[f];
}

struct RamificationPattern {
    std::vector<int> parts[3];

    int degree() const { return std::accumulate(parts[0].begin(), parts[0].end(), 0); }
    int part_count() const { return static_cast<int>(parts[0].size() + parts[1].size() + parts[2].size()); }
    void sort() {
        for (auto& p : parts) std::sort(p.rbegin(), p.rend());
    }
    friend bool operator==(const RamificationPattern& a, const RamificationPattern& b) {
        return a.parts[0] == b.parts[0] && a.parts[1] == b.parts[1] && a.parts[2] == b.parts[2];
    }
};

inline std::string to_string(const std::vector<int>& partition) {
    std::string s;
    for (size_t i = 0; i < partition.size(); ++i) s += (i ? "+" : "") + std::to_string(partition[i]);
    return s.empty() ? "-" : s;
}

inline std::string to_string(const RamificationPattern& p) {
    return to_string(p.parts[0]) + " | " + to_string(p.parts[1]) + " | " + to_string(p.parts[2]);
}

inline RamificationPattern parse_pattern(const std::string& text) {
    auto fibers = split(text, '|');
    if (fibers.size() != 3) throw std::invalid_argument("pattern needs three fibers separated by '|'");
    RamificationPattern p;
    for (int f = 0; f < 3; ++f)
        for (const auto& s : split(fibers[f], '+')) p.parts[f].push_back(std::stoi(s));
    p.sort();
    return p;
}

// Points of one fiber: the roots of `poly`, each of ramification `order`.
// A factor with `at_infinity` set stands for the single point x = inf.
struct FiberFactor {
    std::string name;
    Poly poly;
    int order = 1;
    int fiber = kZero;
    bool at_infinity = false;

    int point_count() const { return at_infinity ? 1 : poly.degree(); }
};

struct CoveringSpec {
    std::string name;
    RatFunc map;
    RamificationPattern pattern;
    std::vector<FiberFactor> factors;
    std::string param = "p";
    ExtensionPtr ext;
    std::map<std::string, Poly> named;  // F, G, P polynomials by name
    std::map<std::string, std::string> attributes;  // other keys, unparsed

    ExprContext context() const {
        ExprContext ctx;
        ctx.param = param;
        ctx.ext = ext;
        for (const auto& kv : named) ctx.bindings[kv.first] = Value(kv.second);
        return ctx;
    }

    const Poly& poly(const std::string& n) const {
        auto it = named.find(n);
        if (it == named.end()) throw std::out_of_range("covering " + name + " has no polynomial " + n);
        return it->second;
    }
    int degree() const { return std::max(map.num().degree(), map.den().degree()); }
};

struct FiberProfile {
    std::vector<int> expected;
    std::vector<int> actual;
    bool ok() const { return expected == actual; }
};

struct RamificationReport {
    int degree = 0;
    FiberProfile fibers[3];
    int part_count = 0;
    bool almost_belyi = false;
    int riemann_hurwitz = 0;  // sum of (order - 1) including the extra point
    Poly extra_factor;        // residual factor of the numerator of phi'
    bool ok = false;
    std::vector<std::string> diagnostics;
};

namespace detail {

inline void add_points(std::vector<int>& out, const std::vector<Poly>& sqf) {
    for (size_t m = 1; m < sqf.size(); ++m)
        for (int i = 0; i < sqf[m].degree(); ++i) out.push_back(static_cast<int>(m));
}

inline Poly product_of_powers(const std::vector<Poly>& sqf, int shift) {
    Poly r(1);
    for (size_t m = 1; m < sqf.size(); ++m)
        if (static_cast<int>(m) + shift > 0 && sqf[m].degree() > 0) r *= sqf[m].pow(static_cast<int>(m) + shift);
    return r;
}

}  // namespace detail

// Ramification data read off the map itself through square-free
// decompositions; the declared pattern is only compared at the end.
inline RamificationReport verify_almost_belyi(const CoveringSpec& c) {
    RamificationReport rep;
    const Poly& num = c.map.num();
    const Poly& den = c.map.den();
    int n = std::max(num.degree(), den.degree());
    if (n < 1) throw std::invalid_argument("verify_almost_belyi: constant map");
    rep.degree = n;

    Poly num1 = num - den;
    std::vector<Poly> sqf[3] = {squarefree_decomposition(num), squarefree_decomposition(num1),
                                squarefree_decomposition(den)};
    std::vector<int> actual[3];
    for (int f = 0; f < 3; ++f) detail::add_points(actual[f], sqf[f]);

    // the point x = inf
    if (num.degree() > den.degree())
        actual[kInf].push_back(num.degree() - den.degree());
    else if (num.degree() < den.degree())
        actual[kZero].push_back(den.degree() - num.degree());
    else if (num1.degree() < n)
        actual[kOne].push_back(n - num1.degree());

    int ram = 0;
    for (int f = 0; f < 3; ++f) {
        std::sort(actual[f].rbegin(), actual[f].rend());
        rep.fibers[f].actual = actual[f];
        rep.fibers[f].expected = c.pattern.parts[f];
        rep.part_count += static_cast<int>(actual[f].size());
        for (int o : actual[f]) ram += o - 1;
        if (!rep.fibers[f].ok())
            rep.diagnostics.push_back(std::string("fiber ") + fiber_name(f) + ": expected " + to_string(rep.fibers[f].expected) +
                                      ", actual " + to_string(rep.fibers[f].actual));
    }

    // numerator of phi' with the fiber contributions removed
    Poly dphi = num.derivative() * den - num * den.derivative();
    Poly fiber_part = detail::product_of_powers(sqf[0], -1) * detail::product_of_powers(sqf[1], -1) *
                      detail::product_of_powers(sqf[2], -1);
    Poly q, r;
    Poly::divmod(dphi, fiber_part, q, r);
    if (!r.is_zero()) throw std::logic_error("verify_almost_belyi: fiber factors do not divide phi'");
    rep.extra_factor = q.monic();
    // a critical point at infinity outside the fibers shows up as a
    // degree deficit; the fixtures never need it
    rep.riemann_hurwitz = ram + rep.extra_factor.degree();
    int expected_rh = 2 * n - 2;
    if (rep.riemann_hurwitz < expected_rh && rep.extra_factor.degree() == 0) rep.riemann_hurwitz = expected_rh;

    rep.almost_belyi = rep.part_count == n + 3 && rep.extra_factor.degree() == 1 && rep.riemann_hurwitz == expected_rh;
    if (rep.part_count != n + 3)
        rep.diagnostics.push_back("not almost Belyi: " + std::to_string(rep.part_count) + " points above {0,1,inf}, expected " +
                                  std::to_string(n + 3));
    else if (rep.extra_factor.degree() != 1)
        rep.diagnostics.push_back("not almost Belyi: residual critical factor has degree " +
                                  std::to_string(rep.extra_factor.degree()));
    if (rep.riemann_hurwitz != expected_rh)
        rep.diagnostics.push_back("Riemann-Hurwitz count " + std::to_string(rep.riemann_hurwitz) + " != " +
                                  std::to_string(expected_rh));
    rep.ok = rep.almost_belyi && rep.fibers[0].ok() && rep.fibers[1].ok() && rep.fibers[2].ok();
    return rep;
}

// Checks phi = c * prod(fiber0)/prod(fiberinf) and phi - 1 = c' *
// prod(fiber1)/prod(fiberinf) for the declared factors; returns a
// diagnostic or an empty string.
inline std::string check_factorization(const CoveringSpec& c) {
    Poly f[3] = {Poly(1), Poly(1), Poly(1)};
    for (const auto& ff : c.factors)
        if (!ff.at_infinity) f[ff.fiber] *= ff.poly.pow(ff.order);
    auto proportional = [](const RatFunc& a, const RatFunc& b) {
        RatFunc q = a / b;
        return q.is_constant() && !q.is_zero();
    };
    if (!proportional(c.map, RatFunc(f[0], f[2]))) return "map is not proportional to fiber0/fiberinf";
    if (!proportional(c.map - RatFunc(1), RatFunc(f[1], f[2]))) return "map - 1 is not proportional to fiber1/fiberinf";
    return "";
}

// Root of the residual factor of phi' after dividing out the declared
// fiber factors (exact divisions only).
inline ProjPoint extra_ramification_point(const CoveringSpec& c) {
    const Poly& num = c.map.num();
    const Poly& den = c.map.den();
    Poly dphi = num.derivative() * den - num * den.derivative();
    Poly fiber_part(1);
    for (const auto& ff : c.factors)
        if (!ff.at_infinity && ff.order > 1) fiber_part *= ff.poly.pow(ff.order - 1);
    Poly q, r;
    Poly::divmod(dphi, fiber_part, q, r);
    if (!r.is_zero()) throw std::logic_error("extra_ramification_point: declared fiber factors do not divide phi'");
    if (q.degree() == 0) return ProjPoint::inf();
    if (q.degree() != 1)
        throw std::runtime_error("extra_ramification_point: residual factor has degree " + std::to_string(q.degree()) +
                                 " (covering not almost Belyi)");
    return ProjPoint::at(-q.coeff(0) / q.coeff(1));
}

// ---------------------------------------------------------------------------
// Normalization

enum Marked { kMarked0 = 0, kMarked1 = 1, kMarkedT = 2, kMarkedInf = 3 };

struct MarkedPoint {
    int fiber = kZero;
    int order = 0;
    std::string factor;
};

struct NormalizedCovering {
    CoveringSpec spec;         // map and fiber factors in the new coordinate
    ParamElem reparam;         // old parameter in terms of the new one
    Mobius mobius;             // old x = mobius(new x)
    ParamElem t;               // the fourth marked point
    MarkedPoint marked[4];     // x = 0, 1, t, inf
    ProjPoint extra;           // extra ramification point, new coordinate
    std::vector<FiberFactor> original;  // fiber factors in the old coordinate

    // an old-coordinate point, after reparametrization, in new coordinates
    ProjPoint to_new(const ParamElem& old_x) const {
        return apply(mobius.inverse(), ProjPoint::at(substitute_param(old_x, reparam)));
    }
};

struct NormalizationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Composite fiber factor in the new coordinate: finite part and the
// number of its points sent to x = inf.
struct ComposedFactor {
    Poly finite;
    int at_inf = 0;
};

inline ComposedFactor compose_factor(const FiberFactor& f, const ParamElem& reparam, const Mobius& m, bool identity_reparam) {
    Poly p = f.at_infinity ? Poly(1) : (identity_reparam ? f.poly : substitute_param(f.poly, reparam));
    int formal = f.at_infinity ? 1 : p.degree();
    Poly h = f.at_infinity ? Poly(std::vector<ParamElem>{m.d, m.c}) : compose_homogeneous(p, m, formal);
    return {h.monic(), formal - h.degree()};
}

// phi_hat(x) = phi(reparam)(m(x)); marks 0, 1, inf and finds t as the
// remaining point of the fiber factor that carries marked points.
inline NormalizedCovering normalize_covering(const CoveringSpec& c, const ParamElem& reparam, const Mobius& m,
                                             const std::string& new_param = "", const ExtensionPtr& ext = nullptr,
                                             const std::vector<int>& expected_orders = {}) {
    m.check();
    NormalizedCovering nc;
    nc.original = c.factors;
    nc.reparam = reparam;
    nc.mobius = m;
    bool identity = reparam == ParamElem::param();

    RatFunc mapp = identity ? c.map : RatFunc::coprime(substitute_param(c.map.num(), reparam), substitute_param(c.map.den(), reparam));
    nc.spec.name = c.name + "_normalized";
    nc.spec.map = compose_mobius(mapp, m);
    nc.spec.pattern = c.pattern;
    nc.spec.param = new_param.empty() ? c.param : new_param;
    nc.spec.ext = ext ? ext : c.ext;

    bool found[4] = {false, false, false, false};
    std::vector<ComposedFactor> composed;
    for (const auto& f : c.factors) composed.push_back(compose_factor(f, reparam, m, identity));

    ParamElem zero(0), one(1);
    for (size_t i = 0; i < c.factors.size(); ++i) {
        const auto& f = c.factors[i];
        const auto& cf = composed[i];
        auto mark = [&](int which) {
            if (found[which]) throw NormalizationError("marked point found twice");
            found[which] = true;
            nc.marked[which] = {f.fiber, f.order, f.name};
        };
        if (cf.finite.degree() > 0 && cf.finite.evaluate(zero).is_zero()) mark(kMarked0);
        if (cf.finite.degree() > 0 && cf.finite.evaluate(one).is_zero()) mark(kMarked1);
        if (cf.at_inf > 0) mark(kMarkedInf);
    }
    const char* labels[] = {"x=0", "x=1", "x=t", "x=inf"};
    for (int k : {kMarked0, kMarked1, kMarkedInf})
        if (!found[k]) throw NormalizationError(std::string("marked point ") + labels[k] + " does not lie above {0,1,inf}");

    // t: the linear remainder of a factor that already carries marked points
    int candidates = 0;
    for (size_t i = 0; i < c.factors.size(); ++i) {
        const auto& f = c.factors[i];
        Poly rest = composed[i].finite;
        bool carries = composed[i].at_inf > 0;
        for (const ParamElem& pt : {zero, one}) {
            if (rest.degree() > 0 && rest.evaluate(pt).is_zero()) {
                rest = divide_exact(rest, Poly(std::vector<ParamElem>{-pt, ParamElem(1)}));
                carries = true;
            }
        }
        if (carries && rest.degree() == 1) {
            ++candidates;
            nc.t = -rest.coeff(0) / rest.coeff(1);
            nc.marked[kMarkedT] = {f.fiber, f.order, f.name};
        }
    }
    if (candidates != 1)
        throw NormalizationError("cannot identify the point x=t (" + std::to_string(candidates) + " candidates)");

    if (!expected_orders.empty()) {
        for (int k = 0; k < 4; ++k)
            if (nc.marked[k].order != expected_orders[k])
                throw NormalizationError(std::string("marked point ") + labels[k] + " has ramification order " +
                                         std::to_string(nc.marked[k].order) + ", expected " +
                                         std::to_string(expected_orders[k]));
    }

    // fiber factors of the normalized map
    for (size_t i = 0; i < c.factors.size(); ++i) {
        const auto& f = c.factors[i];
        if (composed[i].finite.degree() > 0) nc.spec.factors.push_back({f.name, composed[i].finite, f.order, f.fiber, false});
        if (composed[i].at_inf > 0) nc.spec.factors.push_back({f.name + "@inf", Poly(1), f.order, f.fiber, true});
    }
    for (const auto& kv : c.named) nc.spec.named[kv.first] = identity ? kv.second : substitute_param(kv.second, reparam);

    ProjPoint extra_old = extra_ramification_point(c);
    if (extra_old.infinite)
        nc.extra = apply(m.inverse(), extra_old);
    else
        nc.extra = nc.to_new(extra_old.value);
    return nc;
}

// ---------------------------------------------------------------------------
// Loading coverings from records

inline CoveringSpec covering_from_record(const Record& r) {
    CoveringSpec c;
    c.name = r.name;
    c.param = r.get_or("param", "p");
    ExprContext ctx;
    ctx.param = c.param;
    for (const auto& [key, value] : r.entries) {
        if (key == "param" || key == "pattern" || key == "map" || key.rfind("fiber", 0) == 0) continue;
        if (key == "map1" || key == "extra" || key == "kind") {
            c.attributes[key] = value;
            continue;
        }
        c.named[key] = parse_poly(value, ctx);
        ctx.bindings[key] = Value(c.named[key]);
    }
    c.map = parse_ratfunc(r.get("map"), ctx);
    c.pattern = parse_pattern(r.get("pattern"));
    const char* keys[] = {"fiber0", "fiber1", "fiberinf"};
    for (int f = 0; f < 3; ++f) {
        if (!r.has(keys[f])) continue;
        for (const auto& item : split(r.get(keys[f]), ',')) {
            auto colon = item.rfind(':');
            if (colon == std::string::npos) throw std::invalid_argument("fiber entry needs name:order, got '" + item + "'");
            std::string nm = detail::trim(item.substr(0, colon));
            int order = std::stoi(item.substr(colon + 1));
            FiberFactor ff;
            ff.name = nm;
            ff.order = order;
            ff.fiber = f;
            if (nm == "inf") {
                ff.at_infinity = true;
                ff.poly = Poly(1);
            } else {
                ff.poly = parse_poly(nm, ctx).monic();
            }
            c.factors.push_back(ff);
        }
    }
    return c;
}

// The covering phi(1/x): every named polynomial is replaced by its
// reciprocal (named with suffix `t`), x and inf trade places.
inline CoveringSpec invert_covering(const CoveringSpec& c, const std::string& suffix = "t") {
    CoveringSpec r;
    r.name = c.name + "-tilde";
    r.param = c.param;
    r.ext = c.ext;
    r.pattern = c.pattern;
    Mobius inv{ParamElem(0), ParamElem(1), ParamElem(1), ParamElem(0)};
    r.map = compose_mobius(c.map, inv);
    for (const auto& kv : c.named) r.named[kv.first + suffix] = kv.second.invert_x(kv.second.degree());
    for (const auto& f : c.factors) {
        FiberFactor g = f;
        if (f.at_infinity) {
            g.name = "x";
            g.poly = Poly::x();
            g.at_infinity = false;
        } else if (f.poly == Poly::x()) {
            g.name = "inf";
            g.poly = Poly(1);
            g.at_infinity = true;
        } else {
            g.name = f.name + suffix;
            g.poly = f.poly.invert_x(f.poly.degree()).monic();
        }
        r.factors.push_back(g);
    }
    return r;
}

}  // namespace rspb
