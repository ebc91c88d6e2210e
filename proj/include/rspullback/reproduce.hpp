#pragma once

// Reproduction cases over the fixture files, one report per case.

#include "fixtures.hpp"
#include "hypergeometric.hpp"

#include <chrono>
#include <functional>

namespace rspb {

enum class Status { Match, Mismatch, Error };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::Match: return "match";
        case Status::Mismatch: return "mismatch";
        default: return "error";
    }
}

struct ReproductionReport {
    std::string label;
    std::string group;
    Status status = Status::Error;
    std::string expected;
    std::string computed;
    long elapsed_ms = 0;
    std::vector<std::string> notes;
};

struct ReproductionCase {
    std::string label;
    std::string group;
    std::function<void(ReproductionReport&)> run;
};

// ---------------------------------------------------------------------------
// Shared pipelines

// Pole order of the covering at x = inf.
inline int pole_order_at_infinity(const CoveringSpec& c) {
    int d = c.map.den().degree() - c.map.num().degree();
    return d < 0 ? -d : 0;
}

// Syzygy for the chosen row, with the derived constraint for the upper
// row at delta = 0.
inline Syzygy row_syzygy(const CoveringSpec& c, const Triple& t, const ExponentTriple& e, int delta, Row row,
                         const std::optional<ParamElem>& wlead = std::nullopt) {
    DegreeSpec spec = degree_spec(t, delta, pole_order_at_infinity(c), row);
    std::vector<LinearConstraint> extra;
    if (row == Row::Upper && delta == 0) {
        Rational ev[3] = {e.e0, e.e1, e.einf};
        extra.push_back(upper_row_constraint(t, ev));
    }
    return syzygy_with_degrees(t, spec, extra, wlead);
}

struct SystemData {
    CoveringSpec covering;
    ExprContext ctx;
    Triple triple;
    ExponentTriple e;
    Syzygy upper, lower;
};

inline SystemData load_system(const Record& r) {
    SystemData d;
    d.covering = Fixtures::instance().covering(r.get("covering"));
    d.ctx = d.covering.context();
    static const char* skip[] = {"covering", "triple", "exponents", "delta", "upper", "lower", "rows", "S1", "S2"};
    for (const auto& [k, v] : r.entries) {
        if (std::find(std::begin(skip), std::end(skip), k) != std::end(skip)) continue;
        d.ctx.bindings[k] = parse_value(v, d.ctx);
    }
    d.triple = parse_triple(r.get("triple"), d.ctx);
    d.e = parse_exponents(r.get("exponents"));
    if (r.has("S1")) {
        // rows given as combinations of named syzygies, component by component
        Syzygy s1 = parse_syzygy(r.get("S1"), d.ctx), s2 = parse_syzygy(r.get("S2"), d.ctx);
        ExprContext c = d.ctx;
        for (int i = 0; i < 3; ++i) {
            c.bindings["S1"] = Value(s1[i]);
            c.bindings["S2"] = Value(s2[i]);
            d.upper[i] = parse_poly(r.get("upper"), c);
            d.lower[i] = parse_poly(r.get("lower"), c);
        }
    } else {
        d.upper = parse_syzygy(r.get("upper"), d.ctx);
        d.lower = parse_syzygy(r.get("lower"), d.ctx);
    }
    return d;
}

inline FuchsianSystem pullback_system(const SystemData& d) {
    SchlesingerMatrix S = build_inverse_schlesinger(d.upper, d.lower, d.e, d.triple);
    return rs_pullback(hypergeometric_system(d.e), d.covering.map, S);
}

// The solution of a solutions.txt record by its recorded method.
inline ParametrizedSolution compute_solution(const Record& r, std::vector<std::string>* notes = nullptr) {
    const Fixtures& fx = Fixtures::instance();
    std::string method = r.get("method");
    NormalizedCovering nc = fx.normalization(r.get("normalization"));
    if (method == "covering") {
        auto k = parse_ints(r.get("k"));
        if (k.size() != 3) throw std::invalid_argument("k needs three values");
        int kk[3] = {k[0], k[1], k[2]};
        return solution_theorem_2_1(nc, kk, r.name);
    }
    if (method == "entry") {
        SystemData d = load_system(fx.system_record(r.get("system")));
        FuchsianSystem M = pullback_system(d);
        Entry entry = parse_entry(r.get("entry"));
        ParametrizedSolution s = lower_left_root(M, nc, entry, r.name);
        if (r.get_or("extra", "false") == "true") {
            if (nc.extra.infinite || nc.extra.value != s.y) throw std::logic_error("entry root is not the extra ramification point");
            if (notes) notes->push_back("root equals the extra ramification point");
        }
        return s;
    }
    if (method == "direct") {
        CoveringSpec c = fx.covering(r.get("covering"));
        ExprContext ctx = c.context();
        Triple t = parse_triple(r.get("triple"), ctx);
        ExponentTriple e = parse_exponents(r.get("exponents"));
        int delta = std::stoi(r.get("delta"));
        Row row = parse_row(r.get("row"));
        Syzygy s = row_syzygy(c, t, e, delta, row);
        DirectSolution ds = solution_theorem_5_1(c.map, t, s, e, delta, row, nc, r.name);
        if (r.has("intermediate")) {
            RatFunc want = parse_ratfunc(r.get("intermediate"), ctx);
            RatFunc q = ds.expression / want;
            if (!q.is_constant()) throw std::logic_error("intermediate expression differs: " + to_string(ds.expression, c.param));
            if (notes) notes->push_back("intermediate expression matches up to the factor " + to_string(q, c.param));
        }
        return ds.solution;
    }
    throw std::invalid_argument("unknown method '" + method + "'");
}

// ---------------------------------------------------------------------------
// Cases

namespace detail {

inline void set_status(ReproductionReport& rep, bool ok) { rep.status = ok ? Status::Match : Status::Mismatch; }

inline void covering_case(const std::string& name, ReproductionReport& rep) {
    CoveringSpec c = Fixtures::instance().covering(name);
    ExprContext ctx = c.context();
    bool ok = true;
    RamificationReport rr = verify_almost_belyi(c);
    if (!rr.ok) {
        ok = false;
        for (const auto& d : rr.diagnostics) rep.notes.push_back(d);
    }
    std::string fact = check_factorization(c);
    if (!fact.empty()) {
        ok = false;
        rep.notes.push_back(fact);
    }
    if (c.attributes.count("map1")) {
        RatFunc want = parse_ratfunc(c.attributes.at("map1"), ctx);
        bool id = (c.map - RatFunc(1)) == want;
        rep.notes.push_back(std::string("map - 1 identity ") + (id ? "holds" : "fails"));
        ok = ok && id;
    }
    ProjPoint extra = extra_ramification_point(c);
    rep.computed = "pattern " + to_string(RamificationPattern{{rr.fibers[0].actual, rr.fibers[1].actual, rr.fibers[2].actual}}) +
                   "; extra " + (extra.infinite ? std::string("inf") : to_string(extra.value, c.param));
    rep.expected = "pattern " + to_string(c.pattern);
    if (c.attributes.count("extra")) {
        ParamElem want = parse_elem(c.attributes.at("extra"), ctx);
        rep.expected += "; extra " + to_string(want, c.param);
        ok = ok && !extra.infinite && extra.value == want;
    }
    set_status(rep, ok);
}

inline void syzygy_case(const Record& r, ReproductionReport& rep) {
    CoveringSpec c = Fixtures::instance().covering(r.get("covering"));
    ExprContext ctx = c.context();
    Triple t = parse_triple(r.get("triple"), ctx);
    ExponentTriple e = parse_exponents(r.get("exponents"));
    ParamElem wlead = parse_elem(r.get("wlead"), ctx);
    Syzygy s = row_syzygy(c, t, e, std::stoi(r.get("delta")), parse_row(r.get("row")), wlead);
    Syzygy want = parse_syzygy(r.get("expected"), ctx);
    bool ok = is_syzygy(s, t);
    int wterms = std::stoi(r.get_or("wterms", "0"));
    for (int i = 0; i < 3; ++i) {
        if (i == 2 && wterms > 0) {
            int top = s.W.degree();
            for (int j = top; j > top - wterms; --j) ok = ok && s.W.coeff(j) == want.W.coeff(j);
            ok = ok && want.W.degree() == top;
        } else {
            ok = ok && s[i] == want[i];
        }
    }
    auto [b1, b2] = syzygy_basis(t);
    ParamElem cc = cross_check(b1, b2, t);
    if (cc.is_zero()) ok = false;
    rep.notes.push_back("basis weighted degrees " + std::to_string(weighted_degree(b1, t)) + ", " +
                        std::to_string(weighted_degree(b2, t)) + "; cross product constant " + to_string(cc, c.param));
    auto show = [&](const Syzygy& z) {
        return to_string(z.U, c.param) + " ; " + to_string(z.V, c.param) + " ; " + to_string(z.W, c.param);
    };
    rep.computed = show(s);
    rep.expected = show(want) + (wterms ? " (top " + std::to_string(wterms) + " terms of W)" : "");
    set_status(rep, ok);
}

inline void system_case(const Record& r, ReproductionReport& rep) {
    SystemData d = load_system(r);
    SchlesingerMatrix S = build_inverse_schlesinger(d.upper, d.lower, d.e, d.triple);
    FuchsianSystem M = rs_pullback(hypergeometric_system(d.e), d.covering.map, S);
    const std::string& p = d.covering.param;
    RatFunc m11 = parse_ratfunc(r.get("m11"), d.ctx), m12 = parse_ratfunc(r.get("m12"), d.ctx),
            m21 = parse_ratfunc(r.get("m21"), d.ctx);
    bool ok = M.traceless() && M.m[0][0] == m11;
    // a constant diagonal gauge scales m12 and m21 inversely
    RatFunc q12 = M.m[0][1] / m12, q21 = M.m[1][0] / m21;
    bool gauge = q12.is_constant() && q21.is_constant();
    bool product = M.m[0][1] * M.m[1][0] == m12 * m21;
    ok = ok && gauge;
    rep.notes.push_back("m12 = " + to_string(q12, p) + " * recorded; m21 = " + to_string(q21, p) + " * recorded");
    rep.notes.push_back(std::string("m12*m21 ") + (product ? "equals" : "differs from") + " the recorded product");
    if (r.has("rows")) {
        auto rows = split(r.get("rows"), ';');
        for (int i = 0; i < 2; ++i) {
            auto v = split(rows[i], ',');
            RatFunc a = RatFunc(S.N[i][0]) / parse_ratfunc(v[0], d.ctx), b = RatFunc(S.N[i][1]) / parse_ratfunc(v[1], d.ctx);
            bool prop = a.is_constant() && a == b;
            ok = ok && prop;
            if (!prop) rep.notes.push_back("row " + std::to_string(i + 1) + " of N not proportional to the recorded row");
        }
    }
    std::vector<Poly> hints;
    for (const auto& f : d.covering.factors)
        if (!f.at_infinity) hints.push_back(f.poly);
    auto report = singularity_report(M, hints);
    int essential = essential_count(report);
    rep.notes.push_back("essential singular points: " + std::to_string(essential));
    ok = ok && essential == 4;
    rep.computed = "M11 = " + to_string(M.m[0][0], p) + "; M21 = " + to_string(M.m[1][0], p);
    rep.expected = "M11 = " + to_string(m11, p) + "; M21 ~ " + to_string(m21, p);
    set_status(rep, ok);
}

inline void solution_case(const Record& r, ReproductionReport& rep) {
    ParametrizedSolution want = expected_solution(r);
    ParametrizedSolution got = compute_solution(r, &rep.notes);
    ExprContext ctx = Fixtures::instance().context(r);
    bool ok = got.t == want.t && got.y == want.y;
    if (got.t != want.t) rep.notes.push_back("t differs");
    if (got.y != want.y) rep.notes.push_back("y differs");
    bool eq = same_equation(got.params, want.params);
    if (!eq) rep.notes.push_back("PVI parameters differ: computed " + to_string(got.params));
    VerificationResult v = verify_solution(want);
    rep.notes.push_back(std::string("PVI residual ") + (v.exact_zero ? "vanishes identically" : "does not vanish"));
    if (r.has("printed")) {
        ParametrizedSolution pr = want;
        pr.y = parse_elem(r.get("printed"), ctx);
        VerificationResult pv = verify_solution(pr);
        rep.notes.push_back(std::string("printed form ") + (pv.exact_zero ? "solves" : "does not solve") + " PVI");
    }
    ok = ok && eq && v.exact_zero;
    rep.computed = "y = " + to_string(got.y, ctx.param) + "; theta = " + to_string(got.params);
    rep.expected = "y = " + to_string(want.y, ctx.param) + "; theta = " + to_string(want.params);
    set_status(rep, ok);
}

inline void alt_forms_case(ReproductionReport& rep) {
    const Fixtures& fx = Fixtures::instance();
    const Record& r = fx.syzygy_record("phi12-lower");
    CoveringSpec c = fx.covering("phi12");
    ExprContext ctx = c.context();
    Triple t = parse_triple(r.get("triple"), ctx);
    ExponentTriple e = parse_exponents(r.get("exponents"));
    Syzygy s = parse_syzygy(r.get("expected"), ctx);
    AltFormsResult res = alt_forms_check(c.map, t, s, e);
    AltFormsResult printed = alt_forms_check(c.map, t, s, e, true);
    std::string mism;
    for (const auto& m : printed.mismatches) mism += (mism.empty() ? "" : ", ") + m;
    rep.notes.push_back("printed variants differing: " + (mism.empty() ? std::string("none") : mism));
    rep.expected = "all forms equal";
    rep.computed = res.all_equal ? "all forms equal" : "mismatch";
    set_status(rep, res.all_equal);
}

inline void hypergeometric_case(const ExponentTriple& e, ReproductionReport& rep) {
    double worst = 0;
    for (auto w : {LocalSolution::AtZero, LocalSolution::InfinityFirst, LocalSolution::InfinitySecond}) {
        double r = verify_local_solution(e, w, default_samples(w));
        rep.notes.push_back(std::string(to_string(w)) + ": " + std::to_string(r));
        worst = std::max(worst, r);
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max residual %.3g", worst);
    rep.computed = buf;
    rep.expected = "max residual < 1e-10";
    set_status(rep, worst < 1e-10);
}

}  // namespace detail

inline std::vector<ReproductionCase> reproduction_cases() {
    std::vector<ReproductionCase> out;
    const Fixtures& fx = Fixtures::instance();
    for (std::string n : {"phi8", "phi12", "phi12-tilde"})
        out.push_back({n, "covering", [n](ReproductionReport& r) { detail::covering_case(n, r); }});
    for (const auto& rec : fx.syzygies())
        out.push_back({rec.name, "syzygy", [rec](ReproductionReport& r) { detail::syzygy_case(rec, r); }});
    for (const auto& rec : fx.systems())
        out.push_back({rec.name, "system", [rec](ReproductionReport& r) { detail::system_case(rec, r); }});
    for (const auto& rec : fx.solutions())
        out.push_back({rec.name, "solution", [rec](ReproductionReport& r) { detail::solution_case(rec, r); }});
    out.push_back({"alt-forms", "alt-forms", [](ReproductionReport& r) { detail::alt_forms_case(r); }});
    const std::pair<const char*, ExponentTriple> hyp[] = {
        {"hyp-1/5,1/2,1/3", {Rational(1, 5), Rational(1, 2), Rational(1, 3)}},
        {"hyp-2/5,1/2,1/3", {Rational(2, 5), Rational(1, 2), Rational(1, 3)}},
        {"hyp-1/3,1/2,2/5", {Rational(1, 3), Rational(1, 2), Rational(2, 5)}}};
    for (const auto& [label, e] : hyp) {
        ExponentTriple ee = e;
        out.push_back({label, "hypergeometric", [ee](ReproductionReport& r) { detail::hypergeometric_case(ee, r); }});
    }
    return out;
}

inline ReproductionReport run_case(const ReproductionCase& c) {
    ReproductionReport rep;
    rep.label = c.label;
    rep.group = c.group;
    auto t0 = std::chrono::steady_clock::now();
    try {
        c.run(rep);
    } catch (const std::exception& e) {
        rep.status = Status::Error;
        rep.notes.push_back(e.what());
    }
    rep.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace rspb
