#pragma once

// Loading the fixture files: coverings, normalizations, syzygies, systems
// and solutions. Files are read from $RSPB_FIXTURE_DIR when it is set,
// otherwise from the copies embedded at build time (or RSPB_FIXTURE_DIR_DEFAULT).

#include "painleve.hpp"

#include <cstdlib>

#if __has_include("rspullback/embedded_fixtures.hpp")
#include "rspullback/embedded_fixtures.hpp"
#define RSPB_HAVE_EMBEDDED_FIXTURES 1
#endif

namespace rspb {

inline std::string fixture_text(const std::string& file) {
    if (const char* dir = std::getenv("RSPB_FIXTURE_DIR"); dir && *dir) return read_file(std::string(dir) + "/" + file);
#ifdef RSPB_HAVE_EMBEDDED_FIXTURES
    for (const auto& f : embedded_fixtures)
        if (file == f.name) return f.text;
#endif
#ifdef RSPB_FIXTURE_DIR_DEFAULT
    return read_file(std::string(RSPB_FIXTURE_DIR_DEFAULT) + "/" + file);
#else
    throw std::runtime_error("fixture " + file + " not available; set RSPB_FIXTURE_DIR");
#endif
}

// Mobius map from an expression (a x + b)/(c x + d).
inline Mobius mobius_from(const RatFunc& f) {
    if (f.num().degree() > 1 || f.den().degree() > 1 || (f.num().degree() < 1 && f.den().degree() < 1))
        throw std::invalid_argument("expression is not a fractional-linear map");
    Mobius m{f.num().coeff(1), f.num().coeff(0), f.den().coeff(1), f.den().coeff(0)};
    m.check();
    return m;
}

// `w : D(p)` defines the square root of D.
inline ExtensionPtr parse_extension(const std::string& text, const std::string& param) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("extension must read 'name : discriminant'");
    std::string name = detail::trim(text.substr(0, colon));
    ExprContext ctx;
    ctx.param = param;
    ParamElem d = parse_elem(text.substr(colon + 1), ctx);
    if (!d.is_rational() && d.base().denominator().degree() > 0)
        throw std::invalid_argument("extension discriminant must be a polynomial");
    return make_extension(d.base().numerator(), name);
}

inline std::vector<int> parse_ints(const std::string& text) {
    std::vector<int> out;
    for (const auto& s : split(text, ',')) out.push_back(std::stoi(s));
    return out;
}

inline Triple parse_triple(const std::string& text, const ExprContext& ctx) {
    auto v = split(text, ',');
    if (v.size() != 3) throw std::invalid_argument("triple needs three polynomials");
    return {parse_poly(v[0], ctx), parse_poly(v[1], ctx), parse_poly(v[2], ctx)};
}

inline Syzygy parse_syzygy(const std::string& text, const ExprContext& ctx) {
    Triple t = parse_triple(text, ctx);
    return {t.F, t.G, t.H};
}

class Fixtures {
public:
    static const Fixtures& instance() {
        static const Fixtures f;
        return f;
    }

    Fixtures() {
        load("coverings.txt", coverings_);
        load("normalizations.txt", normalizations_);
        load("syzygies.txt", syzygies_);
        load("systems.txt", systems_);
        load("solutions.txt", solutions_);
    }

    const Record& covering_record(const std::string& n) const { return find(coverings_, n, "covering"); }
    const Record& normalization_record(const std::string& n) const { return find(normalizations_, n, "normalization"); }
    const Record& syzygy_record(const std::string& n) const { return find(syzygies_, n, "syzygy"); }
    const Record& system_record(const std::string& n) const { return find(systems_, n, "system"); }
    const Record& solution_record(const std::string& n) const { return find(solutions_, n, "solution"); }

    const std::vector<Record>& coverings() const { return coverings_; }
    const std::vector<Record>& normalizations() const { return normalizations_; }
    const std::vector<Record>& syzygies() const { return syzygies_; }
    const std::vector<Record>& systems() const { return systems_; }
    const std::vector<Record>& solutions() const { return solutions_; }

    // Named coverings; `<name>-tilde` is phi(1/x) of `<name>`.
    CoveringSpec covering(const std::string& name) const {
        const std::string suffix = "-tilde";
        if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
            return invert_covering(covering(name.substr(0, name.size() - suffix.size())));
        return covering_from_record(covering_record(name));
    }

    NormalizedCovering normalization(const std::string& name) const {
        const Record& r = normalization_record(name);
        CoveringSpec c = covering(r.get("covering"));
        std::string param;
        ExtensionPtr ext;
        ParamElem reparam;
        Mobius m = map_of(r, param, ext, reparam);
        std::vector<int> orders;
        if (r.has("orders")) orders = parse_ints(r.get("orders"));
        NormalizedCovering nc = normalize_covering(c, reparam, m, param, ext, orders);
        if (r.has("t")) {
            ExprContext ctx{param, ext, {}};
            ParamElem t = parse_elem(r.get("t"), ctx);
            if (t != nc.t) throw NormalizationError(name + ": computed t differs from the recorded one");
        }
        return nc;
    }

    ExprContext context(const Record& r) const {
        ExprContext ctx;
        ctx.param = r.get_or("param", "p");
        if (r.has("ext")) ctx.ext = parse_extension(r.get("ext"), ctx.param);
        return ctx;
    }

private:
    static void load(const std::string& file, std::vector<Record>& out) { out = parse_records(fixture_text(file), file); }

    static const Record& find(const std::vector<Record>& v, const std::string& n, const char* kind) {
        for (const auto& r : v)
            if (r.name == n) return r;
        throw std::out_of_range(std::string("unknown ") + kind + " '" + n + "'");
    }

    // Reparametrization and Mobius map of a normalization record, following
    // `base`, `then` and `invert`.
    Mobius map_of(const Record& r, std::string& param, ExtensionPtr& ext, ParamElem& reparam) const {
        Mobius m;
        if (r.has("base")) {
            m = map_of(normalization_record(r.get("base")), param, ext, reparam);
        } else {
            param = r.get_or("param", "p");
            if (r.has("ext")) ext = parse_extension(r.get("ext"), param);
            ExprContext ctx{param, ext, {}};
            reparam = r.has("reparam") ? parse_elem(r.get("reparam"), ctx) : ParamElem::param();
            m = mobius_from(parse_ratfunc(r.get("mobius"), ctx));
        }
        if (r.has("then")) {
            const Record& t = normalization_record(r.get("then"));
            ExprContext ctx{param, ext, {}};
            for (const auto& [k, v] : t.entries)
                if (k != "param" && k != "mobius") ctx.bindings[k] = parse_value(v, ctx);
            m = m.compose(mobius_from(parse_ratfunc(t.get("mobius"), ctx)));
        }
        if (r.get_or("invert", "false") == "true") {
            Mobius J{ParamElem(0), ParamElem(1), ParamElem(1), ParamElem(0)};
            m = J.compose(m);
        }
        return m;
    }

    std::vector<Record> coverings_, normalizations_, syzygies_, systems_, solutions_;
};

// The recorded solution of a solutions.txt entry.
inline ParametrizedSolution expected_solution(const Record& r) {
    ExprContext ctx = Fixtures::instance().context(r);
    ParametrizedSolution s;
    s.label = r.name;
    s.t = parse_elem(r.get("t"), ctx);
    s.y = parse_elem(r.get("y"), ctx);
    s.params = parse_theta(r.get("theta"));
    return s;
}

}  // namespace rspb
