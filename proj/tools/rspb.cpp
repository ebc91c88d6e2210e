// rspb: verify coverings, compute syzygies, pullbacks and Painleve VI
// solutions, and reproduce the fixture suite.

#include "rspullback/reproduce.hpp"

#include <algorithm>
#include <CLI11.hpp>
#include <json.hpp>

#include <future>
#include <iostream>

using namespace rspb;
using json = nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::map<std::string, std::string> kDefaultNormalization = {
    {"phi8", "phi8-hat"}, {"phi12", "phi12-hat"}, {"phi12-tilde", "phi12-tilde-lambda"}};

bool builtin(const std::string& s, std::string& name) {
    if (s.rfind("builtin:", 0) != 0) return false;
    name = s.substr(8);
    return true;
}

// builtin:<name> or a record file whose first record is a covering.
CoveringSpec load_covering(const std::string& src) {
    std::string name;
    if (builtin(src, name)) return Fixtures::instance().covering(name);
    auto recs = parse_records(read_file(src), src);
    if (recs.empty()) throw UsageError(src + ": no records");
    return covering_from_record(recs.front());
}

std::string covering_name(const std::string& src) {
    std::string name;
    return builtin(src, name) ? name : "";
}

NormalizedCovering load_normalization(const std::string& requested, const std::string& covering_src) {
    std::string n = requested;
    if (n.empty()) {
        auto it = kDefaultNormalization.find(covering_name(covering_src));
        if (it == kDefaultNormalization.end()) throw UsageError("--normalization is required for this covering");
        n = it->second;
    }
    return Fixtures::instance().normalization(n);
}

int default_delta(const Triple& t) { return (t.F.degree() + t.G.degree() + t.H.degree()) % 2; }

void print_report_text(const ReproductionReport& r, bool verbose) {
    std::printf("%-30s %-14s %-8s %6ld ms\n", r.label.c_str(), r.group.c_str(), to_string(r.status), r.elapsed_ms);
    if (verbose || r.status != Status::Match) {
        for (const auto& n : r.notes) std::printf("    %s\n", n.c_str());
        if (r.status != Status::Match) {
            std::printf("    expected: %s\n    computed: %s\n", r.expected.c_str(), r.computed.c_str());
        }
    }
}

json report_json(const ReproductionReport& r) {
    return {{"caseLabel", r.label}, {"group", r.group},      {"status", to_string(r.status)}, {"expected", r.expected},
            {"computed", r.computed}, {"elapsedMillis", r.elapsed_ms}, {"notes", r.notes}};
}

json solution_json(const ParametrizedSolution& s, const std::string& param, bool residual_zero) {
    return {{"label", s.label},
            {"t", to_string(s.t, param)},
            {"y", to_string(s.y, param)},
            {"params", {s.params.theta0.get_str(), s.params.theta1.get_str(), s.params.thetat.get_str(), s.params.thetainf.get_str()}},
            {"residual_zero", residual_zero}};
}

void print_solution(const ParametrizedSolution& s, const std::string& param, bool residual_zero, const std::string& format) {
    if (format == "json-lines") {
        std::cout << solution_json(s, param, residual_zero).dump() << "\n";
        return;
    }
    std::cout << "label:    " << s.label << "\n"
              << "t:        " << to_string(s.t, param) << "\n"
              << "y:        " << to_string(s.y, param) << "\n"
              << "theta:    " << to_string(s.params) << "\n"
              << "residual: " << (residual_zero ? "zero" : "NONZERO") << "\n";
}

// ---------------------------------------------------------------------------

int cmd_verify_covering(const std::string& src, const std::string& format) {
    CoveringSpec c = load_covering(src);
    RamificationReport r = verify_almost_belyi(c);
    std::string fact = check_factorization(c);
    ProjPoint extra = extra_ramification_point(c);
    bool ok = r.ok && fact.empty();
    std::string pattern = to_string(RamificationPattern{{r.fibers[0].actual, r.fibers[1].actual, r.fibers[2].actual}});
    std::string extra_s = extra.infinite ? "inf" : to_string(extra.value, c.param);
    if (!fact.empty()) r.diagnostics.push_back(fact);
    if (format == "json-lines") {
        std::cout << json{{"covering", c.name},       {"degree", r.degree},
                          {"pattern", pattern},       {"almost_belyi", r.almost_belyi},
                          {"extra", extra_s},         {"ok", ok},
                          {"diagnostics", r.diagnostics}}
                         .dump()
                  << "\n";
    } else {
        std::cout << c.name << ": degree " << r.degree << ", pattern " << pattern << "\n";
        std::cout << "extra ramification point: " << extra_s << "\n";
        for (const auto& d : r.diagnostics) std::cout << "  " << d << "\n";
        std::cout << (ok ? "pass" : "fail") << "\n";
    }
    return ok ? 0 : 1;
}

int cmd_reproduce(const std::vector<std::string>& only, const std::string& format, int jobs, bool verbose) {
    auto cases = reproduction_cases();
    if (!only.empty()) {
        std::vector<ReproductionCase> sel;
        for (const auto& c : cases)
            if (std::find(only.begin(), only.end(), c.label) != only.end() ||
                std::find(only.begin(), only.end(), c.group) != only.end())
                sel.push_back(c);
        if (sel.empty()) throw UsageError("--only matches no case");
        cases = std::move(sel);
    }
    std::vector<ReproductionReport> reports(cases.size());
    jobs = std::max(1, jobs);
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i; (i = next++) < cases.size();) reports[i] = run_case(cases[i]);
    };
    std::vector<std::future<void>> pool;
    for (int j = 0; j < jobs; ++j) pool.push_back(std::async(std::launch::async, worker));
    for (auto& f : pool) f.get();
    std::stable_sort(reports.begin(), reports.end(),
                     [](const ReproductionReport& a, const ReproductionReport& b) { return a.label < b.label; });

    int failed = 0;
    for (const auto& r : reports) {
        failed += r.status != Status::Match;
        if (format == "json-lines")
            std::cout << report_json(r).dump() << "\n";
        else
            print_report_text(r, verbose);
    }
    if (format != "json-lines")
        std::printf("\n%zu cases, %zu match, %d not matching\n", reports.size(), reports.size() - failed, failed);
    return failed ? 1 : 0;
}

Triple triple_for(const CoveringSpec& c, const std::string& text, const ExponentTriple& e) {
    return text.empty() ? apparent_triple(c, e) : parse_triple(text, c.context());
}

int cmd_syzygy(const std::string& triple_src, const std::string& covering_src, const std::string& exps, int delta, bool delta_set,
               const std::string& row_s, const std::string& format) {
    CoveringSpec c;
    Triple t;
    ExponentTriple e{Rational(1), Rational(1), Rational(1)};
    std::string name;
    if (builtin(triple_src, name)) {
        // a syzygy fixture, or <covering>-FGH for the apparent triple
        const Fixtures& fx = Fixtures::instance();
        if (name.size() > 4 && name.compare(name.size() - 4, 4, "-FGH") == 0) {
            c = fx.covering(name.substr(0, name.size() - 4));
            if (exps.empty()) throw UsageError("--exponents is required with " + triple_src);
            e = parse_exponents(exps);
            t = apparent_triple(c, e);
        } else {
            const Record& r = fx.syzygy_record(name);
            c = fx.covering(r.get("covering"));
            t = parse_triple(r.get("triple"), c.context());
            e = parse_exponents(exps.empty() ? r.get("exponents") : exps);
            if (!delta_set) {
                delta = std::stoi(r.get("delta"));
                delta_set = true;
            }
        }
    } else {
        if (covering_src.empty()) throw UsageError("--covering is required with an explicit triple");
        c = load_covering(covering_src);
        if (!exps.empty()) e = parse_exponents(exps);
        t = parse_triple(triple_src, c.context());
    }
    if (!delta_set) delta = default_delta(t);
    Row row = parse_row(row_s);
    Syzygy s = row_syzygy(c, t, e, delta, row);
    auto [b1, b2] = syzygy_basis(t);
    ParamElem cc = cross_check(b1, b2, t);
    const std::string& p = c.param;
    if (format == "json-lines") {
        std::cout << json{{"F", to_string(t.F, p)}, {"G", to_string(t.G, p)}, {"H", to_string(t.H, p)},
                          {"U", to_string(s.U, p)}, {"V", to_string(s.V, p)}, {"W", to_string(s.W, p)},
                          {"delta", delta},         {"row", to_string(row)},  {"cross_check", to_string(cc, p)}}
                         .dump()
                  << "\n";
    } else {
        std::cout << "triple: " << to_string(t.F, p) << " ; " << to_string(t.G, p) << " ; " << to_string(t.H, p) << "\n";
        std::cout << "U = " << to_string(s.U, p) << "\nV = " << to_string(s.V, p) << "\nW = " << to_string(s.W, p) << "\n";
        std::cout << "basis weighted degrees " << weighted_degree(b1, t) << ", " << weighted_degree(b2, t)
                  << "; cross product constant " << to_string(cc, p) << "\n";
    }
    return 0;
}

int cmd_pullback(const std::string& covering_src, const std::string& exps, const std::string& triple_s, int delta, bool delta_set,
                 const std::string& format) {
    CoveringSpec c = load_covering(covering_src);
    ExponentTriple e = parse_exponents(exps);
    Triple t = triple_for(c, triple_s, e);
    if (!delta_set) delta = default_delta(t);
    Syzygy up = row_syzygy(c, t, e, delta, Row::Upper), lo = row_syzygy(c, t, e, delta, Row::Lower);
    SchlesingerMatrix S = build_inverse_schlesinger(up, lo, e, t);
    FuchsianSystem M = rs_pullback(hypergeometric_system(e), c.map, S);
    std::vector<Poly> hints;
    for (const auto& f : c.factors)
        if (!f.at_infinity) hints.push_back(f.poly);
    auto rep = singularity_report(M, hints);
    const std::string& p = c.param;
    auto point = [&](const SingularPoint& sp) { return sp.at_infinity ? std::string("x=inf") : to_string(sp.factor, p) + " = 0"; };
    auto diff = [&](const SingularPoint& sp) {
        return sp.difference ? sp.difference->get_str() : "sqrt(" + to_string(sp.difference_squared, p) + ")";
    };
    if (format == "json-lines") {
        json sing = json::array();
        for (const auto& sp : rep) sing.push_back({{"point", point(sp)}, {"difference", diff(sp)}, {"apparent", sp.apparent}});
        std::cout << json{{"M11", to_string(M.m[0][0], p)}, {"M12", to_string(M.m[0][1], p)}, {"M21", to_string(M.m[1][0], p)},
                          {"M22", to_string(M.m[1][1], p)}, {"delta", delta},                {"singularities", sing}}
                         .dump()
                  << "\n";
    } else {
        const char* names[2][2] = {{"M11", "M12"}, {"M21", "M22"}};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) std::cout << names[i][j] << " = " << to_string(M.m[i][j], p) << "\n";
        std::cout << "singularities:\n";
        for (const auto& sp : rep)
            std::cout << "  " << point(sp) << "  difference " << diff(sp) << (sp.apparent ? "  (apparent)" : "") << "\n";
    }
    return 0;
}

int cmd_solve(const std::string& covering_src, const std::string& exps, const std::string& triple_s, const std::string& syz_src,
              int delta, bool delta_set, const std::string& row_s, const std::string& norm, const std::string& format) {
    CoveringSpec c = load_covering(covering_src);
    ExponentTriple e = parse_exponents(exps);
    Triple t = triple_for(c, triple_s, e);
    if (!delta_set) delta = default_delta(t);
    Row row = parse_row(row_s);
    Syzygy s;
    if (syz_src == "auto") {
        s = row_syzygy(c, t, e, delta, row);
    } else {
        auto recs = parse_records(read_file(syz_src), syz_src);
        if (recs.empty() || !recs.front().has("syzygy")) throw UsageError(syz_src + ": expected a record with key 'syzygy'");
        s = parse_syzygy(recs.front().get("syzygy"), c.context());
    }
    NormalizedCovering nc = load_normalization(norm, covering_src);
    DirectSolution ds = solution_theorem_5_1(c.map, t, s, e, delta, row, nc, "solution");
    bool zero = verify_solution(ds.solution).exact_zero;
    print_solution(ds.solution, nc.spec.param, zero, format);
    return zero ? 0 : 1;
}

int cmd_verify(const std::string& src, const std::string& format) {
    std::string name;
    Record r;
    if (builtin(src, name)) {
        r = Fixtures::instance().solution_record(name);
    } else {
        auto recs = parse_records(read_file(src), src);
        if (recs.empty()) throw UsageError(src + ": no records");
        r = recs.front();
    }
    ParametrizedSolution s = expected_solution(r);
    bool zero = verify_solution(s).exact_zero;
    print_solution(s, r.get_or("param", "p"), zero, format);
    return zero ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RS-pullbacks and algebraic Painleve VI solutions"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json-lines"}));

    std::string covering, exponents, triple, row = "lower", only_s, normalization, syzygy = "auto", solution;
    int delta = 0, jobs = 1;
    bool verbose = false;

    auto* vc = app.add_subcommand("verify-covering", "Check that a covering is almost Belyi with its declared pattern");
    vc->add_option("covering", covering, "builtin:<name> or a record file")->required();

    auto* rp = app.add_subcommand("reproduce", "Run the fixture suite");
    std::vector<std::string> only;
    rp->add_option("--only", only, "Case labels or groups to run")->delimiter(',');
    rp->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    rp->add_flag("-v,--verbose", verbose, "Print notes for every case");

    auto* sz = app.add_subcommand("syzygy", "Degree-constrained syzygy of a triple");
    sz->add_option("--triple", triple, "builtin:<fixture>, builtin:<covering>-FGH or 'F, G, H'")->required();
    sz->add_option("--covering", covering, "Covering providing names for an explicit triple");
    sz->add_option("--exponents", exponents, "e0,e1,einf");
    auto* szd = sz->add_option("--delta", delta, "Shift at infinity");
    sz->add_option("--row", row, "lower or upper")->check(CLI::IsMember({"lower", "upper"}));

    auto* pb = app.add_subcommand("pullback", "RS-pullback of the hypergeometric system");
    pb->add_option("--covering", covering, "builtin:<name> or a record file")->required();
    pb->add_option("--exponents", exponents, "e0,e1,einf")->required();
    pb->add_option("--triple", triple, "'F, G, H' (default: the apparent singularities)");
    auto* pbd = pb->add_option("--delta", delta, "Shift at infinity");

    auto* sv = app.add_subcommand("solve", "Painleve VI solution by the direct formula");
    sv->add_option("--covering", covering, "builtin:<name> or a record file")->required();
    sv->add_option("--exponents", exponents, "e0,e1,einf")->required();
    sv->add_option("--triple", triple, "'F, G, H' (default: the apparent singularities)");
    sv->add_option("--syzygy", syzygy, "auto or a record file with key 'syzygy'");
    auto* svd = sv->add_option("--delta", delta, "Shift at infinity");
    sv->add_option("--row", row, "lower or upper")->check(CLI::IsMember({"lower", "upper"}));
    sv->add_option("--normalization", normalization, "Normalization fixture name");

    auto* vf = app.add_subcommand("verify", "Check a solution by substitution into PVI");
    vf->add_option("--solution", solution, "builtin:<label> or a record file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*vc) return cmd_verify_covering(covering, format);
        if (*rp) return cmd_reproduce(only, format, jobs, verbose);
        if (*sz) return cmd_syzygy(triple, covering, exponents, delta, szd->count() > 0, row, format);
        if (*pb) return cmd_pullback(covering, exponents, triple, delta, pbd->count() > 0, format);
        if (*sv) return cmd_solve(covering, exponents, triple, syzygy, delta, svd->count() > 0, row, normalization, format);
        if (*vf) return cmd_verify(solution, format);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
