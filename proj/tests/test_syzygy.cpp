#include "support.hpp"

#include <gtest/gtest.h>

using namespace rspb;
using rspb::testing::Random;

namespace {

ExprContext ctx_x() { return ExprContext{}; }
Poly P(const std::string& s) { return parse_poly(s, ctx_x()); }

}  // namespace

TEST(Syzygy, BasisOfSimpleTriple) {
    Triple t{P("x"), P("x - 1"), P("x^2 + 1")};
    auto [s1, s2] = syzygy_basis(t);
    EXPECT_TRUE(is_syzygy(s1, t));
    EXPECT_TRUE(is_syzygy(s2, t));
    EXPECT_FALSE(cross_check(s1, s2, t).is_zero());
}

TEST(Syzygy, CrossCheckRejectsNonBasis) {
    Triple t{P("x"), P("x - 1"), P("x^2 + 1")};
    auto [s1, s2] = syzygy_basis(t);
    Syzygy twice = Poly::x() * s2;
    EXPECT_THROW(cross_check(s1, twice, t), std::domain_error);
    EXPECT_EQ(cross_multiplier(s1, twice, t).degree(), 1);
}

TEST(Syzygy, NonSyzygyIsNotDecomposed) {
    Triple t{P("x^2 - 3"), P("x + 2"), P("x^3 + x + 1")};
    auto [s1, s2] = syzygy_basis(t);
    Syzygy bogus{Poly(1), Poly(), Poly()};
    EXPECT_THROW(decompose(bogus, s1, s2, t), std::logic_error);
    auto ab = decompose(P("x - 5") * s1 + P("2") * s2, s1, s2, t);
    ASSERT_TRUE(ab);
    EXPECT_EQ(ab->first, P("x - 5"));
    EXPECT_EQ(ab->second, P("2"));
}

TEST(Syzygy, RequireSyzygyThrows) {
    Triple t{P("x"), P("1"), P("x + 1")};
    EXPECT_THROW(require_syzygy(Syzygy{Poly(1), Poly(1), Poly(1)}, t), std::logic_error);
}

TEST(Syzygy, BruteForceOracleAgreesOnDimension) {
    // the module is free with generators of degrees d1 + d2 = n, so the
    // space of syzygies of degree <= m has dimension (m - d1 + 1) + (m - d2 + 1)
    Random r(21);
    for (int i = 0; i < 30; ++i) {
        int n = r.integer(1, 5);
        Triple t;
        do {
            t = {r.poly(n), r.poly(n), r.poly(n)};
        } while (gcd(gcd(t.F, t.G), t.H).degree() > 0);
        auto [s1, s2] = syzygy_basis(t);
        int d1 = weighted_degree(s1, t) - n, d2 = weighted_degree(s2, t) - n;
        int m = n + 1;
        auto space = rspb::testing::brute_force_syzygies(t, m);
        EXPECT_EQ(static_cast<int>(space.size()), (m - d1 + 1) + (m - d2 + 1));
    }
}

TEST(Syzygy, DegreeSpecs) {
    CoveringSpec c = Fixtures::instance().covering("phi12");
    ExprContext ctx = c.context();
    Triple t = parse_triple("F12, P12, x^2", ctx);
    DegreeSpec lower = degree_spec(t, 0, 4, Row::Lower);
    EXPECT_EQ(lower.Delta, 12);
    EXPECT_EQ(to_string(lower.bound[0]), "= 2");
    EXPECT_EQ(to_string(lower.bound[1]), "= 0");
    EXPECT_EQ(to_string(lower.bound[2]), "< 4");
    DegreeSpec upper = degree_spec(t, 2, 4, Row::Upper);
    EXPECT_EQ(to_string(upper.bound[0]), "= 3");
    EXPECT_EQ(to_string(upper.bound[2]), "< 3");
    EXPECT_THROW(degree_spec(t, 1, 4, Row::Lower), std::invalid_argument);
    EXPECT_THROW(degree_spec(t, 6, 4, Row::Lower), std::invalid_argument);
    EXPECT_THROW(degree_spec(t, 4, 4, Row::Upper), std::invalid_argument);
}

TEST(Syzygy, FixturesReproduce) {
    for (const auto& r : Fixtures::instance().syzygies()) {
        CoveringSpec c = Fixtures::instance().covering(r.get("covering"));
        ExprContext ctx = c.context();
        Triple t = parse_triple(r.get("triple"), ctx);
        Syzygy s = row_syzygy(c, t, parse_exponents(r.get("exponents")), std::stoi(r.get("delta")), parse_row(r.get("row")),
                              parse_elem(r.get("wlead"), ctx));
        Syzygy want = parse_syzygy(r.get("expected"), ctx);
        EXPECT_TRUE(is_syzygy(s, t)) << r.name;
        EXPECT_EQ(s.U, want.U) << r.name;
        EXPECT_EQ(s.V, want.V) << r.name;
        if (!r.has("wterms")) {
            EXPECT_EQ(s.W, want.W) << r.name;
        }
    }
}

TEST(Syzygy, LowerRowOfPhi12) {
    // U F12 + V P12 + W x^2 = 0 with deg U = 2, deg V = 0, deg W < 4
    CoveringSpec c = Fixtures::instance().covering("phi12");
    ExprContext ctx = c.context();
    Triple t = parse_triple("F12, P12, x^2", ctx);
    Syzygy s = syzygy_with_degrees(t, degree_spec(t, 0, 4, Row::Lower));
    EXPECT_EQ(s.W.leading(), ParamElem(1));
    Syzygy want = parse_syzygy("x^2 + (s+6)x + 1, -1/2, -3(s+4)(x^3 - (7/2 s + 11)x^2 + (s+7)x + 1)", ctx);
    ParamElem scale = want.W.leading();
    EXPECT_EQ(scale * s.U, want.U);
    EXPECT_EQ(scale * s.W, want.W);
}

TEST(Syzygy, UnderdeterminedSpaceFailsLoudly) {
    Triple t{P("x"), P("x - 1"), P("x + 1")};
    int maxdeg[3] = {2, 2, 2};
    auto space = syzygy_space(t, maxdeg);
    EXPECT_GT(space.size(), 1u);
    DegreeSpec spec;
    for (auto& b : spec.bound) b = {DegreeBound::Less, 3};
    EXPECT_THROW(syzygy_with_degrees(t, spec), SyzygySolveError);
}

TEST(Syzygy, NoSolutionFailsLoudly) {
    Triple t{P("x^3 + 2"), P("x^3 - x"), P("x^3 + 5x^2 + 1")};
    DegreeSpec spec;
    for (auto& b : spec.bound) b = {DegreeBound::Exact, 0};
    try {
        syzygy_with_degrees(t, spec);
        FAIL() << "expected SyzygySolveError";
    } catch (const SyzygySolveError& e) {
        EXPECT_EQ(e.dimension, 0);
    }
}

TEST(Syzygy, PrintedUpperConstraintDiffersFromDerived) {
    CoveringSpec c = Fixtures::instance().covering("phi12");
    ExprContext ctx = c.context();
    Triple t = parse_triple("F12, P12, x^2", ctx);
    ExponentTriple e = parse_exponents("1/3, 1/2, 2/5");
    DegreeSpec spec = degree_spec(t, 0, 4, Row::Upper);
    Rational ev[3] = {e.e0, e.e1, e.einf};
    Syzygy derived = syzygy_with_degrees(t, spec, {upper_row_constraint(t, ev)});
    // the derived constraint is equivalent to deg(7 U F12 - 17 V P12) < 6
    Poly lhs = ParamElem(7) * derived.U * t.F - ParamElem(17) * derived.V * t.G;
    EXPECT_LT(lhs.degree(), 6);
    Syzygy printed;
    try {
        printed = syzygy_with_degrees(t, spec, {printed_upper_constraint(t)});
    } catch (const SyzygySolveError&) {
        SUCCEED();
        return;
    }
    EXPECT_FALSE(printed == derived);
}

TEST(Properties, SyzygyMembershipAgainstOracle) { EXPECT_EQ(rspb::testing::check_syzygy_membership(100, 201), ""); }
TEST(Properties, HilbertBurch) { EXPECT_EQ(rspb::testing::check_hilbert_burch(100, 202), ""); }
TEST(Properties, HomogeneousBasisDegrees) { EXPECT_EQ(rspb::testing::check_homogeneous_degrees(50, 203), ""); }
TEST(Properties, BasisOverParameterField) {
    Random r(204);
    for (int i = 0; i < 20; ++i) {
        Triple t = r.coprime_triple(4, true);
        auto [s1, s2] = syzygy_basis(t);
        EXPECT_TRUE(is_syzygy(s1, t));
        EXPECT_TRUE(is_syzygy(s2, t));
        ParamElem c = cross_check(s1, s2, t);
        EXPECT_FALSE(c.is_zero());
        EXPECT_EQ(cross_check(s2, s1, t), -c);
    }
}
