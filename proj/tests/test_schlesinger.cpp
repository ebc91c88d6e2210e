#include "support.hpp"

#include <gtest/gtest.h>

using namespace rspb;

namespace {

ExponentTriple exps(const char* s) { return parse_exponents(s); }

const FuchsianSystem& t26() {
    static const FuchsianSystem M = pullback_system(load_system(Fixtures::instance().system_record("T26")));
    return M;
}

}  // namespace

TEST(Hypergeometric, ResidueExponentDifferences) {
    ExponentTriple e = exps("1/5, 1/2, 1/3");
    FuchsianSystem M = hypergeometric_system(e);
    EXPECT_TRUE(M.traceless());
    // residues at 0 and 1 have eigenvalues +-e0/2 and +-e1/2
    EXPECT_EQ(difference_squared(M, Poly::x()), Poly(ParamElem(Rational(1, 25))));
    EXPECT_EQ(difference_squared(M, Poly::x() - Poly(1)), Poly(ParamElem(Rational(1, 4))));
    EXPECT_EQ(difference_squared_at_infinity(M), ParamElem(Rational(1, 9)));
    auto report = singularity_report(M);
    EXPECT_EQ(essential_count(report), 3);
}

TEST(Hypergeometric, DegenerateExponentsRejected) {
    EXPECT_THROW(hypergeometric_system(exps("1/2, 1/3, 0")), std::domain_error);
    EXPECT_THROW(parse_exponents("1/2, 1/3"), std::invalid_argument);
}

TEST(Pullback, DirectPullbackByIdentity) {
    ExponentTriple e = exps("1/3, 1/4, 1/5");
    FuchsianSystem M = hypergeometric_system(e);
    EXPECT_EQ(direct_pullback(M, RatFunc::x()), M);
}

TEST(Pullback, IdentitySchlesingerIsDirectPullback) {
    ExponentTriple e = exps("1/3, 1/4, 1/5");
    FuchsianSystem M = hypergeometric_system(e);
    RatFunc phi = parse_ratfunc("x^2", ExprContext{});
    SchlesingerMatrix S;
    S.N[0][0] = Poly(1);
    S.N[1][1] = Poly(1);
    S.K = Poly(1);
    EXPECT_EQ(rs_pullback(M, phi, S), direct_pullback(M, phi));
}

TEST(Pullback, RequiresDeterminantK) {
    SchlesingerMatrix S;
    S.N[0][0] = Poly(2);
    S.N[1][1] = Poly(1);
    S.K = Poly(1);
    EXPECT_THROW(rs_pullback(hypergeometric_system(exps("1/3, 1/4, 1/5")), RatFunc::x(), S), std::invalid_argument);
}

TEST(Pullback, System26) {
    const Record& r = Fixtures::instance().system_record("T26");
    SystemData d = load_system(r);
    const FuchsianSystem& M = t26();
    EXPECT_TRUE(M.traceless());
    EXPECT_EQ(M.m[0][0], parse_ratfunc(r.get("m11"), d.ctx));
    // off-diagonal entries up to a constant diagonal gauge
    RatFunc q21 = M.m[1][0] / parse_ratfunc(r.get("m21"), d.ctx);
    EXPECT_TRUE(q21.is_constant());
    EXPECT_EQ(M.m[0][1] * M.m[1][0], parse_ratfunc(r.get("m12"), d.ctx) * parse_ratfunc(r.get("m21"), d.ctx));
}

TEST(Pullback, ApparentSingularitiesRemoved) {
    SystemData d = load_system(Fixtures::instance().system_record("T26"));
    std::vector<Poly> hints;
    for (const auto& f : d.covering.factors)
        if (!f.at_infinity) hints.push_back(f.poly);
    auto report = singularity_report(t26(), hints);
    EXPECT_EQ(essential_count(report), 4);
    // no pole at the roots of F, G, H other than the essential ones
    Poly den = t26().m[1][0].den();
    EXPECT_EQ(gcd(den, d.covering.poly("P8")).degree(), 0);
    EXPECT_EQ(gcd(den, d.covering.poly("G8")).degree(), 0);
}

TEST(Pullback, GaugeCovariance) {
    SystemData d = load_system(Fixtures::instance().system_record("T26"));
    SchlesingerMatrix S = build_inverse_schlesinger(d.upper, d.lower, d.e, d.triple);
    FuchsianSystem M = rs_pullback(hypergeometric_system(d.e), d.covering.map, S);
    // N -> diag(c, 1/c) N conjugates the result
    ParamElem c(Rational(7, 3));
    SchlesingerMatrix T = S;
    T.N[0][0] = c * S.N[0][0];
    T.N[0][1] = c * S.N[0][1];
    T.N[1][0] = c.inverse() * S.N[1][0];
    T.N[1][1] = c.inverse() * S.N[1][1];
    FuchsianSystem G = rs_pullback(hypergeometric_system(d.e), d.covering.map, T);
    EXPECT_EQ(G.m[0][0], M.m[0][0]);
    EXPECT_EQ(G.m[0][1], (c * c) * M.m[0][1]);
    EXPECT_EQ(G.m[1][0], (c * c).inverse() * M.m[1][0]);
    // the x-root of the lower-left entry does not move
    EXPECT_EQ(G.m[1][0].num().monic(), M.m[1][0].num().monic());
}

TEST(Pullback, SchlesingerDeterminant) {
    SystemData d = load_system(Fixtures::instance().system_record("T27"));
    SchlesingerMatrix S = build_inverse_schlesinger(d.upper, d.lower, d.e, d.triple);
    EXPECT_EQ(S.det(), S.K);
    EXPECT_EQ(S.K, d.triple.F * d.triple.G * d.triple.H);
    EXPECT_THROW(build_inverse_schlesinger(d.upper, d.upper, d.e, d.triple), std::logic_error);
}

TEST(Pullback, LowerLeftAgreesWithDirectFormula) {
    SystemData d = load_system(Fixtures::instance().system_record("T26"));
    RatFunc direct = direct_expression(d.covering.map, d.triple, d.lower, d.e);
    RatFunc q = t26().m[1][0] / direct;
    EXPECT_TRUE(q.is_constant()) << to_string(q, "s");
}

TEST(Residues, RationalSqrt) {
    EXPECT_EQ(rational_sqrt(Rational(9, 4)), Rational(3, 2));
    EXPECT_FALSE(rational_sqrt(Rational(2)));
    EXPECT_FALSE(rational_sqrt(Rational(-1)));
}

TEST(Residues, ResidueModFactor) {
    ExprContext c;
    RatFunc f = parse_ratfunc("(3x + 1)/((x^2 - 2)(x + 5))", c);
    Poly r = residue_mod(f, parse_poly("x^2 - 2", c));
    // residue at a root a of x^2 - 2 is (3a + 1)/(2a (a + 5))
    RatFunc check = parse_ratfunc("(3x+1)", c) - RatFunc(r) * parse_ratfunc("2x(x+5)", c);
    EXPECT_TRUE((check.num() % parse_poly("x^2 - 2", c)).is_zero());
    EXPECT_THROW(residue_mod(parse_ratfunc("1/x^2", c), Poly::x()), std::domain_error);
    EXPECT_EQ(limit_x_times(parse_ratfunc("(2x + 1)/(x^2 + 3)", c)), ParamElem(2));
}
