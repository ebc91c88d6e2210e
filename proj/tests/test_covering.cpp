#include "support.hpp"

#include <gtest/gtest.h>

using namespace rspb;

namespace {

const CoveringSpec& phi8() {
    static const CoveringSpec c = Fixtures::instance().covering("phi8");
    return c;
}
const CoveringSpec& phi12() {
    static const CoveringSpec c = Fixtures::instance().covering("phi12");
    return c;
}

}  // namespace

TEST(Covering, Phi8MinusOneIdentity) {
    const CoveringSpec& c = phi8();
    ExprContext ctx = c.context();
    EXPECT_EQ(c.map - RatFunc(1), parse_ratfunc("P8^2/(64 s G8^3)", ctx));
}

TEST(Covering, Phi12MinusOneIdentity) {
    const CoveringSpec& c = phi12();
    ExprContext ctx = c.context();
    EXPECT_EQ(c.map - RatFunc(1), parse_ratfunc("P12^2/(27 (s+4)^3 x^5 G12)", ctx));
}

TEST(Covering, RamificationPatterns) {
    for (const auto* c : {&phi8(), &phi12()}) {
        RamificationReport r = verify_almost_belyi(*c);
        EXPECT_TRUE(r.ok) << c->name;
        EXPECT_TRUE(r.almost_belyi) << c->name;
        for (int f = 0; f < 3; ++f) EXPECT_EQ(r.fibers[f].actual, c->pattern.parts[f]) << c->name << " fiber " << f;
        // genus 0: sum of (e - 1) over all critical points is 2n - 2
        EXPECT_EQ(r.riemann_hurwitz, 2 * r.degree - 2) << c->name;
        EXPECT_EQ(check_factorization(*c), "");
    }
    EXPECT_EQ(to_string(verify_almost_belyi(phi8()).fibers[2].actual), "3+3+2");
    EXPECT_EQ(to_string(verify_almost_belyi(phi12()).fibers[2].actual), "5+4+1+1+1");
}

TEST(Covering, ExtraRamificationPoints) {
    ExprContext ctx;
    ctx.param = "s";
    ProjPoint e8 = extra_ramification_point(phi8()), e12 = extra_ramification_point(phi12());
    ASSERT_FALSE(e8.infinite);
    ASSERT_FALSE(e12.infinite);
    EXPECT_EQ(e8.value, parse_elem("5 s", ctx));
    EXPECT_EQ(e12.value, parse_elem("-5/s", ctx));
}

TEST(Covering, WrongPatternIsReported) {
    CoveringSpec c = phi8();
    c.pattern = parse_pattern("5+1+1+1 | 2+2+2+2 | 4+2+2");
    RamificationReport r = verify_almost_belyi(c);
    EXPECT_FALSE(r.ok);
    EXPECT_FALSE(r.diagnostics.empty());
}

TEST(Covering, NonAlmostBelyiMapIsRejected) {
    CoveringSpec c = phi8();
    c.map = parse_ratfunc("x^3 (x - 2)/(x^2 + 1)", c.context());
    RamificationReport r = verify_almost_belyi(c);
    EXPECT_FALSE(r.ok);
}

TEST(Covering, PatternParsing) {
    RamificationPattern p = parse_pattern("1+5+1+1 | 2+2+2+2 | 2+3+3");
    EXPECT_EQ(to_string(p), "5+1+1+1 | 2+2+2+2 | 3+3+2");
    EXPECT_EQ(p.degree(), 8);
    EXPECT_THROW(parse_pattern("5+1 | 2+2"), std::invalid_argument);
}

TEST(Covering, InvertedCovering) {
    CoveringSpec t = Fixtures::instance().covering("phi12-tilde");
    ExprContext ctx = phi12().context();
    RatFunc inv = parse_ratfunc("1/x", ctx);
    EXPECT_EQ(t.map, compose(phi12().map, inv));
    RamificationReport r = verify_almost_belyi(t);
    EXPECT_TRUE(r.ok);
    ProjPoint e = extra_ramification_point(t);
    ASSERT_FALSE(e.infinite);
    EXPECT_EQ(e.value, parse_elem("-s/5", ctx));
    EXPECT_EQ(t.poly("F12t"), phi12().poly("F12").invert_x());
}

TEST(Normalization, Phi8Hat) {
    NormalizedCovering nc = Fixtures::instance().normalization("phi8-hat");
    // marked points land on 0, 1, inf and t is a zero of the normalized map
    EXPECT_TRUE(nc.spec.map.num().evaluate(nc.t).is_zero());
    // the extra ramification point is a critical point with a generic value
    ASSERT_FALSE(nc.extra.infinite);
    RatFunc d = nc.spec.map.derivative();
    EXPECT_TRUE(d.num().evaluate(nc.extra.value).is_zero());
    ParamElem v = nc.spec.map.num().evaluate(nc.extra.value) / nc.spec.map.den().evaluate(nc.extra.value);
    EXPECT_FALSE(v.is_zero());
    EXPECT_NE(v, ParamElem(1));
    EXPECT_TRUE(verify_almost_belyi(nc.spec).ok);
}

TEST(Normalization, RecoversOriginalMap) {
    NormalizedCovering nc = Fixtures::instance().normalization("phi12-hat");
    // undoing the Mobius map gives phi12 with the parameter substituted
    RatFunc back = compose_mobius(nc.spec.map, nc.mobius.inverse());
    EXPECT_EQ(back, substitute_param(phi12().map, nc.reparam));
}

TEST(Normalization, AllFixturesNormalize) {
    for (const auto& r : Fixtures::instance().normalizations()) {
        if (!r.has("covering")) continue;  // a map used through `then`
        EXPECT_NO_THROW(Fixtures::instance().normalization(r.name)) << r.name;
    }
}

TEST(Normalization, MismatchedMobiusIsRejected) {
    const CoveringSpec& c = phi8();
    Mobius m{ParamElem(2), ParamElem(1), ParamElem(0), ParamElem(1)};
    EXPECT_THROW(normalize_covering(c, ParamElem::param(), m, "s", nullptr, {}), NormalizationError);
}
