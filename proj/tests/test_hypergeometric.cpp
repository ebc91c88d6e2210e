#include "rspullback/hypergeometric.hpp"

#include <gtest/gtest.h>

using namespace rspb;

TEST(Series, ElementaryClosedForms) {
    // 2F1(1, 1; 2; z) = -log(1 - z)/z
    for (Complex z : {Complex(0.3, 0), Complex(-0.5, 0.2), Complex(0, 0.7)}) {
        EXPECT_LT(std::abs(numeric_2f1(1, 1, 2, z) - (-std::log(1.0 - z) / z)), 1e-13);
        // 2F1(a, b; b; z) = (1 - z)^(-a)
        EXPECT_LT(std::abs(numeric_2f1(0.3, 1.7, 1.7, z) - std::pow(1.0 - z, -0.3)), 1e-13);
        // 2F1(1/2, 1/2; 3/2; z^2) = asin(z)/z
        EXPECT_LT(std::abs(numeric_2f1(0.5, 0.5, 1.5, z * z) - std::asin(z) / z), 1e-13);
    }
}

TEST(Series, TerminatesForNegativeIntegerA) {
    // 2F1(-2, b; c; z) = 1 - 2 b z/c + b (b + 1) z^2/(c (c + 1))
    double b = 0.7, c = 1.3;
    Complex z(0.4, -0.1);
    Complex want = 1.0 - 2 * b * z / c + b * (b + 1) * z * z / (c * (c + 1));
    EXPECT_LT(std::abs(numeric_2f1(-2, b, c, z) - want), 1e-15);
}

TEST(Series, Derivative) {
    double a = 0.2, b = -0.35, c = 0.8;
    Complex z(0.3, 0.2), h(1e-6, 0);
    Complex fd = (numeric_2f1(a, b, c, z + h) - numeric_2f1(a, b, c, z - h)) / (2.0 * h);
    EXPECT_LT(std::abs(numeric_2f1_derivative(a, b, c, z) - fd), 1e-8);
}

TEST(Series, DomainErrors) {
    EXPECT_THROW(numeric_2f1(0.5, 0.5, 1, Complex(1.0, 0)), std::domain_error);
    EXPECT_THROW(numeric_2f1(0.5, 0.5, -2, Complex(0.1, 0)), std::domain_error);
    ExponentTriple e{Rational(1, 5), Rational(1, 2), Rational(1, 3)};
    EXPECT_THROW(verify_local_solution(e, LocalSolution::AtZero, {Complex(2, 0)}), std::domain_error);
    EXPECT_THROW(verify_local_solution(e, LocalSolution::InfinityFirst, {Complex(0.5, 0)}), std::domain_error);
}

TEST(LocalSolutions, SatisfyTheSystem) {
    const ExponentTriple cases[] = {{Rational(1, 5), Rational(1, 2), Rational(1, 3)},
                                    {Rational(2, 5), Rational(1, 2), Rational(1, 3)},
                                    {Rational(1, 3), Rational(1, 2), Rational(2, 5)}};
    for (const auto& e : cases)
        for (auto w : {LocalSolution::AtZero, LocalSolution::InfinityFirst, LocalSolution::InfinitySecond})
            EXPECT_LT(verify_local_solution(e, w, default_samples(w)), 1e-10) << to_string(e) << " " << to_string(w);
}

TEST(LocalSolutions, WrongExponentsFail) {
    // the series for one triple do not solve the system of another
    ExponentTriple e{Rational(1, 5), Rational(1, 2), Rational(1, 3)};
    ExponentTriple other{Rational(1, 5), Rational(1, 2), Rational(1, 4)};
    double worst = 0;
    for (Complex z : default_samples(LocalSolution::AtZero)) {
        LocalValue v = evaluate_local_solution(e, LocalSolution::AtZero, z);
        Complex m[2][2];
        hypergeometric_matrix(other, z, m);
        worst = std::max(worst, std::abs(v.dpsi[0] - m[0][0] * v.psi[0] - m[0][1] * v.psi[1]));
    }
    EXPECT_GT(worst, 1e-4);
}

TEST(LocalSolutions, MatrixMatchesExactSystem) {
    ExponentTriple e{Rational(2, 5), Rational(1, 2), Rational(1, 3)};
    FuchsianSystem M = hypergeometric_system(e);
    Rational z(3, 7);
    Complex m[2][2];
    hypergeometric_matrix(e, Complex(z.get_d(), 0), m);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            ParamElem v = M.m[i][j].num().evaluate(ParamElem(z)) / M.m[i][j].den().evaluate(ParamElem(z));
            EXPECT_NEAR(m[i][j].real(), v.as_rational().get_d(), 1e-14);
        }
}
