#pragma once

// Numeric Gauss hypergeometric series and checks of explicit local
// solutions of the matrix hypergeometric system. The only floating-point
// part of the library.

#include "schlesinger.hpp"

#include <cmath>
#include <complex>

namespace rspb {

using Complex = std::complex<double>;

struct SeriesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 2F1(a, b; c; z) for |z| < 1, summed until the terms stop mattering.
inline Complex numeric_2f1(double a, double b, double c, Complex z, int max_terms = 20000) {
    if (std::abs(z) >= 1) throw std::domain_error("numeric_2f1: |z| must be below 1");
    if (c <= 0 && std::floor(c) == c) throw std::domain_error("numeric_2f1: c is a non-positive integer");
    Complex sum = 1, comp = 0, term = 1;
    int quiet = 0;
    for (int n = 0; n < max_terms; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        // Kahan summation
        Complex y = term - comp;
        Complex t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) {
            if (++quiet == 3) return sum;
        } else {
            quiet = 0;
        }
        if (term == Complex(0)) return sum;
    }
    throw SeriesError("numeric_2f1: series did not converge");
}

inline Complex numeric_2f1(const Rational& a, const Rational& b, const Rational& c, Complex z) {
    return numeric_2f1(a.get_d(), b.get_d(), c.get_d(), z);
}

// d/dz 2F1(a, b; c; z) = ab/c 2F1(a+1, b+1; c+1; z)
inline Complex numeric_2f1_derivative(double a, double b, double c, Complex z) {
    return a * b / c * numeric_2f1(a + 1, b + 1, c + 1, z);
}

enum class LocalSolution { AtZero, InfinityFirst, InfinitySecond };

inline const char* to_string(LocalSolution w) {
    switch (w) {
        case LocalSolution::AtZero: return "z=0 solution";
        case LocalSolution::InfinityFirst: return "z=inf basis, first";
        default: return "z=inf basis, second";
    }
}

namespace detail {

// c * u^m * 2F1(a, b; c; u) with u = z or 1/z, and its z-derivative.
struct SeriesTerm {
    double coef;
    int upow;  // extra factor u^upow (0 or 1)
    double a, b, c;
    bool inverted;

    std::pair<Complex, Complex> value_and_derivative(Complex z) const {
        Complex u = inverted ? 1.0 / z : z;
        Complex du = inverted ? -1.0 / (z * z) : 1.0;
        Complex f = numeric_2f1(a, b, c, u), fp = numeric_2f1_derivative(a, b, c, u);
        Complex up = upow ? u : Complex(1);
        Complex v = coef * up * f;
        Complex dv = coef * ((upow ? Complex(1) : Complex(0)) * f + up * fp) * du;
        return {v, dv};
    }
};

struct LocalSolutionData {
    double alpha, beta;  // prefactor z^alpha (1-z)^beta
    SeriesTerm comp[2];
};

inline LocalSolutionData local_solution_data(const ExponentTriple& e, LocalSolution which) {
    double e0 = e.e0.get_d(), e1 = e.e1.get_d(), ei = e.einf.get_d();
    switch (which) {
        case LocalSolution::AtZero:
            return {-e0 / 2, -e1 / 2,
                    {{e0 + e1 - ei, 0, (-e0 - e1 - ei) / 2, 1 + (-e0 - e1 + ei) / 2, 1 - e0, false},
                     {e0 - e1 + ei, 0, (-e0 - e1 + ei) / 2, 1 + (-e0 - e1 - ei) / 2, 1 - e0, false}}};
        case LocalSolution::InfinityFirst:
            return {(e1 + ei) / 2, -e1 / 2,
                    {{4 * ei * (ei - 1), 0, (-e0 - e1 - ei) / 2, (e0 - e1 - ei) / 2, -ei, true},
                     {ei * ei - (e0 - e1) * (e0 - e1), 1, 1 + (-e0 - e1 - ei) / 2, 1 + (e0 - e1 - ei) / 2, 2 - ei, true}}};
        default:
            return {(e1 - ei) / 2, -e1 / 2,
                    {{ei * ei - (e0 + e1) * (e0 + e1), 1, 1 + (-e0 - e1 + ei) / 2, 1 + (e0 - e1 + ei) / 2, 2 + ei, true},
                     {4 * ei * (ei + 1), 0, (-e0 - e1 + ei) / 2, (e0 - e1 + ei) / 2, ei, true}}};
    }
}

}  // namespace detail

struct LocalValue {
    Complex psi[2], dpsi[2];
};

inline LocalValue evaluate_local_solution(const ExponentTriple& e, LocalSolution which, Complex z) {
    auto d = detail::local_solution_data(e, which);
    Complex pref = std::pow(z, d.alpha) * std::pow(1.0 - z, d.beta);
    Complex dlog = d.alpha / z - d.beta / (1.0 - z);
    LocalValue v;
    for (int i = 0; i < 2; ++i) {
        auto [f, fp] = d.comp[i].value_and_derivative(z);
        v.psi[i] = pref * f;
        v.dpsi[i] = pref * (dlog * f + fp);
    }
    return v;
}

// Entries of the hypergeometric system at a complex point.
inline void hypergeometric_matrix(const ExponentTriple& e, Complex z, Complex m[2][2]) {
    double a = e.e0.get_d(), b = e.e1.get_d(), c = e.einf.get_d();
    Complex k = 1.0 / (4 * c * z * (1.0 - z));
    m[0][0] = k * (a * a - b * b + c * c - 2 * c * c * z);
    m[0][1] = k * (c * c - (a + b) * (a + b));
    m[1][0] = k * ((a - b) * (a - b) - c * c);
    m[1][1] = k * (2 * c * c * z - a * a + b * b - c * c);
}

// max over samples of |Psi' - M Psi| (max-norm), derivatives from the
// differentiated series.
inline double verify_local_solution(const ExponentTriple& e, LocalSolution which, const std::vector<Complex>& samples) {
    double worst = 0;
    for (Complex z : samples) {
        bool at_zero = which == LocalSolution::AtZero;
        if (at_zero ? std::abs(z) >= 1 : std::abs(z) <= 1)
            throw std::domain_error("verify_local_solution: sample point outside the convergence domain");
        if (at_zero && e.e0 > 0 && e.e0.get_den() == 1) throw std::domain_error("verify_local_solution: e0 is a positive integer");
        LocalValue v = evaluate_local_solution(e, which, z);
        Complex m[2][2];
        hypergeometric_matrix(e, z, m);
        for (int i = 0; i < 2; ++i) {
            Complex r = v.dpsi[i] - (m[i][0] * v.psi[0] + m[i][1] * v.psi[1]);
            worst = std::max(worst, std::abs(r));
        }
    }
    return worst;
}

inline std::vector<Complex> default_samples(LocalSolution which) {
    if (which == LocalSolution::AtZero) return {{0.1, 0}, {0.2, 0.1}, {-0.3, 0}, {0, 0.25}, {0.4, -0.2}};
    return {{4, 0}, {3, 2}, {-5, 0}, {0, 6}, {2.5, -3}};
}

}  // namespace rspb
