// Walks through the eight-sheeted covering: verify it, pull back the
// hypergeometric system, and read off two Painleve VI solutions.

#include "rspullback/reproduce.hpp"

#include <iostream>

using namespace rspb;

int main() {
    const Fixtures& fx = Fixtures::instance();
    CoveringSpec c = fx.covering("phi8");
    RamificationReport rep = verify_almost_belyi(c);
    std::cout << "phi8 = " << to_string(c.map, c.param) << "\n";
    std::cout << "ramification " << to_string(RamificationPattern{{rep.fibers[0].actual, rep.fibers[1].actual, rep.fibers[2].actual}})
              << ", extra point x = " << to_string(extra_ramification_point(c).value, c.param) << "\n\n";

    ExponentTriple e = parse_exponents("1/5, 1/2, 1/3");
    Triple t = apparent_triple(c, e);
    Syzygy upper = row_syzygy(c, t, e, 1, Row::Upper), lower = row_syzygy(c, t, e, 1, Row::Lower);
    SchlesingerMatrix S = build_inverse_schlesinger(upper, lower, e, t);
    FuchsianSystem M = rs_pullback(hypergeometric_system(e), c.map, S);
    std::cout << "pulled back system:\n";
    std::cout << "  M11 = " << to_string(M.m[0][0], c.param) << "\n";
    std::cout << "  M21 = " << to_string(M.m[1][0], c.param) << "\n\n";

    NormalizedCovering nc = fx.normalization("phi8-hat");
    int k[3] = {5, 2, 3};
    ParametrizedSolution a = solution_theorem_2_1(nc, k, "extra point");
    ParametrizedSolution b = lower_left_root(M, nc, Entry::LowerLeft, "lower-left root");
    for (const auto* s : {&a, &b}) {
        std::cout << s->label << ": y = " << to_string(s->y, nc.spec.param) << "\n";
        std::cout << "  theta = " << to_string(s->params) << ", residual "
                  << (verify_solution(*s).exact_zero ? "vanishes" : "does not vanish") << "\n";
    }
    std::cout << "same solution: " << (a.y == b.y ? "yes" : "no") << "\n";
}
