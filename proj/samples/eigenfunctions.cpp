#include <cmath>
#include <cstdio>

#include "hankelc/hankelc.hpp"

using namespace hankelc;

int main() {
    const MuVector mu({make_rational(1, 2), Rational(0)});
    EvenPolynomial q(2);
    q.add_term(MultiIndex({0, 0}), Rational(1));
    const SymbolicHFunction g(mu, q, make_rational(1, 2));

    const GridSpec grid = GridSpec::uniform_axes(2, linspace(0.25, 3.0, 4));
    const GridFunction h = hankel_symbolic(g, grid, default_rule(g, QuadratureConfig{}));

    std::vector<double> x(2);
    double err = 0.0;
    for (std::size_t i = 0; i < grid.total(); ++i) {
        grid.point(i, x);
        err = std::max(err, std::abs(h.values[i] - eval_symbolic(g, x)));
    }
    std::printf("gaussian eigenfunction: max |h f - f| = %.3e on %zu points\n", err, grid.total());

    const MultiIndex k({1, 0});
    std::printf("(T^k delta, f) = %.12f, exact limit %s\n", pair_delta(k, mu, g),
                format_rational(delta_limit_exact(k, g)).c_str());
    return err < 1e-8 ? 0 : 1;
}
