#include "fracharm/eigsolve1d.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

using namespace fracharm;

TEST_CASE("fractional centered difference weights") {
    const auto one = assemble(Grid1D(-1, 1, 31), 1.0);
    CHECK(one.weights[0] == doctest::Approx(4.0 / M_PI));
    CHECK(one.weights[1] == doctest::Approx(-one.weights[0] / 3.0));
    const auto two = assemble(Grid1D(-1, 1, 31), 2.0);
    CHECK(two.weights[0] == doctest::Approx(2.0));
    CHECK(two.weights[1] == doctest::Approx(-1.0));
    CHECK(two.weights[2] == doctest::Approx(0.0));
    CHECK_THROWS(assemble(Grid1D(-1, 1, 31), 2.5));
}

TEST_CASE("symbol of the weights") {
    const double alpha = 2.0 / 3.0;
    const auto op = assemble(Grid1D(-1, 1, 200000), alpha);
    const double theta = 1.0;
    double symbol = op.weights[0];
    for (std::size_t k = 1; k < op.weights.size(); ++k) symbol += 2 * op.weights[k] * std::cos(k * theta);
    CHECK(symbol == doctest::Approx(std::pow(2 * std::sin(theta / 2), alpha)).epsilon(1e-4));
}

TEST_CASE("Brownian anchor") {
    const auto r = refine_extrapolate(-1, 1, {319, 639, 1279}, 2.0);
    CHECK(r.extrapolation.ok);
    CHECK(std::abs(r.extrapolation.value - M_PI * M_PI / 4) <= 1e-4);
    CHECK(r.extrapolation.order == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("eigenpair properties") {
    const Grid1D grid(-1, 1, 399);
    const EigenPair p = smallest_eigenpair(assemble(grid, 2.0 / 3.0));
    CHECK(p.converged);
    CHECK(p.residual <= 1e-8 * p.lambda1);
    double norm = 0;
    for (double v : p.phi1) norm += v * v * grid.h();
    CHECK(norm == doctest::Approx(1.0));
    CHECK(*std::min_element(p.phi1.begin(), p.phi1.end()) > 0.0);
    for (std::size_t i = 0; i < p.phi1.size(); ++i)
        CHECK(std::abs(p.phi1[i] - p.phi1[p.phi1.size() - 1 - i]) <= 1e-10);
    CHECK(grid.index_of(0.0) == 200);
    CHECK(grid.index_of(0.001) == -1);
    CHECK(grid.index_of(-1.0) == -1);
}

TEST_CASE("interval scaling law") {
    for (double alpha : {0.5, 1.0, 2.0 / 3.0}) {
        const EigenPair small = smallest_eigenpair(assemble(Grid1D(-1, 1, 255), alpha));
        const EigenPair large = smallest_eigenpair(assemble(Grid1D(-2, 2, 255), alpha));
        CHECK(std::abs(large.lambda1 / small.lambda1 - std::pow(2.0, -alpha)) <= 1e-12);
    }
}

TEST_CASE("known eigenvalues") {
    // alpha = 1 on (-1, 1): 1.1577738836977 from the literature on the Cauchy process.
    const auto r = refine_extrapolate(-1, 1, {319, 639, 1279}, 1.0);
    CHECK(r.extrapolation.value == doctest::Approx(1.1577738837).epsilon(1e-4));
}
