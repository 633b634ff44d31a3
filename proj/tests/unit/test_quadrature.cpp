#include "fracharm/quadrature.hpp"
#include "fracharm/richardson.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace fracharm;

TEST_CASE("quadrature rules") {
    const QuadratureSpec spec;
    CHECK(integrate_gk([](double x) { return std::exp(x); }, 0, 1, spec).value ==
          doctest::Approx(std::exp(1.0) - 1).epsilon(1e-14));
    CHECK(integrate_tanh_sinh([](double x) { return 1 / std::sqrt(x); }, 0, 1, spec).value ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(integrate_exp_sinh([](double x) { return std::exp(-x); }, 0, spec).value ==
          doctest::Approx(1.0).epsilon(1e-12));
    const QuadValue g =
        integrate_geometric([](double x) { return 1 / (x * x); }, 1e-3, 1e3, 4.0, spec);
    CHECK(g.converged);
    CHECK(g.value == doctest::Approx(1e3 - 1e-3).epsilon(1e-12));
    // tiny interval
    CHECK(integrate_tanh_sinh([](double x) { return x; }, 1e-9, 2e-9, spec).converged);
    const FixedRule rule = gauss_legendre_panels({0.0, 0.5, 1.0}, 20);
    CHECK(rule.nodes.size() == 40);
    double s = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::cos(rule.nodes[i]);
    CHECK(s == doctest::Approx(std::sin(1.0)).epsilon(1e-15));
    CHECK_THROWS(QuadratureSpec{1e-15, 1e-10, 100, 0.5}.validate());
}

TEST_CASE("richardson with fitted order") {
    const std::vector<double> h{0.4, 0.2, 0.1};
    std::vector<double> v;
    for (double x : h) v.push_back(3.0 + 2.0 * std::pow(x, 1.5));
    const Extrapolation e = richardson_fitted(h, v);
    CHECK(e.ok);
    CHECK(e.order == doctest::Approx(1.5).epsilon(1e-8));
    CHECK(e.value == doctest::Approx(3.0).epsilon(1e-12));
    const std::vector<double> bad{1.0, 2.0, 1.5};
    const Extrapolation f = richardson_fitted(h, bad);
    CHECK_FALSE(f.ok);
    CHECK(f.value == 1.5);
}
