#include "fracharm/subordinator.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace fracharm;

namespace {
double levy(double s) { return std::exp(-0.25 / s) / (2.0 * std::sqrt(M_PI) * std::pow(s, 1.5)); }
}

TEST_CASE("Levy closed form") {
    const auto idx = StableIndex::from_alpha(1.0);
    const SubordinatorDensity density(idx);
    for (double s = 0.2; s <= 50.0; s *= 1.1) {
        CHECK(std::abs(density.f1(s) - levy(s)) / levy(s) <= 1e-10);
    }
    CHECK(density.f1(1.0) == doctest::Approx(0.2196956447).epsilon(1e-10));
    // below the series threshold the integral representation takes over
    for (double s : {0.02, 0.05, 0.08}) CHECK(std::abs(density.f1(s) - levy(s)) / levy(s) <= 1e-10);
    // scaling f_t(s) = t^(-2) f_1(s t^(-2)) at alpha = 1
    CHECK(density.ft(2.0, 3.0) == doctest::Approx(0.25 * levy(0.75)).epsilon(1e-12));
}

TEST_CASE("series diagnostics") {
    const auto idx = StableIndex::from_m(3);
    const SubordinatorDensity density(idx);
    CHECK(density.threshold() == doctest::Approx(0.0307).epsilon(0.02));
    const DensityEval e = density_f1(1.0, idx, SeriesPolicy::for_index(idx));
    CHECK(e.series_certified);
    CHECK(e.terms_used > 3);
    CHECK(e.tail_estimate < 1e-14);
    const DensityEval small = density_f1(1e-3, idx, SeriesPolicy::for_index(idx));
    CHECK(small.route == DensityRoute::IntegralRepresentation);
    CHECK_FALSE(small.series_certified);
    CHECK(small.value >= 0.0);
    CHECK_THROWS(density_f1(-1.0, idx, SeriesPolicy::for_index(idx)));
}

TEST_CASE("series and integral routes agree") {
    for (int m : {2, 3, 5}) {
        const SubordinatorDensity density(StableIndex::from_m(m));
        const double x = 2.0 * density.threshold();
        for (int j = 0; j <= 3; ++j) {
            const double a = density.series_scaled_derivative(j, x);
            const double b = density.integral_scaled_derivative(j, x);
            CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
        }
    }
}

TEST_CASE("time derivatives against finite differences") {
    const auto idx = StableIndex::from_m(3);
    const SubordinatorDensity density(idx);
    const double h = 1e-4;
    for (double s : {0.05, 0.3, 2.0}) {
        for (int q = 1; q <= 3; ++q) {
            const double t = 0.7;
            const double fd = (density.dt_q(q - 1, t + h, s) - density.dt_q(q - 1, t - h, s)) / (2 * h);
            const double exact = density.dt_q(q, t, s);
            CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
        }
    }
    CHECK(density.dt_q(0, 0.7, 0.3) == doctest::Approx(density.ft(0.7, 0.3)).epsilon(1e-14));
}

TEST_CASE("termwise generator identity") {
    for (int m : {3, 4, 5})
        for (int k = 0; k <= 20; ++k) CHECK(pde_coefficient_residual(k, m) <= 1e-12);
}

TEST_CASE("Laplace certificate") {
    const QuadratureSpec quad{1e-15, 1e-10, 4096, 10.0};
    for (int m : {3, 4, 5}) {
        const auto idx = StableIndex::from_m(m);
        for (double lambda : {0.1, 0.3, 1.0, 3.0, 10.0})
            for (double t : {0.25, 1.0, 4.0}) CHECK(laplace_residual(lambda, t, idx, quad) <= 1e-8);
        const SubordinatorDensity density(idx);
        CHECK(std::abs(total_mass(1.0, density, quad).value - 1.0) <= 1e-8);
    }
}

TEST_CASE("boundary limit probe") {
    for (int m : {2, 3, 5}) {
        const auto idx = StableIndex::from_m(m);
        const SubordinatorDensity density(idx);
        double mode = 1.0;
        for (double x = 1e-4; x < 10.0; x *= 1.01)
            if (density.f1(x) > density.f1(mode)) mode = x;
        std::vector<double> s;
        for (double x = 0.5 * mode; x > density.negligible_below(); x *= 0.8) s.push_back(x);
        for (int n = 0; n <= 2; ++n) {
            const auto v = boundary_limit_probe(n, idx, s, SeriesPolicy::for_index(idx));
            REQUIRE(v.size() == s.size());
            const auto peak = std::max_element(v.begin(), v.end()) - v.begin();
            for (std::size_t i = peak + 1; i < v.size(); ++i) CHECK(v[i] < v[i - 1]);
            CHECK(v.back() < 1e-10 * v[peak]);
        }
    }
    const auto levy_idx = StableIndex::from_alpha(1.0);
    const std::vector<double> one{0.05};
    const auto f0 = boundary_limit_probe(0, levy_idx, one, SeriesPolicy::for_index(levy_idx));
    CHECK(f0[0] == doctest::Approx(levy(0.05)).epsilon(1e-10));
    // f'(s) = f(s) (1/(4 s^2) - 3/(2 s))
    const std::vector<double> pts{2.0, 0.5, 0.05};
    const auto f1 = boundary_limit_probe(1, levy_idx, pts, SeriesPolicy::for_index(levy_idx));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double x = pts[i];
        const double d = levy(x) * (0.25 / (x * x) - 1.5 / x);
        CHECK(std::abs(f1[i] - std::abs(d)) <= 1e-8 * std::max(1.0, std::abs(d)));
    }
    CHECK_THROWS(boundary_limit_probe(0, levy_idx, std::vector<double>{0.1, 0.2},
                                      SeriesPolicy::for_index(levy_idx)));
}

TEST_CASE("sampler matches the Laplace transform") {
    for (double alpha : {1.0, 0.5}) {
        const auto idx = StableIndex::from_alpha(alpha);
        std::mt19937_64 rng(42);
        const int n = 200000;
        const double dt = 0.3, lambda = 1.7;
        double sum = 0.0, sum2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double s = sample_subordinator_increment(dt, idx, rng);
            REQUIRE(s > 0.0);
            const double v = std::exp(-lambda * s);
            sum += v;
            sum2 += v * v;
        }
        const double mean = sum / n;
        const double se = std::sqrt((sum2 / n - mean * mean) / n);
        CHECK(std::abs(mean - std::exp(-dt * std::pow(lambda, alpha / 2))) <= 4 * se);
    }
}

TEST_CASE("compensated sum") {
    std::vector<double> terms{1e16, 1.0, -1e16, 1.0};
    CHECK(compensated_sum(terms) == 2.0);
}
