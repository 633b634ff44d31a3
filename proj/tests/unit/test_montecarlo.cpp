#include "fracharm/montecarlo.hpp"

#include <doctest.h>

#include <cmath>

using namespace fracharm;

TEST_CASE("splitmix64") {
    std::uint64_t state = 0;
    CHECK(splitmix64(state) == 0xe220a8397b1dcdafULL);
    CHECK(splitmix64(state) == 0x6e789e6aa1b965f4ULL);
}

TEST_CASE("configuration checks") {
    McConfig c;
    c.dt = 0.05;
    CHECK_THROWS(c.validate());
    McConfig d;
    d.x0 = 1.0;
    CHECK_THROWS(d.validate());
}

TEST_CASE("survival curve invariants and replay") {
    McConfig c;
    c.n_paths = 4000;
    c.t_max = 2.0;
    c.seed = 3;
    const auto clock = SubordinatorClock::stable(StableIndex::from_m(3));
    const SurvivalCurve s = survival_curve(c, clock);
    REQUIRE(!s.t_grid.empty());
    CHECK(s.t_grid[0] == 0.0);
    CHECK(s.survival[0] == 1.0);
    for (std::size_t i = 1; i < s.survival.size(); ++i) {
        CHECK(s.survival[i] <= s.survival[i - 1]);
        const double p = s.survival[i];
        CHECK(s.standard_errors[i] == doctest::Approx(std::sqrt(p * (1 - p) / c.n_paths)));
    }
    c.threads = 1;
    const SurvivalCurve again = survival_curve(c, clock);
    CHECK(again.survival == s.survival);
}

TEST_CASE("disjoint streams agree within three standard errors") {
    const auto clock = SubordinatorClock::stable(StableIndex::from_alpha(1.0));
    McConfig a;
    a.n_paths = 20000;
    a.t_max = 2.0;
    a.seed = 11;
    McConfig b = a;
    b.seed = 12;
    const SurvivalCurve sa = survival_curve(a, clock);
    const SurvivalCurve sb = survival_curve(b, clock);
    int outside = 0;
    for (std::size_t i = 1; i < sa.survival.size(); ++i) {
        const double se = std::hypot(sa.standard_errors[i], sb.standard_errors[i]);
        if (std::abs(sa.survival[i] - sb.survival[i]) > 3 * se) ++outside;
    }
    CHECK(outside == 0);
}

TEST_CASE("Brownian benchmark") {
    McConfig c;
    c.n_paths = 20000;
    c.dt = 1e-4;
    c.record_every = 500;
    c.t_max = 3.0;
    c.seed = 5;
    const LambdaEstimate e = estimate_lambda1(survival_curve(c, SubordinatorClock::deterministic()));
    REQUIRE(e.ok);
    CHECK(std::abs(e.lambda_hat / (M_PI * M_PI / 4) - 1.0) <= 0.05);
}

TEST_CASE("domain scaling") {
    const auto clock = SubordinatorClock::stable(StableIndex::from_alpha(1.0));
    McConfig small;
    small.n_paths = 20000;
    small.t_max = 8.0;
    small.seed = 21;
    McConfig large = small;
    large.a = -2.0;
    large.b = 2.0;
    large.t_max = 16.0;
    large.dt = 2e-3;
    const LambdaEstimate es = estimate_lambda1(survival_curve(small, clock));
    const LambdaEstimate el = estimate_lambda1(survival_curve(large, clock));
    REQUIRE(es.ok);
    REQUIRE(el.ok);
    CHECK(std::abs(el.lambda_hat / es.lambda_hat - 0.5) <= 0.05);
}

TEST_CASE("insufficient data is flagged") {
    McConfig c;
    c.n_paths = 100;
    c.t_max = 1.0;
    const LambdaEstimate e =
        estimate_lambda1(survival_curve(c, SubordinatorClock::stable(StableIndex::from_m(3))));
    CHECK_FALSE(e.ok);
    CHECK_FALSE(e.warning.empty());
}
