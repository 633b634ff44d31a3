#include "fracharm/coefficients.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace fracharm;

TEST_CASE("stable index") {
    const auto idx = StableIndex::from_m(3);
    CHECK(idx.alpha() == doctest::Approx(2.0 / 3.0));
    CHECK(idx.inv() == doctest::Approx(3.0));
    CHECK(idx.theorem_mode());
    CHECK(StableIndex::from_alpha(0.5).m() == 4);
    CHECK_FALSE(StableIndex::from_alpha(0.3).m().has_value());
    CHECK_FALSE(StableIndex::from_m(2).theorem_mode());
    CHECK_THROWS(StableIndex::from_m(2).require_theorem_mode());
    CHECK_THROWS(StableIndex::from_alpha(2.0));
    CHECK_THROWS(StableIndex::from_alpha(0.0));
}

TEST_CASE("gamma coefficients") {
    const auto levy = StableIndex::from_alpha(1.0);
    // Levy density 1/(2 sqrt(pi)) s^(-3/2) exp(-1/(4s)) expanded in s^(-k/2 - 1).
    CHECK(gamma_coefficient(1, levy) == doctest::Approx(0.2820947918).epsilon(1e-10));
    CHECK(gamma_coefficient(2, levy) == 0.0);
    CHECK(gamma_coefficient(3, levy) == doctest::Approx(-0.25 / (2 * std::sqrt(M_PI))).epsilon(1e-12));
    CHECK(gamma_coefficient(0, StableIndex::from_m(3)) == 0.0);
    CHECK(gamma_coefficient(3, StableIndex::from_m(3)) == 0.0);
    CHECK(gamma_coefficient(6, StableIndex::from_m(3)) == 0.0);
    CHECK(gamma_coefficient(4, StableIndex::from_m(3)) != 0.0);
}

TEST_CASE("a_j(q) recursion") {
    const auto idx = StableIndex::from_m(3);
    const auto a0 = a_coefficients(0, idx);
    REQUIRE(a0.size() == 1);
    CHECK(a0[0] == 1.0);
    // d/dt t^(-c) F(t^(-c) s) = t^(-c-1) (-c F(x) - c x F'(x))
    const auto a1 = a_coefficients(1, idx);
    REQUIRE(a1.size() == 2);
    CHECK(a1[0] == doctest::Approx(-3.0));
    CHECK(a1[1] == doctest::Approx(-3.0));
    const auto exact = a_coefficients_exact(4, idx);
    const auto approx = a_coefficients(4, idx);
    for (std::size_t j = 0; j < exact.size(); ++j)
        CHECK(static_cast<double>(exact[j]) == doctest::Approx(approx[j]).epsilon(1e-14));
}

TEST_CASE("rising factorial identity, exact") {
    CHECK(rising_identity_sum_exact(1, 0, 3) == 0);
    CHECK(rising_identity_sum_exact(1, 1, 3) == 1);
    CHECK(rising_identity_sum_exact(4, 4, 4) == 24);
    for (int m = 3; m <= 6; ++m) {
        const auto idx = StableIndex::from_m(m);
        for (int q = 0; q <= 8; ++q)
            for (int k = 0; k <= q; ++k) CHECK_NOTHROW(check_lemma41(q, k, idx));
    }
    CHECK_THROWS_AS(check_lemma41(2, 3, StableIndex::from_m(3)), std::invalid_argument);
    CHECK_THROWS(check_lemma41(1, 1, StableIndex::from_alpha(0.3)));
}

TEST_CASE("rising factorial identity, floating point") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (int trial = 0; trial < 20; ++trial) {
        const double alpha = u(rng);
        for (int q = 0; q <= 8; ++q) {
            for (int k = 0; k <= q; ++k) {
                const double sum =
                    static_cast<double>(rising_identity_sum<WideFloat>(q, k, WideFloat(alpha)));
                const double fact = std::tgamma(q + 1.0);
                CHECK(std::abs(sum - (k == q ? fact : 0.0)) / fact <= 1e-10);
            }
        }
    }
    // Plain double loses digits to cancellation at large q.
    CHECK(rising_identity_condition(8, 0, 0.1) > 1e6);
}

TEST_CASE("riesz constant") {
    CHECK(riesz_constant(1, 1.0) == doctest::Approx(1.0 / M_PI).epsilon(1e-14));
    // d = 3, alpha = 1: 1 / pi^2
    CHECK(riesz_constant(3, 1.0) == doctest::Approx(1.0 / (M_PI * M_PI)).epsilon(1e-14));
    CHECK(riesz_constant(1, 0.5) > 0.0);
}

TEST_CASE("sign ledger") {
    for (int m = 3; m <= 10; ++m) {
        for (const auto& e : sign_ledger(m)) {
            CHECK(e.q < m);
            CHECK(e.signed_value <= 0.0);
        }
    }
    const auto ledger = sign_ledger(3);
    REQUIRE(ledger.size() == 3);
    CHECK(ledger[0].sign == 0);
    CHECK(ledger[1].sign == -1);
    CHECK(ledger[2].sign == -1);
    CHECK(sin_pi_ratio_sign(3, 3) == 0);
    CHECK(sin_pi_ratio_sign(1, 3) == 1);
    CHECK(sin_pi_ratio_sign(4, 3) == -1);
}
