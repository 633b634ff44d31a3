#include "fracharm/coefficients.hpp"

#include <boost/math/constants/constants.hpp>

#include <sstream>

namespace fracharm {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

double sin_pi_times(double x) {
    // sin(pi x) with x reduced modulo 2 first.
    double r = std::fmod(x, 2.0);
    if (r < 0) r += 2.0;
    if (r == 0.0 || r == 1.0) return 0.0;
    return std::sin(kPi * r);
}

} // namespace

int sin_pi_ratio_sign(long long k, long long m) {
    if (m <= 0) throw std::invalid_argument("sin_pi_ratio_sign: m must be positive");
    long long r = k % (2 * m);
    if (r < 0) r += 2 * m;
    if (r == 0 || r == m) return 0;
    return r < m ? 1 : -1;
}

double gamma_coefficient(int k, const StableIndex& idx) {
    if (k < 0) throw std::invalid_argument("gamma_coefficient: k must be >= 0");
    if (k == 0) return 0.0;
    double s;
    if (auto m = idx.m()) {
        if (sin_pi_ratio_sign(k, *m) == 0) return 0.0;
        const long long r = k % (2LL * *m);
        s = std::sin(kPi * static_cast<double>(r) / *m);
    } else {
        s = sin_pi_times(k * idx.beta());
        if (s == 0.0) return 0.0;
    }
    const double magnitude =
        std::exp(std::lgamma(k * idx.beta() + 1.0) - std::lgamma(k + 1.0)) / kPi;
    const double parity = (k % 2 == 1) ? 1.0 : -1.0; // (-1)^(k+1)
    return parity * magnitude * s;
}

std::vector<double> a_coefficients(int q, const StableIndex& idx) {
    return a_recursion<double>(q, idx.inv());
}

std::vector<Rational> a_coefficients_exact(int q, const StableIndex& idx) {
    const int m = idx.require_m();
    return a_recursion<Rational>(q, Rational(m));
}

Rational rising_identity_sum_exact(int q, int k, int m) {
    if (m < 1) throw std::invalid_argument("rising_identity_sum_exact: m must be positive");
    const auto a = a_recursion<Rational>(q, Rational(m));
    const Rational base = Rational(k, m) + 1;
    Rational sum = 0;
    Rational rising = 1;
    for (int j = 0; j <= q; ++j) {
        if (j > 0) rising *= base + (j - 1);
        const Rational term = a[j] * rising;
        if (j % 2 == 0) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    return sum;
}

double rising_identity_condition(int q, int k, double alpha) {
    const auto a = a_recursion<double>(q, 2.0 / alpha);
    const double base = k * alpha / 2.0 + 1.0;
    double total = 0.0;
    for (int j = 0; j <= q; ++j) total += std::abs(a[j] * rising_factorial(base, j));
    return total;
}

Rational check_lemma41(int q, int k, const StableIndex& idx) {
    const int m = idx.require_m();
    if (q < 0 || k < 0 || k > q) {
        throw std::invalid_argument("check_lemma41: need 0 <= k <= q");
    }
    const Rational sum = rising_identity_sum_exact(q, k, m);
    Rational expected = 0;
    if (k == q) {
        expected = 1;
        for (int i = 2; i <= q; ++i) expected *= i;
    }
    if (sum != expected) {
        std::ostringstream os;
        os << "derivative-coefficient identity violated at q=" << q << " k=" << k << " m=" << m
           << ": got " << sum << ", expected " << expected;
        throw IdentityViolation(os.str());
    }
    return sum;
}

double riesz_constant(int d, double alpha) {
    if (d < 1) throw std::invalid_argument("riesz_constant: d must be >= 1");
    if (!(alpha > 0.0 && alpha < 2.0)) {
        throw std::invalid_argument("riesz_constant: alpha must lie in (0,2)");
    }
    return std::pow(2.0, alpha) * std::pow(kPi, -1.0 - d / 2.0) *
           std::tgamma((d + alpha) / 2.0) * std::tgamma(1.0 + alpha / 2.0) *
           std::sin(kPi * alpha / 2.0);
}

double riesz_constant(int d, const StableIndex& idx) { return riesz_constant(d, idx.alpha()); }

std::vector<SignEntry> sign_ledger(int m) {
    if (m <= 2) throw std::invalid_argument("sign_ledger: m must be > 2");
    const auto idx = StableIndex::from_m(m);
    std::vector<SignEntry> out;
    out.reserve(m);
    for (int q = 0; q < m; ++q) {
        SignEntry e;
        e.q = q;
        e.gamma_q = gamma_coefficient(q, idx);
        e.signed_value = (q % 2 == 0) ? e.gamma_q : -e.gamma_q;
        // (-1)^q (-1)^(q+1) = -1, so the sign is -sign(sin(pi q/m)).
        e.sign = -sin_pi_ratio_sign(q, m);
        out.push_back(e);
    }
    return out;
}

} // namespace fracharm
