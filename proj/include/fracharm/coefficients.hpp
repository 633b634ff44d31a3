#pragma once

#include "fracharm/stable_index.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fracharm {

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
using Rational = boost::multiprecision::cpp_rational;

/// 50-digit binary float used where double precision cancels too much.
using WideFloat = boost::multiprecision::cpp_bin_float_50;

/// Thrown when an identity that must hold exactly does not.
class IdentityViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sign of sin(pi * k / m) for integers k and m > 0, computed without
/// floating point: +1, 0 or -1.
int sin_pi_ratio_sign(long long k, long long m);

/// Series coefficient of the one-sided stable density,
///   gamma_k = (-1)^(k+1) Gamma(k alpha/2 + 1) / (pi k!) * sin(pi k alpha/2).
/// Magnitude via log-gamma; the zero pattern is exact when alpha = 2/m.
double gamma_coefficient(int k, const StableIndex& idx);

/// Coefficients a_0(q) ... a_q(q) of the t-derivative expansion
///   d^q/dt^q [t^-c h(t^-c s)] = sum_j a_j(q) t^(-c-q) (t^-c s)^j h^(j)(t^-c s),
/// with c = 2/alpha, built from
///   a_0(0) = 1,
///   a_j(q+1) = (-c - q - c j) a_j(q) - c a_(j-1)(q).
template <typename T>
std::vector<T> a_recursion(int q, const T& c) {
    if (q < 0) throw std::invalid_argument("a_coefficients: q must be >= 0");
    std::vector<T> a{T(1)};
    for (int level = 0; level < q; ++level) {
        std::vector<T> next(a.size() + 1, T(0));
        for (std::size_t j = 0; j < next.size(); ++j) {
            T value(0);
            if (j < a.size()) value += (-c - T(level) - c * T(static_cast<long>(j))) * a[j];
            if (j >= 1) value -= c * a[j - 1];
            next[j] = value;
        }
        a = std::move(next);
    }
    return a;
}

std::vector<double> a_coefficients(int q, const StableIndex& idx);
/// Exact variant; requires alpha = 2/m.
std::vector<Rational> a_coefficients_exact(int q, const StableIndex& idx);

/// (x)_j = x (x+1) ... (x+j-1), i.e. Gamma(x+j)/Gamma(x) without forming
/// either Gamma value.
template <typename T>
T rising_factorial(const T& x, int j) {
    T out(1);
    for (int i = 0; i < j; ++i) out *= x + T(i);
    return out;
}

/// sum_j a_j(q) (-1)^j (k alpha/2 + 1)_j in exact arithmetic (alpha = 2/m).
Rational rising_identity_sum_exact(int q, int k, int m);

/// Same sum in floating arithmetic of type T, for arbitrary alpha.
template <typename T>
T rising_identity_sum(int q, int k, const T& alpha) {
    const T c = T(2) / alpha;
    const auto a = a_recursion<T>(q, c);
    const T base = T(k) * alpha / T(2) + T(1);
    T sum(0);
    for (int j = 0; j <= q; ++j) {
        const T term = a[j] * rising_factorial(base, j);
        sum += (j % 2 == 0) ? term : T(-term);
    }
    return sum;
}

/// Sum of |a_j(q) (k alpha/2 + 1)_j|; the natural scale for rounding error
/// in the double-precision version of rising_identity_sum.
double rising_identity_condition(int q, int k, double alpha);

/// Exact identity check: the sum vanishes for k < q and equals q! for k = q.
/// Returns the exact sum; throws IdentityViolation if it differs.
Rational check_lemma41(int q, int k, const StableIndex& idx);

/// c_{d,alpha} = 2^alpha pi^(-1-d/2) Gamma((d+alpha)/2) Gamma(1+alpha/2) sin(pi alpha/2),
/// the normalizing constant of the jump kernel of the fractional Laplacian.
double riesz_constant(int d, double alpha);
double riesz_constant(int d, const StableIndex& idx);

struct SignEntry {
    int q = 0;
    double gamma_q = 0.0;
    /// (-1)^q gamma_q
    double signed_value = 0.0;
    /// Exact sign of (-1)^q gamma_q from integer reasoning.
    int sign = 0;
};

/// (q, sign of (-1)^q gamma_q) for q = 0 ... m-1 with alpha = 2/m, m > 2.
std::vector<SignEntry> sign_ledger(int m);

} // namespace fracharm
