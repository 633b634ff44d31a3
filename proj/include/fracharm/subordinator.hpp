#pragma once

#include "fracharm/quadrature.hpp"
#include "fracharm/stable_index.hpp"

#include <random>
#include <span>
#include <vector>

namespace fracharm {

/// Truncation controls for the series f_1(s) = sum_k gamma_k s^(-k alpha/2 - 1).
///
/// Below s_min_certified the alternating terms cancel too strongly for double
/// precision; values there come from the integral representation instead and
/// are reported as not series-certified.
struct SeriesPolicy {
    int max_terms = 200;
    double rel_stop = 1e-16;
    double s_min_certified = 0.0;

    /// Defaults with s_min_certified derived from the conditioning of the series.
    static SeriesPolicy for_index(const StableIndex& idx);
    void validate() const;
};

enum class DensityRoute { Series, IntegralRepresentation };

struct DensityEval {
    double value = 0.0;
    int terms_used = 0;
    /// Magnitude of the first omitted series term (series route) or the
    /// quadrature error estimate (integral route).
    double tail_estimate = 0.0;
    /// sum |terms| / |sum|; 1 for the integral route.
    double condition = 1.0;
    /// True when s >= s_min_certified, i.e. the series itself is trusted.
    bool series_certified = true;
    DensityRoute route = DensityRoute::Series;
};

/// Smallest s for which the series for f_1 has condition number
/// sum|terms|/|sum| <= max_condition.
double certified_threshold(const StableIndex& idx, double max_condition = 100.0);

/// Sum with Neumaier compensation after ordering terms by decreasing magnitude.
double compensated_sum(std::span<double> terms);

/// Precomputed evaluator for the one-sided alpha/2-stable subordinator
/// density and its derivatives (alpha in (0,1]).
///
/// Everything is expressed through the profiles
///   x^j f_1^(j)(x)                       (scaled derivatives)
///   D_q(x) = sum_j a_j(q) x^j f_1^(j)(x) (t-derivative profile)
/// so that d^q/dt^q f_t(s) = t^(-2/alpha - q) D_q(t^(-2/alpha) s).
///
/// For x >= threshold() the profiles are summed termwise from the series;
/// below it they come from Zolotarev's integral representation
///   f_1(x) = p/pi x^(-r) int_0^pi A(u) exp(-A(u) x^(-p)) du,
/// with r = 1/(1-beta), p = beta/(1-beta) and Kanter's function A.
class SubordinatorDensity {
public:
    static constexpr int kMaxOrder = 12;

    explicit SubordinatorDensity(const StableIndex& idx);
    SubordinatorDensity(const StableIndex& idx, const SeriesPolicy& policy);

    const StableIndex& index() const { return idx_; }
    const SeriesPolicy& policy() const { return policy_; }
    double threshold() const { return policy_.s_min_certified; }
    /// Below this argument f_1 and all profiles underflow to zero.
    double negligible_below() const { return x_negligible_; }

    /// Series value with diagnostics; flags (but still sums) below the threshold.
    DensityEval series_f1(double x) const;
    /// x^j f_1^(j)(x) from the series, with condition number in *condition.
    double series_scaled_derivative(int j, double x, double* condition = nullptr,
                                    int* terms = nullptr) const;
    /// D_q from the series restricted to k >= k_from (k_from = 1 gives all).
    double series_profile(int q, double x, int k_from = 1, double* condition = nullptr) const;

    /// x^j f_1^(j)(x) from the integral representation.
    double integral_scaled_derivative(int j, double x) const;
    double integral_profile(int q, double x) const;

    /// Hybrid evaluators.
    double f1(double x) const;
    double scaled_derivative(int j, double x) const;
    double profile(int q, double x) const;

    /// f_t(s) = t^(-c) f_1(t^(-c) s).
    double ft(double t, double s) const;
    /// d^q/dt^q f_t(s) assembled from the per-j scaled derivatives and a_j(q).
    double dt_q(int q, double t, double s) const;

    /// Kanter's function A(u) on (0, pi).
    double kanter_a(double u) const;
    /// P(S <= x) for the standard variable, from the integral representation.
    double cdf(double x) const;

private:
    double series_with_coefficients(const std::vector<double>& coeff, double x, int k_from,
                                    double* condition, int* terms, double* tail) const;
    double integral_with_polynomial(const std::vector<double>& poly, double x) const;
    void check_order(int q) const;

    StableIndex idx_;
    SeriesPolicy policy_;
    double r_ = 0.0;
    double p_ = 0.0;
    double x_negligible_ = 0.0;
    std::vector<double> gamma_;     // gamma_k, k = 0..max_terms
    std::vector<double> exponent_;  // k beta + 1
    std::vector<std::vector<double>> derivative_coeff_; // [j][k] (-1)^j (k beta+1)_j
    std::vector<std::vector<double>> profile_coeff_;    // [q][k] sum_j a_j(q) (-1)^j (k beta+1)_j
    std::vector<std::vector<double>> p_poly_;           // P_j(z)
    std::vector<std::vector<double>> q_poly_;           // Q_q(z) = sum_j a_j(q) P_j(z)
    std::vector<double> u_weight_;                      // rule weight * A(u_i)
    std::vector<double> u_a_;                           // A(u_i)
    std::vector<double> u_plain_weight_;                // rule weight
};

/// Series-certified evaluation of f_1, falling back to the integral
/// representation below the certified regime (flagged in the result).
DensityEval density_f1(double s, const StableIndex& idx, const SeriesPolicy& policy);
DensityEval density_ft(double t, double s, const StableIndex& idx, const SeriesPolicy& policy);
double density_dt_q(int q, double t, double s, const StableIndex& idx, const SeriesPolicy& policy);

/// |int_0^inf e^(-lambda s) f_t(s) ds - exp(-t lambda^(alpha/2))|.
double laplace_residual(double lambda, double t, const StableIndex& idx,
                        const QuadratureSpec& quad);
/// The Laplace integral itself.
QuadValue laplace_transform(double lambda, double t, const SubordinatorDensity& density,
                            const QuadratureSpec& quad);
/// int_0^inf f_t(s) ds.
QuadValue total_mass(double t, const SubordinatorDensity& density, const QuadratureSpec& quad);

/// Relative defect of -gamma_k (k/m + 1) = (-1)^m gamma_(k+m) (k+m)!/k!, the
/// termwise form of (d/ds - (-1)^m d^m/dt^m) f_t(s) = 0 for alpha = 2/m.
double pde_coefficient_residual(int k, int m);

/// |f_1^(n)(s)| along a decreasing list of s, stopping where the density
/// drops below the underflow-safe floor of the integral representation.
std::vector<double> boundary_limit_probe(int n, const StableIndex& idx,
                                         std::span<const double> s_list,
                                         const SeriesPolicy& policy);

/// Increment of the subordinator over a step dt: dt^(2/alpha) S with S drawn
/// by Kanter's representation S = (A(U)/E)^((1-beta)/beta).
template <typename Rng>
double sample_subordinator_increment(double dt, const StableIndex& idx, Rng& rng);

double kanter_function(double u, double beta);

template <typename Rng>
double sample_subordinator_increment(double dt, const StableIndex& idx, Rng& rng) {
    const double beta = idx.beta();
    std::uniform_real_distribution<double> unif(0.0, 3.14159265358979323846);
    std::exponential_distribution<double> expo(1.0);
    double u = 0.0;
    double e = 0.0;
    do { u = unif(rng); } while (u <= 0.0);
    do { e = expo(rng); } while (e <= 0.0);
    const double s = std::pow(kanter_function(u, beta) / e, (1.0 - beta) / beta);
    return std::pow(dt, 1.0 / beta) * s;
}

} // namespace fracharm
