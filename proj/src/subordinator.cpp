#include "fracharm/subordinator.hpp"

#include "fracharm/coefficients.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fracharm {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();
// exp(-z) underflows for z beyond this; Q_q(z) has degree <= kMaxOrder.
constexpr double kUnderflowExponent = 800.0;

// Panels in u for Zolotarev's integral: refined near 0, where the integrand
// concentrates for small arguments, and near pi, where A(u) blows up.
const std::vector<double>& zolotarev_breakpoints() {
    static const std::vector<double> bp = {
        0.0,  1e-3, 4e-3, 0.01, 0.02, 0.035, 0.05, 0.075, 0.1,  0.14, 0.2,   0.27,  0.35,
        0.45, 0.57, 0.7,  0.85, 1.0,  1.2,   1.4,  1.6,   1.8,  2.0,  2.2,   2.4,   2.55,
        2.7,  2.8,  2.88, 2.95, 3.0,  3.04,  3.07, 3.095, 3.11, 3.12, 3.128, 3.134, kPi};
    return bp;
}

std::vector<double> poly_derivative(const std::vector<double>& p) {
    std::vector<double> d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(static_cast<double>(i) * p[i]);
    return d;
}

double poly_eval(const std::vector<double>& p, double z) {
    double v = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * z + *it;
    return v;
}

double series_condition(double x, double beta, int max_terms) {
    const double logx = std::log(x);
    double sum = 0.0;
    double abs_sum = 0.0;
    const auto idx = StableIndex::from_alpha(2.0 * beta);
    for (int k = 1; k <= max_terms; ++k) {
        const double g = gamma_coefficient(k, idx);
        if (g == 0.0) continue;
        const double term = g * std::exp(-(k * beta + 1.0) * logx);
        sum += term;
        abs_sum += std::abs(term);
        if (!std::isfinite(abs_sum)) return std::numeric_limits<double>::infinity();
        if (std::abs(term) < 1e-18 * abs_sum && k > 10) break;
    }
    if (sum <= 0.0) return std::numeric_limits<double>::infinity();
    return abs_sum / sum;
}

} // namespace

double kanter_function(double u, double beta) {
    const double r = 1.0 / (1.0 - beta);
    const double sb = std::sin(beta * u);
    const double log_a = r * (std::log(sb) - std::log(std::sin(u))) +
                         std::log(std::sin((1.0 - beta) * u)) - std::log(sb);
    return std::exp(log_a);
}

double compensated_sum(std::span<double> terms) {
    std::sort(terms.begin(), terms.end(),
              [](double a, double b) { return std::abs(a) > std::abs(b); });
    double sum = 0.0;
    double comp = 0.0;
    for (double t : terms) {
        const double next = sum + t;
        if (std::abs(sum) >= std::abs(t)) {
            comp += (sum - next) + t;
        } else {
            comp += (t - next) + sum;
        }
        sum = next;
    }
    return sum + comp;
}

double certified_threshold(const StableIndex& idx, double max_condition) {
    if (idx.alpha() > 1.0) {
        throw std::invalid_argument("certified_threshold: series regime needs alpha <= 1");
    }
    const double beta = idx.beta();
    double lo = std::log(1e-6);
    double hi = std::log(1e4);
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (series_condition(std::exp(mid), beta, 2000) <= max_condition) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return std::exp(hi);
}

SeriesPolicy SeriesPolicy::for_index(const StableIndex& idx) {
    SeriesPolicy p;
    p.s_min_certified = certified_threshold(idx);
    return p;
}

void SeriesPolicy::validate() const {
    if (max_terms < 10) throw std::invalid_argument("SeriesPolicy: max_terms must be >= 10");
    if (!(rel_stop > 0.0 && rel_stop < 1e-6)) {
        throw std::invalid_argument("SeriesPolicy: rel_stop must lie in (0, 1e-6)");
    }
    if (!(s_min_certified > 0.0)) {
        throw std::invalid_argument("SeriesPolicy: s_min_certified must be positive");
    }
}

SubordinatorDensity::SubordinatorDensity(const StableIndex& idx)
    : SubordinatorDensity(idx, SeriesPolicy::for_index(idx)) {}

SubordinatorDensity::SubordinatorDensity(const StableIndex& idx, const SeriesPolicy& policy)
    : idx_(idx), policy_(policy) {
    if (idx.alpha() > 1.0) {
        throw std::invalid_argument("subordinator density evaluation needs alpha <= 1, got " +
                                    idx.describe());
    }
    if (policy_.s_min_certified == 0.0) policy_.s_min_certified = certified_threshold(idx);
    policy_.validate();

    const double beta = idx.beta();
    r_ = 1.0 / (1.0 - beta);
    p_ = beta / (1.0 - beta);
    const double a0 = (1.0 - beta) * std::pow(beta, beta / (1.0 - beta));
    x_negligible_ = std::pow(a0 / kUnderflowExponent, 1.0 / p_);

    const int kmax = policy_.max_terms + 1;
    gamma_.resize(kmax + 1);
    exponent_.resize(kmax + 1);
    for (int k = 0; k <= kmax; ++k) {
        gamma_[k] = gamma_coefficient(k, idx);
        exponent_[k] = k * beta + 1.0;
    }

    derivative_coeff_.assign(kMaxOrder + 1, std::vector<double>(kmax + 1, 0.0));
    for (int j = 0; j <= kMaxOrder; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        for (int k = 0; k <= kmax; ++k) {
            derivative_coeff_[j][k] = sign * rising_factorial(exponent_[k], j);
        }
    }
    profile_coeff_.assign(kMaxOrder + 1, std::vector<double>(kmax + 1, 0.0));
    q_poly_.assign(kMaxOrder + 1, {});

    p_poly_.push_back({1.0});
    for (int j = 0; j < kMaxOrder; ++j) {
        const auto& pj = p_poly_.back();
        const auto dpj = poly_derivative(pj);
        std::vector<double> next(pj.size() + 1, 0.0);
        for (std::size_t i = 0; i < pj.size(); ++i) {
            next[i] += (-r_ - j) * pj[i];
            next[i + 1] += p_ * pj[i];
        }
        for (std::size_t i = 0; i < dpj.size(); ++i) next[i + 1] -= p_ * dpj[i];
        p_poly_.push_back(std::move(next));
    }

    for (int q = 0; q <= kMaxOrder; ++q) {
        const auto a = a_coefficients(q, idx);
        auto& poly = q_poly_[q];
        poly.assign(q + 1, 0.0);
        for (int j = 0; j <= q; ++j) {
            for (int k = 0; k <= kmax; ++k) profile_coeff_[q][k] += a[j] * derivative_coeff_[j][k];
            for (std::size_t i = 0; i < p_poly_[j].size(); ++i) poly[i] += a[j] * p_poly_[j][i];
        }
    }

    const FixedRule rule = gauss_legendre_panels(zolotarev_breakpoints(), 20);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double a = kanter_function(rule.nodes[i], beta);
        u_a_.push_back(a);
        u_weight_.push_back(rule.weights[i] * a);
        u_plain_weight_.push_back(rule.weights[i]);
    }
}

void SubordinatorDensity::check_order(int q) const {
    if (q < 0 || q > kMaxOrder) {
        throw std::invalid_argument("derivative order outside [0, " + std::to_string(kMaxOrder) +
                                    "]");
    }
}

double SubordinatorDensity::kanter_a(double u) const { return kanter_function(u, idx_.beta()); }

double SubordinatorDensity::series_with_coefficients(const std::vector<double>& coeff, double x,
                                                     int k_from, double* condition, int* terms,
                                                     double* tail) const {
    const double inv_x = 1.0 / x;
    const double step = std::pow(x, -idx_.beta());
    thread_local std::vector<double> buffer;
    buffer.clear();
    double running = 0.0;
    double previous = std::numeric_limits<double>::infinity();
    int k = std::max(1, k_from);
    const int kmax = policy_.max_terms;
    int used = 0;
    // x^(-k beta - 1) by repeated multiplication.
    double power = inv_x * std::pow(step, k - 1);
    for (; k <= kmax; ++k) {
        power *= step;
        const double c = gamma_[k] * coeff[k];
        if (c == 0.0) continue;
        const double term = c * power;
        buffer.push_back(term);
        ++used;
        running += term;
        const double mag = std::abs(term);
        if (mag < policy_.rel_stop * std::abs(running) && mag < previous) {
            ++k;
            break;
        }
        previous = mag;
    }
    if (tail) {
        *tail = 0.0;
        for (; k <= kmax + 1; ++k) {
            const double c = gamma_[k] * coeff[k];
            if (c == 0.0) continue;
            *tail = std::abs(c * std::exp(-exponent_[k] * std::log(x)));
            break;
        }
    }
    double abs_sum = 0.0;
    for (double t : buffer) abs_sum += std::abs(t);
    const double sum = compensated_sum(buffer);
    if (condition) {
        *condition = sum != 0.0 ? abs_sum / std::abs(sum) : std::numeric_limits<double>::infinity();
    }
    if (terms) *terms = used;
    return sum;
}

DensityEval SubordinatorDensity::series_f1(double x) const {
    if (!(x > 0.0)) throw std::invalid_argument("density argument must be positive");
    DensityEval out;
    out.route = DensityRoute::Series;
    out.value = series_with_coefficients(derivative_coeff_[0], x, 1, &out.condition,
                                         &out.terms_used, &out.tail_estimate);
    out.series_certified = x >= policy_.s_min_certified;
    return out;
}

double SubordinatorDensity::series_scaled_derivative(int j, double x, double* condition,
                                                     int* terms) const {
    check_order(j);
    return series_with_coefficients(derivative_coeff_[j], x, 1, condition, terms, nullptr);
}

double SubordinatorDensity::series_profile(int q, double x, int k_from, double* condition) const {
    check_order(q);
    return series_with_coefficients(profile_coeff_[q], x, k_from, condition, nullptr, nullptr);
}

double SubordinatorDensity::integral_with_polynomial(const std::vector<double>& poly,
                                                     double x) const {
    if (x <= x_negligible_) return 0.0;
    const double logx = std::log(x);
    const double xp = std::exp(-p_ * logx);
    const double log_prefactor = -r_ * logx;
    double acc = 0.0;
    for (std::size_t i = 0; i < u_a_.size(); ++i) {
        const double z = u_a_[i] * xp;
        if (z > kUnderflowExponent) continue;
        acc += u_weight_[i] * std::exp(log_prefactor - z) * poly_eval(poly, z);
    }
    return p_ / kPi * acc;
}

double SubordinatorDensity::integral_scaled_derivative(int j, double x) const {
    check_order(j);
    return integral_with_polynomial(p_poly_[j], x);
}

double SubordinatorDensity::integral_profile(int q, double x) const {
    check_order(q);
    return integral_with_polynomial(q_poly_[q], x);
}

double SubordinatorDensity::f1(double x) const {
    if (!(x > 0.0)) return 0.0;
    if (x >= policy_.s_min_certified) {
        return series_with_coefficients(derivative_coeff_[0], x, 1, nullptr, nullptr, nullptr);
    }
    return integral_with_polynomial(p_poly_[0], x);
}

double SubordinatorDensity::scaled_derivative(int j, double x) const {
    check_order(j);
    if (!(x > 0.0)) return 0.0;
    if (x >= policy_.s_min_certified) {
        return series_with_coefficients(derivative_coeff_[j], x, 1, nullptr, nullptr, nullptr);
    }
    return integral_with_polynomial(p_poly_[j], x);
}

double SubordinatorDensity::profile(int q, double x) const {
    check_order(q);
    if (!(x > 0.0)) return 0.0;
    if (x >= policy_.s_min_certified) {
        return series_with_coefficients(profile_coeff_[q], x, 1, nullptr, nullptr, nullptr);
    }
    return integral_with_polynomial(q_poly_[q], x);
}

double SubordinatorDensity::ft(double t, double s) const {
    if (!(t > 0.0) || !(s > 0.0)) throw std::invalid_argument("f_t needs t > 0 and s > 0");
    const double scale = std::pow(t, -idx_.inv());
    return scale * f1(scale * s);
}

double SubordinatorDensity::dt_q(int q, double t, double s) const {
    check_order(q);
    if (!(t > 0.0) || !(s > 0.0)) throw std::invalid_argument("d^q f_t needs t > 0 and s > 0");
    const double c = idx_.inv();
    const double x = std::pow(t, -c) * s;
    const auto a = a_coefficients(q, idx_);
    double sum = 0.0;
    for (int j = 0; j <= q; ++j) sum += a[j] * scaled_derivative(j, x);
    return std::pow(t, -c - q) * sum;
}

double SubordinatorDensity::cdf(double x) const {
    if (!(x > 0.0)) return 0.0;
    const double xp = std::pow(x, -p_);
    double acc = 0.0;
    for (std::size_t i = 0; i < u_a_.size(); ++i) {
        const double z = u_a_[i] * xp;
        if (z > kUnderflowExponent) continue;
        acc += u_plain_weight_[i] * std::exp(-z);
    }
    return acc / kPi;
}

DensityEval density_f1(double s, const StableIndex& idx, const SeriesPolicy& policy) {
    const SubordinatorDensity density(idx, policy);
    if (!(s > 0.0)) throw std::invalid_argument("density_f1: s must be positive");
    if (s >= density.threshold()) return density.series_f1(s);
    DensityEval out;
    out.route = DensityRoute::IntegralRepresentation;
    out.series_certified = false;
    out.value = density.integral_scaled_derivative(0, s);
    out.terms_used = 0;
    // Fixed-rule estimate: difference from the series is meaningless here, so
    // report the rounding scale of the quadrature sum.
    out.tail_estimate = std::numeric_limits<double>::epsilon() * std::abs(out.value) * 64.0;
    return out;
}

DensityEval density_ft(double t, double s, const StableIndex& idx, const SeriesPolicy& policy) {
    if (!(t > 0.0) || !(s > 0.0)) throw std::invalid_argument("density_ft: need t, s > 0");
    const double scale = std::pow(t, -idx.inv());
    DensityEval out = density_f1(scale * s, idx, policy);
    out.value *= scale;
    out.tail_estimate *= scale;
    return out;
}

double density_dt_q(int q, double t, double s, const StableIndex& idx, const SeriesPolicy& policy) {
    if (q < 0) throw std::invalid_argument("density_dt_q: q must be >= 0");
    const SubordinatorDensity density(idx, policy);
    return density.dt_q(q, t, s);
}

QuadValue laplace_transform(double lambda, double t, const SubordinatorDensity& density,
                            const QuadratureSpec& quad) {
    if (lambda < 0.0 || !(t > 0.0)) {
        throw std::invalid_argument("laplace_transform: need lambda >= 0 and t > 0");
    }
    quad.validate();
    // Work in x = t^(-2/alpha) s, where the weight becomes exp(-eps x).
    const double eps = lambda * std::pow(t, density.index().inv());
    auto integrand = [&](double x) { return std::exp(-eps * x) * density.f1(x); };
    const double x_lo = density.negligible_below();
    const double x_mid = density.threshold();
    const double x_far = std::max(1e3, eps > 0.0 ? 60.0 / eps : 0.0);
    QuadValue out = integrate_geometric(integrand, x_lo, x_mid, 2.0, quad);
    out += integrate_geometric(integrand, x_mid, x_far, 4.0, quad);
    auto tail = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double x = 1.0 / u;
        return std::exp(-eps * x) * density.f1(x) * x * x;
    };
    out += integrate_tanh_sinh(tail, 0.0, 1.0 / x_far, quad);
    return out;
}

QuadValue total_mass(double t, const SubordinatorDensity& density, const QuadratureSpec& quad) {
    return laplace_transform(0.0, t, density, quad);
}

double laplace_residual(double lambda, double t, const StableIndex& idx,
                        const QuadratureSpec& quad) {
    const SubordinatorDensity density(idx);
    const QuadValue value = laplace_transform(lambda, t, density, quad);
    return std::abs(value.value - std::exp(-t * std::pow(lambda, idx.beta())));
}

double pde_coefficient_residual(int k, int m) {
    if (k < 0) throw std::invalid_argument("pde_coefficient_residual: k must be >= 0");
    const auto idx = StableIndex::from_m(m);
    if (!idx.theorem_mode()) throw std::invalid_argument("pde_coefficient_residual: need m > 2");
    const double lhs = -gamma_coefficient(k, idx) * (static_cast<double>(k) / m + 1.0);
    double falling = 1.0;
    for (int i = k + 1; i <= k + m; ++i) falling *= i;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    const double rhs = sign * gamma_coefficient(k + m, idx) * falling;
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    if (scale == 0.0) return 0.0;
    return std::abs(lhs - rhs) / scale;
}

std::vector<double> boundary_limit_probe(int n, const StableIndex& idx,
                                         std::span<const double> s_list,
                                         const SeriesPolicy& policy) {
    if (n < 0) throw std::invalid_argument("boundary_limit_probe: n must be >= 0");
    for (std::size_t i = 1; i < s_list.size(); ++i) {
        if (!(s_list[i] < s_list[i - 1])) {
            throw std::invalid_argument("boundary_limit_probe: s_list must be decreasing");
        }
    }
    const SubordinatorDensity density(idx, policy);
    std::vector<double> out;
    for (double s : s_list) {
        if (!(s > 0.0)) throw std::invalid_argument("boundary_limit_probe: s must be positive");
        if (s < density.negligible_below()) break;
        out.push_back(std::abs(density.scaled_derivative(n, s)) * std::pow(s, -n));
    }
    return out;
}

} // namespace fracharm
