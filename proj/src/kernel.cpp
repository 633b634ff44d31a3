#include "fracharm/kernel.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fracharm {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();
// exp(-v) is below double range beyond this.
constexpr double kVMax = 750.0;
// Below this the small-argument end of the integrands is dropped; they vanish
// there like a positive power of the variable.
constexpr double kTiny = 1e-150;

void check_dim(int d) {
    if (d < 1 || d > 3) throw std::invalid_argument("kernel dimension must be 1, 2 or 3");
}

// Wynn's epsilon algorithm on a sequence of partial sums. Returns the
// estimate from the deepest even column together with its change from the
// previous entry of that column. Entries that are not finite, or far outside
// the range of the partial sums, end the table.
std::pair<double, double> wynn_epsilon(const std::vector<double>& sums) {
    double lo = sums.front();
    double hi = sums.front();
    for (double v : sums) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double spread = std::max(hi - lo, std::abs(hi) + std::abs(lo));
    const std::size_t n = sums.size();
    double best = sums.back();
    double delta = n > 1 ? std::abs(sums[n - 1] - sums[n - 2]) : 0.0;
    std::vector<double> prev(n + 1, 0.0);
    std::vector<double> cur(sums.begin(), sums.end());
    for (std::size_t col = 1; cur.size() > 1; ++col) {
        std::vector<double> next(cur.size() - 1);
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            const double diff = cur[i + 1] - cur[i];
            if (diff == 0.0) return {best, delta};
            next[i] = prev[i + 1] + 1.0 / diff;
            if (!std::isfinite(next[i])) return {best, delta};
        }
        prev.assign(cur.begin(), cur.end());
        cur = std::move(next);
        if (col % 2 == 0 && cur.size() >= 2) {
            const double e = cur.back();
            if (e < lo - spread || e > hi + spread) return {best, delta};
            best = e;
            delta = std::abs(e - cur[cur.size() - 2]);
        }
    }
    return {best, delta};
}

// Standard normal mass on [z0, z1], accurate in both tails.
double normal_mass(double z0, double z1) {
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    if (z0 >= 0.0) return 0.5 * (std::erfc(z0 * inv_sqrt2) - std::erfc(z1 * inv_sqrt2));
    if (z1 <= 0.0) return 0.5 * (std::erfc(-z1 * inv_sqrt2) - std::erfc(-z0 * inv_sqrt2));
    return 1.0 - 0.5 * (std::erfc(-z0 * inv_sqrt2) + std::erfc(z1 * inv_sqrt2));
}

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi); }

} // namespace

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
    check_dim(dim());
}

double distance(const Point& x, const Point& y) {
    if (x.dim() != y.dim()) throw std::invalid_argument("points of different dimension");
    double sum = 0.0;
    for (int i = 0; i < x.dim(); ++i) sum += (x[i] - y[i]) * (x[i] - y[i]);
    return std::sqrt(sum);
}

double gaussian_g(double s, double r, int d) {
    check_dim(d);
    if (!(s > 0.0)) throw std::invalid_argument("gaussian_g: s must be positive");
    return std::pow(4.0 * kPi * s, -0.5 * d) * std::exp(-r * r / (4.0 * s));
}

double gaussian_g(double s, const Point& x, const Point& y) {
    return gaussian_g(s, distance(x, y), x.dim());
}

SubordinatedIntegral::SubordinatedIntegral(const SubordinatorDensity& density,
                                           const QuadratureSpec& quad)
    : density_(density), quad_(quad) {
    quad_.validate();
}

SplitIntegral SubordinatedIntegral::evaluate(int q, double t, double r, int d, int k_from) const {
    check_dim(d);
    if (!(t > 0.0)) throw std::invalid_argument("subordinated integral: t must be positive");
    if (r < 0.0) throw std::invalid_argument("subordinated integral: r must be >= 0");
    const double c = density_.index().inv();
    const double M = quad_.split_multiplier;
    const double tc = std::pow(t, c);
    const double x_lo = density_.negligible_below();
    auto right_profile = [&](double x) {
        return k_from > 1 ? density_.series_profile(q, x, k_from) : density_.profile(q, x);
    };

    SplitIntegral out;
    if (r == 0.0) {
        // t^(-q) (4 pi t^c)^(-d/2) int x^(-d/2) D_q(x) dx
        const double scale = std::pow(t, -q) * std::pow(4.0 * kPi * tc, -0.5 * d);
        auto left = [&](double x) { return std::pow(x, -0.5 * d) * density_.profile(q, x); };
        auto right = [&](double u) {
            // The integrand behaves like u^(d/2 - 1 + alpha/2) at 0.
            if (u <= kTiny) return 0.0;
            const double prof = right_profile(1.0 / u);
            return prof == 0.0 ? 0.0 : std::pow(u, 0.5 * d - 2.0) * prof;
        };
        if (x_lo < M) out.left = integrate_geometric(left, x_lo, M, 2.0, quad_);
        out.right = integrate_tanh_sinh(right, 0.0, 1.0 / M, quad_);
        out.left.value *= scale;
        out.left.error *= scale;
        out.right.value *= scale;
        out.right.error *= scale;
        return out;
    }

    // v = rho / x with rho = r^2 / (4 t^c):
    // t^(-q) (4 pi r^2/4)^(-d/2) rho int v^(d/2-2) exp(-v) D_q(rho/v) dv
    const double cr = 0.25 * r * r;
    const double rho = cr / tc;
    const double scale = std::pow(t, -q) * std::pow(4.0 * kPi * cr, -0.5 * d) * rho;
    auto integrand = [&](double v, bool right_piece) {
        if (v <= kTiny) return 0.0;
        const double x = rho / v;
        const double prof = right_piece ? right_profile(x) : density_.profile(q, x);
        return prof == 0.0 ? 0.0 : std::pow(v, 0.5 * d - 2.0) * std::exp(-v) * prof;
    };
    const double v_split = rho / M;
    const double v_right = std::min(v_split, kVMax);
    out.right = integrate_tanh_sinh([&](double v) { return integrand(v, true); }, 0.0, v_right,
                                    quad_);
    const double v_top = std::min(rho / x_lo, kVMax);
    if (v_split < v_top) {
        out.left = integrate_geometric([&](double v) { return integrand(v, false); }, v_split,
                                       v_top, 2.0, quad_);
    }
    out.left.value *= scale;
    out.left.error *= scale;
    out.right.value *= scale;
    out.right.error *= scale;
    return out;
}

QuadValue transition_density(double t, const Point& x, const Point& y,
                             const SubordinatorDensity& density, const QuadratureSpec& quad) {
    const SubordinatedIntegral engine(density, quad);
    const SplitIntegral split = engine.evaluate(0, t, distance(x, y), x.dim());
    return split.left + split.right;
}

QuadValue transition_density(double t, const Point& x, const Point& y, const StableIndex& idx,
                             const QuadratureSpec& quad) {
    const SubordinatorDensity density(idx);
    return transition_density(t, x, y, density, quad);
}

QuadValue transition_density_fourier_1d(double t, double r, const StableIndex& idx,
                                        const QuadratureSpec& quad) {
    if (!(t > 0.0)) throw std::invalid_argument("fourier oracle: t must be positive");
    quad.validate();
    const double alpha = idx.alpha();
    r = std::abs(r);
    QuadValue out;
    if (r == 0.0) {
        out = integrate_exp_sinh([&](double xi) { return std::exp(-t * std::pow(xi, alpha)); },
                                 0.0, quad);
        out.value /= kPi;
        out.error /= kPi;
        return out;
    }
    auto f = [&](double xi) { return std::cos(r * xi) * std::exp(-t * std::pow(xi, alpha)); };
    // Zeros of cos(r xi) at (k + 1/2) pi / r.
    auto zero = [&](long k) { return (static_cast<double>(k) + 0.5) * kPi / r; };
    QuadValue first = integrate_tanh_sinh(f, 0.0, zero(0), quad);
    double partial = first.value;
    double error = first.error;
    bool converged = first.converged;
    std::vector<double> sums{partial};
    double estimate = partial;
    double change = std::numeric_limits<double>::infinity();
    constexpr long kMaxPieces = 4000;
    constexpr std::size_t kWindow = 40;
    for (long k = 0; k < kMaxPieces; ++k) {
        const QuadValue piece = integrate_gk(f, zero(k), zero(k + 1), quad);
        partial += piece.value;
        error += piece.error;
        converged = converged && piece.converged;
        sums.push_back(partial);
        const double tiny = std::abs(piece.value);
        if (tiny <= quad.abs_tol * 1e-3 && sums.size() > 4) {
            estimate = partial;
            change = tiny;
            break;
        }
        if (sums.size() >= 12 && sums.size() % 4 == 0) {
            const std::size_t from = sums.size() > kWindow ? sums.size() - kWindow : 0;
            const std::vector<double> window(sums.begin() + static_cast<long>(from), sums.end());
            const auto [value, delta] = wynn_epsilon(window);
            if (delta <= std::max(quad.abs_tol, quad.rel_tol * std::abs(value))) {
                estimate = value;
                change = delta;
                break;
            }
            estimate = value;
            change = delta;
        }
    }
    out.value = estimate / kPi;
    out.error = (error + change) / kPi;
    out.converged = converged && change <= std::max(quad.abs_tol, quad.rel_tol * std::abs(estimate)) * 10.0;
    return out;
}

void GridFunction1D::validate() const {
    if (x.size() != v.size() || x.size() < 2) {
        throw std::invalid_argument("grid function needs matching node and value arrays");
    }
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (!(x[i] > x[i - 1])) throw std::invalid_argument("grid nodes must increase");
    }
}

double GridFunction1D::operator()(double y) const {
    if (y < x.front() || y > x.back()) return 0.0;
    const auto it = std::upper_bound(x.begin(), x.end(), y);
    if (it == x.end()) return v.back();
    const std::size_t i = static_cast<std::size_t>(it - x.begin());
    const double w = (y - x[i - 1]) / (x[i] - x[i - 1]);
    return (1.0 - w) * v[i - 1] + w * v[i];
}

double gaussian_smooth(double s, const GridFunction1D& phi, double x) {
    // With y = x + sigma z, sigma^2 = 2s, the Gaussian g(s,x,.) becomes the
    // standard normal; phi = A + B y on each cell.
    const double sigma = std::sqrt(2.0 * s);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < phi.x.size(); ++i) {
        const double y0 = phi.x[i];
        const double y1 = phi.x[i + 1];
        const double slope = (phi.v[i + 1] - phi.v[i]) / (y1 - y0);
        const double at_x = phi.v[i] + slope * (x - y0);
        const double z0 = (y0 - x) / sigma;
        const double z1 = (y1 - x) / sigma;
        if (z0 > 40.0 || z1 < -40.0) continue;
        acc += at_x * normal_mass(z0, z1) + slope * sigma * (normal_pdf(z0) - normal_pdf(z1));
    }
    return acc;
}

QuadValue semigroup_apply(double t, const GridFunction1D& phi, double x,
                          const SubordinatorDensity& density, const QuadratureSpec& quad) {
    phi.validate();
    if (!(t > 0.0)) throw std::invalid_argument("semigroup_apply: t must be positive");
    quad.validate();
    const double tc = std::pow(t, density.index().inv());
    const double M = quad.split_multiplier;
    auto left = [&](double u) { return density.f1(u) * gaussian_smooth(tc * u, phi, x); };
    auto right = [&](double w) {
        if (w <= 0.0) return 0.0;
        const double u = 1.0 / w;
        return density.f1(u) * gaussian_smooth(tc * u, phi, x) * u * u;
    };
    QuadValue out = integrate_geometric(left, density.negligible_below(), M, 2.0, quad);
    out += integrate_tanh_sinh(right, 0.0, 1.0 / M, quad);
    return out;
}

double inner_integral(int q, int d, const StableIndex& idx, double r) {
    check_dim(d);
    if (q < 0) throw std::invalid_argument("inner_integral: q must be >= 0");
    if (!(r > 0.0)) throw std::invalid_argument("inner_integral: r = 0 diverges");
    const double e = q * idx.beta() + 0.5 * d;
    return std::pow(4.0 * kPi, -0.5 * d) * boost::math::tgamma(e) * std::pow(0.25 * r * r, -e);
}

} // namespace fracharm
