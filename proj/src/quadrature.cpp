#include "fracharm/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <queue>
#include <tuple>
#include <stdexcept>

namespace fracharm {

namespace bq = boost::math::quadrature;

void QuadratureSpec::validate() const {
    auto in_range = [](double v) { return v > 0.0 && v <= 1e-2; };
    if (!in_range(abs_tol) || !in_range(rel_tol)) {
        throw std::invalid_argument("quadrature tolerances must lie in (0, 1e-2]");
    }
    if (max_subdivisions < 1) {
        throw std::invalid_argument("max_subdivisions must be positive");
    }
    if (!(split_multiplier > 1.0)) {
        throw std::invalid_argument("split multiplier M must exceed 1");
    }
}

namespace {

bool met(double error, double l1, const QuadratureSpec& spec) {
    return error <= std::max(spec.abs_tol, spec.rel_tol * l1) || !std::isfinite(l1);
}

} // namespace

QuadValue integrate_gk(const RealFunction& f, double a, double b, const QuadratureSpec& spec) {
    if (a == b) return QuadValue{};
    return integrate_panels(f, {a, b}, spec);
}

QuadValue integrate_panels(const RealFunction& f, const std::vector<double>& breakpoints,
                           const QuadratureSpec& spec) {
    struct Panel {
        double a, b, value, error;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    auto eval = [&](double a, double b) {
        double error = 0.0;
        const double v = bq::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &error);
        return Panel{a, b, v, error};
    };
    std::priority_queue<Panel> heap;
    QuadValue out;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (breakpoints[i] == breakpoints[i + 1]) continue;
        heap.push(eval(breakpoints[i], breakpoints[i + 1]));
    }
    auto totals = [&]() {
        // Recompute from scratch to avoid drift from incremental updates.
        auto copy = heap;
        double v = 0.0;
        double e = 0.0;
        while (!copy.empty()) {
            v += copy.top().value;
            e += copy.top().error;
            copy.pop();
        }
        return std::pair{v, e};
    };
    auto [value, error] = totals();
    int splits = 0;
    while (!heap.empty() && std::isfinite(value) &&
           error > std::max(spec.abs_tol, spec.rel_tol * std::abs(value))) {
        if (splits >= spec.max_subdivisions) break;
        const Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;
        heap.pop();
        const Panel left = eval(worst.a, mid);
        const Panel right = eval(mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++splits;
        if (splits % 64 == 0) std::tie(value, error) = totals();
    }
    std::tie(value, error) = totals();
    out.value = value;
    out.error = error;
    out.converged = error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value)) ||
                    !std::isfinite(value);
    return out;
}

QuadValue integrate_tanh_sinh(const RealFunction& f, double a, double b,
                              const QuadratureSpec& spec) {
    thread_local bq::tanh_sinh<double> integrator(15);
    QuadValue out;
    if (a == b) return out;
    double error = 0.0;
    double l1 = 0.0;
    std::size_t levels = 0;
    // Boost's error estimate degrades on very short intervals, so always
    // integrate over [0, 1].
    const double width = b - a;
    auto unit = [&](double tau) { return f(a + width * tau) * width; };
    out.value = integrator.integrate(unit, 0.0, 1.0, spec.rel_tol, &error, &l1, &levels);
    out.error = std::abs(error);
    l1 = std::abs(l1);
    out.converged = met(error, l1, spec);
    return out;
}

QuadValue integrate_exp_sinh(const RealFunction& f, double a, const QuadratureSpec& spec) {
    thread_local bq::exp_sinh<double> integrator(12);
    QuadValue out;
    double error = 0.0;
    double l1 = 0.0;
    std::size_t levels = 0;
    out.value = integrator.integrate(f, a, std::numeric_limits<double>::infinity(), spec.rel_tol,
                                     &error, &l1, &levels);
    out.error = error;
    out.converged = met(error, l1, spec);
    return out;
}

QuadValue integrate_geometric(const RealFunction& f, double a, double b, double ratio,
                              const QuadratureSpec& spec) {
    if (!(a > 0.0) || !(ratio > 1.0)) {
        throw std::invalid_argument("integrate_geometric: need a > 0 and ratio > 1");
    }
    if (!(b > a)) return QuadValue{};
    std::vector<double> breaks{a};
    while (breaks.back() < b) breaks.push_back(std::min(b, breaks.back() * ratio));
    return integrate_panels(f, breaks, spec);
}

FixedRule gauss_legendre_panels(const std::vector<double>& breakpoints, int points_per_panel) {
    if (points_per_panel != 20) {
        throw std::invalid_argument("gauss_legendre_panels: only 20-point panels are provided");
    }
    using rule = bq::gauss<double, 20>;
    const auto& x = rule::abscissa();
    const auto& w = rule::weights();
    FixedRule out;
    for (std::size_t p = 0; p + 1 < breakpoints.size(); ++p) {
        const double lo = breakpoints[p];
        const double hi = breakpoints[p + 1];
        const double half = 0.5 * (hi - lo);
        const double mid = 0.5 * (hi + lo);
        // boost stores the non-negative half of a symmetric rule.
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0.0) {
                out.nodes.push_back(mid);
                out.weights.push_back(half * w[i]);
                continue;
            }
            out.nodes.push_back(mid - half * x[i]);
            out.weights.push_back(half * w[i]);
            out.nodes.push_back(mid + half * x[i]);
            out.weights.push_back(half * w[i]);
        }
    }
    return out;
}

} // namespace fracharm
