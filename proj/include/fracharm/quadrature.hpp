#pragma once

#include <functional>
#include <vector>
#include <string>

namespace fracharm {

/// Integration controls shared by the kernel and harness modules.
///
/// split_multiplier is M in the split of the subordination integral at
/// s = M t^(2/alpha); it must exceed one.
struct QuadratureSpec {
    double abs_tol = 1e-15;
    double rel_tol = 1e-11;
    int max_subdivisions = 4096;
    double split_multiplier = 10.0;

    void validate() const;
};

/// Integral value with an error estimate. converged is false when the
/// requested tolerance was not met; value still holds the best estimate.
struct QuadValue {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;

    QuadValue& operator+=(const QuadValue& other) {
        value += other.value;
        error += other.error;
        converged = converged && other.converged;
        return *this;
    }
};

inline QuadValue operator+(QuadValue lhs, const QuadValue& rhs) { return lhs += rhs; }

using RealFunction = std::function<double(double)>;

/// Adaptive 31-point Gauss-Kronrod on a finite interval (see integrate_panels).
QuadValue integrate_gk(const RealFunction& f, double a, double b, const QuadratureSpec& spec);

/// Globally adaptive Gauss-Kronrod over the given panels: the panel with the
/// largest error estimate is bisected until the total error meets
/// max(abs_tol, rel_tol |I|) or max_subdivisions is exhausted.
QuadValue integrate_panels(const RealFunction& f, const std::vector<double>& breakpoints,
                           const QuadratureSpec& spec);

/// Double-exponential (tanh-sinh) rule on a finite interval; tolerates
/// integrable endpoint singularities.
QuadValue integrate_tanh_sinh(const RealFunction& f, double a, double b,
                              const QuadratureSpec& spec);

/// Double-exponential (exp-sinh) rule on [a, infinity).
QuadValue integrate_exp_sinh(const RealFunction& f, double a, const QuadratureSpec& spec);

/// Adaptive Gauss-Kronrod over geometrically growing panels
/// [a, a r), [a r, a r^2), ... covering [a, b]; a > 0.
QuadValue integrate_geometric(const RealFunction& f, double a, double b, double ratio,
                              const QuadratureSpec& spec);

/// Composite fixed Gauss-Legendre nodes and weights on [a, b].
struct FixedRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
FixedRule gauss_legendre_panels(const std::vector<double>& breakpoints, int points_per_panel);

} // namespace fracharm
