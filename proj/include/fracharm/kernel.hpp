#pragma once

#include "fracharm/quadrature.hpp"
#include "fracharm/stable_index.hpp"
#include "fracharm/subordinator.hpp"

#include <initializer_list>
#include <vector>

namespace fracharm {

/// A point in R^d, 1 <= d <= 3.
class Point {
public:
    Point(std::initializer_list<double> coords);
    explicit Point(std::vector<double> coords);

    int dim() const { return static_cast<int>(coords_.size()); }
    double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& coords() const { return coords_; }

private:
    std::vector<double> coords_;
};

double distance(const Point& x, const Point& y);

/// Heat kernel g(s,x,y) = (4 pi s)^(-d/2) exp(-|x-y|^2 / 4s).
double gaussian_g(double s, const Point& x, const Point& y);
/// Same kernel as a function of r = |x-y| and d.
double gaussian_g(double s, double r, int d);

/// Split value of int_0^inf g(s,r) d^q/dt^q f_t(s) ds at s = M t^(2/alpha).
struct SplitIntegral {
    QuadValue left;   // s < M t^(2/alpha)
    QuadValue right;  // s > M t^(2/alpha)
    double total() const { return left.value + right.value; }
    bool converged() const { return left.converged && right.converged; }
};

/// Integrals of the Gaussian kernel against t-derivatives of the
/// subordinator density. In x = t^(-2/alpha) s the integrand is
/// t^(-q) (4 pi t^c x)^(-d/2) exp(-r^2/(4 t^c x)) D_q(x); for r > 0 it is
/// evaluated in v = r^2/(4 s), which turns the essential singularity at s = 0
/// into the factor exp(-v).
class SubordinatedIntegral {
public:
    SubordinatedIntegral(const SubordinatorDensity& density, const QuadratureSpec& quad);

    const SubordinatorDensity& density() const { return density_; }
    const QuadratureSpec& quadrature() const { return quad_; }

    /// k_from > 1 keeps only the series terms k >= k_from on the right piece
    /// (the left piece is left unchanged).
    SplitIntegral evaluate(int q, double t, double r, int d, int k_from = 1) const;

private:
    const SubordinatorDensity& density_;
    QuadratureSpec quad_;
};

/// p(t,x,y) = int_0^inf g(s,x,y) f_t(s) ds.
QuadValue transition_density(double t, const Point& x, const Point& y,
                             const SubordinatorDensity& density, const QuadratureSpec& quad);
QuadValue transition_density(double t, const Point& x, const Point& y, const StableIndex& idx,
                             const QuadratureSpec& quad);

/// (1/pi) int_0^inf cos(r xi) exp(-t xi^alpha) d xi, summed between the zeros
/// of cos(r xi) with Wynn's epsilon algorithm on the partial sums.
QuadValue transition_density_fourier_1d(double t, double r, const StableIndex& idx,
                                        const QuadratureSpec& quad);

/// Continuous piecewise-linear function through (x_i, v_i), zero outside
/// [x_0, x_last]; nodes strictly increasing.
struct GridFunction1D {
    std::vector<double> x;
    std::vector<double> v;

    void validate() const;
    double operator()(double y) const;
};

/// int g(s,x,y) phi(y) dy in closed form for piecewise-linear phi (d = 1).
double gaussian_smooth(double s, const GridFunction1D& phi, double x);

/// P_t phi(x) = int p(t,x,y) phi(y) dy for d = 1, written as
/// int_0^inf f_t(s) (g(s) * phi)(x) ds.
QuadValue semigroup_apply(double t, const GridFunction1D& phi, double x,
                          const SubordinatorDensity& density, const QuadratureSpec& quad);

/// int_0^inf s^(-q alpha/2 - 1) g(s,r) ds = (4 pi)^(-d/2) Gamma(q alpha/2 + d/2) (r^2/4)^(-q alpha/2 - d/2).
double inner_integral(int q, int d, const StableIndex& idx, double r);

} // namespace fracharm
