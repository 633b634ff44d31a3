#pragma once

#include "fracharm/eigsolve1d.hpp"
#include "fracharm/kernel.hpp"
#include "fracharm/quadrature.hpp"
#include "fracharm/report.hpp"
#include "fracharm/richardson.hpp"
#include "fracharm/stable_index.hpp"
#include "fracharm/subordinator.hpp"

#include <vector>

namespace fracharm {

struct ExteriorNode {
    double y = 0.0;
    double weight = 0.0;
    double r1 = 0.0;
};

/// r_1(y) = c_{1,alpha} int_D phi_1(z) |y - z|^(-1-alpha) dz on D^c, for the
/// piecewise-linear interpolant of a grid eigenfunction (zero at the
/// endpoints), together with a quadrature rule on D^c truncated at distance
/// truncation_radius() from the interval.
class RemainderField {
public:
    RemainderField(const EigenPair& pair, const Grid1D& grid, const StableIndex& idx,
                   double tail_fraction = 1e-8);

    /// Exact product integration against the interpolant; 0 on the closed interval.
    double operator()(double y) const;

    const std::vector<ExteriorNode>& nodes() const { return nodes_; }
    double a() const { return a_; }
    double b() const { return b_; }
    const StableIndex& index() const { return idx_; }
    /// Distance beyond each endpoint covered by the nodes.
    double truncation_radius() const { return radius_; }
    /// Bound on int r_1 over the truncated part of D^c.
    double tail_bound() const { return tail_bound_; }
    /// int r_1 over the covered part of D^c.
    double covered_mass() const { return covered_mass_; }
    /// int_D phi_1.
    double phi_mass() const { return phi_mass_; }

private:
    double near_field(double y) const;
    double far_field(double y) const;

    StableIndex idx_;
    double a_ = 0.0;
    double b_ = 0.0;
    double riesz_ = 0.0;
    std::vector<double> z_;    // nodes including endpoints
    std::vector<double> phi_;  // values including the zero endpoints
    std::vector<double> moments_;
    double center_ = 0.0;
    double radius_ = 0.0;
    double tail_bound_ = 0.0;
    double covered_mass_ = 0.0;
    double phi_mass_ = 0.0;
    std::vector<ExteriorNode> nodes_;
};

RemainderField build_r1(const EigenPair& pair, const Grid1D& grid, const StableIndex& idx,
                        double tail_fraction = 1e-8);

struct PtR1Value {
    double value = 0.0;
    double left = 0.0;   // contribution of s < M t^(2/alpha)
    double right = 0.0;  // contribution of s > M t^(2/alpha)
    double error = 0.0;
    bool converged = true;
};

/// d^q/dt^q P_t r_1(x) = int_{D^c} (int_0^inf g(s,x,y) d^q/dt^q f_t(s) ds) r_1(y) dy.
/// k_from > 1 restricts the right piece to series terms k >= k_from.
PtR1Value ptr1_dt_q(int q, double t, double x, const RemainderField& field,
                    const SubordinatorDensity& density, const QuadratureSpec& quad,
                    int k_from = 1);

/// q! gamma_q int_{D^c} (int_0^inf s^(-q alpha/2 - 1) g(s,x,y) ds) r_1(y) dy.
double limit_formula(int q, double x, const RemainderField& field);

/// Limit of ptr1_dt_q(q, t, x) as t -> 0 by fitted-order Richardson on a
/// decreasing t sequence.
struct LimitProbe {
    std::vector<double> t;
    std::vector<double> values;
    std::vector<double> left_pieces;
    Extrapolation extrapolation;
    double target = 0.0;
};
LimitProbe probe_limit(int q, double x, const RemainderField& field,
                       const SubordinatorDensity& density, const QuadratureSpec& quad,
                       const std::vector<double>& t_sequence);

/// sup over t of |right piece restricted to k > q| at the exterior node
/// closest to x, one value per split multiplier.
std::vector<double> tail_diagnostic(int q, double x, const RemainderField& field,
                                    const SubordinatorDensity& density, QuadratureSpec quad,
                                    const std::vector<double>& multipliers,
                                    const std::vector<double>& t_values);

/// Both sides of Delta phi_1 = -lambda^m phi_1 + sum_q (-1)^q lambda^(m-1-q) L_q
/// at an interior grid node.
struct IdentitySides {
    double x = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    /// rhs split as terms[0] = -lambda^m phi_1(x) and
    /// terms[q] = (-1)^q lambda^(m-1-q) L_q(x) for q = 1..m-1.
    std::vector<double> terms;
};
IdentitySides identity_sides(double x, const EigenPair& pair, const Grid1D& grid,
                             const RemainderField& field);

/// Max over nodes i with margin < i <= n - margin of the second difference.
double max_second_difference(const EigenPair& pair, int margin_nodes);

struct TheoremCheckConfig {
    std::vector<int> n_sequence{319, 639, 1279};
    std::vector<double> x_points{-0.6, -0.3, 0.0, 0.3, 0.6};
    double gap_tolerance = 0.05;
    double eig_tol = 1e-12;
};

/// Identity check at each x over the grid sequence; one record per x.
/// The left side and each right-side term are extrapolated in h separately,
/// since the eigenvalue term and the exterior terms converge at different
/// rates.
std::vector<CheckRecord> theorem_identity_check(const StableIndex& idx, double a, double b,
                                                const TheoremCheckConfig& config);

struct SuperharmonicityConfig {
    std::vector<int> n_sequence{512, 1024, 2048};
    int margin_nodes = 4;
    double tolerance = 1e-2;
    double eig_tol = 1e-12;
};

CheckRecord superharmonicity_check(const StableIndex& idx, double a, double b,
                                   const SuperharmonicityConfig& config);
/// Strict negativity of every interior second difference (alpha = 1).
CheckRecord concavity_check(double a, double b, int n, double eig_tol = 1e-12);

struct VerifyConfig {
    double a = -1.0;
    double b = 1.0;
    QuadratureSpec quad{1e-15, 1e-10, 4096, 10.0};
    TheoremCheckConfig theorem;
    SuperharmonicityConfig superharmonic;
    std::vector<int> limit_n_sequence{319, 639, 1279};
    int limit_grid = 639;
    std::vector<double> limit_x{-0.6, -0.3, 0.0, 0.3, 0.6};
    std::vector<double> t_sequence{0.2, 0.1, 0.05, 0.025, 0.0125};
    double limit_tolerance = 0.01;
    std::vector<double> tail_multipliers{5.0, 10.0, 20.0, 40.0};
    std::vector<double> tail_t{1.0, 0.5, 0.25, 0.125};
    std::uint64_t seed = 20240101;
};

VerificationReport run_full_verification(const StableIndex& idx, const VerifyConfig& config);

} // namespace fracharm
