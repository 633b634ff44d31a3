#pragma once

#include "fracharm/richardson.hpp"
#include "fracharm/stable_index.hpp"

#include <vector>

namespace fracharm {

/// Uniform grid on (a, b) with n interior nodes x_i = a + i h, i = 1..n.
class Grid1D {
public:
    Grid1D(double a, double b, int n);

    double a() const { return a_; }
    double b() const { return b_; }
    int n() const { return n_; }
    double h() const { return (b_ - a_) / (n_ + 1); }
    /// Interior node i in 1..n (0 and n+1 give the endpoints).
    double node(int i) const { return a_ + i * h(); }
    /// Index i with node(i) == x to rounding, or -1.
    int index_of(double x) const;

private:
    double a_;
    double b_;
    int n_;
};

/// Fractional centered differences with zero exterior values:
/// (L u)_i = h^(-alpha) sum_j w_|i-j| u_j.
struct DiscreteFracLap {
    Grid1D grid;
    double alpha;
    std::vector<double> weights;  // w_0 .. w_(n-1)

    double scale() const;         // h^(-alpha)
    std::vector<double> apply(const std::vector<double>& u) const;
};

/// alpha in (0, 2]; alpha = 2 gives the three-point Laplacian.
DiscreteFracLap assemble(const Grid1D& grid, double alpha);
DiscreteFracLap assemble(const Grid1D& grid, const StableIndex& idx);

struct EigenPair {
    double lambda1 = 0.0;
    std::vector<double> phi1;     // interior values, sum phi_i^2 h = 1, phi > 0
    double h = 0.0;
    double order_estimate = 0.0;  // filled by refine_extrapolate when known
    double residual = 0.0;        // ||L phi - lambda phi|| in the discrete L2 norm
    int iterations = 0;
    bool converged = false;
};

/// Inverse power iteration with a dense Cholesky factorization (n <= 4096).
EigenPair smallest_eigenpair(const DiscreteFracLap& op, double tol = 1e-12);

struct RefinementResult {
    std::vector<int> n_sequence;
    std::vector<double> h_sequence;
    std::vector<double> lambda_per_grid;
    Extrapolation extrapolation;
};

/// lambda_1 on each grid of the sequence and a fitted-order Richardson limit
/// from the last three.
RefinementResult refine_extrapolate(double a, double b, const std::vector<int>& n_sequence,
                                    double alpha, double tol = 1e-12);

} // namespace fracharm
