#include "fracharm/eigsolve1d.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace fracharm {

namespace {

constexpr int kMaxDense = 4096;
constexpr int kMaxIterations = 1000;
// Residual target relative to lambda, on top of the Rayleigh criterion.
constexpr double kResidualTarget = 1e-9;

} // namespace

Grid1D::Grid1D(double a, double b, int n) : a_(a), b_(b), n_(n) {
    if (!(a < b)) throw std::invalid_argument("Grid1D: need a < b");
    if (n < 15) throw std::invalid_argument("Grid1D: need at least 15 interior nodes");
}

int Grid1D::index_of(double x) const {
    const double pos = (x - a_) / h();
    const long i = std::lround(pos);
    if (i < 1 || i > n_) return -1;
    if (std::abs(pos - static_cast<double>(i)) > 1e-9) return -1;
    return static_cast<int>(i);
}

double DiscreteFracLap::scale() const { return std::pow(grid.h(), -alpha); }

std::vector<double> DiscreteFracLap::apply(const std::vector<double>& u) const {
    const int n = grid.n();
    if (static_cast<int>(u.size()) != n) throw std::invalid_argument("apply: size mismatch");
    std::vector<double> out(n, 0.0);
    const double s = scale();
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += weights[std::abs(i - j)] * u[j];
        out[i] = s * acc;
    }
    return out;
}

DiscreteFracLap assemble(const Grid1D& grid, double alpha) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw std::invalid_argument("assemble: alpha in (0, 2]");
    DiscreteFracLap op{grid, alpha, {}};
    const int n = grid.n();
    op.weights.resize(n);
    op.weights[0] = std::tgamma(alpha + 1.0) / std::pow(std::tgamma(0.5 * alpha + 1.0), 2);
    for (int j = 0; j + 1 < n; ++j) {
        op.weights[j + 1] = op.weights[j] * (j - 0.5 * alpha) / (j + 1 + 0.5 * alpha);
    }
    return op;
}

DiscreteFracLap assemble(const Grid1D& grid, const StableIndex& idx) {
    return assemble(grid, idx.alpha());
}

EigenPair smallest_eigenpair(const DiscreteFracLap& op, double tol) {
    if (!(tol > 0.0 && tol <= 1e-6)) throw std::invalid_argument("eigensolver: tol in (0, 1e-6]");
    const int n = op.grid.n();
    if (n > kMaxDense) {
        throw std::invalid_argument("eigensolver: dense path limited to n <= 4096");
    }
    const double h = op.grid.h();
    Eigen::MatrixXd T(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) T(i, j) = op.weights[std::abs(i - j)];
    }
    const Eigen::LLT<Eigen::MatrixXd> llt(T);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("eigensolver: Toeplitz matrix is not positive definite");
    }

    // Start from the continuum Dirichlet ground state shape.
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = std::sin(M_PI * (i + 1) / (n + 1));
    v.normalize();

    EigenPair out;
    out.h = h;
    double mu = v.dot(T * v);
    double resid = 0.0;
    for (int it = 1; it <= kMaxIterations; ++it) {
        Eigen::VectorXd y = llt.solve(v);
        v = y / y.norm();
        const Eigen::VectorXd Tv = T * v;
        const double mu_next = v.dot(Tv);
        resid = (Tv - mu_next * v).norm();
        const bool settled = std::abs(mu_next - mu) < tol * mu_next;
        mu = mu_next;
        out.iterations = it;
        if (settled && resid <= kResidualTarget * mu) {
            out.converged = true;
            break;
        }
    }

    const double scale = op.scale();
    out.lambda1 = scale * mu;
    // v has unit Euclidean norm; the grid L2 norm is sqrt(h) times that.
    out.residual = scale * resid;
    double sum = v.sum();
    const double sign = sum >= 0.0 ? 1.0 : -1.0;
    out.phi1.resize(n);
    const double norm = 1.0 / std::sqrt(h);
    for (int i = 0; i < n; ++i) out.phi1[i] = sign * v(i) * norm;
    return out;
}

RefinementResult refine_extrapolate(double a, double b, const std::vector<int>& n_sequence,
                                    double alpha, double tol) {
    if (n_sequence.size() < 3) throw std::invalid_argument("refine_extrapolate: need three grids");
    RefinementResult out;
    out.n_sequence = n_sequence;
    for (int n : n_sequence) {
        const Grid1D grid(a, b, n);
        const EigenPair pair = smallest_eigenpair(assemble(grid, alpha), tol);
        if (!pair.converged) {
            throw std::runtime_error("refine_extrapolate: eigensolver did not converge at n = " +
                                     std::to_string(n));
        }
        out.h_sequence.push_back(grid.h());
        out.lambda_per_grid.push_back(pair.lambda1);
    }
    out.extrapolation = richardson_fitted(out.h_sequence, out.lambda_per_grid);
    return out;
}

} // namespace fracharm
