#include "fracharm/harness.hpp"

#include "fracharm/coefficients.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fracharm {

namespace {

constexpr int kMoments = 17;
// Beyond this many half-widths from the centre r_1 is summed from moments.
constexpr double kFarRatio = 20.0;

// int_{u}^{u+hz} l(v) v^(-1-alpha) dv for l linear from f_near at u to f_far at u + hz.
double cell_integral(double f_near, double f_far, double u, double hz, double alpha) {
    const double ratio = std::log1p(hz / u);
    const double i0 = -std::pow(u, -alpha) * std::expm1(-alpha * ratio) / alpha;
    const double i1 = alpha == 1.0 ? ratio
                                   : std::pow(u, 1.0 - alpha) * std::expm1((1.0 - alpha) * ratio) /
                                         (1.0 - alpha);
    const double slope = (f_far - f_near) / hz;
    return f_near * i0 + slope * (i1 - u * i0);
}

struct NodeRule {
    std::vector<double> eps;
    std::vector<double> weight;
};

// Nodes for int_0^E F(eps) d eps with eps = w^4: one panel next to the
// boundary, then geometric panels in w.
NodeRule exterior_rule(double h, double radius) {
    using rule = boost::math::quadrature::gauss<double, 20>;
    std::vector<double> breaks{0.0, std::pow(h / 16.0, 0.25)};
    const double w_top = std::pow(radius, 0.25);
    while (breaks.back() < w_top) {
        const double ratio = breaks.back() < 1.0 ? 1.5 : 2.0;
        breaks.push_back(std::min(w_top, breaks.back() * ratio));
    }
    NodeRule out;
    const auto& x = rule::abscissa();
    const auto& w = rule::weights();
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double half = 0.5 * (breaks[p + 1] - breaks[p]);
        const double mid = 0.5 * (breaks[p + 1] + breaks[p]);
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (int s : {-1, 1}) {
                if (x[i] == 0.0 && s == 1) continue;
                const double wv = mid + s * half * x[i];
                out.eps.push_back(wv * wv * wv * wv);
                out.weight.push_back(half * w[i] * 4.0 * wv * wv * wv);
            }
        }
    }
    return out;
}

double phi_at_node(const EigenPair& pair, int i) {
    if (i < 1 || i > static_cast<int>(pair.phi1.size())) return 0.0;
    return pair.phi1[static_cast<std::size_t>(i - 1)];
}

double factorial(int q) { return boost::math::factorial<double>(static_cast<unsigned>(q)); }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

} // namespace

RemainderField::RemainderField(const EigenPair& pair, const Grid1D& grid, const StableIndex& idx,
                               double tail_fraction)
    : idx_(idx), a_(grid.a()), b_(grid.b()) {
    if (static_cast<int>(pair.phi1.size()) != grid.n()) {
        throw std::invalid_argument("RemainderField: eigenpair and grid sizes differ");
    }
    if (!(tail_fraction > 0.0 && tail_fraction < 1.0)) {
        throw std::invalid_argument("RemainderField: tail fraction in (0, 1)");
    }
    riesz_ = riesz_constant(1, idx);
    const int n = grid.n();
    z_.resize(n + 2);
    phi_.assign(n + 2, 0.0);
    for (int i = 0; i <= n + 1; ++i) z_[i] = grid.node(i);
    z_[n + 1] = b_;
    for (int i = 1; i <= n; ++i) phi_[i] = pair.phi1[i - 1];
    for (int i = 1; i <= n; ++i) phi_mass_ += grid.h() * phi_[i];

    // Moments of the interpolant about the centre, cell by cell.
    center_ = 0.5 * (a_ + b_);
    moments_.assign(kMoments, 0.0);
    for (int i = 0; i <= n; ++i) {
        const double z0 = z_[i] - center_;
        const double z1 = z_[i + 1] - center_;
        const double slope = (phi_[i + 1] - phi_[i]) / (z1 - z0);
        double p0 = z0;
        double p1 = z1;
        for (int k = 0; k < kMoments; ++k) {
            // int (f0 + slope (z - z0)) z^k dz with z measured from the centre
            const double pk1_0 = p0 * z0;
            const double pk1_1 = p1 * z1;
            const double int_k = (p1 - p0) / (k + 1);
            const double int_k1 = (pk1_1 - pk1_0) / (k + 2);
            moments_[k] += phi_[i] * int_k + slope * (int_k1 - z0 * int_k);
            p0 = pk1_0;
            p1 = pk1_1;
        }
    }

    // Truncation radius from r_1(y) <= c phi_mass dist(y, D)^(-1-alpha),
    // measured against the mass within unit distance of the interval.
    const double alpha = idx.alpha();
    const NodeRule unit = exterior_rule(grid.h(), 1.0);
    double near_mass = 0.0;
    for (std::size_t i = 0; i < unit.eps.size(); ++i) {
        near_mass += unit.weight[i] * ((*this)(b_ + unit.eps[i]) + (*this)(a_ - unit.eps[i]));
    }
    const double tail_scale = 2.0 * riesz_ * phi_mass_ / alpha;
    radius_ = std::max(10.0, std::pow(tail_scale / (tail_fraction * near_mass), 1.0 / alpha));
    tail_bound_ = tail_scale * std::pow(radius_, -alpha);

    const NodeRule rule = exterior_rule(grid.h(), radius_);
    for (std::size_t i = 0; i < rule.eps.size(); ++i) {
        for (double y : {a_ - rule.eps[i], b_ + rule.eps[i]}) {
            const double r = (*this)(y);
            nodes_.push_back({y, rule.weight[i], r});
            covered_mass_ += rule.weight[i] * r;
        }
    }
}

double RemainderField::near_field(double y) const {
    const double alpha = idx_.alpha();
    const std::size_t cells = z_.size() - 1;
    double acc = 0.0;
    if (y > b_) {
        for (std::size_t i = 0; i < cells; ++i) {
            const double hz = z_[i + 1] - z_[i];
            acc += cell_integral(phi_[i + 1], phi_[i], y - z_[i + 1], hz, alpha);
        }
    } else {
        for (std::size_t i = 0; i < cells; ++i) {
            const double hz = z_[i + 1] - z_[i];
            acc += cell_integral(phi_[i], phi_[i + 1], z_[i] - y, hz, alpha);
        }
    }
    return riesz_ * acc;
}

double RemainderField::far_field(double y) const {
    // |y - z|^(-1-alpha) = |D|^(-1-alpha) sum_k (1+alpha)_k / k! (sgn zeta/|D|)^k
    const double alpha = idx_.alpha();
    const double d = y - center_;
    const double ad = std::abs(d);
    const double sgn = d > 0.0 ? 1.0 : -1.0;
    double coeff = 1.0;
    double power = 1.0;
    double acc = 0.0;
    for (int k = 0; k < kMoments; ++k) {
        acc += coeff * power * moments_[k];
        coeff *= (1.0 + alpha + k) / (k + 1.0);
        power *= sgn / ad;
    }
    return riesz_ * std::pow(ad, -1.0 - alpha) * acc;
}

double RemainderField::operator()(double y) const {
    if (y >= a_ && y <= b_) return 0.0;
    const double half = 0.5 * (b_ - a_);
    if (std::abs(y - center_) > kFarRatio * half) return far_field(y);
    return near_field(y);
}

RemainderField build_r1(const EigenPair& pair, const Grid1D& grid, const StableIndex& idx,
                        double tail_fraction) {
    return RemainderField(pair, grid, idx, tail_fraction);
}

PtR1Value ptr1_dt_q(int q, double t, double x, const RemainderField& field,
                    const SubordinatorDensity& density, const QuadratureSpec& quad, int k_from) {
    if (!(x > field.a() && x < field.b())) {
        throw std::invalid_argument("ptr1_dt_q: x must lie strictly inside the interval");
    }
    const SubordinatedIntegral engine(density, quad);
    PtR1Value out;
    double farthest = 0.0;
    for (const auto& node : field.nodes()) {
        const double r = std::abs(x - node.y);
        const SplitIntegral part = engine.evaluate(q, t, r, 1, k_from);
        out.left += node.weight * node.r1 * part.left.value;
        out.right += node.weight * node.r1 * part.right.value;
        out.error += node.weight * node.r1 * (part.left.error + part.right.error);
        out.converged = out.converged && part.converged();
        farthest = std::max(farthest, r);
    }
    out.value = out.left + out.right;
    // Truncated exterior: the inner integral is bounded by its value at the cut.
    const SplitIntegral cut = engine.evaluate(q, t, farthest, 1, k_from);
    out.error += std::abs(cut.total()) * field.tail_bound();
    return out;
}

double limit_formula(int q, double x, const RemainderField& field) {
    if (q < 0) throw std::invalid_argument("limit_formula: q must be >= 0");
    if (!(x > field.a() && x < field.b())) {
        throw std::invalid_argument("limit_formula: x must lie strictly inside the interval");
    }
    const StableIndex& idx = field.index();
    const double gq = gamma_coefficient(q, idx);
    if (gq == 0.0) return 0.0;
    double acc = 0.0;
    for (const auto& node : field.nodes()) {
        acc += node.weight * node.r1 * inner_integral(q, 1, idx, std::abs(x - node.y));
    }
    return factorial(q) * gq * acc;
}

LimitProbe probe_limit(int q, double x, const RemainderField& field,
                       const SubordinatorDensity& density, const QuadratureSpec& quad,
                       const std::vector<double>& t_sequence) {
    LimitProbe out;
    out.t = t_sequence;
    for (double t : t_sequence) {
        const PtR1Value v = ptr1_dt_q(q, t, x, field, density, quad);
        out.values.push_back(v.value);
        out.left_pieces.push_back(v.left);
    }
    out.extrapolation = richardson_fitted(out.t, out.values);
    out.target = limit_formula(q, x, field);
    return out;
}

std::vector<double> tail_diagnostic(int q, double x, const RemainderField& field,
                                    const SubordinatorDensity& density, QuadratureSpec quad,
                                    const std::vector<double>& multipliers,
                                    const std::vector<double>& t_values) {
    double r = std::numeric_limits<double>::infinity();
    for (const auto& node : field.nodes()) r = std::min(r, std::abs(x - node.y));
    std::vector<double> out;
    for (double M : multipliers) {
        quad.split_multiplier = M;
        const SubordinatedIntegral engine(density, quad);
        double sup = 0.0;
        for (double t : t_values) {
            sup = std::max(sup, std::abs(engine.evaluate(q, t, r, 1, q + 1).right.value));
        }
        out.push_back(sup);
    }
    return out;
}

IdentitySides identity_sides(double x, const EigenPair& pair, const Grid1D& grid,
                             const RemainderField& field) {
    const StableIndex& idx = field.index();
    const int m = idx.require_m();
    const int i = grid.index_of(x);
    if (i < 0) throw std::invalid_argument("identity_sides: x is not a grid node");
    if (i <= 4 || i > grid.n() - 4) {
        throw std::invalid_argument("identity_sides: x within four nodes of the boundary");
    }
    const double h = grid.h();
    IdentitySides out;
    out.x = x;
    out.lhs = (phi_at_node(pair, i + 1) - 2.0 * phi_at_node(pair, i) + phi_at_node(pair, i - 1)) /
              (h * h);
    const double lambda = pair.lambda1;
    out.terms.push_back(-std::pow(lambda, m) * phi_at_node(pair, i));
    for (int q = 1; q < m; ++q) {
        const double sign = (q % 2 == 0) ? 1.0 : -1.0;
        out.terms.push_back(sign * std::pow(lambda, m - 1 - q) * limit_formula(q, x, field));
    }
    out.rhs = 0.0;
    for (double term : out.terms) out.rhs += term;
    return out;
}

double max_second_difference(const EigenPair& pair, int margin_nodes) {
    const int n = static_cast<int>(pair.phi1.size());
    if (margin_nodes < 0 || 2 * margin_nodes >= n) {
        throw std::invalid_argument("max_second_difference: margin too large");
    }
    double best = -std::numeric_limits<double>::infinity();
    for (int i = margin_nodes + 1; i <= n - margin_nodes; ++i) {
        const double d2 = (phi_at_node(pair, i + 1) - 2.0 * phi_at_node(pair, i) +
                           phi_at_node(pair, i - 1)) /
                          (pair.h * pair.h);
        best = std::max(best, d2);
    }
    return best;
}

std::vector<CheckRecord> theorem_identity_check(const StableIndex& idx, double a, double b,
                                                const TheoremCheckConfig& config) {
    idx.require_theorem_mode();
    const std::size_t nx = config.x_points.size();
    std::vector<std::vector<IdentitySides>> sides(nx);
    std::vector<double> hs;
    for (int n : config.n_sequence) {
        const Grid1D grid(a, b, n);
        const EigenPair pair = smallest_eigenpair(assemble(grid, idx), config.eig_tol);
        const RemainderField field(pair, grid, idx);
        hs.push_back(grid.h());
        for (std::size_t k = 0; k < nx; ++k) {
            sides[k].push_back(identity_sides(config.x_points[k], pair, grid, field));
        }
    }
    std::vector<CheckRecord> out;
    for (std::size_t k = 0; k < nx; ++k) {
        std::vector<double> lhs, rhs;
        for (const auto& s : sides[k]) {
            lhs.push_back(s.lhs);
            rhs.push_back(s.rhs);
        }
        CheckRecord rec;
        rec.name = "identity_x=" + fmt(config.x_points[k]);
        rec.anchor = "Laplacian of phi_1 equals -lambda^m phi_1 plus the signed limit terms; "
                     "right side <= 0";
        for (std::size_t g = 0; g < hs.size(); ++g) {
            rec.add("lhs_n" + std::to_string(config.n_sequence[g]), lhs[g]);
            rec.add("rhs_n" + std::to_string(config.n_sequence[g]), rhs[g]);
        }
        const Extrapolation el = richardson_fitted(hs, lhs);
        if (!el.ok) rec.note += "lhs extrapolation: " + el.warning + "; ";
        double rhs_limit = 0.0;
        const std::size_t terms = sides[k].front().terms.size();
        for (std::size_t j = 0; j < terms; ++j) {
            std::vector<double> values;
            for (const auto& s : sides[k]) values.push_back(s.terms[j]);
            const Extrapolation e = richardson_fitted(hs, values);
            rhs_limit += e.value;
            const std::string label = j == 0 ? "eigen_term" : "limit_term_q" + std::to_string(j);
            rec.add(label + "_extrapolated", e.value);
            rec.add(label + "_order", e.order);
            if (!e.ok) rec.note += label + " extrapolation: " + e.warning + "; ";
        }
        const double gap = std::abs(el.value - rhs_limit) / std::abs(el.value);
        const bool rhs_nonpositive =
            std::all_of(rhs.begin(), rhs.end(), [](double v) { return v <= 0.0; }) &&
            rhs_limit <= 0.0;
        rec.add("lhs_extrapolated", el.value);
        rec.add("lhs_order", el.order);
        rec.add("rhs_extrapolated", rhs_limit);
        rec.add("relative_gap", gap);
        rec.tolerance = config.gap_tolerance;
        rec.pass = gap <= config.gap_tolerance && rhs_nonpositive;
        if (!rhs_nonpositive) rec.note += "positive right side; ";
        out.push_back(std::move(rec));
    }
    return out;
}

CheckRecord superharmonicity_check(const StableIndex& idx, double a, double b,
                                   const SuperharmonicityConfig& config) {
    idx.require_theorem_mode();
    if (config.margin_nodes < 4) throw std::invalid_argument("superharmonicity: margin >= 4");
    if (config.n_sequence.size() < 2) {
        throw std::invalid_argument("superharmonicity: need a refinement sequence");
    }
    std::vector<double> maxima;
    for (int n : config.n_sequence) {
        const Grid1D grid(a, b, n);
        const EigenPair pair = smallest_eigenpair(assemble(grid, idx), config.eig_tol);
        maxima.push_back(max_second_difference(pair, config.margin_nodes));
    }
    CheckRecord rec;
    rec.name = "superharmonicity";
    rec.anchor = "max interior second difference of phi_1 <= tol(h), not increasing its "
                 "violation under refinement";
    rec.tolerance = config.tolerance;
    bool trend = true;
    for (std::size_t i = 0; i < maxima.size(); ++i) {
        rec.add("max_d2_n" + std::to_string(config.n_sequence[i]), maxima[i]);
        if (i >= 1 && std::max(0.0, maxima[i]) > std::max(0.0, maxima[i - 1])) trend = false;
        if (i >= 2 && std::abs(maxima[i] - maxima[i - 1]) > std::abs(maxima[i - 1] - maxima[i - 2])) {
            trend = false;
        }
    }
    rec.pass = maxima.back() <= config.tolerance && trend;
    if (!trend) rec.note = "refinement trend not settling";
    return rec;
}

CheckRecord concavity_check(double a, double b, int n, double eig_tol) {
    const Grid1D grid(a, b, n);
    const EigenPair pair = smallest_eigenpair(assemble(grid, 1.0), eig_tol);
    const double worst = max_second_difference(pair, 0);
    CheckRecord rec;
    rec.name = "concavity_alpha=1";
    rec.anchor = "every second difference of phi_1 is negative for alpha = 1";
    rec.tolerance = 0.0;
    rec.add("n", n);
    rec.add("max_d2", worst);
    rec.pass = worst < 0.0;
    return rec;
}

VerificationReport run_full_verification(const StableIndex& idx, const VerifyConfig& config) {
    idx.require_theorem_mode();
    const int m = idx.require_m();
    const double alpha = idx.alpha();
    config.quad.validate();
    VerificationReport report("superharmonicity verification, " + idx.describe());

    {
        CheckRecord rec;
        rec.name = "rising_factorial_identity_exact";
        rec.anchor = "sum_j a_j(q) (-1)^j (k/m+1)_j = 0 for k < q and q! for k = q";
        int checked = 0;
        bool ok = true;
        for (int q = 0; q <= 8; ++q) {
            for (int k = 0; k <= q; ++k) {
                try {
                    check_lemma41(q, k, idx);
                } catch (const IdentityViolation&) {
                    ok = false;
                }
                ++checked;
            }
        }
        rec.add("cases", checked);
        rec.tolerance = 0.0;
        rec.pass = ok;
        report.add(rec);
    }
    {
        CheckRecord rec;
        rec.name = "rising_factorial_identity_float";
        rec.anchor = "same identity in 50-digit floating point at this alpha";
        double worst = 0.0;
        for (int q = 0; q <= 8; ++q) {
            for (int k = 0; k <= q; ++k) {
                const double v = static_cast<double>(rising_identity_sum<WideFloat>(q, k, WideFloat(alpha)));
                const double target = k == q ? factorial(q) : 0.0;
                worst = std::max(worst, std::abs(v - target) / factorial(q));
            }
        }
        rec.add("max_defect_over_qfact", worst);
        rec.tolerance = 1e-10;
        rec.pass = worst <= rec.tolerance;
        report.add(rec);
    }
    {
        CheckRecord rec;
        rec.name = "subordinator_pde_termwise";
        rec.anchor = "-gamma_k (k/m+1) = (-1)^m gamma_(k+m) (k+m)!/k!";
        double worst = 0.0;
        for (int k = 0; k <= 20; ++k) worst = std::max(worst, pde_coefficient_residual(k, m));
        rec.add("max_relative_defect", worst);
        rec.tolerance = 1e-12;
        rec.pass = worst <= rec.tolerance;
        report.add(rec);
    }

    const SubordinatorDensity density(idx);
    {
        CheckRecord rec;
        rec.name = "laplace_certificate";
        rec.anchor = "int e^(-lambda s) f_t(s) ds = exp(-t lambda^(alpha/2))";
        double worst = 0.0;
        for (double lambda : {0.1, 0.3, 1.0, 3.0, 10.0}) {
            for (double t : {0.25, 1.0, 4.0}) {
                const QuadValue v = laplace_transform(lambda, t, density, config.quad);
                worst = std::max(worst,
                                 std::abs(v.value - std::exp(-t * std::pow(lambda, idx.beta()))));
            }
        }
        const QuadValue mass = total_mass(1.0, density, config.quad);
        rec.add("max_residual", worst);
        rec.add("total_mass_minus_one", mass.value - 1.0);
        rec.add("series_threshold", density.threshold());
        rec.tolerance = 1e-8;
        rec.pass = worst <= rec.tolerance && std::abs(mass.value - 1.0) <= rec.tolerance;
        report.add(rec);
    }
    {
        CheckRecord rec;
        rec.name = "kernel_oracle_equivalence";
        rec.anchor = "subordination integral equals Fourier inversion of exp(-t|xi|^alpha)";
        double worst = 0.0;
        for (double t : {0.25, 1.0, 4.0}) {
            for (double r : {0.0, 0.5, 1.0, 2.0, 5.0}) {
                const QuadValue p = transition_density(t, Point{0.0}, Point{r}, density, config.quad);
                const QuadValue f = transition_density_fourier_1d(t, r, idx, config.quad);
                worst = std::max(worst, std::abs(p.value - f.value));
            }
        }
        rec.add("max_abs_difference", worst);
        rec.tolerance = 1e-6;
        rec.pass = worst <= rec.tolerance;
        report.add(rec);
    }

    const RefinementResult refinement =
        refine_extrapolate(config.a, config.b, config.limit_n_sequence, alpha);
    {
        CheckRecord rec;
        rec.name = "eigenvalue_refinement";
        rec.anchor = "lambda_1 on nested grids with fitted-order extrapolation";
        for (std::size_t i = 0; i < refinement.n_sequence.size(); ++i) {
            rec.add("lambda_n" + std::to_string(refinement.n_sequence[i]),
                    refinement.lambda_per_grid[i]);
        }
        rec.add("lambda_extrapolated", refinement.extrapolation.value);
        rec.add("order_estimate", refinement.extrapolation.order);
        rec.tolerance = 0.0;
        rec.pass = refinement.extrapolation.ok;
        rec.note = refinement.extrapolation.warning;
        report.add(rec);
    }

    const Grid1D grid(config.a, config.b, config.limit_grid);
    const EigenPair pair = smallest_eigenpair(assemble(grid, idx), config.theorem.eig_tol);
    {
        CheckRecord rec;
        rec.name = "eigenpair_quality";
        rec.anchor = "phi_1 > 0, symmetric, small residual";
        const int n = grid.n();
        double min_phi = std::numeric_limits<double>::infinity();
        double asym = 0.0;
        for (int i = 0; i < n; ++i) {
            min_phi = std::min(min_phi, pair.phi1[i]);
            asym = std::max(asym, std::abs(pair.phi1[i] - pair.phi1[n - 1 - i]));
        }
        rec.add("lambda1", pair.lambda1);
        rec.add("min_phi", min_phi);
        rec.add("max_asymmetry", asym);
        rec.add("relative_residual", pair.residual / pair.lambda1);
        rec.tolerance = 1e-8;
        rec.pass = pair.converged && min_phi > 0.0 && asym <= 1e-10 &&
                   pair.residual <= rec.tolerance * pair.lambda1;
        report.add(rec);
    }
    {
        CheckRecord rec;
        rec.name = "sign_ledger";
        rec.anchor = "(-1)^q gamma_q <= 0 for q = 0..m-1";
        bool ok = true;
        for (const auto& e : sign_ledger(m)) {
            rec.add("q" + std::to_string(e.q), e.signed_value);
            if (e.sign > 0) ok = false;
        }
        rec.tolerance = 0.0;
        rec.pass = ok;
        report.add(rec);
    }

    const RemainderField field(pair, grid, idx);
    {
        CheckRecord rec;
        rec.name = "remainder_field";
        rec.anchor = "r_1 >= 0 outside the interval, truncation tail bounded";
        double min_r = std::numeric_limits<double>::infinity();
        for (const auto& node : field.nodes()) min_r = std::min(min_r, node.r1);
        rec.add("truncation_radius", field.truncation_radius());
        rec.add("tail_bound", field.tail_bound());
        rec.add("covered_mass", field.covered_mass());
        rec.add("min_r1", min_r);
        rec.tolerance = 1e-8;
        rec.pass = min_r > 0.0 && field.tail_bound() <= rec.tolerance * field.covered_mass();
        report.add(rec);
    }

    for (int q = 0; q < m; ++q) {
        for (double x : config.limit_x) {
            const LimitProbe probe = probe_limit(q, x, field, density, config.quad,
                                                 config.t_sequence);
            CheckRecord rec;
            rec.name = "limit_q=" + std::to_string(q) + "_x=" + fmt(x);
            rec.anchor = "t -> 0 limit of d^q/dt^q P_t r_1(x) equals q! gamma_q times the "
                         "closed-form inner integral against r_1";
            for (std::size_t i = 0; i < probe.t.size(); ++i) {
                rec.add("t=" + fmt(probe.t[i]), probe.values[i]);
            }
            rec.add("left_piece_first", probe.left_pieces.front());
            rec.add("left_piece_last", probe.left_pieces.back());
            rec.add("extrapolated", probe.extrapolation.value);
            rec.add("order", probe.extrapolation.order);
            rec.add("closed_form", probe.target);
            const double scale = probe.target != 0.0 ? std::abs(probe.target)
                                                     : std::abs(probe.values.front());
            const double err = std::abs(probe.extrapolation.value - probe.target) / scale;
            rec.add("relative_error", err);
            const bool left_shrinks =
                std::abs(probe.left_pieces.back()) <= std::abs(probe.left_pieces.front());
            rec.tolerance = config.limit_tolerance;
            rec.pass = err <= rec.tolerance && left_shrinks;
            if (probe.target == 0.0) rec.note = "zero limit; error relative to the first sample";
            if (!probe.extrapolation.ok) rec.note += " extrapolation: " + probe.extrapolation.warning;
            report.add(rec);
        }
    }
    for (int q = 1; q < m; ++q) {
        const auto diag = tail_diagnostic(q, 0.0, field, density, config.quad,
                                          config.tail_multipliers, config.tail_t);
        CheckRecord rec;
        rec.name = "tail_diagnostic_q=" + std::to_string(q);
        rec.anchor = "higher-order part of the s > M t^(2/alpha) piece shrinks as M grows";
        bool decreasing = true;
        for (std::size_t i = 0; i < diag.size(); ++i) {
            rec.add("M=" + fmt(config.tail_multipliers[i]), diag[i]);
            if (i > 0 && !(diag[i] < diag[i - 1])) decreasing = false;
        }
        rec.tolerance = 0.0;
        rec.pass = decreasing;
        report.add(rec);
    }

    report.append(theorem_identity_check(idx, config.a, config.b, config.theorem));
    report.add(superharmonicity_check(idx, config.a, config.b, config.superharmonic));
    return report;
}

} // namespace fracharm
