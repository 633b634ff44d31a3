#pragma once

#include "fracharm/stable_index.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace fracharm {

/// Time change driving the Brownian motion: the alpha/2-stable subordinator,
/// or the identity clock (alpha = 2, plain Brownian motion at twice the speed).
class SubordinatorClock {
public:
    static SubordinatorClock stable(const StableIndex& idx);
    static SubordinatorClock deterministic();

    double increment(double dt, std::mt19937_64& rng) const;
    /// Stability exponent of the resulting process (2 for the identity clock).
    double alpha() const { return idx_ ? idx_->alpha() : 2.0; }

private:
    std::optional<StableIndex> idx_;
};

struct McConfig {
    double a = -1.0;
    double b = 1.0;
    /// Start point; the midpoint when empty.
    std::optional<double> x0;
    /// Start uniformly in (a, b) instead of at x0.
    bool uniform_start = false;
    double dt = 1e-3;
    double t_max = 8.0;
    /// Survival is recorded every record_every steps.
    int record_every = 50;
    long n_paths = 100000;
    std::uint64_t seed = 1;
    /// Paths are split into this many independently seeded streams.
    int streams = 64;
    int threads = 0;  // 0: hardware concurrency

    void validate() const;
};

struct SurvivalCurve {
    std::vector<double> t_grid;
    std::vector<double> survival;
    std::vector<double> standard_errors;
    long n_paths = 0;
    double dt = 0.0;
};

/// SplitMix64 step; used to derive per-stream seeds from the master seed.
std::uint64_t splitmix64(std::uint64_t& state);

/// First monitored time at which the path leaves (a, b); +infinity when it
/// survives past t_max.
double simulate_exit(double x0, double a, double b, double dt, double t_max,
                     const SubordinatorClock& clock, std::mt19937_64& rng);

SurvivalCurve survival_curve(const McConfig& config, const SubordinatorClock& clock);

struct LambdaEstimate {
    double lambda_hat = 0.0;
    double stderr_ = 0.0;
    double t_lo = 0.0;
    double t_hi = 0.0;
    double r_squared = 0.0;
    bool ok = false;
    std::string warning;
};

/// Weighted least-squares slope of -log S(t) over the widest window whose
/// points have S <= start_survival (higher modes have decayed), at least
/// min_survivors surviving paths, and R^2 >= min_r2.
LambdaEstimate estimate_lambda1(const SurvivalCurve& curve, double start_survival = 0.2,
                                double min_survivors = 200.0, double min_r2 = 0.999);

} // namespace fracharm
