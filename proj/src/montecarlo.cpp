#include "fracharm/montecarlo.hpp"

#include "fracharm/subordinator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace fracharm {

SubordinatorClock SubordinatorClock::stable(const StableIndex& idx) {
    SubordinatorClock c;
    c.idx_ = idx;
    return c;
}

SubordinatorClock SubordinatorClock::deterministic() { return SubordinatorClock{}; }

double SubordinatorClock::increment(double dt, std::mt19937_64& rng) const {
    if (!idx_) return dt;
    return sample_subordinator_increment(dt, *idx_, rng);
}

void McConfig::validate() const {
    if (!(a < b)) throw std::invalid_argument("monte carlo: need a < b");
    if (x0 && !(*x0 > a && *x0 < b)) {
        throw std::invalid_argument("monte carlo: start point must lie inside the interval");
    }
    if (!(dt > 0.0 && dt <= 1e-2)) throw std::invalid_argument("monte carlo: dt in (0, 1e-2]");
    if (!(t_max > dt)) throw std::invalid_argument("monte carlo: t_max must exceed dt");
    if (record_every < 1) throw std::invalid_argument("monte carlo: record_every >= 1");
    if (n_paths < 1) throw std::invalid_argument("monte carlo: n_paths >= 1");
    if (streams < 1) throw std::invalid_argument("monte carlo: streams >= 1");
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double simulate_exit(double x0, double a, double b, double dt, double t_max,
                     const SubordinatorClock& clock, std::mt19937_64& rng) {
    if (!(x0 > a && x0 < b)) throw std::invalid_argument("simulate_exit: x0 must lie in (a, b)");
    std::normal_distribution<double> normal(0.0, 1.0);
    double x = x0;
    const long steps = static_cast<long>(std::ceil(t_max / dt - 1e-9));
    for (long k = 1; k <= steps; ++k) {
        const double ds = clock.increment(dt, rng);
        x += std::sqrt(2.0 * ds) * normal(rng);
        if (x <= a || x >= b) return k * dt;
    }
    return std::numeric_limits<double>::infinity();
}

SurvivalCurve survival_curve(const McConfig& config, const SubordinatorClock& clock) {
    config.validate();
    const long steps = static_cast<long>(std::ceil(config.t_max / config.dt - 1e-9));
    const long bins = steps / config.record_every;
    const double x_start = config.x0.value_or(0.5 * (config.a + config.b));

    // exits[s][k]: paths of stream s that exited in recording bin k.
    std::vector<std::vector<long>> exits(config.streams, std::vector<long>(bins + 1, 0));
    auto run_stream = [&](int s) {
        std::uint64_t state = config.seed;
        for (int i = 0; i <= s; ++i) splitmix64(state);
        std::mt19937_64 rng(splitmix64(state));
        std::uniform_real_distribution<double> start(config.a, config.b);
        const long first = config.n_paths * s / config.streams;
        const long last = config.n_paths * (s + 1) / config.streams;
        for (long p = first; p < last; ++p) {
            double x0 = x_start;
            if (config.uniform_start) {
                do { x0 = start(rng); } while (!(x0 > config.a && x0 < config.b));
            }
            const double tau = simulate_exit(x0, config.a, config.b, config.dt, config.t_max,
                                             clock, rng);
            if (std::isinf(tau)) continue;
            const long step = std::lround(tau / config.dt);
            // Exit at step k is first seen by the record at ceil(k / record_every).
            const long bin = (step + config.record_every - 1) / config.record_every;
            exits[s][std::min(bin, bins)] += 1;
        }
    };
    int threads = config.threads > 0 ? config.threads
                                     : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, config.streams);
    if (threads == 1) {
        for (int s = 0; s < config.streams; ++s) run_stream(s);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                for (int s = w; s < config.streams; s += threads) run_stream(s);
            });
        }
        for (auto& th : pool) th.join();
    }

    SurvivalCurve curve;
    curve.n_paths = config.n_paths;
    curve.dt = config.dt;
    long alive = config.n_paths;
    const double n = static_cast<double>(config.n_paths);
    for (long k = 0; k <= bins; ++k) {
        for (int s = 0; s < config.streams; ++s) alive -= exits[s][k];
        const double p = alive / n;
        curve.t_grid.push_back(k * config.record_every * config.dt);
        curve.survival.push_back(p);
        curve.standard_errors.push_back(std::sqrt(p * (1.0 - p) / n));
    }
    return curve;
}

LambdaEstimate estimate_lambda1(const SurvivalCurve& curve, double start_survival,
                                double min_survivors, double min_r2) {
    LambdaEstimate out;
    const std::size_t n = curve.t_grid.size();
    const double paths = static_cast<double>(curve.n_paths);
    std::vector<std::size_t> usable;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = curve.survival[i];
        if (p <= start_survival && p * paths >= min_survivors && p > 0.0) {
            usable.push_back(i);
        }
    }
    if (usable.size() < 5) {
        out.warning = "insufficient tail data";
        return out;
    }
    struct Fit {
        double slope, slope_se, r2;
    };
    // Var(log S) ~ (1 - p) / (n p) by the delta method.
    auto fit = [&](std::size_t lo, std::size_t hi) {
        double sw = 0, sx = 0, sy = 0;
        for (std::size_t k = lo; k <= hi; ++k) {
            const std::size_t i = usable[k];
            const double p = curve.survival[i];
            const double w = paths * p / (1.0 - p);
            sw += w;
            sx += w * curve.t_grid[i];
            sy += w * -std::log(p);
        }
        const double mx = sx / sw;
        const double my = sy / sw;
        double sxx = 0, sxy = 0, syy = 0;
        for (std::size_t k = lo; k <= hi; ++k) {
            const std::size_t i = usable[k];
            const double p = curve.survival[i];
            const double w = paths * p / (1.0 - p);
            const double dx = curve.t_grid[i] - mx;
            const double dy = -std::log(p) - my;
            sxx += w * dx * dx;
            sxy += w * dx * dy;
            syy += w * dy * dy;
        }
        Fit f;
        f.slope = sxy / sxx;
        f.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
        f.slope_se = std::sqrt(1.0 / sxx);
        return f;
    };
    double best_span = -1.0;
    for (std::size_t lo = 0; lo + 4 < usable.size(); ++lo) {
        for (std::size_t hi = usable.size() - 1; hi >= lo + 4; --hi) {
            const double span = curve.t_grid[usable[hi]] - curve.t_grid[usable[lo]];
            if (span <= best_span) break;
            const Fit f = fit(lo, hi);
            if (f.r2 >= min_r2) {
                best_span = span;
                out.lambda_hat = f.slope;
                out.stderr_ = f.slope_se;
                out.r_squared = f.r2;
                out.t_lo = curve.t_grid[usable[lo]];
                out.t_hi = curve.t_grid[usable[hi]];
                out.ok = true;
                break;
            }
        }
    }
    if (!out.ok) out.warning = "no window reaches the R^2 threshold";
    return out;
}

} // namespace fracharm
