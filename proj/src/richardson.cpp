#include "fracharm/richardson.hpp"

#include <cmath>
#include <stdexcept>

namespace fracharm {

Extrapolation richardson_fitted(std::span<const double> h, std::span<const double> values) {
    if (h.size() != values.size() || h.size() < 3) {
        throw std::invalid_argument("richardson: need at least three (h, value) pairs");
    }
    const std::size_t n = h.size();
    const double h1 = h[n - 3], h2 = h[n - 2], h3 = h[n - 1];
    const double f1 = values[n - 3], f2 = values[n - 2], f3 = values[n - 1];
    if (!(h1 > h2 && h2 > h3 && h3 > 0.0)) {
        throw std::invalid_argument("richardson: h must be positive and strictly decreasing");
    }
    Extrapolation out;
    out.value = f3;
    const double d12 = f1 - f2;
    const double d23 = f2 - f3;
    if (d23 == 0.0) {
        out.order = 0.0;
        out.ok = d12 == 0.0;
        if (!out.ok) out.warning = "last two samples coincide";
        return out;
    }
    const double target = d12 / d23;
    if (!(target > 0.0)) {
        out.ok = false;
        out.warning = "non-monotone sequence";
        return out;
    }
    // ratio(p) = (h1^p - h2^p)/(h2^p - h3^p) is increasing in p.
    auto ratio = [&](double p) {
        return (std::pow(h1, p) - std::pow(h2, p)) / (std::pow(h2, p) - std::pow(h3, p));
    };
    double lo = 1e-3;
    double hi = 12.0;
    if (target <= ratio(lo) || target >= ratio(hi)) {
        out.ok = false;
        out.warning = "no convergence order in [0.001, 12] fits the samples";
        return out;
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (ratio(mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double p = 0.5 * (lo + hi);
    out.order = p;
    const double h2p = std::pow(h2, p);
    const double h3p = std::pow(h3, p);
    out.value = f3 - d23 * h3p / (h2p - h3p);
    return out;
}

} // namespace fracharm
