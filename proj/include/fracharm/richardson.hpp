#pragma once

#include <span>
#include <string>

namespace fracharm {

/// Limit of F(h) = F0 + C h^p + ... from three samples, with p fitted.
struct Extrapolation {
    double value = 0.0;
    double order = 0.0;
    /// False when the differences change sign or no order fits; value then
    /// holds the sample at the smallest h.
    bool ok = true;
    std::string warning;
};

/// Uses the last three (h, F) pairs; h must be strictly decreasing and positive.
Extrapolation richardson_fitted(std::span<const double> h, std::span<const double> values);

} // namespace fracharm
