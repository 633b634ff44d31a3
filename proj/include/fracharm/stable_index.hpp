#pragma once

#include <optional>
#include <string>

namespace fracharm {

/// Stability exponent of a symmetric stable process, with the derived
/// subordinator index beta = alpha/2 and the scaling exponent 2/alpha.
///
/// When alpha is exactly 2/m for an integer m >= 2 the integer is kept so
/// that callers can switch to exact rational arithmetic.
class StableIndex {
public:
    /// Throws std::invalid_argument unless 0 < alpha < 2.
    static StableIndex from_alpha(double alpha);
    /// alpha = 2/m. Throws unless m >= 2.
    static StableIndex from_m(int m);

    double alpha() const { return alpha_; }
    double beta() const { return alpha_ / 2.0; }
    /// 2/alpha, the time-scaling exponent of the subordinator density.
    double inv() const { return inv_; }
    std::optional<int> m() const { return m_; }

    /// alpha = 2/m with m > 2, the hypothesis of the superharmonicity theorem.
    bool theorem_mode() const { return m_.has_value() && *m_ > 2; }
    void require_theorem_mode() const;
    int require_m() const;

    std::string describe() const;

private:
    StableIndex(double alpha, std::optional<int> m);

    double alpha_;
    double inv_;
    std::optional<int> m_;
};

} // namespace fracharm
