#include "fracharm/stable_index.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fracharm {

StableIndex::StableIndex(double alpha, std::optional<int> m)
    : alpha_(alpha), inv_(m ? static_cast<double>(*m) : 2.0 / alpha), m_(m) {}

StableIndex StableIndex::from_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0)) {
        std::ostringstream os;
        os << "stability index alpha must lie in (0,2), got " << alpha;
        throw std::invalid_argument(os.str());
    }
    // Keep m only when 2/m reproduces alpha bit-for-bit.
    const double ratio = 2.0 / alpha;
    const double rounded = std::round(ratio);
    if (rounded >= 2.0 && rounded < 1e9 && 2.0 / rounded == alpha) {
        return StableIndex(alpha, static_cast<int>(rounded));
    }
    return StableIndex(alpha, std::nullopt);
}

StableIndex StableIndex::from_m(int m) {
    if (m < 2) {
        throw std::invalid_argument("m must be an integer >= 2 (alpha = 2/m < 2)");
    }
    return StableIndex(2.0 / m, m);
}

void StableIndex::require_theorem_mode() const {
    if (!theorem_mode()) {
        throw std::invalid_argument("operation requires alpha = 2/m with integer m > 2, got " +
                                    describe());
    }
}

int StableIndex::require_m() const {
    if (!m_) {
        throw std::invalid_argument("operation requires alpha = 2/m for an integer m, got " +
                                    describe());
    }
    return *m_;
}

std::string StableIndex::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "alpha=" << alpha_;
    if (m_) os << " (m=" << *m_ << ")";
    return os.str();
}

} // namespace fracharm
