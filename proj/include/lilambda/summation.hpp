#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "lilambda/precision.hpp"

namespace lilambda {

// Neumaier's variant of Kahan summation; robust when an addend exceeds the
// running total.
class CompensatedSum {
public:
    CompensatedSum& operator+=(double x) noexcept {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            carry_ += (sum_ - t) + x;
        else
            carry_ += (x - t) + sum_;
        sum_ = t;
        return *this;
    }
    CompensatedSum& operator-=(double x) noexcept { return *this += -x; }
    [[nodiscard]] double value() const noexcept { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

/// Sum of big-float terms accumulated in ascending order of magnitude.
inline Real sorted_sum(std::vector<Real> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Real& a, const Real& b) { return abs(a) < abs(b); });
    Real total = 0;
    for (const auto& t : terms) total += t;
    return total;
}

}  // namespace lilambda
