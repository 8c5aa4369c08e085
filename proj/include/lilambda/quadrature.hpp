#pragma once

// Adaptive Gauss-Legendre quadrature, generic over the scalar type so the
// same engine serves hardware doubles and Real.

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "lilambda/precision.hpp"

namespace lilambda {

template <class T>
struct QuadratureResult {
    T value{};
    T error{};
    bool converged = false;
    long evaluations = 0;
};

/// n-point Gauss-Legendre rule on [-1, 1], nodes refined by Newton's method
/// at the precision of T (for Real: the current default precision).
template <class T>
class GaussLegendre {
public:
    explicit GaussLegendre(int n) : n_(n) {
        using std::abs;
        const int half = (n + 1) / 2;
        nodes_.reserve(static_cast<std::size_t>(half));
        weights_.reserve(static_cast<std::size_t>(half));
        const T eps = tolerance();
        for (int i = 1; i <= half; ++i) {
            T x = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
            T dp{};
            for (int it = 0; it < 100; ++it) {
                auto [p, d] = legendre(x);
                dp = d;
                const T dx = p / d;
                x -= dx;
                if (abs(dx) < eps) {
                    dp = legendre(x).second;
                    break;
                }
            }
            nodes_.push_back(x);
            weights_.push_back(T(2) / ((T(1) - x * x) * dp * dp));
        }
    }

    [[nodiscard]] int order() const noexcept { return n_; }

    /// Rule applied to [a, b].
    template <class F>
    T apply(const F& f, const T& a, const T& b) const {
        const T mid = (a + b) / 2;
        const T half = (b - a) / 2;
        T sum = 0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const T dx = half * nodes_[i];
            if (n_ % 2 == 1 && i + 1 == nodes_.size())
                sum += weights_[i] * f(mid);
            else
                sum += weights_[i] * (f(mid - dx) + f(mid + dx));
        }
        return sum * half;
    }

private:
    static T tolerance() {
        if constexpr (std::is_floating_point_v<T>)
            return T(4) * std::numeric_limits<T>::epsilon();
        else
            return pow(T(10), -static_cast<int>(T::default_precision()) + 2);
    }

    // (P_n(x), P_n'(x))
    std::pair<T, T> legendre(const T& x) const {
        T p0 = 1, p1 = x;
        for (int k = 2; k <= n_; ++k) {
            T p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = std::move(p1);
            p1 = std::move(p2);
        }
        T d = n_ * (x * p1 - p0) / (x * x - 1);
        return {p1, d};
    }

    int n_;
    std::vector<T> nodes_;
    std::vector<T> weights_;
};

/// Integrates f over [a, b] by recursive bisection until each panel's
/// one-rule-vs-two-half-rules discrepancy fits its share of abs_tol.
template <class T, class F>
QuadratureResult<T> integrate_adaptive(const F& f, const T& a, const T& b, const T& abs_tol,
                                       int max_depth = 60, int order = 20) {
    using std::abs;
    const GaussLegendre<T> rule(order);
    QuadratureResult<T> out;
    out.converged = true;

    struct Panel {
        T lo, hi, whole, tol;
        int depth;
    };
    std::vector<Panel> stack;
    stack.push_back({a, b, rule.apply(f, a, b), abs_tol, 0});
    out.evaluations += order;

    // accepted panels, summed smallest-first at the end
    std::vector<T> pieces;
    while (!stack.empty()) {
        Panel p = std::move(stack.back());
        stack.pop_back();
        const T mid = (p.lo + p.hi) / 2;
        T left = rule.apply(f, p.lo, mid);
        T right = rule.apply(f, mid, p.hi);
        out.evaluations += 2 * order;
        T refined = left + right;
        T diff = abs(refined - p.whole);
        if (diff <= p.tol || p.depth >= max_depth) {
            if (diff > p.tol) out.converged = false;
            pieces.push_back(std::move(refined));
            out.error += diff;
            continue;
        }
        const T half_tol = p.tol / 2;
        stack.push_back({mid, p.hi, std::move(right), half_tol, p.depth + 1});
        stack.push_back({p.lo, mid, std::move(left), half_tol, p.depth + 1});
    }
    std::sort(pieces.begin(), pieces.end(), [](const T& x, const T& y) { return abs(x) < abs(y); });
    for (const auto& v : pieces) out.value += v;
    return out;
}

}  // namespace lilambda
