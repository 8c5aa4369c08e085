#pragma once

// Secondary zeta function Z(sigma) = sum_k x_k^(-sigma), x_k = 1/4 + tau_k^2,
// over a zero catalog, completed above the catalog by the smooth counting law.

#include <cmath>
#include <optional>
#include <vector>

#include "lilambda/errors.hpp"
#include "lilambda/numkernel.hpp"
#include "lilambda/precision.hpp"
#include "lilambda/quadrature.hpp"
#include "lilambda/summation.hpp"
#include "lilambda/zero_catalog.hpp"

namespace lilambda {

/// How the zeros above the truncation height are accounted for.
enum class TailMode {
    none,       ///< truncated sum only
    smooth,     ///< integral against the smooth density dNbar
    staircase,  ///< smooth integral plus the boundary jump of the staircase
};

/// Tail of sum_k f(tau_k) above height T, written as a Stieltjes integral
/// against N(t) = Nbar(t) + dN(t). Integrating the dN part by parts leaves
/// -f(T) dN(T) - int_T^inf f'(t) dN(t) dt. The staircase mode keeps the
/// boundary term with dN(T) measured on the catalog, and takes the mean of
/// dN beyond T to be the catalog's own mean offset; the remaining
/// fluctuation integral is what the tail estimate budgets for.
struct TailSetup {
    double height = 0.0;
    double boundary_excess = 0.0;  // dN(T) - mean offset; 0 unless staircase
    TailMode mode = TailMode::smooth;
};

inline TailSetup tail_setup(const ZeroCatalog& catalog, const CountingModel& model, double height,
                            TailMode mode) {
    TailSetup s{height, 0.0, mode};
    if (mode == TailMode::staircase) {
        const double excess = static_cast<double>(catalog.staircase(height)) - smooth_count(model, height);
        s.boundary_excess = excess - staircase_offset(catalog, model);
    }
    return s;
}

namespace detail {

// (1 + e)^(-s) - 1 without cancellation for small e
inline double pow1p_minus1(double e, double s) { return std::expm1(-s * std::log1p(e)); }
inline Real pow1p_minus1(const Real& e, const Real& s) {
    Real l, r;
    mpfr_log1p(l.backend().data(), e.backend().data(), MPFR_RNDN);
    l *= -s;
    mpfr_expm1(r.backend().data(), l.backend().data(), MPFR_RNDN);
    return r;
}

}  // namespace detail

struct ZValue {
    Real value;
    Real tail;             // contribution assigned to zeros above the cut
    double tail_estimate;  // uncertainty budget of that contribution
};

/// Evaluates Z over a catalog. Holds a reference: the catalog must outlive
/// the evaluator.
class SecondaryZetaEvaluator {
public:
    SecondaryZetaEvaluator(const ZeroCatalog& catalog, CountingModel model,
                           std::optional<double> tail_from = std::nullopt,
                           TailMode mode = TailMode::staircase)
        : catalog_(catalog), model_(model), mode_(mode) {
        tail_from_ = tail_from.value_or(catalog.height_max());
        if (tail_from_ > catalog.height_max())
            throw InvalidArgument("SecondaryZetaEvaluator: tail_from exceeds height_max");
    }

    [[nodiscard]] const ZeroCatalog& catalog() const noexcept { return catalog_; }
    [[nodiscard]] const CountingModel& model() const noexcept { return model_; }
    [[nodiscard]] double tail_from() const noexcept { return tail_from_; }
    [[nodiscard]] TailMode mode() const noexcept { return mode_; }

    /// Z(sigma) for real sigma > 1/2.
    [[nodiscard]] ZValue z_value(const Real& sigma_in, const PrecisionContext& ctx) const {
        check_ready();
        PrecisionGuard g(ctx);
        const Real sigma = at_precision(sigma_in, ctx.digits());
        if (!(sigma > Real(1) / 2)) throw DomainError("z_value: sigma must be > 1/2");

        // explicit part, smallest terms first
        std::vector<Real> terms;
        terms.reserve(catalog_.size());
        for (const auto& p : catalog_.pairs()) {
            if (p.on_line() && p.re > tail_from_) continue;
            auto [xr, xi] = p.x();
            if (p.on_line()) {
                terms.push_back(p.multiplicity * pow(xr, -sigma));
            } else {
                const Real r = sqrt(xr * xr + xi * xi);
                const Real phi = atan2(xi, xr);
                terms.push_back(2 * p.multiplicity * pow(r, -sigma) * cos(sigma * phi));
            }
        }
        ZValue out;
        out.tail = 0;
        out.tail_estimate = 0.0;
        if (mode_ != TailMode::none && tail_from_ > 0.0) {
            auto [tail, est] = power_tail(sigma, ctx);
            out.tail = tail;
            out.tail_estimate = est;
            terms.push_back(tail);
        }
        out.value = sorted_sum(std::move(terms));
        return out;
    }

    [[nodiscard]] ZValue z_value(double sigma, const PrecisionContext& ctx) const {
        PrecisionGuard g(ctx);
        return z_value(Real(shortest_decimal(sigma)), ctx);
    }

    /// Z(1), ..., Z(max_j) in one pass over the catalog.
    [[nodiscard]] std::vector<ZValue> z_values_integer(int max_j, const PrecisionContext& ctx) const {
        check_ready();
        if (max_j < 1) throw InvalidArgument("z_values_integer: max_j must be >= 1");
        PrecisionGuard g(ctx);
        std::vector<Real> sums(static_cast<std::size_t>(max_j), Real(0));
        const auto& pairs = catalog_.pairs();
        // reverse order: descending tau, i.e. ascending term magnitude
        for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
            const auto& p = *it;
            if (p.on_line() && p.re > tail_from_) continue;
            auto [xr, xi] = p.x();
            if (p.on_line()) {
                const Real inv = Real(1) / at_precision(xr, ctx.digits());
                Real pw = inv;
                for (int j = 1; j <= max_j; ++j) {
                    sums[static_cast<std::size_t>(j - 1)] += p.multiplicity * pw;
                    pw *= inv;
                }
            } else {
                const Real r = sqrt(xr * xr + xi * xi);
                const Real phi = atan2(xi, xr);
                const Real inv = 1 / r;
                Real pw = inv;
                for (int j = 1; j <= max_j; ++j) {
                    sums[static_cast<std::size_t>(j - 1)] += 2 * p.multiplicity * pw * cos(j * phi);
                    pw *= inv;
                }
            }
        }
        std::vector<ZValue> out(static_cast<std::size_t>(max_j));
        for (int j = 1; j <= max_j; ++j) {
            auto& o = out[static_cast<std::size_t>(j - 1)];
            o.tail = 0;
            o.tail_estimate = 0.0;
            if (mode_ != TailMode::none && tail_from_ > 0.0) {
                auto [tail, est] = power_tail(Real(j), ctx);
                o.tail = tail;
                o.tail_estimate = est;
            }
            o.value = sums[static_cast<std::size_t>(j - 1)] + o.tail;
        }
        return out;
    }

private:
    void check_ready() const {
        if (catalog_.empty()) throw InvalidState("secondary zeta: empty catalog");
    }

    // int_T^inf (1/4 + t^2)^(-sigma) dNbar(t), minus the staircase boundary
    // term when requested. The leading t^(-2 sigma) part is integrated in
    // closed form; the correction factor (1 + 1/(4t^2))^(-sigma) - 1 goes to
    // adaptive quadrature after t = T/u.
    std::pair<Real, double> power_tail(const Real& sigma, const PrecisionContext& ctx) const {
        const TailSetup setup = tail_setup(catalog_, model_, tail_from_, mode_);
        const Real big_t = tail_from_ == catalog_.height_max() ? catalog_.height_max_exact()
                                                               : Real(shortest_decimal(tail_from_));
        const Real r2 = model_.r2<Real>();
        const Real r1 = model_.r1<Real>();
        const Real a = 2 * sigma - 1;
        const Real t_pow = pow(big_t, -a);
        const Real log_t = log(big_t);
        Real tail = 4 * r2 * t_pow * (log_t / a + 1 / (a * a)) + 2 * r1 * t_pow / a;

        const Real tol = pow(Real(10), -static_cast<int>(ctx.digits() / 2));
        double quad_err = 0.0;
        // skip the correction when it is far below the working precision
        const Real corr_scale = abs(tail) * sigma / (4 * big_t * big_t);
        if (corr_scale > ctx.epsilon()) {
            const Real inv4t2 = 1 / (4 * big_t * big_t);
            auto integrand = [&](const Real& u) -> Real {
                if (u == 0) return Real(0);
                const Real t = big_t / u;
                const Real density = 4 * r2 * (log_t - log(u)) + 2 * r1;
                return pow(t, -2 * sigma) * detail::pow1p_minus1(u * u * inv4t2, sigma) * density *
                       big_t / (u * u);
            };
            auto res = integrate_adaptive<Real>(integrand, Real(0), Real(1), tol, 200, 20);
            if (!res.converged) throw InternalError("secondary zeta tail: quadrature did not converge");
            tail += res.value;
            quad_err = static_cast<double>(res.error);
        }
        const Real f_t = pow(Real(1) / 4 + big_t * big_t, -sigma);
        if (mode_ == TailMode::staircase) tail -= setup.boundary_excess * f_t;
        const double fluct = mode_ == TailMode::staircase
                                 ? 1.0
                                 : std::fabs(static_cast<double>(catalog_.staircase(tail_from_)) -
                                             smooth_count(model_, tail_from_)) +
                                       std::log(std::max(tail_from_, std::exp(1.0)));
        return {tail, fluct * static_cast<double>(f_t) + quad_err};
    }

    const ZeroCatalog& catalog_;
    CountingModel model_;
    double tail_from_;
    TailMode mode_;
};

/// Fitted polar coefficients of Z at sigma = 1/2.
struct PolarFit {
    double r_minus2 = 0.0;
    double r_minus1 = 0.0;
    std::optional<double> constant;  // O(1) term, fitted when >= 3 points
};

/// Least-squares fit of eps^2 Z(1/2 + eps) against R_{-2} + R_{-1} eps
/// (+ c eps^2 with three or more points).
inline PolarFit polar_fit(const SecondaryZetaEvaluator& evaluator, std::vector<double> epsilons,
                          const PrecisionContext& ctx) {
    std::sort(epsilons.begin(), epsilons.end());
    epsilons.erase(std::unique(epsilons.begin(), epsilons.end()), epsilons.end());
    if (epsilons.size() < 2) throw InvalidArgument("polar_fit: need at least 2 distinct epsilons");
    for (double e : epsilons)
        if (!(e > 0.0 && e <= 0.2)) throw InvalidArgument("polar_fit: epsilon must lie in (0, 0.2]");

    const std::size_t cols = epsilons.size() >= 3 ? 3 : 2;
    // normal equations in long double; at most 3 unknowns
    long double ata[3][3] = {}, aty[3] = {};
    for (double e : epsilons) {
        const Real z = evaluator.z_value(0.5 + e, ctx).value;
        const long double y = static_cast<long double>(e) * e * static_cast<long double>(z);
        const long double row[3] = {1.0L, e, static_cast<long double>(e) * e};
        for (std::size_t i = 0; i < cols; ++i) {
            aty[i] += row[i] * y;
            for (std::size_t k = 0; k < cols; ++k) ata[i][k] += row[i] * row[k];
        }
    }
    // Gaussian elimination
    for (std::size_t i = 0; i < cols; ++i) {
        for (std::size_t r = i + 1; r < cols; ++r) {
            const long double f = ata[r][i] / ata[i][i];
            for (std::size_t k = i; k < cols; ++k) ata[r][k] -= f * ata[i][k];
            aty[r] -= f * aty[i];
        }
    }
    long double coef[3] = {};
    for (std::size_t i = cols; i-- > 0;) {
        long double acc = aty[i];
        for (std::size_t k = i + 1; k < cols; ++k) acc -= ata[i][k] * coef[k];
        coef[i] = acc / ata[i][i];
    }
    PolarFit fit;
    fit.r_minus2 = static_cast<double>(coef[0]);
    fit.r_minus1 = static_cast<double>(coef[1]);
    if (cols == 3) fit.constant = static_cast<double>(coef[2]);
    return fit;
}

}  // namespace lilambda
