#pragma once

// Large-n behaviour of lambda_n: the tempered trend when all zeros are on the
// critical line, the exponentially growing oscillation an off-axis pair adds,
// and a classifier that tells the two apart on a computed series.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <tuple>
#include <vector>

#include "lilambda/errors.hpp"
#include "lilambda/lambda_engines.hpp"
#include "lilambda/numkernel.hpp"
#include "lilambda/precision.hpp"
#include "lilambda/quadrature.hpp"
#include "lilambda/zero_catalog.hpp"

namespace lilambda {

struct AsymptoticModel {
    CountingModel counting = CountingModel::riemann_zeta();
    bool include_delta = false;  // add the constant 7/4 (Riemann only)
    bool psi_exact = true;       // psi(1/2 + n) rather than log n
};

/// The constant shift 2 Z(0) = 7/4 of the Riemann trend.
inline Rational delta_correction() { return Rational(7, 4); }

/// Z(0) implied by delta_correction().
inline Rational secondary_zeta_at_zero() { return delta_correction() / 2; }

/// 2 pi n [2 R_{-2} (psi(1/2 + n) - 1 + gamma) + R_{-1}], or with log n in
/// place of the digamma value.
inline Real asym_rh(int n, const AsymptoticModel& model, const PrecisionContext& ctx) {
    if (n < 1) throw InvalidArgument("asym_rh: n must be >= 1");
    if (!(model.counting.r_minus2 >= 0.0)) throw InvalidArgument("asym_rh: R_-2 must be >= 0");
    const Constants c = constants(ctx);
    PrecisionGuard g(ctx);
    const Real lead = model.psi_exact ? digamma_half_plus(n, ctx) : Real(log(Real(n)));
    const Real r2 = model.counting.r2<Real>();
    const Real r1 = model.counting.r1<Real>();
    Real v = 2 * c.pi * n * (2 * r2 * (lead - 1 + c.gamma) + r1);
    if (model.include_delta) {
        if (!model.counting.riemann)
            throw InvalidArgument("asym_rh: the 7/4 shift applies to the Riemann model only");
        v += to_real(delta_correction());
    }
    return v;
}

inline double asym_rh(int n, const AsymptoticModel& model) {
    return static_cast<double>(asym_rh(n, model, PrecisionContext(PrecisionContext::min_digits)));
}

/// 3/4 - sum_{k=1..K} B_{2k}/(4k) n^(1-2k), exactly.
inline Rational sbar_expansion_rational_part(int n, int terms) {
    if (n < 1) throw InvalidArgument("sbar_expansion: n must be >= 1");
    if (terms < 0) throw InvalidArgument("sbar_expansion: K must be >= 0");
    Rational v(3, 4);
    Integer npow = n;  // n^(2k-1)
    for (int k = 1; k <= terms; ++k) {
        v -= bernoulli(2 * k) / Rational(Integer(4 * k) * npow);
        npow *= Integer(n) * Integer(n);
    }
    return v;
}

/// Sbar_n ~ n (log n - 1 + gamma - log 2 pi) / 2 + 3/4 - sum_{k=1..K} B_{2k}/(4k) n^(1-2k).
inline Real sbar_expansion(int n, int terms, const PrecisionContext& ctx) {
    const Rational tail = sbar_expansion_rational_part(n, terms);
    const Constants c = constants(ctx);
    PrecisionGuard g(ctx);
    const Real rn = n;
    return rn * (log(rn) - 1 + c.gamma - c.log2pi) / 2 + to_real(tail);
}

/// Growing part of lambda_n from the off-axis pairs of a catalog:
/// -sum mult * 2 Re[((tau + i/2)/(tau - i/2))^n]. This is the sign the
/// defining sum produces; each pair with its reflection contributes
/// 2 - w^n - w^-n.
inline Real oscillation_model(int n, const ZeroCatalog& catalog, const PrecisionContext& ctx) {
    if (n < 0) throw InvalidArgument("oscillation_model: n must be >= 0");
    if (!catalog.has_off_axis()) throw InvalidArgument("oscillation_model: catalog has no off-axis pair");
    PrecisionGuard g(ctx);
    std::vector<Real> terms;
    for (const auto& p : catalog.pairs()) {
        if (p.on_line()) continue;
        const Real re = at_precision(p.tau_re, ctx.digits());
        const Real im = at_precision(p.tau_im, ctx.digits());
        const Real half = Real(1) / 2;
        const Real log_mod =
            (log(re * re + (im + half) * (im + half)) - log(re * re + (im - half) * (im - half))) / 2;
        const Real arg = atan2(im + half, re) - atan2(im - half, re);
        terms.push_back(-2 * p.multiplicity * exp(n * log_mod) * cos(n * arg));
    }
    return sorted_sum(std::move(terms));
}

struct SaddlePoint {
    std::complex<double> sigma;
    bool eligible = false;  // Re sigma > 1/2
};

/// sigma_k(n) = n i / (2 tau).
inline SaddlePoint saddle_point_location(int n, std::complex<double> tau) {
    if (tau == std::complex<double>(0.0, 0.0)) throw InvalidArgument("saddle_point_location: tau = 0");
    const std::complex<double> sigma = std::complex<double>(0.0, static_cast<double>(n)) / (2.0 * tau);
    return {sigma, sigma.real() > 0.5};
}

namespace detail {

// int_a^b (sin t / t) (c - d log t) dt by a fixed Gauss rule
inline double lobe(const GaussLegendre<double>& rule, double a, double b, double c, double d) {
    return rule.apply([&](double t) { return std::sin(t) / t * (c - d * std::log(t)); }, a, b);
}

}  // namespace detail

struct CountingQuadrature {
    double value = 0.0;
    double remainder_bound = 0.0;
    long lobes = 0;
};

/// n int_0^inf (sin t / t) [8 R_{-2} (log(n/t) - 1) + 4 R_{-1}] dt, summed
/// lobe by lobe over [k pi, (k+1) pi] until a lobe drops below 1e-6. The
/// log singularity of the first lobe is resolved on a geometric grid.
inline CountingQuadrature counting_quadrature(int n, const CountingModel& model) {
    if (n < 1) throw InvalidArgument("asym_via_counting_quadrature: n must be >= 1");
    if (!(model.r_minus2 >= 0.0)) throw InvalidArgument("asym_via_counting_quadrature: R_-2 must be >= 0");
    const double pi = std::numbers::pi;
    const double d = 8.0 * model.r_minus2;
    const double c = d * (std::log(static_cast<double>(n)) - 1.0) + 4.0 * model.r_minus1;
    const GaussLegendre<double> rule(16);

    CompensatedSum sum;
    double hi = pi;
    for (int k = 0; k < 80; ++k) {
        const double lo = hi / 2;
        sum += detail::lobe(rule, lo, hi, c, d);
        hi = lo;
    }
    // [0, hi] with hi ~ 1e-24: |integrand| <= |c| + d |log t|
    const double head_bound = hi * (std::abs(c) + d * (std::abs(std::log(hi)) + 1.0));

    constexpr double lobe_tol = 1e-6;
    constexpr long max_lobes = 50'000'000;
    CountingQuadrature out;
    long k = 1;
    for (; k < max_lobes; ++k) {
        const double v = detail::lobe(rule, k * pi, (k + 1) * pi, c, d);
        sum += v;
        if (std::abs(v) < lobe_tol && k > 2) {
            out.remainder_bound = std::abs(detail::lobe(rule, (k + 1) * pi, (k + 2) * pi, c, d));
            break;
        }
    }
    if (k == max_lobes) throw InternalError("asym_via_counting_quadrature: lobes did not decay");
    out.lobes = k + 1;
    out.value = n * sum.value();
    out.remainder_bound = n * (out.remainder_bound + head_bound);
    return out;
}

inline double asym_via_counting_quadrature(int n, const CountingModel& model) {
    return counting_quadrature(n, model).value;
}

// ---------------------------------------------------------------- classifier

enum class Regime { tempered, oscillatory, inconclusive };

inline std::string regime_name(Regime r) {
    switch (r) {
        case Regime::tempered: return "tempered";
        case Regime::oscillatory: return "oscillatory";
        case Regime::inconclusive: return "inconclusive";
    }
    return "?";
}

struct ClassifierThresholds {
    double envelope_growth = std::log(1.01);  // per unit n
    int min_sign_changes = 3;
    double tempered_residual = 0.05;  // max |r_n| / n
    int min_range = 50;
};

struct DiagnosisReport {
    Regime regime = Regime::inconclusive;
    double A = 0.0;  // lambda_n / n ~ A log n + B
    double B = 0.0;
    double envelope_rate = 0.0;
    double envelope_r2 = 0.0;  // coefficient of determination of the envelope fit
    int sign_changes = 0;
    double max_residual_ratio = 0.0;  // max |r_n| / n over the upper half
    int n_min = 0;
    int n_max = 0;
};

namespace detail {

// slope, intercept and R^2 of y ~ a x + b
inline std::tuple<double, double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const double m = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    const double a = sxx > 0 ? sxy / sxx : 0.0;
    const double r2 = (sxx > 0 && syy > 0) ? sxy * sxy / (sxx * syy) : 1.0;
    return {a, my - a * mx, r2};
}

}  // namespace detail

/// Compares a lambda series with the tempered trend of `model` and decides
/// which branch it follows.
inline DiagnosisReport classify(const LambdaSeries& series, const AsymptoticModel& model,
                                const ClassifierThresholds& th = {}) {
    if (series.values.empty()) throw InvalidArgument("classify: empty series");
    const int n_min = series.values.begin()->first;
    const int n_max = series.values.rbegin()->first;
    if (n_max - n_min + 1 != static_cast<int>(series.values.size()))
        throw InvalidArgument("classify: n range is not contiguous");
    if (n_max - n_min + 1 < th.min_range)
        throw InvalidArgument("classify: n range shorter than " + std::to_string(th.min_range));

    const PrecisionContext ctx(PrecisionContext::min_digits);
    std::vector<double> logn, ratio, resid;
    for (const auto& [n, v] : series.values) {
        const double lam = static_cast<double>(v);
        logn.push_back(std::log(static_cast<double>(n)));
        ratio.push_back(lam / n);
        resid.push_back(lam - static_cast<double>(asym_rh(n, model, ctx)));
    }
    DiagnosisReport rep;
    rep.n_min = n_min;
    rep.n_max = n_max;
    std::tie(rep.A, rep.B, std::ignore) = detail::linear_fit(logn, ratio);

    double prev = 0.0;
    for (double r : resid) {
        if (r == 0.0) continue;
        if (prev != 0.0 && (r > 0) != (prev > 0)) ++rep.sign_changes;
        prev = r;
    }

    const std::size_t start = resid.size() / 2;
    std::vector<double> xs, ys;
    double running = 0.0;
    for (std::size_t i = start; i < resid.size(); ++i) {
        running = std::max(running, std::abs(resid[i]));
        const int n = n_min + static_cast<int>(i);
        rep.max_residual_ratio = std::max(rep.max_residual_ratio, std::abs(resid[i]) / n);
        if (running > 0.0) {
            xs.push_back(static_cast<double>(n));
            ys.push_back(std::log(running));
        }
    }
    if (xs.size() >= 2) std::tie(rep.envelope_rate, std::ignore, rep.envelope_r2) = detail::linear_fit(xs, ys);

    if (rep.envelope_rate > th.envelope_growth && rep.sign_changes >= th.min_sign_changes)
        rep.regime = Regime::oscillatory;
    else if (rep.max_residual_ratio <= th.tempered_residual)
        rep.regime = Regime::tempered;
    else
        rep.regime = Regime::inconclusive;
    return rep;
}

}  // namespace lilambda
