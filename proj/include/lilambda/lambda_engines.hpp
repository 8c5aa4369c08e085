#pragma once

// Li/Keiper coefficients lambda_n = sum_rho [1 - (1 - 1/rho)^n] by four
// independent routes:
//   direct  - the defining sum over a zero catalog plus a smooth tail
//   from_Z  - the alternating binomial transform of Z(1..n)
//   eta     - S_n + Sbar_n from the logarithmic Stieltjes coefficients eta_j
//   keiper  - the binomial transform of the power sums Zcal_j = sum rho^-j

#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lilambda/errors.hpp"
#include "lilambda/numkernel.hpp"
#include "lilambda/precision.hpp"
#include "lilambda/quadrature.hpp"
#include "lilambda/secondary_zeta.hpp"
#include "lilambda/summation.hpp"
#include "lilambda/zero_catalog.hpp"

namespace lilambda {

enum class LambdaMethod { direct, from_Z, eta, keiper };

inline std::string method_name(LambdaMethod m) {
    switch (m) {
        case LambdaMethod::direct: return "direct";
        case LambdaMethod::from_Z: return "from_Z";
        case LambdaMethod::eta: return "eta";
        case LambdaMethod::keiper: return "keiper";
    }
    return "?";
}

inline LambdaMethod parse_method(const std::string& s) {
    if (s == "direct") return LambdaMethod::direct;
    if (s == "from_Z" || s == "from_z") return LambdaMethod::from_Z;
    if (s == "eta") return LambdaMethod::eta;
    if (s == "keiper") return LambdaMethod::keiper;
    throw InvalidArgument("unknown method '" + s + "'");
}

/// Computed lambda_n of a single route. Values of different routes are kept
/// in separate series.
struct LambdaSeries {
    LambdaMethod method = LambdaMethod::eta;
    std::map<int, Real> values;
    std::map<int, double> tail_estimates;
    std::string truncation;  // "K=<zeros>" or "J=<terms>"
    unsigned precision_used = 0;

    void add(int n, Real value, double tail_estimate) {
        if (!boost::multiprecision::isfinite(value))
            throw InternalError("lambda series: non-finite value at n=" + std::to_string(n));
        values[n] = std::move(value);
        tail_estimates[n] = tail_estimate;
    }
};

struct LambdaValue {
    Real value;
    double tail_estimate = 0.0;
};

// ---------------------------------------------------------------- direct route

namespace detail {

// 4 sin^2(n theta(t) / 2) = 2 - 2 cos(n theta(t)) for an on-line ordinate t
template <class T>
T online_term(int n, const T& t) {
    using std::atan;
    using std::sin;
    const T s = sin(n * atan(1 / (2 * t)));
    return 4 * s * s;
}

// 2 Re(2 - w^n - w^-n) with w = (tau + i/2) / (tau - i/2)
template <class T>
T off_axis_term(int n, const T& re, const T& im) {
    using std::atan2;
    using std::cos;
    using std::log;
    using std::exp;
    const T up2 = re * re + (im + T(0.5)) * (im + T(0.5));   // |tau + i/2|^2
    const T down2 = re * re + (im - T(0.5)) * (im - T(0.5)); // |tau - i/2|^2
    const T log_mod = (log(up2) - log(down2)) / 2;           // log |w|
    const T arg = atan2(im + T(0.5), re) - atan2(im - T(0.5), re);
    const T c = cos(n * arg);
    return 4 - 2 * c * (exp(n * log_mod) + exp(-n * log_mod));
}

template <class T>
std::pair<T, double> direct_tail(int n, const ZeroCatalog& catalog, const CountingModel& model,
                                 TailMode mode, const T& tol, const T& big_t) {
    using std::log;
    const TailSetup setup = tail_setup(catalog, model, catalog.height_max(), mode);
    const T r2 = model.r2<T>();
    const T r1 = model.r1<T>();
    const T log_t = log(big_t);
    // t = T / v^2; the square keeps the log(v) endpoint behaviour integrable
    // to high order by the Gauss rule
    auto integrand = [&](const T& v) -> T {
        if (v == 0) return T(0);
        const T u = v * v;
        const T t = big_t / u;
        const T density = 4 * r2 * (log_t - 2 * log(v)) + 2 * r1;
        return 2 * online_term(n, t) * density * big_t / (u * v);
    };
    auto res = integrate_adaptive<T>(integrand, T(0), T(1), tol, 120, 20);
    if (!res.converged) throw InternalError("lambda_direct tail: quadrature did not converge");
    T tail = res.value;
    const T f_t = online_term(n, big_t);
    if (mode == TailMode::staircase) tail -= T(setup.boundary_excess) * f_t;
    const double fluct = mode == TailMode::staircase
                             ? 1.0
                             : std::fabs(static_cast<double>(catalog.online_count()) -
                                         smooth_count(model, catalog.height_max())) +
                                   std::log(std::max(catalog.height_max(), std::exp(1.0)));
    return {tail, fluct * static_cast<double>(f_t) + static_cast<double>(res.error)};
}

}  // namespace detail

/// lambda_n as the sum over the catalog plus the smooth tail above height_max.
/// `fast` runs in hardware doubles with compensated summation; the direct
/// sum has no cancellation, so this loses nothing beyond double rounding.
inline LambdaValue lambda_direct(int n, const ZeroCatalog& catalog, const CountingModel& model,
                                 const PrecisionContext& ctx, bool fast,
                                 TailMode mode = TailMode::staircase) {
    if (n < 1) throw InvalidArgument("lambda_direct: n must be >= 1");
    if (catalog.empty()) throw InvalidState("lambda_direct: empty catalog");
    PrecisionGuard g(ctx);
    const bool with_tail = mode != TailMode::none && catalog.height_max() > 0.0;
    if (fast) {
        CompensatedSum sum;
        const auto& pairs = catalog.pairs();
        for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
            const auto& p = *it;
            sum += p.multiplicity * (p.on_line() ? detail::online_term(n, p.re)
                                                 : detail::off_axis_term(n, p.re, p.im));
        }
        double est = 0.0;
        if (with_tail) {
            auto [tail, e] = detail::direct_tail<double>(n, catalog, model, mode, 1e-13,
                                                         catalog.height_max());
            sum += tail;
            est = e;
        }
        return {Real(sum.value()), est};
    }
    std::vector<Real> terms;
    terms.reserve(catalog.size() + 1);
    for (const auto& p : catalog.pairs()) {
        const Real re = at_precision(p.tau_re, ctx.digits());
        terms.push_back(p.multiplicity * (p.on_line() ? detail::online_term(n, re)
                                                      : detail::off_axis_term(n, re, at_precision(p.tau_im, ctx.digits()))));
    }
    double est = 0.0;
    if (with_tail) {
        const Real tol = pow(Real(10), -static_cast<int>(ctx.digits() / 2));
        auto [tail, e] = detail::direct_tail<Real>(n, catalog, model, mode, tol,
                                                   at_precision(catalog.height_max_exact(), ctx.digits()));
        terms.push_back(tail);
        est = e;
    }
    return {sorted_sum(std::move(terms)), est};
}

// ---------------------------------------------------------------- Z route

/// lambda_n = -n sum_{j=1..n} (-1)^j / j C(n+j-1, 2j-1) Z(j), with
/// zvals[j-1] = Z(j).
inline Real lambda_from_Z(int n, std::span<const Real> zvals, const PrecisionContext& ctx) {
    if (n < 1) throw InvalidArgument("lambda_from_Z: n must be >= 1");
    if (zvals.size() < static_cast<std::size_t>(n))
        throw InvalidArgument("lambda_from_Z: Z(j) missing for j up to " + std::to_string(n));
    if (!ctx.satisfies_policy(static_cast<unsigned>(n)))
        throw PrecisionError("lambda_from_Z: " + std::to_string(ctx.digits()) +
                             " digits is below the policy minimum " +
                             std::to_string(PrecisionContext::policy_digits(static_cast<unsigned>(n), 0)) +
                             " for n=" + std::to_string(n));
    PrecisionGuard g(ctx);
    Real acc = 0;
    for (int j = 1; j <= n; ++j) {
        Real term = to_real(binomial(n + j - 1, 2 * j - 1)) * zvals[static_cast<std::size_t>(j - 1)] / j;
        if (j % 2 == 1) term = -term;
        acc += term;
    }
    return -n * acc;
}

/// Closed-form inverse: Z(j) = sum_{n=1..j} (-1)^(n+1) C(2j, j-n) lambda_n,
/// with lambdas[n-1] = lambda_n.
inline Real z_from_lambda(int j, std::span<const Real> lambdas, const PrecisionContext& ctx) {
    if (j < 1) throw InvalidArgument("z_from_lambda: j must be >= 1");
    if (lambdas.size() < static_cast<std::size_t>(j))
        throw InvalidArgument("z_from_lambda: lambda_n missing for n up to " + std::to_string(j));
    PrecisionGuard g(ctx);
    Real acc = 0;
    for (int n = 1; n <= j; ++n) {
        Real term = to_real(binomial(2 * j, j - n)) * lambdas[static_cast<std::size_t>(n - 1)];
        if (n % 2 == 0) term = -term;
        acc += term;
    }
    return acc;
}

// ---------------------------------------------------------------- eta route

/// Stieltjes constants gamma_0.. from "k<TAB>value" lines, k = 0, 1, 2, ...
inline std::vector<Real> load_stieltjes(std::istream& in, unsigned digits) {
    PrecisionGuard g(std::max(digits, PrecisionContext::min_digits));
    std::vector<Real> gammas;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto tab = t.find_first_of("\t ");
        if (tab == std::string_view::npos)
            throw FormatError("stieltjes: expected 'k<TAB>value'", lineno);
        const auto key = t.substr(0, tab);
        const auto val = detail::trim(t.substr(tab + 1));
        std::size_t k = 0;
        auto [p, ec] = std::from_chars(key.data(), key.data() + key.size(), k);
        if (ec != std::errc() || p != key.data() + key.size())
            throw FormatError("stieltjes: bad index '" + std::string(key) + "'", lineno);
        if (k != gammas.size())
            throw FormatError("stieltjes: expected index " + std::to_string(gammas.size()), lineno);
        if (!detail::is_decimal_token(val))
            throw FormatError("stieltjes: bad value '" + std::string(val) + "'", lineno);
        gammas.emplace_back(std::string(val));
    }
    return gammas;
}

inline std::vector<Real> load_stieltjes(const std::string& path, unsigned digits) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("load_stieltjes: cannot open '" + path + "'");
    return load_stieltjes(in, digits);
}

struct EtaTable {
    std::vector<Real> eta;            // eta_0, eta_1, ...
    std::vector<Real> source_gammas;  // gamma_0, gamma_1, ...
    unsigned digits = 0;

    [[nodiscard]] std::size_t size() const noexcept { return eta.size(); }
};

/// eta_j from log[s zeta(1+s)] = -sum_{n>=1} eta_{n-1} s^n / n, where
/// s zeta(1+s) = 1 + sum_{n>=1} c_n s^n, c_n = -gamma_{n-1} (-1)^n / (n-1)!.
inline EtaTable eta_from_stieltjes(std::span<const Real> gammas, const PrecisionContext& ctx,
                                   std::size_t count = static_cast<std::size_t>(-1)) {
    if (gammas.empty()) throw InvalidArgument("eta_from_stieltjes: need at least gamma_0");
    const std::size_t m = std::min(count, gammas.size());
    PrecisionGuard g(ctx);
    std::vector<Real> c(m + 1, Real(0));  // c[0] = 1 is implicit
    Real inv_fact = 1;                    // 1/(n-1)!
    for (std::size_t n = 1; n <= m; ++n) {
        if (n > 1) inv_fact /= static_cast<long>(n - 1);
        Real v = at_precision(gammas[n - 1], ctx.digits()) * inv_fact;
        c[n] = (n % 2 == 0) ? Real(-v) : v;
    }
    // L = log(1 + sum c_n s^n): n L_n = n c_n - sum_{k=1}^{n-1} k L_k c_{n-k}
    std::vector<Real> l(m + 1, Real(0));
    EtaTable out;
    out.digits = ctx.digits();
    out.eta.reserve(m);
    for (std::size_t n = 1; n <= m; ++n) {
        Real acc = static_cast<long>(n) * c[n];
        for (std::size_t k = 1; k < n; ++k) acc -= static_cast<long>(k) * l[k] * c[n - k];
        l[n] = acc / static_cast<long>(n);
        out.eta.push_back(-static_cast<long>(n) * l[n]);
    }
    out.source_gammas.assign(gammas.begin(), gammas.begin() + static_cast<std::ptrdiff_t>(m));
    return out;
}

/// S_n = -sum_{j=1..n} C(n, j) eta_{j-1}.
inline Real s_n(int n, const EtaTable& eta, const PrecisionContext& ctx) {
    if (n < 1) throw InvalidArgument("s_n: n must be >= 1");
    if (eta.size() < static_cast<std::size_t>(n))
        throw InvalidArgument("s_n: need eta_0..eta_" + std::to_string(n - 1));
    PrecisionGuard g(ctx);
    Real acc = 0;
    for (int j = 1; j <= n; ++j) acc += to_real(binomial(n, j)) * eta.eta[static_cast<std::size_t>(j - 1)];
    return -acc;
}

/// Constants and zeta(2..max_n) shared by the explicit (Gamma/pi) part.
struct ExplicitTerms {
    Constants constants;
    std::vector<Real> zeta;  // zeta[j] for 2 <= j <= max_n
    unsigned digits = 0;
};

inline ExplicitTerms explicit_terms(int max_n, const PrecisionContext& ctx) {
    ExplicitTerms e;
    e.constants = constants(ctx);
    e.digits = ctx.digits();
    e.zeta.resize(static_cast<std::size_t>(std::max(max_n, 1) + 1));
    for (int j = 2; j <= max_n; ++j) e.zeta[static_cast<std::size_t>(j)] = zeta_int(j, ctx);
    return e;
}

/// Shat_n = sum_{j=2..n} C(n, j) (-1)^j (1 - 2^-j) zeta(j).
inline Real shat_n(int n, const ExplicitTerms& e, const PrecisionContext& ctx) {
    if (e.zeta.size() < static_cast<std::size_t>(n) + 1)
        throw InvalidArgument("shat_n: zeta table too short");
    PrecisionGuard g(ctx);
    Real acc = 0;
    for (int j = 2; j <= n; ++j) {
        Real term = to_real(binomial(n, j)) * (1 - pow(Real(2), -j)) * e.zeta[static_cast<std::size_t>(j)];
        acc += (j % 2 == 0) ? term : Real(-term);
    }
    return acc;
}

/// Sbar_n = 1 - n (log 4 pi + gamma) / 2 + Shat_n.
inline Real sbar_n(int n, const ExplicitTerms& e, const PrecisionContext& ctx) {
    if (n < 1) throw InvalidArgument("sbar_n: n must be >= 1");
    PrecisionGuard g(ctx);
    return 1 - n * (e.constants.log4pi + e.constants.gamma) / 2 + shat_n(n, e, ctx);
}

inline Real sbar_n(int n, const PrecisionContext& ctx) {
    return sbar_n(n, explicit_terms(n, ctx), ctx);
}

/// Reference route for the Riemann lambda_n: S_n + Sbar_n.
inline Real lambda_from_eta(int n, const EtaTable& eta, const ExplicitTerms& e, const PrecisionContext& ctx) {
    PrecisionGuard g(ctx);
    return s_n(n, eta, ctx) + sbar_n(n, e, ctx);
}

inline Real lambda_from_eta(int n, const EtaTable& eta, const PrecisionContext& ctx) {
    return lambda_from_eta(n, eta, explicit_terms(n, ctx), ctx);
}

// ---------------------------------------------------------------- Keiper route

/// Zcal_j = sum_rho rho^-j = 1 - (1 - 2^-j) zeta(j) + (-1)^j eta_{j-1}.
/// The closed form needs zeta(1) at j = 1; Zcal_1 = lambda_1 is used there.
inline Real mathcal_z(int j, const EtaTable& eta, const ExplicitTerms& e, const PrecisionContext& ctx) {
    if (j < 1) throw InvalidArgument("mathcal_z: j must be >= 1");
    if (j == 1) return lambda_from_eta(1, eta, e, ctx);
    if (eta.size() < static_cast<std::size_t>(j))
        throw InvalidArgument("mathcal_z: need eta_" + std::to_string(j - 1));
    if (e.zeta.size() < static_cast<std::size_t>(j) + 1)
        throw InvalidArgument("mathcal_z: zeta table too short");
    PrecisionGuard g(ctx);
    const Real& eta_j = eta.eta[static_cast<std::size_t>(j - 1)];
    return 1 - (1 - pow(Real(2), -j)) * e.zeta[static_cast<std::size_t>(j)] + ((j % 2 == 0) ? eta_j : Real(-eta_j));
}

inline Real mathcal_z(int j, const EtaTable& eta, const PrecisionContext& ctx) {
    return mathcal_z(j, eta, explicit_terms(std::max(j, 2), ctx), ctx);
}

/// lambda_n = sum_{j=1..n} (-1)^(j+1) C(n, j) Zcal_j.
inline Real lambda_keiper(int n, const EtaTable& eta, const ExplicitTerms& e, const PrecisionContext& ctx) {
    if (n < 1) throw InvalidArgument("lambda_keiper: n must be >= 1");
    PrecisionGuard g(ctx);
    Real acc = 0;
    for (int j = 1; j <= n; ++j) {
        Real term = to_real(binomial(n, j)) * mathcal_z(j, eta, e, ctx);
        acc += (j % 2 == 1) ? term : Real(-term);
    }
    return acc;
}

// ---------------------------------------------------------------- residues

/// Exact check that the residue of the contour integrand
/// Gamma(s+n) Gamma(s-n) / Gamma(2s+1) at s = j, scaled by (-1)^n n (-2),
/// equals the coefficient of Z(j) in the binomial sum for lambda_n.
inline bool residue_identity_check(int n, int j) {
    if (j < 1 || j > n) throw InvalidArgument("residue_identity_check: need 1 <= j <= n");
    // Gamma(s - n) has a simple pole at s = j with residue (-1)^(n-j) / (n-j)!
    const Rational gamma_pole(Integer((n - j) % 2 == 0 ? 1 : -1), factorial(n - j));
    const Rational residue = gamma_pole * Rational(factorial(n + j - 1)) / Rational(factorial(2 * j));
    const Rational lhs = Rational(n % 2 == 0 ? 1 : -1) * Rational(n) * Rational(-2) * residue;

    const Rational rhs = Rational(-n) * Rational(j % 2 == 0 ? 1 : -1) / Rational(j) *
                         Rational(binomial(n + j - 1, 2 * j - 1));
    return lhs == rhs;
}

}  // namespace lilambda
