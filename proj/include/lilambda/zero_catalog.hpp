#pragma once

// Zero data: on-line ordinates tau_k (rho = 1/2 + i tau_k), off-axis
// representatives, and the smooth counting law
//   Nbar(T) = 2T [2 R_{-2} (log T - 1) + R_{-1}].

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lilambda/errors.hpp"
#include "lilambda/precision.hpp"

namespace lilambda {

/// One conjugate pair 1/2 +- i tau. Off-axis pairs store the representative
/// with arg tau > 0; every consumer adds its complex conjugate.
struct ZeroPair {
    Real tau_re;
    Real tau_im;  // 0 on the critical line
    double re = 0.0;
    double im = 0.0;
    int multiplicity = 1;

    [[nodiscard]] bool on_line() const noexcept { return im == 0.0; }

    /// x = 1/4 + tau^2 (real part, imaginary part).
    [[nodiscard]] std::pair<Real, Real> x() const {
        return {Real(1) / 4 + tau_re * tau_re - tau_im * tau_im, 2 * tau_re * tau_im};
    }
};

class ZeroCatalog {
public:
    ZeroCatalog() = default;
    ZeroCatalog(std::vector<ZeroPair> pairs, std::string source, unsigned digits)
        : pairs_(std::move(pairs)), source_(std::move(source)), digits_(digits) {
        for (const auto& p : pairs_) {
            if (p.on_line()) {
                ++online_pairs_;
                online_count_ += p.multiplicity;
                height_max_ = std::max(height_max_, p.re);
            }
        }
    }

    [[nodiscard]] const std::vector<ZeroPair>& pairs() const noexcept { return pairs_; }
    [[nodiscard]] const std::string& source() const noexcept { return source_; }
    [[nodiscard]] unsigned digits() const noexcept { return digits_; }
    [[nodiscard]] bool empty() const noexcept { return pairs_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return pairs_.size(); }

    /// Largest on-line ordinate (0 when there is none).
    [[nodiscard]] double height_max() const noexcept { return height_max_; }
    [[nodiscard]] Real height_max_exact() const {
        for (auto it = pairs_.rbegin(); it != pairs_.rend(); ++it)
            if (it->on_line()) return it->tau_re;
        return Real(0);
    }

    /// On-line zeros (with multiplicity) with ordinate <= T.
    [[nodiscard]] long staircase(double t) const {
        const auto end = pairs_.begin() + static_cast<std::ptrdiff_t>(online_pairs_);
        const auto it = std::upper_bound(pairs_.begin(), end, t,
                                         [](double v, const ZeroPair& p) { return v < p.re; });
        long n = 0;
        for (auto p = pairs_.begin(); p != it; ++p) n += p->multiplicity;
        return n;
    }
    [[nodiscard]] long online_count() const noexcept { return online_count_; }
    [[nodiscard]] std::size_t online_pairs() const noexcept { return online_pairs_; }
    [[nodiscard]] bool has_off_axis() const noexcept { return online_pairs_ < pairs_.size(); }

    /// New catalog restricted to the first `count` on-line pairs (off-axis kept).
    [[nodiscard]] ZeroCatalog truncated(std::size_t count) const {
        std::vector<ZeroPair> out;
        std::size_t kept = 0;
        for (const auto& p : pairs_) {
            if (p.on_line()) {
                if (kept == count) continue;
                ++kept;
            }
            out.push_back(p);
        }
        return ZeroCatalog(std::move(out), source_, digits_);
    }

private:
    std::vector<ZeroPair> pairs_;  // on-line pairs first, ascending
    std::string source_;
    unsigned digits_ = PrecisionContext::min_digits;
    double height_max_ = 0.0;
    std::size_t online_pairs_ = 0;
    long online_count_ = 0;
};

/// Parameters of the smooth counting law. For the Riemann zeta function
/// R_{-2} = 1/(8 pi), R_{-1} = -log(2 pi)/(4 pi).
struct CountingModel {
    double r_minus2 = 0.0;
    double r_minus1 = 0.0;
    double alpha = 0.0;  // exponent of the O(T^alpha) remainder; metadata only
    bool riemann = false;

    static CountingModel riemann_zeta() {
        constexpr double pi = std::numbers::pi;
        return {1.0 / (8.0 * pi), -std::log(2.0 * pi) / (4.0 * pi), 0.0, true};
    }

    static CountingModel custom(double r_minus2, double r_minus1, double alpha = 0.0) {
        if (!(r_minus2 >= 0.0))
            throw InvalidArgument("CountingModel: R_-2 must be >= 0");
        if (!(alpha < 1.0)) throw InvalidArgument("CountingModel: alpha must be < 1");
        return {r_minus2, r_minus1, alpha, false};
    }

    /// R_{-2} in the scalar type T; exact at the current precision for the
    /// Riemann constants.
    template <class T>
    [[nodiscard]] T r2() const {
        if constexpr (std::is_same_v<T, Real>) {
            if (riemann) {
                Real pi;
                mpfr_const_pi(pi.backend().data(), MPFR_RNDN);
                return 1 / (8 * pi);
            }
        }
        return T(r_minus2);
    }
    template <class T>
    [[nodiscard]] T r1() const {
        if constexpr (std::is_same_v<T, Real>) {
            if (riemann) {
                Real pi;
                mpfr_const_pi(pi.backend().data(), MPFR_RNDN);
                return -log(2 * pi) / (4 * pi);
            }
        }
        return T(r_minus1);
    }
};

/// Nbar(T) = 2T [2 R_{-2} (log T - 1) + R_{-1}].
template <class T>
T smooth_count(const CountingModel& m, const T& t) {
    using std::log;
    return 2 * t * (2 * m.r2<T>() * (log(t) - 1) + m.r1<T>());
}

/// dNbar/dT = 4 R_{-2} log T + 2 R_{-1}.
template <class T>
T smooth_density(const CountingModel& m, const T& t) {
    using std::log;
    return 4 * m.r2<T>() * log(t) + 2 * m.r1<T>();
}

/// Angle of an on-line zero seen from s = 1: theta(T) = 2 arctan(1/(2T)).
template <class T>
T theta_map(const T& t) {
    using std::atan;
    if (!(t > 0)) throw InvalidArgument("theta_map: T must be > 0");
    return 2 * atan(1 / (2 * t));
}

/// Inverse of theta_map: T = cot(theta/2) / 2.
template <class T>
T theta_inverse(const T& theta) {
    using std::tan;
    if (!(theta > 0)) throw InvalidArgument("theta_inverse: theta must be > 0");
    return 1 / (2 * tan(theta / 2));
}

namespace detail {

inline bool is_decimal_token(std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc() && ptr == s.data() + s.size();
}

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace detail

/// Reads one positive ordinate per line, ascending; '#' lines and blank lines
/// are skipped. Exact repeats fold into the multiplicity of the previous pair.
inline ZeroCatalog load_zeros(std::istream& in, unsigned digits, std::string source = "<stream>",
                              std::size_t max_count = std::numeric_limits<std::size_t>::max()) {
    PrecisionGuard g(std::max(digits, PrecisionContext::min_digits));
    std::vector<ZeroPair> pairs;
    std::string line;
    std::size_t lineno = 0;
    while (pairs.size() < max_count && std::getline(in, line)) {
        ++lineno;
        const auto tok = detail::trim(line);
        if (tok.empty() || tok.front() == '#') continue;
        if (!detail::is_decimal_token(tok))
            throw FormatError("load_zeros: not a decimal number: '" + std::string(tok) + "'", lineno);
        Real tau{std::string(tok)};
        if (!(tau > 0))
            throw ValidationError("load_zeros: ordinate must be positive (line " +
                                  std::to_string(lineno) + ")");
        if (!pairs.empty()) {
            if (tau == pairs.back().tau_re) {
                ++pairs.back().multiplicity;
                continue;
            }
            if (tau < pairs.back().tau_re)
                throw ValidationError("load_zeros: ordinates must be ascending (line " +
                                      std::to_string(lineno) + ")");
        }
        ZeroPair p;
        p.re = static_cast<double>(tau);
        p.tau_re = std::move(tau);
        p.tau_im = 0;
        pairs.push_back(std::move(p));
    }
    return ZeroCatalog(std::move(pairs), std::move(source), digits);
}

inline ZeroCatalog load_zeros(const std::string& path, unsigned digits,
                              std::size_t max_count = std::numeric_limits<std::size_t>::max()) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("load_zeros: cannot open '" + path + "'");
    return load_zeros(in, digits, path, max_count);
}

/// Adds the quadruple with rho = (1 - beta) + iT (and its reflections), stored
/// as tau = T + i (beta - 1/2).
inline ZeroCatalog inject_off_axis(const ZeroCatalog& catalog, double beta, double t,
                                   int multiplicity = 1) {
    if (!(beta > 0.5 && beta < 1.0))
        throw InvalidArgument("inject_off_axis: beta must lie in (1/2, 1)");
    if (!(t > 0.0)) throw InvalidArgument("inject_off_axis: T must be > 0");
    if (multiplicity < 1) throw InvalidArgument("inject_off_axis: multiplicity must be >= 1");
    PrecisionGuard g(catalog.digits());
    std::vector<ZeroPair> pairs = catalog.pairs();
    ZeroPair p;
    p.tau_re = Real(shortest_decimal(t));
    p.tau_im = Real(shortest_decimal(beta)) - Real(1) / 2;
    p.re = t;
    p.im = beta - 0.5;
    p.multiplicity = multiplicity;
    pairs.push_back(std::move(p));
    std::string src = catalog.source() + " + off-axis(" + to_decimal(beta, 6) + "," +
                      to_decimal(t, 8) + ")";
    return ZeroCatalog(std::move(pairs), std::move(src), catalog.digits());
}

/// |Im 1/tau|^{-1} = |tau|^2 / Im tau: the order of n beyond which an
/// off-axis pair becomes visible in lambda_n.
inline double detection_threshold(double re, double im) {
    if (!(im > 0.0)) throw InvalidArgument("detection_threshold: Im tau must be > 0");
    return (re * re + im * im) / im;
}

/// On-line ordinates solving Nbar(tau_k) = k - 1/2, k = 1..count.
inline ZeroCatalog synthesize_online_catalog(const CountingModel& model, std::size_t count,
                                             unsigned digits = PrecisionContext::min_digits) {
    if (!(model.r_minus2 > 0.0))
        throw InvalidArgument("synthesize_online_catalog: R_-2 must be > 0");
    // Nbar is increasing beyond its minimum at log T = -R_{-1} / (2 R_{-2})
    const double t_min = std::exp(-model.r_minus1 / (2.0 * model.r_minus2));
    PrecisionGuard g(std::max(digits, PrecisionContext::min_digits));
    std::vector<ZeroPair> pairs;
    pairs.reserve(count);
    double lo = t_min;
    for (std::size_t k = 1; k <= count; ++k) {
        const double target = static_cast<double>(k) - 0.5;
        double hi = std::max(lo * 2.0, lo + 1.0);
        while (smooth_count(model, hi) < target) {
            hi *= 2.0;
            if (!std::isfinite(hi)) throw InternalError("synthesize_online_catalog: root not bracketed");
        }
        if (smooth_count(model, lo) > target)
            throw InternalError("synthesize_online_catalog: root not bracketed");
        double a = lo, b = hi;
        for (int it = 0; it < 200 && b - a > 1e-13 * b; ++it) {
            const double mid = 0.5 * (a + b);
            (smooth_count(model, mid) < target ? a : b) = mid;
        }
        // Newton polish at working precision
        Real tau = 0.5 * (a + b);
        const Real rtarget = Real(2 * k - 1) / 2;
        for (int it = 0; it < 8; ++it) {
            const Real step = (smooth_count(model, tau) - rtarget) / smooth_density(model, tau);
            tau -= step;
            if (abs(step) < pow(Real(10), -static_cast<int>(Real::default_precision()) + 3) * tau)
                break;
        }
        ZeroPair p;
        p.re = static_cast<double>(tau);
        p.tau_re = std::move(tau);
        p.tau_im = 0;
        lo = 0.5 * (a + b);
        pairs.push_back(std::move(p));
    }
    std::ostringstream src;
    src << "synthetic(R-2=" << model.r_minus2 << ",R-1=" << model.r_minus1 << ",K=" << count << ")";
    return ZeroCatalog(std::move(pairs), src.str(), digits);
}

/// Mean offset of the catalog staircase above Nbar, sampled at the midpoint
/// of each jump over the upper half of the on-line pairs. For the Riemann
/// zeros this approaches 7/8; for synthetic catalogs it is 0.
inline double staircase_offset(const ZeroCatalog& catalog, const CountingModel& model) {
    const auto& pairs = catalog.pairs();
    const std::size_t n = catalog.online_pairs();
    if (n < 2) return 0.0;
    long cum = 0;
    double acc = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < n; ++i) {
        cum += pairs[i].multiplicity;
        if (i < n / 2) continue;
        acc += static_cast<double>(cum) - 0.5 * pairs[i].multiplicity - smooth_count(model, pairs[i].re);
        ++used;
    }
    return acc / static_cast<double>(used);
}

}  // namespace lilambda
