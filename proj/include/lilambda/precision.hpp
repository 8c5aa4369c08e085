#pragma once

// Arbitrary-precision number types and the working-precision policy.
//
// All big-float work goes through Real (MPFR, variable precision). Boost 1.74
// keeps the default precision of variable-precision types in a process-wide
// variable, so PrecisionGuard scopes it for the duration of one operation.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <locale>
#include <sstream>
#include <string>

#include "lilambda/errors.hpp"

namespace lilambda {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

enum class PrecisionMode { policy, fixed };

/// Working decimal digits for big-float arithmetic. Immutable once built.
class PrecisionContext {
public:
    static constexpr unsigned min_digits = 30;
    static constexpr unsigned guard_digits = 20;

    explicit PrecisionContext(unsigned digits, PrecisionMode mode = PrecisionMode::fixed)
        : digits_(digits), mode_(mode) {
        if (digits < min_digits)
            throw InvalidArgument("PrecisionContext: digits must be >= 30, got " +
                                  std::to_string(digits));
    }

    /// Digits for an alternating binomial sum of order n kept to target_digits
    /// correct digits: ceil(0.61 n) + target + 20. The largest binomial in
    /// these sums is below 4^n and log10(4) < 0.61.
    static unsigned policy_digits(unsigned n, unsigned target_digits) {
        return (61u * n + 99u) / 100u + target_digits + guard_digits;
    }

    static PrecisionContext for_alternating_sum(unsigned n, unsigned target_digits) {
        return PrecisionContext(std::max(min_digits, policy_digits(n, target_digits)),
                                PrecisionMode::policy);
    }

    /// True when the context carries at least the guard digits above the
    /// worst-case cancellation of an order-n alternating sum.
    [[nodiscard]] bool satisfies_policy(unsigned n) const {
        return digits_ >= policy_digits(n, 0);
    }

    [[nodiscard]] unsigned digits() const noexcept { return digits_; }
    [[nodiscard]] PrecisionMode mode() const noexcept { return mode_; }

    /// 10^(-digits); the granularity at which results are meaningful.
    [[nodiscard]] Real epsilon() const;

private:
    unsigned digits_;
    PrecisionMode mode_;
};

/// Scopes Real's default precision to a context. Not for concurrent use with
/// different precisions (the underlying default is process-wide).
class PrecisionGuard {
public:
    explicit PrecisionGuard(const PrecisionContext& ctx) : saved_(Real::default_precision()) {
        Real::default_precision(ctx.digits());
    }
    explicit PrecisionGuard(unsigned digits) : saved_(Real::default_precision()) {
        Real::default_precision(digits);
    }
    ~PrecisionGuard() { Real::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

inline Real PrecisionContext::epsilon() const {
    PrecisionGuard g(*this);
    return boost::multiprecision::pow(Real(10), -static_cast<int>(digits_));
}

/// Copy of x carried at `digits` precision.
inline Real at_precision(const Real& x, unsigned digits) { return Real(x, digits); }

inline Real to_real(const Integer& z) {
    Real r;
    mpfr_set_z(r.backend().data(), z.backend().data(), MPFR_RNDN);
    return r;
}

inline Real to_real(const Rational& q) {
    Real r;
    mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
    return r;
}

/// Decimal rendering with `digits` significant digits, '.' separator,
/// independent of the global locale.
inline std::string to_decimal(const Real& x, unsigned digits) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(static_cast<int>(digits > 1 ? digits - 1 : 0)) << std::scientific << x;
    return os.str();
}

inline std::string to_decimal(double x, int digits = 17) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(digits > 1 ? digits - 1 : 0) << std::scientific << x;
    return os.str();
}

/// Shortest decimal that reads back as x, so that 0.7 becomes "0.7" when
/// lifted to Real.
inline std::string shortest_decimal(double x) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

}  // namespace lilambda
