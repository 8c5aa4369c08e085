#pragma once

// Exact and high-precision special values: binomials, Bernoulli numbers,
// zeta at integers, digamma at half-integers and the usual constants.

#include <cstdint>
#include <string>
#include <vector>

#include "lilambda/errors.hpp"
#include "lilambda/precision.hpp"

namespace lilambda {

/// C(n, k) exactly; zero when k < 0 or k > n.
inline Integer binomial(std::int64_t n, std::int64_t k) {
    if (n < 0) throw InvalidArgument("binomial: n must be >= 0");
    if (k < 0 || k > n) return Integer(0);
    Integer r;
    mpz_bin_uiui(r.backend().data(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return r;
}

inline Integer factorial(std::int64_t n) {
    if (n < 0) throw InvalidArgument("factorial: n must be >= 0");
    Integer r;
    mpz_fac_ui(r.backend().data(), static_cast<unsigned long>(n));
    return r;
}

namespace detail {

// B_0 .. B_top with B_1 = -1/2, from sum_{j<=m} C(m+1, j) B_j = 0.
inline std::vector<Rational> bernoulli_table(unsigned top) {
    std::vector<Rational> b(top + 1);
    b[0] = 1;
    for (unsigned m = 1; m <= top; ++m) {
        if (m >= 3 && m % 2 == 1) {
            b[m] = 0;
            continue;
        }
        Rational acc = 0;
        for (unsigned j = 0; j < m; ++j)
            if (b[j] != 0) acc += Rational(binomial(m + 1, j)) * b[j];
        b[m] = -acc / Rational(Integer(m + 1));
    }
    return b;
}

inline constexpr unsigned bernoulli_cache_size = 200;

inline const std::vector<Rational>& bernoulli_cache() {
    static const std::vector<Rational> table = bernoulli_table(bernoulli_cache_size);
    return table;
}

}  // namespace detail

/// Exact B_m for even m >= 0. Odd indices are rejected to keep the B_1 sign
/// convention out of callers' hands.
inline Rational bernoulli(int m) {
    if (m < 0 || m % 2 != 0)
        throw InvalidArgument("bernoulli: index must be even and >= 0, got " + std::to_string(m));
    if (static_cast<unsigned>(m) <= detail::bernoulli_cache_size)
        return detail::bernoulli_cache()[static_cast<std::size_t>(m)];
    return detail::bernoulli_table(static_cast<unsigned>(m))[static_cast<std::size_t>(m)];
}

struct Constants {
    Real pi;
    Real gamma;
    Real log2;
    Real log2pi;
    Real log4pi;
};

/// Constants at ctx precision (MPFR's correctly rounded algorithms).
inline Constants constants(const PrecisionContext& ctx) {
    PrecisionGuard g(ctx);
    Constants c;
    mpfr_const_pi(c.pi.backend().data(), MPFR_RNDN);
    mpfr_const_euler(c.gamma.backend().data(), MPFR_RNDN);
    mpfr_const_log2(c.log2.backend().data(), MPFR_RNDN);
    c.log2pi = log(2 * c.pi);
    c.log4pi = log(4 * c.pi);
    return c;
}

/// zeta(j) for integer j >= 2 by Euler-Maclaurin: N - 1 explicit terms plus
/// Bernoulli corrections until they drop below 10^(-digits-5).
inline Real zeta_int_series(int j, const PrecisionContext& ctx) {
    if (j < 2) throw InvalidArgument("zeta_int: j must be >= 2, got " + std::to_string(j));
    PrecisionGuard g(ctx.digits() + 10);
    const unsigned n_terms = ctx.digits() + 10;
    const Real cutoff = pow(Real(10), -static_cast<int>(ctx.digits()) - 5);
    const Real big_n = n_terms;

    Real head = 0;
    for (unsigned k = n_terms - 1; k >= 1; --k) head += pow(Real(k), -j);

    Real tail = pow(big_n, 1 - j) / (j - 1) + pow(big_n, -j) / 2;
    // rising factorial s(s+1)...(s+2m-2) and N^(-s-2m+1), updated per m
    Real rising = j;
    Real npow = pow(big_n, -j - 1);
    const Real inv_n2 = 1 / (big_n * big_n);
    Integer fact2m = 2;
    bool converged = false;
    for (int m = 1; m <= 400; ++m) {
        const Real term = to_real(bernoulli(2 * m)) / to_real(fact2m) * rising * npow;
        tail += term;
        if (abs(term) < cutoff) {
            converged = true;
            break;
        }
        rising *= Real(j + 2 * m - 1) * Real(j + 2 * m);
        npow *= inv_n2;
        fact2m *= Integer((2 * m + 1) * (2 * m + 2));
    }
    if (!converged) throw InternalError("zeta_int_series: Euler-Maclaurin did not converge");
    return at_precision(head + tail, ctx.digits());
}

/// zeta(j) to ctx.digits: the Bernoulli closed form for even j, the
/// Euler-Maclaurin series for odd j.
inline Real zeta_int(int j, const PrecisionContext& ctx) {
    if (j < 2) throw InvalidArgument("zeta_int: j must be >= 2, got " + std::to_string(j));
    if (j % 2 != 0) return zeta_int_series(j, ctx);
    PrecisionGuard g(ctx.digits() + 10);
    const int k = j / 2;
    Real pi;
    mpfr_const_pi(pi.backend().data(), MPFR_RNDN);
    Real v = to_real(bernoulli(j)) * pow(2 * pi, j) / (2 * to_real(factorial(j)));
    if (k % 2 == 0) v = -v;
    return at_precision(v, ctx.digits());
}

/// psi(1/2 + n) = -gamma - 2 log 2 + 2 sum_{m=1..n} 1/(2m - 1).
inline Real digamma_half_plus(std::int64_t n, const PrecisionContext& ctx) {
    if (n < 0) throw InvalidArgument("digamma_half_plus: n must be >= 0");
    const Constants c = constants(ctx);
    PrecisionGuard g(ctx);
    Real acc = 0;
    for (std::int64_t m = n; m >= 1; --m) acc += Real(1) / Real(2 * m - 1);
    return -c.gamma - 2 * c.log2 + 2 * acc;
}

}  // namespace lilambda
