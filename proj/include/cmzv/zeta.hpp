#pragma once

#include <map>
#include <mutex>
#include <stdexcept>

#include "cmzv/precision.hpp"

namespace cmzv {

// zeta(s) for integer s >= 2 by Euler-Maclaurin with an explicit remainder bound:
//   zeta(s) = sum_{n<M} n^-s + M^{1-s}/(s-1) + M^-s/2
//           + sum_{j=1}^{J} B_{2j}/(2j)! * (s)_{2j-1} * M^{-s-2j+1} + R,
//   |R| <= 2 * |first omitted correction term|.
inline Real zeta_euler_maclaurin(long s, mpfr_prec_t prec)
{
    if (s < 2)
        throw std::invalid_argument("zeta: integer argument must be >= 2");
    long digits = static_cast<long>(prec / 3.32) + 2;
    long M = std::max<long>(16, digits / 2 + 8);
    long J = std::max<long>(8, static_cast<long>(digits * 0.9));

    Real sum(0, prec);
    for (long n = 1; n < M; ++n) {
        Real t(1, prec);
        mpfr_ui_pow_ui(t.raw(), static_cast<unsigned long>(n), static_cast<unsigned long>(s), MPFR_RNDN);
        t.set_err(t.ulp());
        sum += Real(1, prec) / t;
    }
    Real Mr(M, prec);
    Real Mpow_s = pow_int(Mr, -s);
    sum += (Mr * Mpow_s) / (s - 1);
    sum += Mpow_s / 2;

    bernoulli_table(static_cast<std::size_t>(2 * J + 2));
    Rational poch(s); // (s)_{2j-1} built incrementally
    Real corr_last(0, prec);
    for (long j = 1; j <= J + 1; ++j) {
        // (s)_{2j-1} = s (s+1) ... (s+2j-2)
        if (j > 1) {
            poch *= Rational(s + 2 * j - 3) * Rational(s + 2 * j - 2);
        }
        Rational coef = bernoulli(static_cast<std::size_t>(2 * j)) * poch
            / Rational(factorial(2 * j));
        Real term = Real(coef, prec) * pow_int(Mr, -s - 2 * j + 1);
        if (j <= J)
            sum += term;
        else
            corr_last = term;
    }
    sum.widen_err(2.0 * corr_last.abs_double());
    return sum;
}

// Cached zeta values at integer arguments (thread-safe; cache keyed by precision).
inline Real zeta_int(long s, mpfr_prec_t prec)
{
    static std::map<std::pair<long, mpfr_prec_t>, Real> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(s, prec);
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    Real v = zeta_euler_maclaurin(s, prec);
    cache.emplace(key, v);
    return v;
}

// Alternating value zbar(k) = sum_{n>=1} (-1)^n / n^k = (2^{1-k} - 1) zeta(k), k >= 2.
inline Real zeta_alt(long k, mpfr_prec_t prec)
{
    Real two_pow(1, prec);
    mpfr_ui_pow_ui(two_pow.raw(), 2, static_cast<unsigned long>(k - 1), MPFR_RNDN);
    two_pow.set_err(0.0);
    return (Real(1, prec) / two_pow - Real(1, prec)) * zeta_int(k, prec);
}

} // namespace cmzv
