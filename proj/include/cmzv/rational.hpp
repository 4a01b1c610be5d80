#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cmzv {

using Rational = mpq_class;
using Integer = mpz_class;

inline Integer binomial(long n, long k)
{
    if (k < 0 || k > n)
        return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline Integer factorial(long n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

// Exact Bernoulli numbers B_0, B_1, ... (B_1 = -1/2) via the defining recurrence.
inline const std::vector<Rational>& bernoulli_table(std::size_t n_max)
{
    static std::vector<Rational> table{Rational(1)};
    while (table.size() <= n_max) {
        std::size_t m = table.size();
        Rational acc(0);
        for (std::size_t j = 0; j < m; ++j)
            acc += Rational(binomial(static_cast<long>(m) + 1, static_cast<long>(j))) * table[j];
        table.push_back(-acc / Rational(binomial(static_cast<long>(m) + 1, static_cast<long>(m))));
    }
    return table;
}

inline Rational bernoulli(std::size_t n)
{
    return bernoulli_table(n)[n];
}

// H_n^{(p)} as an exact rational.
inline Rational harmonic_exact(long n, long p = 1)
{
    Rational h(0);
    for (long k = 1; k <= n; ++k) {
        Rational term(1);
        Integer kp(k);
        mpz_pow_ui(kp.get_mpz_t(), Integer(k).get_mpz_t(), static_cast<unsigned long>(p));
        h += Rational(1) / Rational(kp);
    }
    return h;
}

inline std::string to_string(const Rational& q)
{
    return q.get_str();
}

} // namespace cmzv
