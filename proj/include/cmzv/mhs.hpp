#pragma once

#include <stdexcept>
#include <vector>

#include "cmzv/composition.hpp"
#include "cmzv/precision.hpp"
#include "cmzv/rational.hpp"

namespace cmzv {

// Multiple harmonic (star) sum zeta_n(k) as an exact rational.
// zeta_n(k) = 0 for n < depth; zeta_n(empty) = 1.
inline Rational eval_mhs(long n, const Composition& c, bool star = false)
{
    if (n < 0)
        throw std::invalid_argument("eval_mhs: n must be nonnegative");
    if (!c.is_level_one())
        throw std::invalid_argument("eval_mhs: colored input not supported");
    const int d = c.depth();
    if (d == 0)
        return Rational(1);
    if (!star && n < d)
        return Rational(0);
    if (n == 0)
        return Rational(0);

    // V[j][m] = nested sum over indices at levels j..d with the outer one <= m
    std::vector<Rational> inner(static_cast<std::size_t>(n) + 1, Rational(1));
    for (int j = d - 1; j >= 0; --j) {
        std::vector<Rational> cur(static_cast<std::size_t>(n) + 1, Rational(0));
        for (long m = 1; m <= n; ++m) {
            Integer mp;
            mpz_ui_pow_ui(mp.get_mpz_t(), static_cast<unsigned long>(m),
                          static_cast<unsigned long>(c.parts[j].k));
            const Rational& sub = star ? inner[m] : inner[m - 1];
            cur[m] = cur[m - 1] + sub / Rational(mp);
        }
        inner = std::move(cur);
    }
    return inner[static_cast<std::size_t>(n)];
}

// Floating-point multiple harmonic sum H_M(k) for large M.
inline Real eval_mhs_float(long n, const Composition& c, mpfr_prec_t prec, bool star = false)
{
    const int d = c.depth();
    if (d == 0)
        return Real(1, prec);
    std::vector<Real> state(static_cast<std::size_t>(d) + 1, Real(0, prec));
    state[d] = Real(1, prec);
    // state[j] accumulates the level-j nested sum over indices <= current m;
    // updating outer levels first realizes the strict inequalities.
    for (long m = 1; m <= n; ++m) {
        if (!star) {
            for (int j = 0; j < d; ++j) {
                Real term = state[j + 1];
                Real mp = pow_int(Real(m, prec), -c.parts[j].k);
                state[j] += term * mp;
            }
        } else {
            for (int j = d - 1; j >= 0; --j) {
                Real term = state[j + 1];
                Real mp = pow_int(Real(m, prec), -c.parts[j].k);
                state[j] += term * mp;
            }
        }
    }
    return state[0];
}

} // namespace cmzv
