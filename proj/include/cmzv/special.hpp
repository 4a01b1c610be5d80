#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "cmzv/formal_sum.hpp"
#include "cmzv/hyperlog.hpp"
#include "cmzv/mhs.hpp"

namespace cmzv {

// ---------------------------------------------------------------------------
// Clausen function at exact rational multiples of pi.
// ---------------------------------------------------------------------------

struct ClausenArg {
    int m = 2;
    Rational theta_over_pi; // reduced mod 2
};

inline Real clausen(const ClausenArg& arg, int digits)
{
    Rational t = arg.theta_over_pi;
    // reduce into [0, 2)
    Integer num = t.get_num(), den = t.get_den();
    Integer two_den = 2 * den;
    Integer r = num % two_den;
    if (r < 0)
        r += two_den;
    return clausen(arg.m, r.get_si(), den.get_si(), digits);
}

// ---------------------------------------------------------------------------
// Lucas sequences v_n(A, B) = alpha^n + beta^n, exact integers.
// ---------------------------------------------------------------------------

inline Integer lucas_v(long A, long B, long n)
{
    if (n < 0)
        throw std::invalid_argument("lucas_v: n must be nonnegative");
    Integer v0(2), v1(A);
    if (n == 0)
        return v0;
    for (long k = 1; k < n; ++k) {
        Integer v2 = A * v1 - B * v0;
        v0 = v1;
        v1 = v2;
    }
    return v1;
}

// Quadratic surd p + q sqrt(D) with exact rational p, q (D squarefree > 0).
struct Surd {
    Rational p, q;
    long D = 5;

    Surd operator*(const Surd& o) const
    {
        if (D != o.D)
            throw std::invalid_argument("Surd: mixed radicands");
        return Surd{p * o.p + q * o.q * Rational(D), p * o.q + q * o.p, D};
    }
    Surd operator+(const Surd& o) const { return Surd{p + o.p, q + o.q, D}; }

    Real value(mpfr_prec_t prec) const
    {
        return Real(p, prec) + Real(q, prec) * sqrt(Real(D, prec));
    }
};

inline Surd surd_pow(Surd s, long n)
{
    Surd acc{Rational(1), Rational(0), s.D};
    while (n > 0) {
        if (n & 1)
            acc = acc * s;
        n >>= 1;
        if (n)
            s = s * s;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Exponential complete Bell polynomials over any commutative ring with a
// Rational action: Y_n = sum C(n-1, j) x_{n-j} Y_j.
// ---------------------------------------------------------------------------

template <typename RingElem>
std::vector<RingElem> bell_sequence(const std::vector<RingElem>& xs, int n_max)
{
    // xs[k] is x_k for k >= 1 (xs[0] unused)
    std::vector<RingElem> Y;
    Y.push_back(RingElem{});
    Y[0] += RingElem::one();
    for (int n = 1; n <= n_max; ++n) {
        RingElem acc{};
        for (int j = 0; j <= n - 1; ++j) {
            RingElem t = xs[n - j] * Y[j];
            t *= Rational(binomial(n - 1, j));
            acc += t;
        }
        Y.push_back(std::move(acc));
    }
    return Y;
}

// Rational instantiation helper for plain numeric Bell values.
inline std::vector<Rational> bell_values(const std::vector<Rational>& xs, int n_max)
{
    std::vector<Rational> Y{Rational(1)};
    for (int n = 1; n <= n_max; ++n) {
        Rational acc(0);
        for (int j = 0; j <= n - 1; ++j)
            acc += Rational(binomial(n - 1, j)) * xs[n - j] * Y[j];
        Y.push_back(acc);
    }
    return Y;
}

// ---------------------------------------------------------------------------
// Zeta monomials: products zeta(a1) zeta(a2)... as exact symbols, used for the
// gamma-expansion coefficients C_n, D_n and their derived families.
// ---------------------------------------------------------------------------

struct ZetaMonomial {
    std::vector<int> args; // sorted, each >= 2; empty = the constant 1

    auto operator<=>(const ZetaMonomial&) const = default;
};

class ZetaSum {
public:
    ZetaSum() = default;

    static ZetaSum one()
    {
        ZetaSum z;
        z.sum_.add(ZetaMonomial{}, Rational(1));
        return z;
    }

    static ZetaSum zeta(int k, Rational coef = Rational(1))
    {
        ZetaSum z;
        z.sum_.add(ZetaMonomial{{k}}, coef);
        return z;
    }

    ZetaSum& operator+=(const ZetaSum& o)
    {
        sum_ += o.sum_;
        return *this;
    }

    ZetaSum& operator*=(const Rational& c)
    {
        sum_ *= c;
        return *this;
    }

    ZetaSum operator*(const ZetaSum& o) const
    {
        ZetaSum out;
        for (const auto& [a, ca] : sum_.terms())
            for (const auto& [b, cb] : o.sum_.terms()) {
                ZetaMonomial m;
                m.args = a.args;
                m.args.insert(m.args.end(), b.args.begin(), b.args.end());
                std::sort(m.args.begin(), m.args.end());
                out.sum_.add(m, ca * cb);
            }
        return out;
    }

    friend ZetaSum operator+(ZetaSum a, const ZetaSum& b) { a += b; return a; }
    friend ZetaSum operator*(const Rational& c, ZetaSum a) { a *= c; return a; }

    const FormalSum<ZetaMonomial>& terms() const { return sum_; }

    Real eval(mpfr_prec_t prec) const
    {
        Real acc(0, prec);
        for (const auto& [m, c] : sum_.terms()) {
            Real t(c, prec);
            for (int a : m.args)
                t *= zeta_int(a, prec);
            acc += t;
        }
        return acc;
    }

    bool operator==(const ZetaSum& o) const { return sum_ == o.sum_; }

private:
    FormalSum<ZetaMonomial> sum_;
};

// C_n = Y_n(0, 1! zeta(2), -2! zeta(3), ..., (-1)^n (n-1)! zeta(n)) and the
// reciprocal-series D_n with the opposite signs; exact zeta-polynomials.
inline const std::vector<ZetaSum>& coeff_C_table(int n_max)
{
    static std::vector<ZetaSum> table;
    if (static_cast<int>(table.size()) <= n_max) {
        std::vector<ZetaSum> xs(n_max + 1);
        if (n_max >= 1)
            xs[1] = ZetaSum{}; // x_1 = 0
        for (int k = 2; k <= n_max; ++k)
            xs[k] = ZetaSum::zeta(k, Rational(((k % 2 == 0) ? 1 : -1)) * Rational(factorial(k - 1)));
        table = bell_sequence(xs, n_max);
    }
    return table;
}

inline const std::vector<ZetaSum>& coeff_D_table(int n_max)
{
    static std::vector<ZetaSum> table;
    if (static_cast<int>(table.size()) <= n_max) {
        std::vector<ZetaSum> xs(n_max + 1);
        if (n_max >= 1)
            xs[1] = ZetaSum{};
        for (int k = 2; k <= n_max; ++k)
            xs[k] = ZetaSum::zeta(k, Rational(((k % 2 == 0) ? -1 : 1)) * Rational(factorial(k - 1)));
        table = bell_sequence(xs, n_max);
    }
    return table;
}

inline ZetaSum coeff_C(int n) { return coeff_C_table(std::max(n, 8))[n]; }
inline ZetaSum coeff_D(int n) { return coeff_D_table(std::max(n, 8))[n]; }

// A_k(n) = sum_{k1+k2=k} zeta*_n({1}^{k1}) C_{k2}/k2!
// B_k(n) = sum_{k1+k2=k} (-1)^{k1} zeta_n({1}^{k1}) D_{k2}/k2!
inline ZetaSum coeff_A(int k, long n)
{
    ZetaSum acc;
    for (int k1 = 0; k1 <= k; ++k1) {
        Composition ones;
        for (int i = 0; i < k1; ++i)
            ones.parts.push_back({1, 0});
        Rational star = eval_mhs(n, ones, true);
        ZetaSum t = coeff_C(k - k1);
        t *= star / Rational(factorial(k - k1));
        acc += t;
    }
    return acc;
}

inline ZetaSum coeff_B(int k, long n)
{
    ZetaSum acc;
    for (int k1 = 0; k1 <= k; ++k1) {
        Composition ones;
        for (int i = 0; i < k1; ++i)
            ones.parts.push_back({1, 0});
        Rational plain = eval_mhs(n, ones, false);
        ZetaSum t = coeff_D(k - k1);
        t *= Rational(k1 % 2 == 0 ? 1 : -1) * plain / Rational(factorial(k - k1));
        acc += t;
    }
    return acc;
}

} // namespace cmzv
