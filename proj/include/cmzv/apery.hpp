#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "cmzv/accel.hpp"
#include "cmzv/quadrature.hpp"
#include "cmzv/series.hpp"
#include "cmzv/special.hpp"

namespace cmzv {

// theta = 2 j pi / N with mu = e^{i theta} and a = 2 cos(theta).
struct ThetaContext {
    int N = 2;
    int j = 1;
    mpfr_prec_t prec;
    Real theta;
    Real a;

    ThetaContext(int N_, int j_, mpfr_prec_t prec_) : N(N_), j(j_), prec(prec_)
    {
        if (N < 2 || j < 1 || j >= N)
            throw std::invalid_argument("ThetaContext: need N >= 2 and 1 <= j < N");
        theta = (2 * Real(j, prec) * const_pi(prec)) / N;
        a = 2 * cos(theta);
    }

    bool is_half_turn() const { return 2 * j == N; }    // theta = pi (N=2-like)
    bool is_quarter_turn() const { return 4 * j == N; } // theta = pi/2 (N=4-like)
};

struct FGFSequences {
    std::vector<Real> f, g, F; // f[0], g[0], F[0] unused except g[0] = 1
};

namespace detail {

// forward recurrence (stable for theta < pi/2):
//   (a+2) n f_{n+1} = a (2n-1) f_n + (2-a)(n-1) f_{n-1}
inline std::vector<Real> f_forward(const ThetaContext& ctx, long n_max)
{
    mpfr_prec_t prec = ctx.prec;
    std::vector<Real> f(n_max + 2, Real(0, prec));
    Real s = sin(ctx.theta);
    Real half = ctx.theta / 2;
    f[1] = (const_pi(prec) - ctx.theta) * sin(half) / cos(half);
    if (n_max >= 2)
        f[2] = (2 - ctx.a) * (ctx.a * f[1] + 2 - ctx.a) / (4 * s * s);
    for (long n = 2; n <= n_max - 1; ++n)
        f[n + 1] = (ctx.a * (2 * n - 1) * f[n] + (2 - ctx.a) * (n - 1) * f[n - 1])
            / ((ctx.a + 2) * n);
    return f;
}

// backward (Miller) recurrence, stable when the decaying solution is wanted
// and theta > pi/2:
//   f_{n-1} = ((a+2) n f_{n+1} - a (2n-1) f_n) / ((2-a)(n-1))
inline std::vector<Real> f_backward(const ThetaContext& ctx, long n_max)
{
    mpfr_prec_t prec = ctx.prec;
    long guard = 120 + n_max / 8;
    long M = n_max + guard;
    std::vector<Real> f(M + 2, Real(0, prec));
    f[M + 1] = Real(0, prec);
    f[M] = Real(1, prec);
    for (long n = M; n >= 2; --n)
        f[n - 1] = ((ctx.a + 2) * n * f[n + 1] - ctx.a * (2 * n - 1) * f[n]) / ((2 - ctx.a) * (n - 1));
    Real half = ctx.theta / 2;
    Real f1 = (const_pi(prec) - ctx.theta) * sin(half) / cos(half);
    Real scale = f1 / f[1];
    f.resize(n_max + 2);
    for (auto& v : f)
        v *= scale;
    // the seed error decays like ((1+cos)/(1-cos))^guard; fold a crude bound
    double contract = std::fabs((1.0 + ctx.a.to_double() / 2) / (1.0 - ctx.a.to_double() / 2));
    double rel = std::pow(contract, static_cast<double>(guard));
    for (auto& v : f)
        v.widen_err(std::fabs(v.to_double()) * rel);
    return f;
}

// exact N = 4 parity values: f_{2k} = 4^k/(2k C(2k,k)), f_{2k+1} = pi C(2k,k)/(2 4^k)
inline std::vector<Real> f_quarter(const ThetaContext& ctx, long n_max)
{
    mpfr_prec_t prec = ctx.prec;
    Real pi = const_pi(prec);
    std::vector<Real> f(n_max + 2, Real(0, prec));
    Real a_k(1, prec); // C(2k,k)/4^k
    long k = 0;
    for (long n = 1; n <= n_max; ++n) {
        if (n % 2 == 0) {
            long kk = n / 2;
            while (k < kk) {
                ++k;
                a_k = a_k * (2 * k - 1) / (2 * k);
            }
            f[n] = Real(1, prec) / (a_k * n);
        } else {
            long kk = (n - 1) / 2;
            while (k < kk) {
                ++k;
                a_k = a_k * (2 * k - 1) / (2 * k);
            }
            f[n] = pi * a_k / 2;
        }
    }
    return f;
}

// half-turn (theta = pi): degenerate recurrence F_n = (n-1) F_{n-1}/(2n-1),
// f_n = 2^n F_n = 4^n/(n C(2n,n)).
inline std::vector<Real> f_half(const ThetaContext& ctx, long n_max)
{
    mpfr_prec_t prec = ctx.prec;
    std::vector<Real> f(n_max + 2, Real(0, prec));
    Real b(1, prec); // 4^n / C(2n,n)
    for (long n = 1; n <= n_max; ++n) {
        b = b * (2 * n) / (2 * n - 1);
        f[n] = b / n;
    }
    return f;
}

} // namespace detail

inline std::vector<Real> f_sequence(const ThetaContext& ctx, long n_max)
{
    if (ctx.is_half_turn())
        return detail::f_half(ctx, n_max);
    if (ctx.is_quarter_turn())
        return detail::f_quarter(ctx, n_max);
    if (ctx.a.to_double() > 0)
        return detail::f_forward(ctx, n_max);
    return detail::f_backward(ctx, n_max);
}

inline FGFSequences fgf_sequence(const ThetaContext& ctx, long n_max, int /*digits*/)
{
    FGFSequences out;
    out.f = f_sequence(ctx, n_max);
    mpfr_prec_t prec = ctx.prec;

    // F_n = f_n / (1 - cos theta)^n
    out.F.assign(n_max + 2, Real(0, prec));
    Real base = Real(1, prec) - ctx.a / 2;
    Real pw(1, prec);
    for (long n = 1; n <= n_max; ++n) {
        pw *= base;
        out.F[n] = out.f[n] / pw;
    }

    // g_0 = 1; g_1 from the closed form (half-turn exception: 4 log 2 - 2);
    // onward by the integration-by-parts relation
    //   g_{n+1} = ((2-a)(f_n - 1/n) + a f_{n+1}) / 2, valid for every a.
    out.g.assign(n_max + 2, Real(0, prec));
    out.g[0] = Real(1, prec);
    if (n_max >= 1) {
        if (ctx.is_half_turn()) {
            out.g[1] = 4 * const_log2(prec) - 2;
        } else {
            Real half = ctx.theta / 2;
            Real s = sin(ctx.theta);
            out.g[1] = (2 - ctx.a) * log(2 * sin(half))
                + ctx.a * (2 - ctx.a) * (const_pi(prec) - ctx.theta) / (4 * s);
        }
    }
    for (long n = 1; n + 1 <= n_max; ++n)
        out.g[n + 1] = ((2 - ctx.a) * (out.f[n] - Real(1, prec) / n) + ctx.a * out.f[n + 1]) / 2;
    return out;
}

// f_n by its defining integral (adaptive quadrature; the independent oracle).
inline Real f_by_quadrature(const ThetaContext& ctx, long n, int digits)
{
    Real a = ctx.a;
    auto integrand = [a, n](const Real& x) {
        Real u = ((2 - a) * x) / (x * x - a * x + 1);
        return pow_int(u, n) / x;
    };
    mpfr_prec_t prec = ctx.prec;
    return eval_form_integral({make_form("fn", integrand)}, Real(0, prec), Real(1, prec),
                              digits);
}

// ---------------------------------------------------------------------------
// sum_n f_n / n^l: numeric sum plus, for l = 1 and 2, the iterated-integral
// closed form  int_0^1 x0 (x0 + x_mu + x_mubar)^{l-1} (2 x1 - x_mu - x_mubar),
// i.e. a level-N combination of colored MZVs.
// ---------------------------------------------------------------------------

struct SumFnResult {
    Real value;
    Real closed_form; // only for l = 1, 2
    bool has_closed_form = false;
};

inline Real sum_fn_over_nl_numeric(const ThetaContext& ctx, int l, int digits)
{
    mpfr_prec_t prec = ctx.prec;
    // terms f_n / n^l decay like n^{-l-1/2}; half-power extrapolation
    RichardsonOptions opt;
    opt.half_powers = true;
    opt.with_log = false;
    opt.order = std::min(11, 5 + digits / 4);
    opt.n0 = 64;
    // worst case sample count
    long need = static_cast<long>(opt.n0 * std::pow(1.4142135623730951, 2 * opt.order + 3)) + 8;
    std::vector<Real> f = f_sequence(ctx, need);
    auto term = [&f, l, prec](long n) { return f[n] / pow_int(Real(n, prec), l); };
    return richardson_limit(term, prec, opt, 1);
}

inline SumFnResult sum_fn_over_nl(const ThetaContext& ctx, int l, int digits)
{
    SumFnResult out{sum_fn_over_nl_numeric(ctx, l, digits), Real(0, ctx.prec), false};
    if (l == 1 || l == 2) {
        const int N = ctx.N;
        int mu = ctx.j % N, mubar = mod_level(-ctx.j, N);
        Letter x0{true, 0}, x1{false, 0}, xm{false, mu}, xmb{false, mubar};
        std::vector<std::pair<Letter, Rational>> last{{x1, Rational(2)}, {xm, Rational(-1)}, {xmb, Rational(-1)}};
        std::vector<std::pair<Letter, Rational>> mid{{x0, Rational(1)}, {xm, Rational(1)}, {xmb, Rational(1)}};
        mpfr_prec_t prec = bits_for_digits(digits + 10);
        Complex acc(0, prec);
        if (l == 1) {
            for (auto& [lt, c] : last)
                acc += Real(c, prec) * eval_word_integral(Word({x0, lt}, N), Real(1, prec), digits);
        } else {
            for (auto& [m, cm] : mid)
                for (auto& [lt, cl] : last)
                    acc += Real(cm * cl, prec)
                        * eval_word_integral(Word({x0, m, lt}, N), Real(1, prec), digits);
        }
        out.closed_form = acc.re;
        out.has_closed_form = true;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Weight-3 inverse binomial series at u = 4 sin^2(theta/2):
//   S1 = sum u^n/(n^3 C(2n,n))          = 2 cl3(t) + 2 t cl2(t) - 2 z3 + t^2 log(2 sin(t/2))
//   S2 = sum H_{n-1} u^n/(n^2 C(2n,n))  = 4 cl3(pi-t) - 2 t cl2(pi-t) + 3 z3
//   S3 = sum H_{2n-1} u^n/(n^2 C(2n,n)) = -2 cl3(t) + 4 cl3(pi-t) - 2 t cl2(pi-t) - t cl2(t) + 5 z3
// ---------------------------------------------------------------------------

struct DKResult {
    Real rhs1, rhs2, rhs3;
    Real lhs1, lhs2, lhs3;
};

inline DKResult dk_weight3(const Rational& theta_over_pi, int digits)
{
    if (!(theta_over_pi > 0) || theta_over_pi > 1)
        throw std::domain_error("dk_weight3: theta must lie in (0, pi]");
    mpfr_prec_t prec = bits_for_digits(digits + 15);
    Real pi = const_pi(prec);
    Real theta = Real(theta_over_pi, prec) * pi;
    Real z3 = zeta_int(3, prec);
    Real sin_half = sin(theta / 2);
    Real u = 4 * sin_half * sin_half;
    Real log2sin = log(2 * sin_half);

    Rational one_minus = Rational(1) - theta_over_pi;
    Real cl3t = clausen(ClausenArg{3, theta_over_pi}, digits + 5);
    Real cl2t = clausen(ClausenArg{2, theta_over_pi}, digits + 5);
    Real cl3p = clausen(ClausenArg{3, one_minus}, digits + 5);
    Real cl2p = clausen(ClausenArg{2, one_minus}, digits + 5);

    DKResult r{
        2 * cl3t + 2 * (theta * cl2t) - 2 * z3 + theta * theta * log2sin,
        4 * cl3p - 2 * (theta * cl2p) + 3 * z3,
        -2 * cl3t + 4 * cl3p - 2 * (theta * cl2p) - theta * cl2t + 5 * z3,
        Real(0, prec), Real(0, prec), Real(0, prec)};

    // direct sums; u = 4 is the slowest case and needs extrapolation
    bool boundary = (theta_over_pi == 1);
    auto make_stream = [&](int which) {
        // which: 1 -> 1/n^3, 2 -> H_{n-1}/n^2, 3 -> H_{2n-1}/n^2
        auto b = std::make_shared<Real>(Real(1, prec));   // u^n / C(2n,n) via ratio
        auto H = std::make_shared<Real>(Real(0, prec));   // harmonic state
        auto H2 = std::make_shared<Real>(Real(0, prec));  // H_{2n-1}
        return std::function<Real(long)>([=, &prec2 = prec](long n) {
            *b = *b * u * n / (2 * (2 * n - 1));
            Real t(0, prec2);
            if (which == 1) {
                t = *b / pow_int(Real(n, prec2), 3);
            } else if (which == 2) {
                t = *b * *H / (Real(n, prec2) * n);
                *H += Real(1, prec2) / n;
            } else {
                *H2 += Real(1, prec2) / (2 * n - 1) + (n > 1 ? Real(1, prec2) / (2 * n - 2) : Real(0, prec2));
                t = *b * *H2 / (Real(n, prec2) * n);
            }
            return t;
        });
    };
    auto sum_stream = [&](int which) -> Real {
        auto term = make_stream(which);
        if (boundary) {
            RichardsonOptions opt;
            opt.half_powers = true;
            opt.with_log = which != 1;
            opt.order = std::min(11, 5 + digits / 4);
            opt.n0 = 64;
            return richardson_limit(term, prec, opt, 1);
        }
        Real acc(0, prec);
        double q = std::fabs(u.to_double()) / 4.0;
        double eps = std::pow(10.0, -(digits + 3));
        for (long n = 1; n < 1000000; ++n) {
            Real t = term(n);
            acc += t;
            double qb = q * (1.0 + 1.0 / (2.0 * n)) * std::log(n + 2.0) / std::log(n + 1.0);
            if (qb < 1.0 && t.abs_double() * qb / (1.0 - qb) < eps) {
                acc.widen_err(t.abs_double() * qb / (1.0 - qb) + eps);
                return acc;
            }
        }
        throw std::runtime_error("dk_weight3: series failed to converge");
    };
    r.lhs1 = sum_stream(1);
    r.lhs2 = sum_stream(2);
    r.lhs3 = sum_stream(3);
    return r;
}

// combined form at u = 4 sin^2(theta/2):
//   sum u^n (H_{2n} - H_{n-1})/(n^2 C(2n,n)) = z3 - cl3(theta) + theta^2/2 log(2 sin(theta/2))
inline Real comb_rhs(const Rational& theta_over_pi, int digits)
{
    mpfr_prec_t prec = bits_for_digits(digits + 15);
    Real pi = const_pi(prec);
    Real theta = Real(theta_over_pi, prec) * pi;
    Real sin_half = sin(theta / 2);
    return zeta_int(3, prec) - clausen(ClausenArg{3, theta_over_pi}, digits + 5)
        + theta * theta / 2 * log(2 * sin_half);
}

// ---------------------------------------------------------------------------
// The four Lucas-sequence identities: LHS summed directly through lucas_v and
// exact harmonic numbers, paired against the two combined-form evaluations.
// ---------------------------------------------------------------------------

struct SunIdentity {
    const char* name;
    long A, B;
    Rational theta_plus, theta_minus; // the paired theta/pi values
};

inline const std::vector<SunIdentity>& sun_cases()
{
    static const std::vector<SunIdentity> cases{
        {"lucas-L2n", 3, 1, Rational(3, 5), Rational(1, 5)},
        {"v55", 5, 5, Rational(4, 5), Rational(2, 5)},
        {"v41", 4, 1, Rational(5, 6), Rational(1, 6)},
        {"v42", 4, 2, Rational(3, 4), Rational(1, 4)},
    };
    return cases;
}

// direct summation: v_n (H_{2n} - H_{n-1}) / (n^2 C(2n,n)); |alpha| < 4 makes
// this geometric with ratio up to (5+sqrt(5))/8.
inline Real sun_lhs_direct(long A, long B, int digits)
{
    mpfr_prec_t prec = bits_for_digits(digits + 15);
    double eps = std::pow(10.0, -(digits + 3));
    Real inv_binom(1, prec); // 1/C(2n,n) progressively
    Real H2mH(0, prec);      // H_{2n} - H_{n-1}
    Integer v0(2), v1(A);
    Real acc(0, prec);
    double alpha = (A + std::sqrt(static_cast<double>(A) * A - 4.0 * B)) / 2.0;
    double q_asym = alpha / 4.0;
    for (long n = 1; n < 200000; ++n) {
        inv_binom = inv_binom * n / (2 * (2 * n - 1));
        // H_{2n} - H_{n-1} = previous + 1/(2n-1) + 1/(2n) - 1/(n-1) ... maintain directly
        if (n == 1) {
            H2mH = Real(1, prec) + Real(Rational(1, 2), prec);
        } else {
            H2mH += Real(1, prec) / (2 * n - 1) + Real(1, prec) / (2 * n) - Real(1, prec) / (n - 1);
        }
        Integer v = (n == 1) ? v1 : [&] {
            Integer v2 = A * v1 - B * v0;
            v0 = v1;
            v1 = v2;
            return v2;
        }();
        Real t = Real(Rational(v), prec) * H2mH * inv_binom / Real(n * n, prec);
        acc += t;
        double qb = q_asym * (1.0 + 1.0 / (2.0 * n)) * std::log(n + 3.0) / std::log(n + 2.0);
        if (n > 8 && qb < 1.0 && t.abs_double() * qb / (1.0 - qb) < eps) {
            acc.widen_err(t.abs_double() * qb / (1.0 - qb) + eps);
            return acc;
        }
    }
    throw std::runtime_error("sun_lhs_direct: failed to converge");
}

struct SunVerification {
    std::string name;
    Real lhs_direct;
    Real lhs_paired;
    Real rhs;
};

inline std::vector<SunVerification> sun_identities(int digits)
{
    mpfr_prec_t prec = bits_for_digits(digits + 15);
    Real pi = const_pi(prec);
    Real pi2 = pi * pi;
    Real z3 = zeta_int(3, prec);
    Real sqrt2 = sqrt(Real(2, prec));
    Real sqrt3 = sqrt(Real(3, prec));
    Real sqrt5 = sqrt(Real(5, prec));
    Real phi = (1 + sqrt5) / 2;

    std::vector<Real> rhs{
        (41 * z3 + 4 * (pi2 * log(phi))) / 25,
        (124 * z3 + pi2 * log(pow_int(Real(5, prec), 5) * pow_int(phi, 6))) / 50,
        (23 * z3 + 2 * (pi2 * log(2 + sqrt3))) / 12,
        (259 * z3 + 2 * (pi2 * (5 * const_log2(prec) + 8 * log(1 + sqrt2)))) / 128,
    };

    std::vector<SunVerification> out;
    const auto& cases = sun_cases();
    for (std::size_t i = 0; i < cases.size(); ++i) {
        SunVerification v;
        v.name = cases[i].name;
        v.lhs_direct = sun_lhs_direct(cases[i].A, cases[i].B, digits);
        v.lhs_paired = comb_rhs(cases[i].theta_plus, digits) + comb_rhs(cases[i].theta_minus, digits);
        v.rhs = rhs[i];
        out.push_back(std::move(v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Contour-integral closed forms:
//   G(k1..k4) = 2^{k3+k4} log^{k4}(2) C_{k1} C_{k2} D_{k3} / (k1! k2! k3! k4!)
// ---------------------------------------------------------------------------

namespace detail {

inline Real G_value(int k1, int k2, int k3, int k4, mpfr_prec_t prec)
{
    Real v = coeff_C(k1).eval(prec) * coeff_C(k2).eval(prec) * coeff_D(k3).eval(prec);
    v *= Real(Rational(Integer(1) << (k3 + k4), factorial(k1) * factorial(k2) * factorial(k3) * factorial(k4)), prec);
    return v * pow_int(const_log2(prec), k4);
}

inline Real G_weight_sum(int w, mpfr_prec_t prec)
{
    Real acc(0, prec);
    for (int k1 = 0; k1 <= w; ++k1)
        for (int k2 = 0; k2 + k1 <= w; ++k2)
            for (int k3 = 0; k3 + k2 + k1 <= w; ++k3)
                acc += G_value(k1, k2, k3, w - k1 - k2 - k3, prec);
    return acc;
}

} // namespace detail

// sum_n C(2n,n)/(4^n n^{q-1}) = (-1)^q sum_{|k|_4 = q-1} G(k)
inline Real thsq_rhs(int q, int digits)
{
    if (q < 2)
        throw std::invalid_argument("thsq_rhs: q must be >= 2");
    mpfr_prec_t prec = bits_for_digits(digits + 10);
    Real v = detail::G_weight_sum(q - 1, prec);
    return (q % 2 == 0) ? v : -v;
}

inline Real thsq_lhs(int q, int digits)
{
    SeriesSpec s;
    s.levels = {SeriesLevel{q - 1, 1, DenShape::N, false}};
    s.top = TopFactor::A;
    s.zsq = Rational(1);
    return eval_series(s, digits);
}

// sum_n n C(2n,n) / ((n-1/2)^q 4^n) = (2/pi) sum_{|k|_4 + 2 k5 = q-2} G(k) ttilde(2 k5 + 2)
inline Real acb1_rhs(int q, int digits)
{
    if (q < 2)
        throw std::invalid_argument("acb1_rhs: q must be >= 2");
    mpfr_prec_t prec = bits_for_digits(digits + 10);
    Real acc(0, prec);
    for (int k5 = 0; 2 * k5 <= q - 2; ++k5) {
        int k = 2 * k5 + 2;
        Real ttilde = Real(Rational((Integer(1) << k) - 1), prec) * zeta_int(k, prec);
        acc += detail::G_weight_sum(q - 2 - 2 * k5, prec) * ttilde;
    }
    return 2 * acc / const_pi(prec);
}

inline Real acb1_lhs(int q, int digits)
{
    // n a_n / (n - 1/2)^q = n a_n 2^q / (2n-1)^q
    SeriesSpec s;
    s.levels = {SeriesLevel{q, 1, DenShape::TwoNMinus1, false}};
    s.top = TopFactor::A;
    s.zsq = Rational(1);
    mpfr_prec_t prec = bits_for_digits(digits + 15);
    // handle the extra factor n by splitting n = (2n-1)/2 + 1/2:
    //   n/(2n-1)^q = (1/2) (2n-1)^{1-q} + (1/2) (2n-1)^{-q}
    SeriesSpec s1 = s;
    s1.levels[0].s = q - 1;
    Real part1 = eval_series(s1, digits);
    Real part2 = eval_series(s, digits);
    Real two_pow = pow_int(Real(2, prec), q);
    return two_pow * (part1 + part2) / 2;
}

// corrected residue relation for F2(s) = (psi(-s) + gamma) F0(s):
//   sum 4^n/(n^q C) = (-1)^q sum H_{n-1} C/(4^n n^{q-1})
//                     + sum_{k5>=0} zeta(k5+2) sum_{|k|_4 = q-2-k5} G(k)
//                     - sum_{|k|_4 = q} G(k)
struct HnRelation {
    Real lhs;        // sum 4^n/(n^q C(2n,n))
    Real rhs;        // the right-hand combination
};

inline HnRelation hn_relation(int q, int digits)
{
    if (q < 2)
        throw std::invalid_argument("hn_relation: q must be >= 2");
    mpfr_prec_t prec = bits_for_digits(digits + 15);

    SeriesSpec lhs_spec;
    lhs_spec.levels = {SeriesLevel{q, 1, DenShape::N, false}};
    lhs_spec.top = TopFactor::B;
    lhs_spec.zsq = Rational(1);
    Real lhs = eval_series(lhs_spec, digits);

    SeriesSpec mid;
    mid.levels = {SeriesLevel{q - 1, 1, DenShape::N, false}, SeriesLevel{1, 1, DenShape::N, false}};
    mid.top = TopFactor::A;
    mid.zsq = Rational(1);
    Real mid_v = eval_series(mid, digits);

    Real extra(0, prec);
    for (int k5 = 0; k5 <= q - 2; ++k5)
        extra += zeta_int(k5 + 2, prec) * detail::G_weight_sum(q - 2 - k5, prec);

    Real rhs = ((q % 2 == 0) ? mid_v : -mid_v) + extra - detail::G_weight_sum(q, prec);
    return HnRelation{lhs, rhs};
}

} // namespace cmzv
