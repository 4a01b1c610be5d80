#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cmzv/composition.hpp"
#include "cmzv/precision.hpp"
#include "cmzv/zeta.hpp"

namespace cmzv {

// Numeric word letter: dt/t (is_zero) or dt/(pole - t) with a complex pole.
struct NumLetter {
    bool is_zero = true;
    Complex pole;
};

struct NumWord {
    std::vector<NumLetter> letters;

    bool convergent_at_zero() const { return letters.empty() || !letters.back().is_zero; }
};

// Layered nested series  sum_{n1>...>nd>0}  prod_j args[j]^{n_j} / n_j^{exps[j]}.
struct LayeredSeries {
    std::vector<int> exps;
    std::vector<Complex> args;

    int depth() const { return static_cast<int>(exps.size()); }
};

namespace detail {

// Geometric tail bound:  sum_{n>N} q^n n^{d-1} / (d-1)!  <=  K r^{N+1} / ((1-r)(d-1)!)
// with r = (1+q)/2 and K = sup_{n>N} n^{d-1} (q/r)^n.
inline double layered_tail_bound(double q, int d, long N)
{
    if (q >= 1.0)
        return std::numeric_limits<double>::infinity();
    double r = 0.5 * (1.0 + q);
    double lr = std::log(r / q);
    double nstar = std::max<double>(N + 1, (d - 1) / lr);
    double logK = (d - 1) * std::log(nstar) - nstar * lr;
    double fact = 1.0;
    for (int i = 2; i < d; ++i)
        fact *= i;
    double logtail = logK + (N + 1) * std::log(r) - std::log(1.0 - r) - std::log(fact);
    return std::exp(logtail);
}

inline long layered_terms_needed(double q, int d, double eps)
{
    long N = 16;
    while (layered_tail_bound(q, d, N) > eps) {
        N = N + N / 2 + 8;
        if (N > 4000000)
            throw std::runtime_error("layered series: convergence too slow to certify");
    }
    return N;
}

} // namespace detail

// Evaluate a layered series with a certified truncation tail. All partial
// argument products must satisfy |args[0]...args[j]| <= q_max < 1.
inline Complex eval_layered(const LayeredSeries& s, mpfr_prec_t prec, double eps_target)
{
    const int d = s.depth();
    if (d == 0)
        return Complex(1, prec);

    double q = 0.0;
    {
        double pr = 1.0, pi = 0.0;
        for (const auto& a : s.args) {
            double ar = a.re.to_double(), ai = a.im.to_double();
            double nr = pr * ar - pi * ai, ni = pr * ai + pi * ar;
            pr = nr;
            pi = ni;
            q = std::max(q, std::hypot(pr, pi));
        }
        q += 1e-12;
    }
    if (q >= 0.995)
        throw std::domain_error("eval_layered: partial products not bounded away from 1");

    long N = detail::layered_terms_needed(q, d, eps_target);
    double tail = detail::layered_tail_bound(q, d, N);

    std::vector<Complex> S(d + 1, Complex(0, prec));
    S[d] = Complex(1, prec); // sentinel: S[j](n) uses S[j+1]; S[d+1]-like unit handled below
    // We maintain S[j] = sum over n_j < current n; the innermost level has unit inner factor.
    std::vector<Complex> Ssum(d + 1, Complex(0, prec));
    Ssum[d] = Complex(1, prec); // "inner sum" below the innermost level is the empty product 1
    std::vector<Complex> argpow(d, Complex(1, prec));

    for (long n = 1; n <= N; ++n) {
        for (int j = 0; j < d; ++j)
            argpow[j] *= s.args[j];
        Real npow(1, prec);
        // update outermost first so that each level sees the inner sums at n-1 terms
        for (int j = 0; j < d; ++j) {
            // n^{-e_j}
            Real np(n, prec);
            Real np_e = pow_int(np, -s.exps[j]);
            Complex contrib = argpow[j];
            contrib = Complex(contrib.re * np_e, contrib.im * np_e);
            contrib *= Ssum[j + 1];
            Ssum[j] += contrib;
        }
    }
    Complex out = Ssum[0];
    out.re.widen_err(tail);
    out.im.widen_err(tail);
    return out;
}

// Translate a numeric word integrated over [0, z] into its layered series:
// x_0^{a1} x_{u1} ... x_0^{ad} x_{ud}  ->  exps k_j = a_j + 1,
// args  z/u_1, u_1/u_2, ..., u_{d-1}/u_d.
inline LayeredSeries layers_for(const NumWord& w, const Real& upper, mpfr_prec_t prec)
{
    if (!w.convergent_at_zero())
        throw std::invalid_argument("word ends in dt/t: divergent at the base point");
    LayeredSeries s;
    Complex prev(1, prec);
    bool have_prev = false;
    int k = 1;
    for (const auto& l : w.letters) {
        if (l.is_zero) {
            ++k;
        } else {
            s.exps.push_back(k);
            if (!have_prev) {
                Complex up(upper, Real(0, prec));
                s.args.push_back(up / l.pole);
                have_prev = true;
            } else {
                s.args.push_back(prev / l.pole);
            }
            prev = l.pole;
            k = 1;
        }
    }
    return s;
}

namespace detail {

inline double min_pole_abs(const NumWord& w)
{
    double m = std::numeric_limits<double>::infinity();
    for (const auto& l : w.letters)
        if (!l.is_zero)
            m = std::min(m, l.pole.abs_double());
    return m;
}

// Transformed distance data for the upper segment after t -> 1-t:
// zero letters become poles at 1; pole letters sigma become poles at 1-sigma
// (sigma = 1 becomes the new dt/t letter).
inline double min_transformed_pole_abs(const NumWord& w, mpfr_prec_t prec)
{
    double m = std::numeric_limits<double>::infinity();
    for (const auto& l : w.letters) {
        if (l.is_zero) {
            m = std::min(m, 1.0);
        } else {
            double dr = 1.0 - l.pole.re.to_double();
            double di = -l.pole.im.to_double();
            double d = std::hypot(dr, di);
            if (d > 1e-14)
                m = std::min(m, d);
        }
    }
    return m;
}

// Pull the word back through t -> 1-t and reverse it for the orientation flip.
// The letter dt/t pulls back to -x_1 and the pole at 1 to -x_0; generic poles
// sigma pull back to +x_{1-sigma}. Together with the (-1)^j of the reversal,
// each generic pole letter contributes one net factor of -1.
inline std::pair<NumWord, int> transform_reverse(const NumWord& w, mpfr_prec_t prec)
{
    NumWord out;
    int sign = 1;
    Real one(1, prec);
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        if (it->is_zero) {
            out.letters.push_back(NumLetter{false, Complex(one, Real(0, prec))});
        } else {
            Complex p(one - it->pole.re, -it->pole.im);
            if (p.abs_double() < 1e-14) {
                out.letters.push_back(NumLetter{true, Complex(0, prec)});
            } else {
                out.letters.push_back(NumLetter{false, p});
                sign = -sign;
            }
        }
    }
    return {out, sign};
}

} // namespace detail

// Iterated integral of a numeric word over the straight path [0, upper],
// upper in (0, 1]. Interior uppers evaluate by the layered series directly;
// the boundary upper = 1 uses path composition at a balanced split point,
// turning both segments into geometrically convergent series.
inline Complex eval_word_numeric(const NumWord& w, const Real& upper, mpfr_prec_t prec,
                                 double eps_target)
{
    if (w.letters.empty())
        return Complex(1, prec);
    if (!w.convergent_at_zero())
        throw std::invalid_argument("eval_word_numeric: divergent at 0");

    double up = upper.to_double();
    double min_low = detail::min_pole_abs(w);
    if (up > 1.0 + 1e-12)
        throw std::domain_error("eval_word_numeric: upper limit beyond the certified region");
    if (up < 1.0 - 1e-12) {
        if (up / min_low >= 0.995)
            throw std::domain_error("eval_word_numeric: path passes too close to a pole");
        return eval_layered(layers_for(w, upper, prec), prec, eps_target);
    }

    // boundary-style evaluation: split at s, compose per Chen's formula
    const auto& first = w.letters.front();
    if (!first.is_zero) {
        Complex d1(first.pole.re - upper, first.pole.im);
        if (d1.abs_double() < 1e-12)
            throw std::domain_error("eval_word_numeric: divergent at the upper endpoint");
    }
    double min_up = detail::min_transformed_pole_abs(w, prec);
    double sa = min_low / (min_low + min_up);
    // rational split point near sa keeps the arithmetic tidy
    long num = std::lround(sa * 64.0);
    num = std::min<long>(std::max<long>(num, 8), 56);
    Real s = Real(num, prec) / 64;
    Real one_minus_s = Real(64 - num, prec) / 64;

    const int r = static_cast<int>(w.letters.size());
    Complex total(0, prec);
    for (int j = 0; j <= r; ++j) {
        // prefix w[0..j) over [s, upper]; suffix w[j..r) over [0, s]
        Complex U(1, prec), L(1, prec);
        if (j > 0) {
            NumWord prefix;
            prefix.letters.assign(w.letters.begin(), w.letters.begin() + j);
            auto [t, sign] = detail::transform_reverse(prefix, prec);
            // path [s, 1] in t becomes [0, 1-s] in u = 1-t
            U = eval_layered(layers_for(t, one_minus_s, prec), prec, eps_target);
            if (sign < 0)
                U = -U;
        }
        if (j < r) {
            NumWord suffix;
            suffix.letters.assign(w.letters.begin() + j, w.letters.end());
            L = eval_layered(layers_for(suffix, s, prec), prec, eps_target);
        }
        total += U * L;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Public evaluators.
// ---------------------------------------------------------------------------

inline NumWord numeric_word(const Word& w, mpfr_prec_t prec)
{
    NumWord out;
    for (const auto& l : w.letters) {
        if (l.is_zero)
            out.letters.push_back(NumLetter{true, Complex(0, prec)});
        else
            out.letters.push_back(NumLetter{false, root_of_unity(2 * l.root, w.level, prec)});
    }
    return out;
}

// Word integral int_0^upper of a symbolic word, upper in (0,1].
inline Complex eval_word_integral(const Word& w, const Real& upper, int digits)
{
    mpfr_prec_t prec = bits_for_digits(digits + 10);
    double eps = std::pow(10.0, -(digits + 4));
    if (upper.to_double() >= 1.0 - 1e-12 && !w.convergent_at_one())
        throw std::domain_error("eval_word_integral: divergent at 1");
    return eval_word_numeric(numeric_word(w, prec), upper, prec, eps);
}

// Colored MZV Li_k(eta_1,...,eta_d) of the composition's level.
inline Complex eval_cmzv(const Composition& c, int digits)
{
    if (!c.admissible())
        throw std::domain_error("eval_cmzv: divergent (non-admissible) index");
    mpfr_prec_t prec = bits_for_digits(digits + 10);
    double eps = std::pow(10.0, -(digits + 4));
    Word w = comp_to_word(c);
    return eval_word_numeric(numeric_word(w, prec), Real(1, prec), prec, eps);
}

// Multiple polylogarithm at general complex arguments on the closed polydisk.
inline Complex eval_mpl(const std::vector<int>& exps, const std::vector<Complex>& args,
                        int digits)
{
    if (exps.size() != args.size() || exps.empty())
        throw std::invalid_argument("eval_mpl: argument count mismatch");
    mpfr_prec_t prec = bits_for_digits(digits + 10);
    double eps = std::pow(10.0, -(digits + 4));

    double q = 0.0;
    {
        double pr = 1.0, pi = 0.0;
        for (const auto& a : args) {
            double nr = pr * a.re.to_double() - pi * a.im.to_double();
            double ni = pr * a.im.to_double() + pi * a.re.to_double();
            pr = nr;
            pi = ni;
            q = std::max(q, std::hypot(pr, pi));
        }
    }
    if (q > 1.0 + 1e-12)
        throw std::domain_error("eval_mpl: arguments outside the unit polydisk");

    if (q <= 0.8) {
        LayeredSeries s;
        s.exps = exps;
        s.args = args;
        return eval_layered(s, prec, eps);
    }
    if (exps.front() == 1 && Complex(args.front().re - Real(1, prec), args.front().im).abs_double() < 1e-12)
        throw std::domain_error("eval_mpl: divergent boundary index");

    // boundary: build the pole word  x_0^{k1-1} x_{u1} ... with u_j = 1/(z_1...z_j)
    NumWord w;
    Complex prod(1, prec);
    for (std::size_t j = 0; j < args.size(); ++j) {
        for (int i = 0; i < exps[j] - 1; ++i)
            w.letters.push_back(NumLetter{true, Complex(0, prec)});
        prod *= args[j];
        w.letters.push_back(NumLetter{false, Complex(1, prec) / prod});
    }
    return eval_word_numeric(w, Real(1, prec), prec, eps);
}

// Classical polylogarithm Li_k(z), |z| <= 1.
inline Complex polylog(int k, const Complex& z, int digits)
{
    return eval_mpl({k}, {z}, digits);
}

inline Complex polylog(int k, const Real& x, int digits)
{
    mpfr_prec_t prec = bits_for_digits(digits + 10);
    return polylog(k, Complex(x, Real(0, prec)), digits);
}

// Clausen function cl_m at theta = (num/den) * pi: Re Li_m(e^{i theta}) for odd
// m, Im Li_m(e^{i theta}) for even m. Divergent only for m = 1 at theta = 0.
inline Real clausen(int m, long num, long den, int digits)
{
    mpfr_prec_t prec = bits_for_digits(digits + 10);
    long r = num % (2 * den);
    if (r < 0)
        r += 2 * den;
    if (m < 1 || (m == 1 && r == 0))
        throw std::domain_error("clausen: divergent argument");
    if (r == 0)
        return (m % 2 == 1) ? zeta_int(m, prec) : Real(0, prec);
    // e^{i theta}
    Complex z = root_of_unity(r, den, prec);
    Complex li = eval_mpl({m}, {z}, digits);
    return (m % 2 == 1) ? li.re : li.im;
}

inline Real catalan_constant(int digits)
{
    mpfr_prec_t prec = bits_for_digits(digits + 10);
    Complex i(Real(0, prec), Real(1, prec));
    return eval_mpl({2}, {i}, digits).im;
}

} // namespace cmzv
