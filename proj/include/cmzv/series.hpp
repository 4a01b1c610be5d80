#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmzv/accel.hpp"
#include "cmzv/hyperlog.hpp"
#include "cmzv/mhs.hpp"
#include "cmzv/word_algebra.hpp"

namespace cmzv {

// ---------------------------------------------------------------------------
// Nested central-binomial series. Every corpus instance is real-valued: the
// argument enters only through the per-step ratio zsq (z^2 for the a_n/b_n
// weights; negative values encode the alternating/hyperbolic families).
// ---------------------------------------------------------------------------

enum class DenShape { N, TwoN, TwoNPlus1, TwoNMinus1 };
enum class TopFactor { One, A, B, A2, B2 };

struct SeriesLevel {
    int s = 1;            // exponent
    int sign = 1;         // eta in {+1, -1}
    DenShape den = DenShape::TwoN;
    bool weak_to_next = false; // comparator to the next level: > (false) or >= (true)
};

struct SeriesSpec {
    std::vector<SeriesLevel> levels; // outermost first
    TopFactor top = TopFactor::One;
    Rational zsq = Rational(1);
    long cutoff = 0;            // innermost index bound
    bool weak_bottom = false;   // innermost comparator vs cutoff: > (false) or >= (true)

    int depth() const { return static_cast<int>(levels.size()); }
};

struct SeriesDivergence : std::domain_error {
    int level;
    SeriesDivergence(int lvl, const std::string& what)
        : std::domain_error(what), level(lvl) {}
};

namespace detail {

inline double top_exponent(TopFactor t)
{
    switch (t) {
    case TopFactor::One: return 0.0;
    case TopFactor::A: return -0.5;
    case TopFactor::B: return 0.5;
    case TopFactor::A2: return -1.0;
    case TopFactor::B2: return 1.0;
    }
    return 0.0;
}

inline long den_at(DenShape d, long n)
{
    switch (d) {
    case DenShape::N: return n;
    case DenShape::TwoN: return 2 * n;
    case DenShape::TwoNPlus1: return 2 * n + 1;
    case DenShape::TwoNMinus1: return 2 * n - 1;
    }
    return n;
}

// Streaming evaluator state for the nested sum.
class SeriesStream {
public:
    SeriesStream(const SeriesSpec& spec, mpfr_prec_t prec)
        : spec_(spec), prec_(prec)
    {
        const int d = spec.depth();
        min_index_.assign(d, 0);
        long first_bottom = spec.weak_bottom ? spec.cutoff : spec.cutoff + 1;
        min_index_[d - 1] = first_bottom;
        for (int j = d - 2; j >= 0; --j)
            min_index_[j] = min_index_[j + 1] + (spec.levels[j].weak_to_next ? 0 : 1);
        for (int j = 0; j < d; ++j)
            if (den_at(spec.levels[j].den, min_index_[j]) == 0)
                throw SeriesDivergence(j + 1, "eval_series: denominator vanishes at the first index");

        inner_.assign(d + 1, Real(0, prec));
        inner_[d] = Real(1, prec);
        weight_ = Real(1, prec);
        n_ = min_index_[0] - 1;
        // absorb inner indices available before the first outer index
        for (long m = min_index_[d - 1]; m < min_index_[0]; ++m)
            absorb(m);
        // weight at n_ (only needed as a recurrence seed)
        weight_ = weight_at(n_);
    }

    long first_outer() const { return min_index_[0]; }
    long current_index() const { return n_; }

    // advance to the next outer index and return its full signed term
    Real next_term()
    {
        ++n_;
        long m = n_;
        advance_weight(m);
        const int d = spec_.depth();
        Real below(1, prec_);
        if (d > 1) {
            if (spec_.levels[0].weak_to_next) {
                absorb(m);
                below = inner_[1];
            } else {
                below = inner_[1];
                absorb(m);
            }
        }
        Real dv(den_at(spec_.levels[0].den, m), prec_);
        Real t = weight_ * pow_int(dv, -spec_.levels[0].s) * below;
        if (spec_.levels[0].sign < 0 && (m & 1))
            t = -t;
        return t;
    }

private:
    Real weight_at(long m) const
    {
        if (m <= 0)
            return Real(1, prec_);
        Real w(1, prec_);
        Real num(spec_.zsq, prec_);
        for (long k = 1; k <= m; ++k)
            w = step_weight(w, num, k);
        return w;
    }

    Real step_weight(Real w, const Real& num, long k) const
    {
        switch (spec_.top) {
        case TopFactor::One: return w * num;
        case TopFactor::A: return w * num * (2 * k - 1) / (2 * k);
        case TopFactor::B: return w * num * (2 * k) / (2 * k - 1);
        case TopFactor::A2: return w * num * (2 * k - 1) * (2 * k - 1) / ((2 * k) * (2 * k));
        case TopFactor::B2: return w * num * (2 * k) * (2 * k) / ((2 * k - 1) * (2 * k - 1));
        }
        return w;
    }

    void advance_weight(long m)
    {
        if (m <= 0) {
            weight_ = Real(1, prec_);
            return;
        }
        Real num(spec_.zsq, prec_);
        weight_ = step_weight(weight_, num, m);
    }

    // include inner index m into the accumulated sums of levels 1..d-1
    void absorb(long m)
    {
        const int d = spec_.depth();
        std::vector<Real> old(inner_);
        for (int j = d - 1; j >= 1; --j) {
            if (m < min_index_[j])
                continue;
            bool weak_below = (j == d - 1) ? true : spec_.levels[j].weak_to_next;
            const Real& below = (j == d - 1)
                ? inner_[d]
                : (weak_below ? inner_[j + 1] : old[j + 1]);
            Real dv(den_at(spec_.levels[j].den, m), prec_);
            Real t = pow_int(dv, -spec_.levels[j].s) * below;
            if (spec_.levels[j].sign < 0 && (m & 1))
                t = -t;
            inner_[j] += t;
        }
    }

    const SeriesSpec& spec_;
    mpfr_prec_t prec_;
    std::vector<Real> inner_;
    std::vector<long> min_index_;
    Real weight_;
    long n_ = 0;
};

} // namespace detail

// Evaluation strategy from the outer decay: geometric when |eta zsq| < 1,
// half-power Richardson when eta zsq = 1, alternating acceleration when
// eta zsq = -1, with the truncation/extrapolation uncertainty folded into
// the result's error bound.
inline Real eval_series(const SeriesSpec& spec, int digits)
{
    if (spec.levels.empty())
        throw std::invalid_argument("eval_series: empty spec");
    for (const auto& lv : spec.levels)
        if (lv.s < 1)
            throw std::invalid_argument("eval_series: exponents must be >= 1");

    const int d = spec.depth();
    mpfr_prec_t prec = bits_for_digits(digits + 15);
    const double eps = std::pow(10.0, -(digits + 3));

    Rational rho = Rational(spec.levels[0].sign) * spec.zsq;
    double rho_d = std::fabs(rho.get_d());
    double alpha = detail::top_exponent(spec.top) - spec.levels[0].s;
    bool log_growth = false;
    for (int j = 1; j < d; ++j)
        if (spec.levels[j].s == 1 && spec.levels[j].sign == 1)
            log_growth = true;

    if (rho_d > 1.0 + 1e-15)
        throw SeriesDivergence(1, "eval_series: outer terms grow geometrically");
    if (rho == 1 && alpha >= -1.0)
        throw SeriesDivergence(1, "eval_series: non-summable algebraic decay");
    if (rho == -1 && alpha >= 0.0)
        throw SeriesDivergence(1, "eval_series: alternating terms do not tend to zero");

    if (rho != 1 && rho != -1) {
        detail::SeriesStream st(spec, prec);
        Real acc(0, prec);
        long small_streak = 0;
        for (long iter = 0; iter < 4000000; ++iter) {
            Real t = st.next_term();
            acc += t;
            double ta = t.abs_double();
            long m = st.current_index();
            double q_bound = rho_d * std::pow(1.0 + 1.0 / (2.0 * m), std::fabs(alpha) + 1.0);
            if (log_growth)
                q_bound *= std::log(m + 2.0) / std::log(m + 1.0);
            if (q_bound < 1.0 && ta / (1.0 - q_bound) * q_bound < eps * 0.5) {
                if (++small_streak >= 3) {
                    acc.widen_err(ta / (1.0 - q_bound) * q_bound + eps * 0.5);
                    return acc;
                }
            } else {
                small_streak = 0;
            }
        }
        throw std::runtime_error("eval_series: geometric mode failed to converge");
    }

    if (rho == 1) {
        detail::SeriesStream st(spec, prec);
        RichardsonOptions opt;
        opt.half_powers = true;
        opt.with_log = log_growth;
        opt.order = std::min(11, 5 + digits / 4);
        opt.n0 = 48 + 8L * d;
        auto term = [&st](long) { return st.next_term(); };
        return richardson_limit(term, prec, opt, st.first_outer());
    }

    // rho == -1
    bool inner_alternates = false;
    for (int j = 1; j < d; ++j)
        if (spec.levels[j].sign < 0)
            inner_alternates = true;

    if (inner_alternates) {
        // inner oscillation spoils the smooth alternating envelope; pair
        // consecutive outer terms and extrapolate the smooth paired stream
        detail::SeriesStream st(spec, prec);
        RichardsonOptions opt;
        opt.half_powers = (spec.top != TopFactor::One);
        opt.with_log = log_growth;
        opt.order = std::min(11, 5 + digits / 4);
        opt.n0 = 48 + 8L * d;
        auto paired = [&st](long) {
            Real a = st.next_term();
            Real b = st.next_term();
            return a + b;
        };
        return richardson_limit(paired, prec, opt, 1);
    }

    detail::SeriesStream st(spec, prec);
    std::vector<Real> terms;
    auto fetch = [&](long k) -> const Real& {
        while (static_cast<long>(terms.size()) <= k)
            terms.push_back(st.next_term());
        return terms[static_cast<std::size_t>(k)];
    };
    int lead_sign = fetch(0).sign() >= 0 ? 1 : -1;
    auto c = [&](long k) -> Real {
        Real t = fetch(k);
        int expect = (k % 2 == 0) ? lead_sign : -lead_sign;
        if (t.sign() != 0 && t.sign() != expect)
            throw std::runtime_error("eval_series: terms are not strictly alternating");
        return expect < 0 ? -t : t;
    };
    Real s = alternating_sum(c, prec, digits);
    return lead_sign < 0 ? -s : s;
}

// ---------------------------------------------------------------------------
// Generalized (non-alternating) Euler sums S_{p,q} = sum H_n^{(p1)}...H_n^{(pr)}/n^q,
// reduced exactly to MZVs through the quasi-shuffle algebra and evaluated by
// the colored-MZV engine.
// ---------------------------------------------------------------------------

inline Real eval_euler_sum(const std::vector<int>& p, int q, int digits)
{
    if (q < 2)
        throw std::invalid_argument("eval_euler_sum: q must be >= 2");
    mpfr_prec_t prec = bits_for_digits(digits + 10);

    CompSum expanded(Composition{}, Rational(1));
    for (int pi : p)
        expanded = stuffle(expanded, CompSum(Composition{pi}));

    Complex acc(0, prec);
    for (const auto& [k, coef] : expanded.terms()) {
        // sum_n zeta_n(k)/n^q = zeta(q, k) + zeta(q + k1, rest); empty k -> zeta(q)
        if (k.parts.empty()) {
            acc += Real(coef, prec) * Complex(zeta_int(q, prec), Real(0, prec));
            continue;
        }
        Composition with_q;
        with_q.parts.push_back({q, 0});
        for (const auto& part : k.parts)
            with_q.parts.push_back(part);
        Composition merged;
        merged.parts.push_back({q + k.parts[0].k, 0});
        for (std::size_t i = 1; i < k.parts.size(); ++i)
            merged.parts.push_back(k.parts[i]);
        acc += Real(coef, prec) * (eval_cmzv(with_q, digits) + eval_cmzv(merged, digits));
    }
    return acc.re;
}

} // namespace cmzv
