#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cmzv/composition.hpp"
#include "cmzv/hyperlog.hpp"
#include "cmzv/precision.hpp"

namespace cmzv {

// A 1-form f(t) dt on the integration path. Pointwise multipliers always merge
// into the next inner form's integrand, so evaluation only sees plain forms.
struct OneForm {
    std::string name;
    std::function<Real(const Real&)> f;
};

inline OneForm make_form(std::string name, std::function<Real(const Real&)> f)
{
    return OneForm{std::move(name), std::move(f)};
}

inline OneForm operator*(const OneForm& a, const std::function<Real(const Real&)>& g)
{
    auto af = a.f;
    return OneForm{a.name + "*g", [af, g](const Real& t) { return af(t) * g(t); }};
}

// Catalog of the named forms used by the trigonometric / algebraic iterations.
namespace forms {

inline OneForm one() { return make_form("dt", [](const Real& t) { return Real(1, t.prec()); }); }
inline OneForm w0() { return make_form("w0", [](const Real& t) { return Real(1, t.prec()) / t; }); }
inline OneForm tan_dt() { return make_form("tan", [](const Real& t) { return tan(t); }); }
inline OneForm cot_dt()
{
    return make_form("cot", [](const Real& t) { return cos(t) / sin(t); });
}
inline OneForm csc_dt()
{
    return make_form("csc", [](const Real& t) { return Real(1, t.prec()) / sin(t); });
}

inline Real one_mp_t2(const Real& t, bool minus)
{
    Real t2 = t * t;
    return minus ? Real(1, t.prec()) + t2 : Real(1, t.prec()) - t2;
}

inline OneForm w1(bool minus = false)
{
    return make_form(minus ? "wm1" : "w1",
                     [minus](const Real& t) { return Real(1, t.prec()) / sqrt(one_mp_t2(t, minus)); });
}
inline OneForm w2(bool minus = false)
{
    return make_form(minus ? "wm2" : "w2",
                     [minus](const Real& t) { return t / one_mp_t2(t, minus); });
}
inline OneForm w3(bool minus = false)
{
    return make_form(minus ? "wm3" : "w3",
                     [minus](const Real& t) { return Real(1, t.prec()) / (t * sqrt(one_mp_t2(t, minus))); });
}
inline OneForm w20(bool minus = false)
{
    return make_form(minus ? "wm20" : "w20",
                     [minus](const Real& t) { return Real(1, t.prec()) / (t * one_mp_t2(t, minus)); });
}

inline OneForm th_dt()
{
    return make_form("th", [](const Real& t) { return sinh(t) / cosh(t); });
}
inline OneForm cth_dt()
{
    return make_form("cth", [](const Real& t) { return cosh(t) / sinh(t); });
}
inline OneForm csch_dt()
{
    return make_form("csch", [](const Real& t) { return Real(1, t.prec()) / sinh(t); });
}

// central-binomial weights a_n(t), b_n(t) (sign = -1 gives the alternating ones)
inline Real a_weight(long n, const Real& t, int sign = 1)
{
    Real w(1, t.prec());
    Real t2 = t * t;
    for (long k = 1; k <= n; ++k)
        w = w * t2 * (2 * k - 1) / (2 * k);
    return (sign < 0 && (n & 1)) ? -w : w;
}

inline Real b_weight(long n, const Real& t, int sign = 1)
{
    Real w(1, t.prec());
    Real t2 = t * t;
    for (long k = 1; k <= n; ++k)
        w = w * t2 * (2 * k) / (2 * k - 1);
    return (sign < 0 && (n & 1)) ? -w : w;
}

} // namespace forms

namespace detail {

// Cached cos(pi (2k+1) j / (2N)) tables for the Chebyshev transform.
inline const std::vector<std::vector<Real>>& cheb_cos_table(int N, mpfr_prec_t prec)
{
    static std::map<std::pair<int, mpfr_prec_t>, std::vector<std::vector<Real>>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(N, prec);
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    Real pi = const_pi(prec);
    std::vector<std::vector<Real>> tbl(N);
    for (int j = 0; j < N; ++j) {
        tbl[j].reserve(N);
        for (int k = 0; k < N; ++k)
            tbl[j].push_back(cos((Real(j, prec) * (2 * k + 1) * pi) / (2 * N)));
    }
    return cache.emplace(key, std::move(tbl)).first->second;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Piecewise Chebyshev antiderivative F(x) = int_a^x g(t) dt with adaptive
// dyadic grading toward endpoints where g blows up (integrable singularities
// with exponent > -1 only; the dropped endpoint sliver is folded into err).
// ---------------------------------------------------------------------------

class Cumulative {
public:
    enum class Anchor { Left, Right };

    Cumulative(const std::function<Real(const Real&)>& g, const Real& a, const Real& b,
               mpfr_prec_t prec, double eps, Anchor anchor = Anchor::Left)
        : prec_(prec), anchor_(anchor)
    {
        build(g, a, b, eps);
    }

    Real operator()(const Real& x) const
    {
        // clamp into the covered range; dropped endpoint slivers live in err_
        if (cmp(x, pieces_.front().lo) <= 0)
            return pieces_.front().base;
        if (cmp(x, pieces_.back().hi) >= 0)
            return pieces_.back().base + eval_piece(pieces_.back(), pieces_.back().hi);
        for (std::size_t i = 0; i < pieces_.size(); ++i)
            if (cmp(x, pieces_[i].hi) <= 0 || i + 1 == pieces_.size())
                return pieces_[i].base + eval_piece(pieces_[i], x);
        return Real(0, prec_);
    }

    Real total() const { return total_; }
    double err() const { return err_; }

private:
    static constexpr int kNodes = 48;

    struct Piece {
        Real lo, hi;
        std::vector<Real> acoef;
        Real base;
    };

    // how far |g| grows approaching the endpoint; > 0 means singular
    static double growth_probe(const std::function<Real(const Real&)>& g, const Real& pt,
                               const Real& len, int dir, mpfr_prec_t prec)
    {
        Real d1 = len / 64;
        Real d2 = len / 1024;
        Real x1 = dir > 0 ? pt + d1 : pt - d1;
        Real x2 = dir > 0 ? pt + d2 : pt - d2;
        double g1 = g(x1).abs_double();
        double g2 = g(x2).abs_double();
        if (g2 <= g1 * 1.5 + 1e-300)
            return 0.0; // bounded at this endpoint
        return std::log(g2 / g1) / std::log(64.0 / 1024.0); // exponent alpha (< 0)
    }

    // sliver bound for a graded endpoint; log-divergent values at the far
    // (non-anchor) endpoint only shift clamped evaluations, handled by the
    // caller's own grading, so a coarse log-weighted bound suffices there.
    double sliver_estimate(double gmid, double h, double alpha) const
    {
        if (alpha > -0.97)
            return gmid * h * 2.0 / (1.0 + alpha);
        return gmid * h * 4.0 * std::max(1.0, std::log(1.0 / h));
    }

    void build(const std::function<Real(const Real&)>& g, const Real& a, const Real& b,
               double eps)
    {
        Real len = b - a;
        double alpha_l = growth_probe(g, a, len, +1, prec_);
        double alpha_r = growth_probe(g, b, len, -1, prec_);
        double alpha_anchor = anchor_ == Anchor::Left ? alpha_l : alpha_r;
        double alpha_far = anchor_ == Anchor::Left ? alpha_r : alpha_l;
        if (alpha_anchor <= -0.97)
            throw std::domain_error("Cumulative: singularity at the anchor endpoint is not integrable");
        if (alpha_far <= -1.25)
            throw std::domain_error("Cumulative: far-endpoint singularity too strong");

        // graded cut generation toward one endpoint; integrable-singular anchor
        // sides terminate on the sliver bound, log-divergent far sides grade to
        // a fixed depth (their clamp zone is only reachable through the outer
        // level's own dropped sliver).
        auto grade_side = [&](double alpha, bool is_anchor_side, int dir,
                              std::vector<Real>& out_cuts) {
            int fixed_depth = static_cast<int>(std::log2(1.0 / eps)) + 10;
            for (int k = 3; k <= 400; ++k) {
                Real h = len / pow_int(Real(2, prec_), k);
                Real edge = dir > 0 ? a + h : b - h;
                out_cuts.push_back(edge);
                if (alpha > -0.97) {
                    Real mid = dir > 0 ? a + h / 2 : b - h / 2;
                    double sliver = sliver_estimate(g(mid).abs_double(), h.abs_double(), alpha);
                    if (sliver < eps / 8 || k == 400) {
                        err_ += sliver;
                        break;
                    }
                } else if (k >= fixed_depth) {
                    (void)is_anchor_side;
                    break;
                }
            }
        };

        std::vector<Real> cuts;
        bool closed_left = !(alpha_l < 0.0);
        bool closed_right = !(alpha_r < 0.0);
        if (closed_left)
            cuts.push_back(a);
        else {
            std::vector<Real> left;
            grade_side(alpha_l, anchor_ == Anchor::Left, +1, left);
            for (auto it = left.rbegin(); it != left.rend(); ++it)
                cuts.push_back(*it);
        }
        cuts.push_back(a + len / 4);
        cuts.push_back(a + len / 2);
        cuts.push_back(b - len / 4);
        if (closed_right)
            cuts.push_back(b);
        else
            grade_side(alpha_r, anchor_ == Anchor::Right, -1, cuts);

        std::sort(cuts.begin(), cuts.end(), [](const Real& x, const Real& y) { return x < y; });

        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            if (!(cuts[i] < cuts[i + 1]))
                continue;
            Piece p;
            p.lo = cuts[i];
            p.hi = cuts[i + 1];
            p.base = Real(0, prec_);
            fit_piece(g, p);
            pieces_.push_back(std::move(p));
        }
        if (pieces_.empty())
            throw std::runtime_error("Cumulative: empty piece list");

        // chain offsets from the anchor
        std::vector<Real> I;
        I.reserve(pieces_.size());
        for (auto& p : pieces_)
            I.push_back(eval_piece(p, p.hi));
        total_ = Real(0, prec_);
        for (const auto& v : I)
            total_ += v;
        if (anchor_ == Anchor::Left) {
            Real offset(0, prec_);
            for (std::size_t i = 0; i < pieces_.size(); ++i) {
                pieces_[i].base = offset;
                offset += I[i];
            }
        } else {
            // F(x) = int_b^x g : base_i = -(sum of piece integrals from i on)
            Real suffix(0, prec_);
            for (std::size_t i = pieces_.size(); i-- > 0;) {
                suffix += I[i];
                pieces_[i].base = -suffix;
            }
        }
        total_.widen_err(err_);
    }

    void fit_piece(const std::function<Real(const Real&)>& g, Piece& p)
    {
        const int N = kNodes;
        const auto& tbl = detail::cheb_cos_table(N, prec_);
        Real half = (p.hi - p.lo) / 2;
        Real mid = (p.hi + p.lo) / 2;
        // nodes are cos((2k+1) pi / (2N)) = tbl[1][k]
        std::vector<Real> vals;
        vals.reserve(N);
        for (int k = 0; k < N; ++k)
            vals.push_back(g(mid + half * tbl[1][k]));
        std::vector<Real> c(N, Real(0, prec_));
        for (int j = 0; j < N; ++j) {
            Real acc(0, prec_);
            for (int k = 0; k < N; ++k)
                acc += vals[k] * tbl[j][k];
            c[j] = (2 * acc) / N;
        }
        c[0] = c[0] / 2;
        double tail = 0.0;
        for (int j = N - 6; j < N; ++j)
            tail += c[j].abs_double();
        err_ += tail * half.abs_double() * 2.0;

        p.acoef.assign(N + 1, Real(0, prec_));
        p.acoef[1] = c[0] - c[2] / 2;
        for (int j = 2; j <= N; ++j) {
            Real next = (j + 1 < N) ? c[j + 1] : Real(0, prec_);
            Real prev = (j - 1 < N) ? c[j - 1] : Real(0, prec_);
            p.acoef[j] = (prev - next) / (2 * j);
        }
        for (auto& A : p.acoef)
            A = A * half;
    }

    Real eval_piece(const Piece& p, const Real& x) const
    {
        Real t = (2 * x - (p.lo + p.hi)) / (p.hi - p.lo);
        auto clen = [&](const Real& tt) {
            Real b1(0, prec_), b2(0, prec_);
            for (std::size_t j = p.acoef.size(); j-- > 1;) {
                Real nb = 2 * tt * b1 - b2 + p.acoef[j];
                b2 = b1;
                b1 = nb;
            }
            return tt * b1 - b2;
        };
        Real minus_one(-1, prec_);
        return clen(t) - clen(minus_one);
    }

    mpfr_prec_t prec_;
    Anchor anchor_ = Anchor::Left;
    std::vector<Piece> pieces_;
    Real total_{};
    double err_ = 0.0;
};

// ---------------------------------------------------------------------------
// Iterated integral of a chain of forms over [a, b], innermost last. With
// reverse = true the path is traversed from b to a at every level.
// ---------------------------------------------------------------------------

struct FormWord {
    std::vector<OneForm> chain; // outermost first
    Real a, b;
};

inline Real eval_form_integral(const FormWord& fw, int digits, bool reverse = false)
{
    mpfr_prec_t prec = bits_for_digits(digits + 12);
    double eps = std::pow(10.0, -(digits + 3));
    if (!(fw.a < fw.b))
        throw std::invalid_argument("eval_form_integral: path must have a < b");

    auto anchor = reverse ? Cumulative::Anchor::Right : Cumulative::Anchor::Left;
    std::shared_ptr<Cumulative> inner;
    double acc_err = 0.0;
    for (std::size_t idx = fw.chain.size(); idx-- > 0;) {
        const auto& form = fw.chain[idx];
        std::function<Real(const Real&)> g;
        if (!inner) {
            g = form.f;
        } else {
            auto in = inner;
            auto ff = form.f;
            g = [in, ff](const Real& t) { return ff(t) * (*in)(t); };
        }
        inner = std::make_shared<Cumulative>(g, fw.a, fw.b, prec, eps, anchor);
        acc_err += inner->err();
    }
    Real out = reverse ? (*inner)(fw.a) : inner->total();
    out.widen_err(acc_err);
    return out;
}

inline Real eval_form_integral(std::vector<OneForm> chain, const Real& a, const Real& b,
                               int digits)
{
    return eval_form_integral(FormWord{std::move(chain), a, b}, digits);
}

// ---------------------------------------------------------------------------
// Path composition of a symbolic word at a split point: the formal sum of
// (prefix over the upper segment) x (suffix over the lower segment).
// ---------------------------------------------------------------------------

struct PathSplit {
    std::vector<std::pair<Word, Word>> terms; // (prefix, suffix), prefix over [s,1]
    Rational split;
};

inline PathSplit path_compose(const Word& w, const Rational& split)
{
    if (!(split > 0 && split < 1))
        throw std::invalid_argument("path_compose: split must lie in (0,1)");
    PathSplit out;
    out.split = split;
    const int r = w.weight();
    for (int j = 0; j <= r; ++j) {
        Word prefix(std::vector<Letter>(w.letters.begin(), w.letters.begin() + j), w.level);
        Word suffix(std::vector<Letter>(w.letters.begin() + j, w.letters.end()), w.level);
        out.terms.emplace_back(std::move(prefix), std::move(suffix));
    }
    return out;
}

// Numeric recombination of a path split: prefix integrals over [s, 1] are
// mapped through t -> 1-t onto [0, 1-s] and evaluated as series, suffixes
// directly at s. Equals the unsplit integral for convergent words.
inline Complex eval_path_split(const PathSplit& ps, int digits)
{
    mpfr_prec_t prec = bits_for_digits(digits + 10);
    double eps = std::pow(10.0, -(digits + 4));
    Real s(ps.split, prec);
    Real one_minus_s(Rational(1) - ps.split, prec);
    Complex total(0, prec);
    for (const auto& [prefix, suffix] : ps.terms) {
        Complex U(1, prec), L(1, prec);
        if (!prefix.empty()) {
            auto [t, sign] = detail::transform_reverse(numeric_word(prefix, prec), prec);
            U = eval_layered(layers_for(t, one_minus_s, prec), prec, eps);
            if (sign < 0)
                U = -U;
        }
        if (!suffix.empty())
            L = eval_layered(layers_for(numeric_word(suffix, prec), s, prec), prec, eps);
        total += U * L;
    }
    return total;
}

} // namespace cmzv
