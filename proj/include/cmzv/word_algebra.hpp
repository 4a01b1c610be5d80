#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmzv/composition.hpp"
#include "cmzv/formal_sum.hpp"

namespace cmzv {

using WordSum = FormalSum<Word>;
using CompSum = FormalSum<Composition>;
using CompPoly = TPolynomial<Composition>;

// ---------------------------------------------------------------------------
// Shuffle product of words (order-preserving interleavings with multiplicity).
// ---------------------------------------------------------------------------

inline WordSum shuffle(const Word& u, const Word& v)
{
    if (u.level != v.level)
        throw std::invalid_argument("shuffle: level mismatch");
    const int level = u.level;
    std::map<std::pair<std::vector<Letter>, std::vector<Letter>>, WordSum> memo;

    auto rec = [&](auto&& self, const std::vector<Letter>& a,
                   const std::vector<Letter>& b) -> WordSum {
        if (a.empty())
            return WordSum(Word(b, level));
        if (b.empty())
            return WordSum(Word(a, level));
        auto key = std::make_pair(a, b);
        auto it = memo.find(key);
        if (it != memo.end())
            return it->second;
        WordSum out;
        std::vector<Letter> a1(a.begin() + 1, a.end());
        WordSum left = self(self, a1, b);
        for (const auto& [w, c] : left.terms()) {
            std::vector<Letter> ls{a.front()};
            ls.insert(ls.end(), w.letters.begin(), w.letters.end());
            out.add(Word(ls, level), c);
        }
        std::vector<Letter> b1(b.begin() + 1, b.end());
        WordSum right = self(self, a, b1);
        for (const auto& [w, c] : right.terms()) {
            std::vector<Letter> ls{b.front()};
            ls.insert(ls.end(), w.letters.begin(), w.letters.end());
            out.add(Word(ls, level), c);
        }
        memo.emplace(key, out);
        return out;
    };
    return rec(rec, u.letters, v.letters);
}

inline WordSum shuffle(const WordSum& a, const WordSum& b)
{
    WordSum out;
    for (const auto& [u, cu] : a.terms())
        for (const auto& [v, cv] : b.terms()) {
            WordSum s = shuffle(u, v);
            s *= cu * cv;
            out += s;
        }
    return out;
}

// ---------------------------------------------------------------------------
// Stuffle (quasi-shuffle) product of compositions: interleavings plus merge
// terms in which exponents add and colors multiply.
// ---------------------------------------------------------------------------

inline CompSum stuffle(const Composition& a, const Composition& b)
{
    if (a.level != b.level)
        throw std::invalid_argument("stuffle: level mismatch");
    const int level = a.level;

    auto rec = [&](auto&& self, const std::vector<IndexPart>& x,
                   const std::vector<IndexPart>& y) -> CompSum {
        if (x.empty())
            return CompSum(Composition(std::vector<IndexPart>(y), level));
        if (y.empty())
            return CompSum(Composition(std::vector<IndexPart>(x), level));
        CompSum out;
        std::vector<IndexPart> x1(x.begin() + 1, x.end());
        std::vector<IndexPart> y1(y.begin() + 1, y.end());
        auto prefixed = [&](const IndexPart& head, const CompSum& tail) {
            CompSum r;
            for (const auto& [c, q] : tail.terms()) {
                std::vector<IndexPart> parts{head};
                parts.insert(parts.end(), c.parts.begin(), c.parts.end());
                r.add(Composition(std::move(parts), level), q);
            }
            return r;
        };
        out += prefixed(x.front(), self(self, x1, y));
        out += prefixed(y.front(), self(self, x, y1));
        IndexPart merged{x.front().k + y.front().k,
                         mod_level(x.front().color + y.front().color, level)};
        out += prefixed(merged, self(self, x1, y1));
        return out;
    };
    return rec(rec, a.parts, b.parts);
}

inline CompSum stuffle(const CompSum& a, const CompSum& b)
{
    CompSum out;
    for (const auto& [u, cu] : a.terms())
        for (const auto& [v, cv] : b.terms()) {
            CompSum s = stuffle(u, v);
            s *= cu * cv;
            out += s;
        }
    return out;
}

// ---------------------------------------------------------------------------
// Regularization: express a (possibly divergent) symbol as a polynomial in T
// whose coefficients are sums of admissible symbols. Leading 1-parts (resp.
// leading x_1 letters) are peeled triangularly.
// ---------------------------------------------------------------------------

namespace detail {

inline int leading_ones(const Composition& c)
{
    int n = 0;
    for (const auto& p : c.parts) {
        if (p.k == 1 && p.color % c.level == 0)
            ++n;
        else
            break;
    }
    return n;
}

inline int leading_x1(const Word& w)
{
    int n = 0;
    for (const auto& l : w.letters) {
        if (!l.is_zero && l.root % w.level == 0)
            ++n;
        else
            break;
    }
    return n;
}

} // namespace detail

inline CompPoly stuffle_regularize(const Composition& c)
{
    if (!c.is_level_one())
        throw std::invalid_argument("stuffle_regularize: only level-1 input supported");
    static std::map<Composition, CompPoly> memo;
    auto it = memo.find(c);
    if (it != memo.end())
        return it->second;

    CompPoly result;
    int ell = detail::leading_ones(c);
    if (ell == 0 || c.parts.empty()) {
        result = CompPoly(CompSum(c));
    } else {
        Composition one({1});
        Composition rest(std::vector<IndexPart>(c.parts.begin() + 1, c.parts.end()), 1);
        CompSum prod = stuffle(one, rest);
        prod.add(c, -Rational(ell)); // remaining terms have fewer leading ones
        CompPoly acc;
        // T * reg(rest)
        CompPoly reg_rest = stuffle_regularize(rest);
        for (int j = 0; j <= reg_rest.degree(); ++j)
            acc.at(j + 1) += reg_rest.coeff(j);
        for (const auto& [sym, q] : prod.terms()) {
            CompPoly sub = stuffle_regularize(sym);
            sub *= q;
            acc -= sub;
        }
        acc *= Rational(1, ell);
        acc.normalize();
        result = acc;
    }
    memo.emplace(c, result);
    return result;
}

inline TPolynomial<Word> shuffle_regularize_word(const Word& w)
{
    if (w.level != 1)
        throw std::invalid_argument("shuffle_regularize: only level-1 input supported");
    if (!w.convergent_at_zero())
        throw std::invalid_argument("shuffle_regularize: word must not end in dt/t");
    static std::map<Word, TPolynomial<Word>> memo;
    auto it = memo.find(w);
    if (it != memo.end())
        return it->second;

    TPolynomial<Word> result;
    int ell = detail::leading_x1(w);
    if (ell == 0 || w.empty()) {
        result = TPolynomial<Word>(WordSum(w));
    } else {
        Word one(std::vector<Letter>{Letter{false, 0}}, 1);
        Word rest(std::vector<Letter>(w.letters.begin() + 1, w.letters.end()), 1);
        WordSum prod = shuffle(one, rest);
        prod.add(w, -Rational(ell));
        TPolynomial<Word> acc;
        TPolynomial<Word> reg_rest = shuffle_regularize_word(rest);
        for (int j = 0; j <= reg_rest.degree(); ++j)
            acc.at(j + 1) += reg_rest.coeff(j);
        for (const auto& [sym, q] : prod.terms()) {
            TPolynomial<Word> sub = shuffle_regularize_word(sym);
            sub *= q;
            acc -= sub;
        }
        acc *= Rational(1, ell);
        acc.normalize();
        result = acc;
    }
    memo.emplace(w, result);
    return result;
}

inline CompPoly words_to_comps(const TPolynomial<Word>& p)
{
    CompPoly out;
    for (int j = 0; j <= p.degree(); ++j)
        for (const auto& [w, c] : p.coeff(j).terms())
            out.at(j).add(word_to_comp(w), c);
    out.normalize();
    return out;
}

inline CompPoly shuffle_regularize(const Word& w)
{
    return words_to_comps(shuffle_regularize_word(w));
}

inline CompPoly shuffle_regularize(const Composition& c)
{
    return shuffle_regularize(comp_to_word(c));
}

inline CompSum renormalize(const CompPoly& p)
{
    return p.renormalized();
}

// ---------------------------------------------------------------------------
// The rho map intertwining the two regularizations: rho(exp(Tu)) =
// exp(sum_{n>=2} (-1)^n zeta(n) u^n / n) exp(Tu). Products of zeta values are
// expanded back into the composition algebra with the stuffle product.
// ---------------------------------------------------------------------------

namespace detail {

// Coefficients a_m of A(u) = exp(sum_{n>=2} (-1)^n (n)/n * u^n), as stuffle
// expansions; a' = g' a gives m*a_m = sum_j j*g_j stuffle a_{m-j}.
inline const std::vector<CompSum>& rho_series(int m_max)
{
    static std::vector<CompSum> a{CompSum(Composition{}, Rational(1))};
    while (static_cast<int>(a.size()) <= m_max) {
        int m = static_cast<int>(a.size());
        CompSum acc;
        for (int j = 2; j <= m; ++j) {
            Rational gj = Rational((j % 2 == 0) ? 1 : -1, j);
            CompSum term = stuffle(CompSum(Composition{j}, gj), a[m - j]);
            term *= Rational(j);
            acc += term;
        }
        acc *= Rational(1, m);
        a.push_back(std::move(acc));
    }
    return a;
}

} // namespace detail

// rho(T^k) = sum_{j<=k} (k!/j!) a_{k-j} T^j, extended linearly with stuffle
// multiplication against the polynomial's coefficients.
inline CompPoly rho_map(const CompPoly& p)
{
    const auto& a = detail::rho_series(p.degree());
    CompPoly out;
    for (int k = 0; k <= p.degree(); ++k) {
        if (p.coeff(k).is_zero())
            continue;
        for (int j = 0; j <= k; ++j) {
            Rational f = Rational(factorial(k)) / Rational(factorial(j));
            CompSum term = stuffle(p.coeff(k), a[k - j]);
            term *= f;
            out.at(j) += term;
        }
    }
    out.normalize();
    return out;
}

// ---------------------------------------------------------------------------
// Double-shuffle relation mining.
// ---------------------------------------------------------------------------

struct Relation {
    int weight = 0;
    CompSum sum;
    std::string source; // "finite-dbsf" or "regularized-dbsf"
};

namespace detail {

// Exact reduced row echelon form per weight; rows normalized to coprime
// integers with positive leading coefficient. Each surviving row keeps the
// source tag of the raw row that created its pivot.
inline std::vector<std::pair<CompSum, std::string>>
row_reduce(std::vector<std::pair<CompSum, std::string>> rows)
{
    std::vector<std::pair<CompSum, std::string>> basis;
    for (auto& [row, src] : rows) {
        for (const auto& [b, bsrc] : basis) {
            if (row.is_zero())
                break;
            const auto& pivot = b.terms().begin()->first;
            Rational c = row.coeff(pivot);
            if (c != 0) {
                CompSum t = b;
                t *= -c; // basis rows are monic in their pivot
                row += t;
            }
        }
        if (row.is_zero())
            continue;
        Rational lead = row.terms().begin()->second;
        row *= Rational(1) / lead;
        basis.emplace_back(std::move(row), src);
    }
    // back-substitution for full rref
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j || basis[j].first.is_zero())
                continue;
            const auto& pivot = basis[i].first.terms().begin()->first;
            Rational c = basis[j].first.coeff(pivot);
            if (c != 0) {
                CompSum t = basis[i].first;
                t *= -c;
                basis[j].first += t;
            }
        }
    }
    // integer-normalize
    for (auto& [b, src] : basis) {
        Integer lcm(1);
        for (const auto& [s, c] : b.terms())
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
        b *= Rational(lcm);
        Integer gcd(0);
        for (const auto& [s, c] : b.terms())
            mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), c.get_num_mpz_t());
        if (gcd > 1)
            b *= Rational(1, 1) / Rational(gcd);
        if (b.terms().begin()->second < 0)
            b *= Rational(-1);
    }
    return basis;
}

} // namespace detail

// All double-shuffle relations among admissible level-1 MZVs up to max_weight.
// Three relation families are mined and then deduplicated by exact row
// reduction per weight:
//   (1) finite DBSF: stuffle minus shuffle expansions of admissible pairs;
//   (2) per-symbol extended DBSF: rho(reg_*(w)) - reg_sha(w), T-coefficientwise
//       (the coefficient of T^j is a relation of weight |w| - j);
//   (3) regularized pairs: reg_sha applied to (stuffle - shuffle) expansions
//       of pairs with a divergent member, T-coefficientwise.
inline std::vector<Relation> generate_dbsf(int max_weight)
{
    if (max_weight < 3 || max_weight > 8)
        throw std::invalid_argument("generate_dbsf: max_weight must be in [3, 8]");

    std::map<int, std::vector<std::pair<CompSum, std::string>>> raw_by_weight;

    auto file_poly = [&](const CompPoly& d, int total_weight, const char* src) {
        for (int k = 0; k <= d.degree(); ++k)
            if (!d.coeff(k).is_zero())
                raw_by_weight[total_weight - k].emplace_back(d.coeff(k), src);
    };

    // family (2)
    for (int w = 2; w <= max_weight; ++w)
        for (const auto& c : compositions_of_weight(w)) {
            if (c.admissible())
                continue;
            CompPoly d = rho_map(stuffle_regularize(c)) - shuffle_regularize(c);
            file_poly(d, w, "regularized-dbsf");
        }

    // families (1) and (3)
    std::vector<Composition> all;
    for (int w = 1; w < max_weight; ++w)
        for (auto& c : compositions_of_weight(w))
            all.push_back(std::move(c));

    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i; j < all.size(); ++j) {
            const Composition& a = all[i];
            const Composition& b = all[j];
            int w = a.weight() + b.weight();
            if (w > max_weight)
                continue;
            if (a.admissible() && b.admissible()) {
                CompSum rel = stuffle(a, b);
                WordSum sh = shuffle(comp_to_word(a), comp_to_word(b));
                for (const auto& [word, c] : sh.terms())
                    rel.add(word_to_comp(word), -c);
                if (!rel.is_zero())
                    raw_by_weight[w].emplace_back(std::move(rel), "finite-dbsf");
            } else if (a.admissible() || b.admissible()) {
                // one divergent member: regularize the difference of expansions
                TPolynomial<Word> qw;
                CompSum st = stuffle(a, b);
                for (const auto& [sym, c] : st.terms()) {
                    TPolynomial<Word> t = shuffle_regularize_word(comp_to_word(sym));
                    t *= c;
                    qw += t;
                }
                WordSum sh = shuffle(comp_to_word(a), comp_to_word(b));
                for (const auto& [word, c] : sh.terms()) {
                    TPolynomial<Word> t = shuffle_regularize_word(word);
                    t *= -c;
                    qw += t;
                }
                file_poly(words_to_comps(qw), w, "regularized-dbsf");
            }
        }
    }

    std::vector<Relation> out;
    for (auto& [w, rows] : raw_by_weight) {
        // finite rows claim pivots first so surviving rows carry honest tags
        std::stable_sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
            return x.second < y.second; // "finite-dbsf" < "regularized-dbsf"
        });
        for (auto& [r, src] : detail::row_reduce(std::move(rows)))
            out.push_back(Relation{w, std::move(r), src});
    }
    return out;
}

} // namespace cmzv
