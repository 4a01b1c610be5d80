#pragma once

#include <algorithm>
#include <compare>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmzv {

// One index entry: exponent k >= 1 and a color eta = exp(2*pi*i*color/level).
struct IndexPart {
    int k = 1;
    int color = 0; // residue mod level; 0 means eta = 1

    auto operator<=>(const IndexPart&) const = default;
};

// A (colored) composition (k_1, eta_1), ..., (k_d, eta_d) at a fixed level N.
struct Composition {
    std::vector<IndexPart> parts;
    int level = 1;

    Composition() = default;
    Composition(std::initializer_list<int> ks)
    {
        for (int k : ks)
            parts.push_back({k, 0});
    }
    Composition(std::vector<IndexPart> p, int lvl) : parts(std::move(p)), level(lvl) {}

    int depth() const { return static_cast<int>(parts.size()); }
    int weight() const
    {
        int w = 0;
        for (const auto& p : parts)
            w += p.k;
        return w;
    }
    bool admissible() const
    {
        return !parts.empty() && !(parts.front().k == 1 && parts.front().color % level == 0);
    }
    bool is_level_one() const
    {
        for (const auto& p : parts)
            if (p.color % level != 0)
                return false;
        return true;
    }

    auto operator<=>(const Composition&) const = default;

    std::string str() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i)
                s += ",";
            s += std::to_string(parts[i].k);
            if (parts[i].color % level != 0)
                s += "[" + std::to_string(parts[i].color) + "/" + std::to_string(level) + "]";
        }
        return s + ")";
    }
};

// Letter of an iterated-integral word: x_sigma with sigma in {0} union mu_N.
// sigma == 0 is encoded by is_zero; otherwise sigma = exp(2*pi*i*root/level).
struct Letter {
    bool is_zero = true;
    int root = 0;

    auto operator<=>(const Letter&) const = default;
};

struct Word {
    std::vector<Letter> letters;
    int level = 1;

    Word() = default;
    Word(std::vector<Letter> ls, int lvl) : letters(std::move(ls)), level(lvl) {}

    int weight() const { return static_cast<int>(letters.size()); }
    bool empty() const { return letters.empty(); }

    // Integral from 0: innermost letter is the last one; it must not be dt/t.
    bool convergent_at_zero() const { return letters.empty() || !letters.back().is_zero; }
    // Integral up to 1: the outermost letter must not be the pole at 1.
    bool convergent_at_one() const
    {
        if (letters.empty())
            return true;
        const Letter& f = letters.front();
        return f.is_zero || f.root % level != 0;
    }

    auto operator<=>(const Word&) const = default;

    std::string str() const
    {
        std::string s;
        for (const auto& l : letters) {
            if (l.is_zero)
                s += "x0 ";
            else if (l.root % level == 0)
                s += "x1 ";
            else
                s += "x[" + std::to_string(l.root) + "/" + std::to_string(level) + "] ";
        }
        if (!s.empty())
            s.pop_back();
        return s;
    }
};

inline int mod_level(int c, int level)
{
    int m = c % level;
    return m < 0 ? m + level : m;
}

// w(k): x_0^{k1-1} x_{u1} ... x_0^{kd-1} x_{ud} with u_j = (eta_1...eta_j)^{-1}.
inline Word comp_to_word(const Composition& c)
{
    Word w;
    w.level = c.level;
    int acc = 0;
    for (const auto& p : c.parts) {
        for (int i = 0; i < p.k - 1; ++i)
            w.letters.push_back(Letter{true, 0});
        acc = mod_level(acc + p.color, c.level);
        w.letters.push_back(Letter{false, mod_level(-acc, c.level)});
    }
    return w;
}

inline Composition word_to_comp(const Word& w)
{
    if (!w.convergent_at_zero())
        throw std::invalid_argument("word_to_comp: word ends in dt/t");
    Composition c;
    c.level = w.level;
    int k = 1;
    int prev_u = 0; // root index of previous pole letter's u (u_0 = 1)
    for (const auto& l : w.letters) {
        if (l.is_zero) {
            ++k;
        } else {
            // u_j = mu^{l.root}; eta_j = u_{j-1} / u_j
            int color = mod_level(prev_u - l.root, w.level);
            c.parts.push_back({k, color});
            prev_u = l.root;
            k = 1;
        }
    }
    return c;
}

// Duality: reverse the word and swap x_0 <-> x_1 (level-1, admissible only).
inline Composition dual(const Composition& c)
{
    if (!c.is_level_one())
        throw std::invalid_argument("dual: colored composition not supported");
    if (!c.admissible())
        throw std::invalid_argument("dual: composition must be admissible");
    Word w = comp_to_word(c);
    Word d;
    d.level = 1;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        d.letters.push_back(it->is_zero ? Letter{false, 0} : Letter{true, 0});
    return word_to_comp(d);
}

// All level-1 compositions of a given weight (2^(w-1) of them).
inline std::vector<Composition> compositions_of_weight(int w)
{
    std::vector<Composition> out;
    if (w <= 0)
        return out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rem) -> void {
        if (rem == 0) {
            Composition c;
            for (int k : cur)
                c.parts.push_back({k, 0});
            out.push_back(std::move(c));
            return;
        }
        for (int k = 1; k <= rem; ++k) {
            cur.push_back(k);
            self(self, rem - k);
            cur.pop_back();
        }
    };
    rec(rec, w);
    return out;
}

inline std::vector<Composition> admissible_compositions_of_weight(int w)
{
    std::vector<Composition> out;
    for (auto& c : compositions_of_weight(w))
        if (c.admissible())
            out.push_back(std::move(c));
    return out;
}

} // namespace cmzv
