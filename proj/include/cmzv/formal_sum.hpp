#pragma once

#include <map>
#include <string>
#include <vector>

#include "cmzv/rational.hpp"

namespace cmzv {

// Exact rational linear combination of symbols. Zero coefficients are never stored.
template <typename Sym>
class FormalSum {
public:
    using map_type = std::map<Sym, Rational>;

    FormalSum() = default;
    FormalSum(const Sym& s, Rational c = Rational(1)) { add(s, c); }

    void add(const Sym& s, const Rational& c)
    {
        if (c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(s, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    FormalSum& operator+=(const FormalSum& o)
    {
        for (const auto& [s, c] : o.terms_)
            add(s, c);
        return *this;
    }

    FormalSum& operator-=(const FormalSum& o)
    {
        for (const auto& [s, c] : o.terms_)
            add(s, -c);
        return *this;
    }

    FormalSum& operator*=(const Rational& c)
    {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [s, v] : terms_)
            v *= c;
        return *this;
    }

    friend FormalSum operator+(FormalSum a, const FormalSum& b) { a += b; return a; }
    friend FormalSum operator-(FormalSum a, const FormalSum& b) { a -= b; return a; }
    friend FormalSum operator*(const Rational& c, FormalSum a) { a *= c; return a; }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const map_type& terms() const { return terms_; }

    Rational coeff(const Sym& s) const
    {
        auto it = terms_.find(s);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational total_coefficient() const
    {
        Rational t(0);
        for (const auto& [s, c] : terms_)
            t += c;
        return t;
    }

    bool operator==(const FormalSum& o) const { return terms_ == o.terms_; }

    template <typename F>
    auto map_terms(F&& f) const
    {
        using Out = decltype(f(std::declval<const Sym&>()));
        Out acc{};
        for (const auto& [s, c] : terms_)
            acc += c * f(s);
        return acc;
    }

private:
    map_type terms_;
};

// Polynomial in the regularization variable T with FormalSum coefficients,
// stored by ascending power; the leading stored coefficient is nonzero.
template <typename Sym>
class TPolynomial {
public:
    TPolynomial() = default;
    explicit TPolynomial(FormalSum<Sym> constant)
    {
        coeffs_.push_back(std::move(constant));
        normalize();
    }

    static TPolynomial monomial(FormalSum<Sym> c, int power)
    {
        TPolynomial p;
        p.coeffs_.resize(power + 1);
        p.coeffs_[power] = std::move(c);
        p.normalize();
        return p;
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    const FormalSum<Sym>& coeff(int j) const
    {
        static const FormalSum<Sym> zero;
        return (j >= 0 && j < static_cast<int>(coeffs_.size())) ? coeffs_[j] : zero;
    }

    FormalSum<Sym>& at(int j)
    {
        if (j >= static_cast<int>(coeffs_.size()))
            coeffs_.resize(j + 1);
        return coeffs_[j];
    }

    void normalize()
    {
        while (!coeffs_.empty() && coeffs_.back().is_zero())
            coeffs_.pop_back();
    }

    TPolynomial& operator+=(const TPolynomial& o)
    {
        if (static_cast<int>(coeffs_.size()) < static_cast<int>(o.coeffs_.size()))
            coeffs_.resize(o.coeffs_.size());
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            coeffs_[j] += o.coeffs_[j];
        normalize();
        return *this;
    }

    TPolynomial& operator-=(const TPolynomial& o)
    {
        if (static_cast<int>(coeffs_.size()) < static_cast<int>(o.coeffs_.size()))
            coeffs_.resize(o.coeffs_.size());
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            coeffs_[j] -= o.coeffs_[j];
        normalize();
        return *this;
    }

    TPolynomial& operator*=(const Rational& c)
    {
        for (auto& f : coeffs_)
            f *= c;
        normalize();
        return *this;
    }

    friend TPolynomial operator+(TPolynomial a, const TPolynomial& b) { a += b; return a; }
    friend TPolynomial operator-(TPolynomial a, const TPolynomial& b) { a -= b; return a; }
    friend TPolynomial operator*(const Rational& c, TPolynomial a) { a *= c; return a; }

    // Product of polynomials where coefficient multiplication is supplied
    // (symbol products need an algebra, e.g. the stuffle product).
    template <typename Mul>
    TPolynomial multiply(const TPolynomial& o, Mul&& mul) const
    {
        TPolynomial r;
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
                if (coeffs_[i].is_zero() || o.coeffs_[j].is_zero())
                    continue;
                r.at(static_cast<int>(i + j)) += mul(coeffs_[i], o.coeffs_[j]);
            }
        r.normalize();
        return r;
    }

    // Constant term; the renormalized value of the regularized symbol.
    const FormalSum<Sym>& renormalized() const { return coeff(0); }

    bool operator==(const TPolynomial& o) const { return coeffs_ == o.coeffs_; }

private:
    std::vector<FormalSum<Sym>> coeffs_;
};

} // namespace cmzv
