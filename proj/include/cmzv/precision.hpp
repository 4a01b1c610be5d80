#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include <mpfr.h>

#include "cmzv/rational.hpp"

namespace cmzv {

inline mpfr_prec_t bits_for_digits(int digits)
{
    if (digits < 1)
        throw std::invalid_argument("digits must be positive");
    return static_cast<mpfr_prec_t>(digits * 3.3219280948873623 + 64);
}

// Arbitrary-precision real with a conservative absolute error bound.
// Every operation propagates input errors and adds one ulp of rounding slack,
// so |stored - exact| <= err always holds.
class Real {
public:
    Real() { mpfr_init2(v_, 64); mpfr_set_zero(v_, 1); err_ = 0.0; }

    explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); err_ = 0.0; }

    Real(long n, mpfr_prec_t prec)
    {
        mpfr_init2(v_, prec);
        mpfr_set_si(v_, n, MPFR_RNDN);
        err_ = 0.0;
    }

    Real(const Rational& q, mpfr_prec_t prec)
    {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
        err_ = ulp_of(v_);
        if (mpfr_cmp_q(v_, q.get_mpq_t()) == 0)
            err_ = 0.0;
    }

    Real(const Real& o)
    {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
        err_ = o.err_;
    }

    Real(Real&& o) noexcept
    {
        mpfr_init2(v_, 64);
        mpfr_swap(v_, o.v_);
        err_ = o.err_;
    }

    Real& operator=(const Real& o)
    {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
            err_ = o.err_;
        }
        return *this;
    }

    Real& operator=(Real&& o) noexcept
    {
        if (this != &o) {
            mpfr_swap(v_, o.v_);
            err_ = o.err_;
        }
        return *this;
    }

    ~Real() { mpfr_clear(v_); }

    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    double err() const { return err_; }
    void set_err(double e) { err_ = e; }
    void widen_err(double e) { err_ += e; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    int sign() const { return mpfr_sgn(v_); }

    double abs_double() const
    {
        double d = std::fabs(mpfr_get_d(v_, MPFR_RNDN));
        if (d == 0.0 && !mpfr_zero_p(v_))
            d = std::numeric_limits<double>::min();
        return d;
    }

    static double ulp_of(mpfr_srcptr x)
    {
        if (mpfr_zero_p(x))
            return std::pow(2.0, -static_cast<double>(mpfr_get_prec(x)));
        long e = mpfr_get_exp(x);
        double u = std::pow(2.0, static_cast<double>(e) - static_cast<double>(mpfr_get_prec(x)) + 1);
        return u;
    }

    double ulp() const { return ulp_of(v_); }

    // Number of decimal digits certain given err (relative to the value's size).
    int justified_digits() const
    {
        double a = abs_double();
        if (err_ <= 0.0)
            return 40;
        if (a == 0.0)
            return err_ < 1 ? static_cast<int>(-std::log10(err_)) : 0;
        double d = std::log10(a / err_);
        return d > 0 ? static_cast<int>(d) : 0;
    }

    std::string to_string(int max_digits = 0) const;

private:
    mpfr_t v_;
    double err_;
};

namespace detail {
inline mpfr_prec_t join_prec(const Real& a, const Real& b)
{
    return std::max(a.prec(), b.prec());
}
} // namespace detail

inline Real operator+(const Real& a, const Real& b)
{
    Real r(detail::join_prec(a, b));
    mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    r.set_err(a.err() + b.err() + r.ulp());
    return r;
}

inline Real operator-(const Real& a, const Real& b)
{
    Real r(detail::join_prec(a, b));
    mpfr_sub(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    r.set_err(a.err() + b.err() + r.ulp());
    return r;
}

inline Real operator-(const Real& a)
{
    Real r(a.prec());
    mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
    r.set_err(a.err());
    return r;
}

inline Real operator*(const Real& a, const Real& b)
{
    Real r(detail::join_prec(a, b));
    mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    r.set_err(a.abs_double() * b.err() + b.abs_double() * a.err() + a.err() * b.err() + r.ulp());
    return r;
}

inline Real operator/(const Real& a, const Real& b)
{
    double bd = b.abs_double();
    if (bd == 0.0 || b.err() >= 0.5 * bd)
        throw std::domain_error("Real division: divisor not bounded away from zero");
    Real r(detail::join_prec(a, b));
    mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    double rd = r.abs_double();
    r.set_err((a.err() + rd * b.err()) / (bd - b.err()) + r.ulp());
    return r;
}

inline Real& operator+=(Real& a, const Real& b) { a = a + b; return a; }
inline Real& operator-=(Real& a, const Real& b) { a = a - b; return a; }
inline Real& operator*=(Real& a, const Real& b) { a = a * b; return a; }
inline Real& operator/=(Real& a, const Real& b) { a = a / b; return a; }

inline Real operator*(long n, const Real& a)
{
    Real r(a.prec());
    mpfr_mul_si(r.raw(), a.raw(), n, MPFR_RNDN);
    r.set_err(std::fabs(static_cast<double>(n)) * a.err() + r.ulp());
    return r;
}

inline Real operator*(const Real& a, long n) { return n * a; }

inline Real operator+(const Real& a, long n)
{
    Real r(a.prec());
    mpfr_add_si(r.raw(), a.raw(), n, MPFR_RNDN);
    r.set_err(a.err() + r.ulp());
    return r;
}

inline Real operator-(const Real& a, long n) { return a + (-n); }
inline Real operator-(long n, const Real& a) { return -(a + (-n)); }

inline Real operator/(const Real& a, long n)
{
    if (n == 0)
        throw std::domain_error("Real division by zero integer");
    Real r(a.prec());
    mpfr_div_si(r.raw(), a.raw(), n, MPFR_RNDN);
    r.set_err(a.err() / std::fabs(static_cast<double>(n)) + r.ulp());
    return r;
}

inline Real abs(const Real& a)
{
    Real r(a.prec());
    mpfr_abs(r.raw(), a.raw(), MPFR_RNDN);
    r.set_err(a.err());
    return r;
}

inline Real sqrt(const Real& a)
{
    if (mpfr_sgn(a.raw()) < 0)
        throw std::domain_error("Real sqrt of negative value");
    Real r(a.prec());
    mpfr_sqrt(r.raw(), a.raw(), MPFR_RNDN);
    double rd = r.abs_double();
    r.set_err((rd > 0 ? a.err() / rd : std::sqrt(a.err())) + r.ulp());
    return r;
}

inline Real log(const Real& a)
{
    double ad = a.abs_double();
    if (mpfr_sgn(a.raw()) <= 0 || a.err() >= 0.5 * ad)
        throw std::domain_error("Real log: argument not bounded away from zero");
    Real r(a.prec());
    mpfr_log(r.raw(), a.raw(), MPFR_RNDN);
    r.set_err(a.err() / (ad - a.err()) + r.ulp());
    return r;
}

inline Real exp(const Real& a)
{
    Real r(a.prec());
    mpfr_exp(r.raw(), a.raw(), MPFR_RNDN);
    r.set_err(r.abs_double() * a.err() * 1.5 + r.ulp());
    return r;
}

inline Real sin(const Real& a)
{
    Real r(a.prec());
    mpfr_sin(r.raw(), a.raw(), MPFR_RNDN);
    r.set_err(a.err() + r.ulp());
    return r;
}

inline Real cos(const Real& a)
{
    Real r(a.prec());
    mpfr_cos(r.raw(), a.raw(), MPFR_RNDN);
    r.set_err(a.err() + r.ulp());
    return r;
}

inline Real tan(const Real& a)
{
    Real s = sin(a), c = cos(a);
    return s / c;
}

inline Real atan(const Real& a)
{
    Real r(a.prec());
    mpfr_atan(r.raw(), a.raw(), MPFR_RNDN);
    r.set_err(a.err() + r.ulp());
    return r;
}

inline Real asin(const Real& a)
{
    Real r(a.prec());
    mpfr_asin(r.raw(), a.raw(), MPFR_RNDN);
    double c = 1.0 - a.abs_double();
    r.set_err((c > 1e-8 ? a.err() / std::sqrt(2 * c) : std::sqrt(a.err())) + r.ulp());
    return r;
}

inline Real asinh(const Real& a)
{
    Real r(a.prec());
    mpfr_asinh(r.raw(), a.raw(), MPFR_RNDN);
    r.set_err(a.err() + r.ulp());
    return r;
}

inline Real sinh(const Real& a)
{
    Real r(a.prec());
    mpfr_sinh(r.raw(), a.raw(), MPFR_RNDN);
    r.set_err(a.err() * (1.0 + std::fabs(mpfr_get_d(r.raw(), MPFR_RNDN))) * 1.5 + r.ulp());
    return r;
}

inline Real cosh(const Real& a)
{
    Real r(a.prec());
    mpfr_cosh(r.raw(), a.raw(), MPFR_RNDN);
    r.set_err(a.err() * (1.0 + r.abs_double()) * 1.5 + r.ulp());
    return r;
}

inline Real pow_int(const Real& a, long n)
{
    if (n == 0)
        return Real(1, a.prec());
    Real base = n > 0 ? a : Real(1, a.prec()) / a;
    long m = n > 0 ? n : -n;
    Real acc(1, a.prec());
    Real p = base;
    while (m > 0) {
        if (m & 1)
            acc *= p;
        m >>= 1;
        if (m)
            p *= p;
    }
    return acc;
}

inline Real const_pi(mpfr_prec_t prec)
{
    Real r(prec);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    r.set_err(r.ulp());
    return r;
}

inline Real const_log2(mpfr_prec_t prec)
{
    Real r(prec);
    mpfr_const_log2(r.raw(), MPFR_RNDN);
    r.set_err(r.ulp());
    return r;
}

inline Real const_euler(mpfr_prec_t prec)
{
    Real r(prec);
    mpfr_const_euler(r.raw(), MPFR_RNDN);
    r.set_err(r.ulp());
    return r;
}

inline int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.raw(), b.raw()); }
inline bool operator<(const Real& a, const Real& b) { return cmp(a, b) < 0; }
inline bool operator>(const Real& a, const Real& b) { return cmp(a, b) > 0; }

// |a - b| together with the combined error budget; true if equal within budget.
inline bool agrees(const Real& a, const Real& b, double extra_tol = 0.0)
{
    Real d = a - b;
    return d.abs_double() <= a.err() + b.err() + extra_tol;
}

inline std::string Real::to_string(int max_digits) const
{
    int digits = justified_digits();
    if (max_digits > 0 && digits > max_digits)
        digits = max_digits;
    if (digits < 1)
        digits = 1;
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(digits), v_, MPFR_RNDN);
    std::string mant(s);
    mpfr_free_str(s);
    bool neg = !mant.empty() && mant[0] == '-';
    std::string dig = neg ? mant.substr(1) : mant;
    std::string out = (neg ? "-" : "");
    out += dig.substr(0, 1) + "." + (dig.size() > 1 ? dig.substr(1) : "0");
    out += "e" + std::to_string(static_cast<long>(e) - 1);
    return out;
}

// Complex value with componentwise error bounds.
struct Complex {
    Real re, im;

    Complex() = default;
    explicit Complex(mpfr_prec_t prec) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(long n, mpfr_prec_t prec) : re(n, prec), im(0, prec) {}

    double abs_double() const { return std::hypot(re.to_double(), im.to_double()); }
    double err() const { return re.err() + im.err(); }
    bool is_real(double tol = 0.0) const { return std::fabs(im.to_double()) <= im.err() + tol; }
};

inline Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
inline Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
inline Complex operator-(const Complex& a) { return {-a.re, -a.im}; }

inline Complex operator*(const Complex& a, const Complex& b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline Complex operator*(const Real& s, const Complex& a) { return {s * a.re, s * a.im}; }

inline Complex conj(const Complex& a) { return {a.re, -a.im}; }

inline Complex operator/(const Complex& a, const Complex& b)
{
    Real n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

inline Complex& operator+=(Complex& a, const Complex& b) { a = a + b; return a; }
inline Complex& operator-=(Complex& a, const Complex& b) { a = a - b; return a; }
inline Complex& operator*=(Complex& a, const Complex& b) { a = a * b; return a; }

inline Complex pow_int(const Complex& a, long n)
{
    mpfr_prec_t p = a.re.prec();
    if (n == 0)
        return Complex(1, p);
    Complex base = a;
    if (n < 0) {
        base = Complex(1, p) / a;
        n = -n;
    }
    Complex acc(1, p);
    while (n > 0) {
        if (n & 1)
            acc *= base;
        n >>= 1;
        if (n)
            base *= base;
    }
    return acc;
}

// exp(i * pi * num/den), exact rational angle.
inline Complex root_of_unity(long num, long den, mpfr_prec_t prec)
{
    Real pi = const_pi(prec);
    Real ang = (num * pi) / den;
    return {cos(ang), sin(ang)};
}

} // namespace cmzv
