#include <catch2/catch_amalgamated.hpp>

#include "cmzv/quadrature.hpp"
#include "cmzv/series.hpp"

using namespace cmzv;

namespace {

constexpr int kDigits = 18;

Real str_real(const char* s, mpfr_prec_t prec)
{
    Real r(prec);
    mpfr_set_str(r.raw(), s, 10, MPFR_RNDN);
    r.set_err(r.ulp());
    return r;
}

void check_close(const Real& got, const Real& want, double tol)
{
    Real d = got - want;
    INFO("got " << got.to_double() << " want " << want.to_double() << " diff "
                << d.to_double() << " err " << d.err());
    REQUIRE(std::fabs(d.to_double()) <= d.err() + tol);
}

} // namespace

TEST_CASE("cumulative integrator on smooth and endpoint-singular integrands")
{
    mpfr_prec_t prec = bits_for_digits(kDigits + 12);
    // int_0^1 dt/sqrt(1-t^2) = pi/2 (right-endpoint singularity)
    auto w1 = forms::w1();
    Cumulative F(w1.f, Real(0, prec), Real(1, prec), prec, 1e-21);
    check_close(F.total(), const_pi(prec) / 2, 1e-17);

    // int_0^{1/2} dt/t * t = 1/2 (probe must see a regular product)
    auto g = [](const Real& t) { return (Real(1, t.prec()) / t) * t; };
    Cumulative G(g, Real(0, prec), Real(Rational(1, 2), prec), prec, 1e-21);
    check_close(G.total(), Real(Rational(1, 2), prec), 1e-18);
}

TEST_CASE("beta integral: int_0^{pi/2} sin^{2n} = (pi/2) a_n for n <= 5")
{
    mpfr_prec_t prec = bits_for_digits(kDigits + 12);
    Real pi = const_pi(prec);
    for (long n = 0; n <= 5; ++n) {
        std::vector<OneForm> chain{make_form("sin2n", [n](const Real& t) {
            return pow_int(sin(t), 2 * n);
        })};
        Real v = eval_form_integral(chain, Real(0, prec), pi / 2, kDigits);
        Real target = (pi / 2) * forms::a_weight(n, Real(1, prec));
        check_close(v, target, 1e-12);
    }
}

TEST_CASE("inverse central binomial integral representation for n <= 5")
{
    mpfr_prec_t prec = bits_for_digits(kDigits + 12);
    for (long n = 1; n <= 5; ++n) {
        // int_0^1 x^{n-1}/(1+x)^{2n} dx = 1/(n C(2n,n))
        std::vector<OneForm> chain{make_form("au", [n](const Real& t) {
            return pow_int(t, n - 1) / pow_int(Real(1, t.prec()) + t, 2 * n);
        })};
        Real v = eval_form_integral(chain, Real(0, prec), Real(1, prec), kDigits);
        Real target = Real(Rational(1, 1), prec) / Real(Rational(n) * Rational(binomial(2 * n, n)), prec);
        check_close(v, target, 1e-12);
    }
}

TEST_CASE("odd-index integral representation at n = 1, 2, 3")
{
    mpfr_prec_t prec = bits_for_digits(kDigits + 12);
    for (long n = 1; n <= 3; ++n) {
        // int_0^1 (x/(1+x^2))^{2n+1} dx/(1+x^2) = 1/(4 (2n+1) C(2n,n))
        std::vector<OneForm> chain{make_form("s7", [n](const Real& t) {
            Real den = Real(1, t.prec()) + t * t;
            return pow_int(t / den, 2 * n + 1) / den;
        })};
        Real v = eval_form_integral(chain, Real(0, prec), Real(1, prec), kDigits);
        Real target = Real(Rational(1), prec)
            / Real(Rational(4) * Rational(2 * n + 1) * Rational(binomial(2 * n, n)), prec);
        check_close(v, target, 1e-12);
    }
}

TEST_CASE("nested iterated integral matches the zeta(2) word on [0, 1/2]")
{
    mpfr_prec_t prec = bits_for_digits(kDigits + 12);
    Real half(Rational(1, 2), prec);
    std::vector<OneForm> chain{
        forms::w0(),
        make_form("x1", [](const Real& t) { return Real(1, t.prec()) / (Real(1, t.prec()) - t); })};
    Real v = eval_form_integral(chain, Real(0, prec), half, kDigits);
    Word w({Letter{true, 0}, Letter{false, 0}}, 1);
    Complex series = eval_word_integral(w, half, kDigits + 5);
    check_close(v, series.re, 1e-14);
}

TEST_CASE("reversal law over [0, 1/2]")
{
    mpfr_prec_t prec = bits_for_digits(kDigits + 12);
    Real half(Rational(1, 2), prec);
    auto x0 = forms::w0();
    auto x1 = make_form("x1", [](const Real& t) { return Real(1, t.prec()) / (Real(1, t.prec()) - t); });

    // weight 2, both orientations convergent: (x1 x1) reversed = (+1)^2 itself
    Real fwd2 = eval_form_integral(FormWord{{x1, x1}, Real(0, prec), half}, kDigits, false);
    Real rev2 = eval_form_integral(FormWord{{x1, x1}, Real(0, prec), half}, kDigits, true);
    check_close(rev2, fwd2, 1e-14);

    // weight 3 palindrome: reversed integral = (-1)^3 * forward integral
    Real fwd3 = eval_form_integral(FormWord{{x1, x0, x1}, Real(0, prec), half}, kDigits, false);
    Real rev3 = eval_form_integral(FormWord{{x1, x0, x1}, Real(0, prec), half}, kDigits, true);
    check_close(rev3, -fwd3, 1e-13);
}

TEST_CASE("path composition recombines to the unsplit value")
{
    mpfr_prec_t prec = bits_for_digits(35);
    // zeta(2) at split 1/2
    Word w2({Letter{true, 0}, Letter{false, 0}}, 1);
    Complex v2 = eval_path_split(path_compose(w2, Rational(1, 2)), 30);
    check_close(v2.re, zeta_int(2, prec), 1e-25);
    // zeta(3) word at split 1/3, against the direct evaluation
    Word w3({Letter{true, 0}, Letter{true, 0}, Letter{false, 0}}, 1);
    Complex v3 = eval_path_split(path_compose(w3, Rational(1, 3)), 30);
    check_close(v3.re, zeta_int(3, prec), 1e-22);
    REQUIRE(std::fabs(v3.re.to_double() - zeta_int(3, prec).to_double()) < 1e-20);
    // weight-4 colored word at split 2/5 equals the boundary evaluation
    Word wc({Letter{true, 0}, Letter{false, 1}, Letter{false, 0}}, 4);
    Complex a = eval_path_split(path_compose(wc, Rational(2, 5)), 28);
    Complex b = eval_word_integral(wc, Real(1, bits_for_digits(38)), 28);
    check_close(a.re, b.re, 1e-22);
    check_close(a.im, b.im, 1e-22);
}

TEST_CASE("quadrature route agrees with the series route for small words")
{
    mpfr_prec_t prec = bits_for_digits(kDigits + 12);
    // zeta(2) over [0,1] by quadrature with the singular 1/(1-t) letter
    auto x1 = make_form("x1", [](const Real& t) { return Real(1, t.prec()) / (Real(1, t.prec()) - t); });
    Real v = eval_form_integral({forms::w0(), x1}, Real(0, prec), Real(1, prec), kDigits);
    check_close(v, zeta_int(2, prec), 1e-13);
}

TEST_CASE("inversion values on the real segment")
{
    mpfr_prec_t prec = bits_for_digits(kDigits + 12);
    // Li_{2,1}(-2) = int over [0,1] of (ds/s)(2/(1+2s) ds)(2/(1+2s) ds)
    auto f2 = make_form("f2", [](const Real& t) { return Real(2, t.prec()) / (Real(1, t.prec()) + 2 * t); });
    Real v = eval_form_integral({forms::w0(), f2, f2}, Real(0, prec), Real(1, prec), kDigits);
    check_close(v, str_real("0.4272096685313078041527", prec), 1e-13);

    // Li_2(-2) = -int (ds/s)(2/(1+2s)ds)
    Real li2m2 = -eval_form_integral({forms::w0(), f2}, Real(0, prec), Real(1, prec), kDigits);
    check_close(li2m2, str_real("-1.436746366883680946362902", prec), 1e-13);
}
