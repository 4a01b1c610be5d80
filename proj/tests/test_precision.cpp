#include <catch2/catch_amalgamated.hpp>

#include "cmzv/precision.hpp"
#include "cmzv/rational.hpp"
#include "cmzv/zeta.hpp"

using namespace cmzv;

TEST_CASE("error bounds are conservative through arithmetic")
{
    mpfr_prec_t prec = bits_for_digits(40);
    Real third(Rational(1, 3), prec);
    REQUIRE(third.err() > 0.0);
    Real x = third * 3;
    REQUIRE(std::fabs(x.to_double() - 1.0) <= x.err());

    Real a(Rational(22, 7), prec);
    Real b = a / 7 * 7 - a;
    REQUIRE(std::fabs(b.to_double()) <= b.err());
}

TEST_CASE("pi and zeta(2) agree within the combined error budget")
{
    mpfr_prec_t prec = bits_for_digits(35);
    Real pi = const_pi(prec);
    Real z2 = zeta_int(2, prec);
    Real diff = pi * pi / 6 - z2;
    REQUIRE(std::fabs(diff.to_double()) <= diff.err());
    REQUIRE(diff.err() < 1e-30);
}

TEST_CASE("Euler-Maclaurin zeta matches mpfr_zeta")
{
    mpfr_prec_t prec = bits_for_digits(45);
    for (long s : {2, 3, 4, 5, 7, 11, 16}) {
        Real mine = zeta_int(s, prec);
        Real ref(prec);
        mpfr_zeta_ui(ref.raw(), static_cast<unsigned long>(s), MPFR_RNDN);
        Real d = mine - ref;
        REQUIRE(std::fabs(d.to_double()) <= mine.err() + 1e-40);
    }
}

TEST_CASE("increasing working precision never increases err")
{
    Real low = zeta_int(3, bits_for_digits(20));
    Real high = zeta_int(3, bits_for_digits(40));
    REQUIRE(high.err() <= low.err());
    Real d = high - low;
    REQUIRE(std::fabs(d.to_double()) <= low.err() + high.err());
}

TEST_CASE("alternating zeta value")
{
    mpfr_prec_t prec = bits_for_digits(30);
    // zbar(2) = -zeta(2)/2
    Real zb = zeta_alt(2, prec);
    Real target = -(zeta_int(2, prec) / 2);
    REQUIRE(agrees(zb, target));
}

TEST_CASE("bernoulli numbers")
{
    REQUIRE(bernoulli(0) == Rational(1));
    REQUIRE(bernoulli(1) == Rational(-1, 2));
    REQUIRE(bernoulli(2) == Rational(1, 6));
    REQUIRE(bernoulli(12) == Rational(-691, 2730));
}

TEST_CASE("printing truncates to justified digits")
{
    mpfr_prec_t prec = bits_for_digits(30);
    Real z2 = zeta_int(2, prec);
    std::string s = z2.to_string();
    REQUIRE(s.substr(0, 10) == std::string("1.64493406"));
}

TEST_CASE("complex arithmetic propagates componentwise error")
{
    mpfr_prec_t prec = bits_for_digits(30);
    Complex i(Real(0, prec), Real(1, prec));
    Complex z = i * i;
    REQUIRE(std::fabs(z.re.to_double() + 1.0) <= z.re.err() + 1e-40);
    REQUIRE(std::fabs(z.im.to_double()) <= z.im.err() + 1e-40);
    Complex w = root_of_unity(2, 5, prec); // exp(2 pi i/5)
    Complex w5 = pow_int(w, 5);
    REQUIRE(std::fabs(w5.re.to_double() - 1.0) <= w5.re.err() + 1e-35);
    REQUIRE(std::fabs(w5.im.to_double()) <= w5.im.err() + 1e-35);
}
