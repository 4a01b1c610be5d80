#include <catch2/catch_amalgamated.hpp>

#include "cmzv/word_algebra.hpp"

using namespace cmzv;

namespace {

Word word_from(std::initializer_list<int> kinds)
{
    // 0 -> x_0, 1 -> x_1 (level 1)
    Word w;
    w.level = 1;
    for (int k : kinds)
        w.letters.push_back(k == 0 ? Letter{true, 0} : Letter{false, 0});
    return w;
}

} // namespace

TEST_CASE("composition <-> word round trip")
{
    Composition c21{2, 1};
    REQUIRE(comp_to_word(c21) == word_from({0, 1, 1}));
    Composition c2{2};
    REQUIRE(comp_to_word(c2) == word_from({0, 1}));
    Composition c32{3, 2};
    REQUIRE(comp_to_word(c32) == word_from({0, 0, 1, 0, 1}));

    for (int w = 1; w <= 7; ++w)
        for (const auto& c : compositions_of_weight(w)) {
            REQUIRE(word_to_comp(comp_to_word(c)) == c);
            REQUIRE(comp_to_word(c).weight() == c.weight());
        }

    REQUIRE_THROWS(word_to_comp(word_from({1, 0})));
}

TEST_CASE("colored composition word uses accumulated inverse colors")
{
    // level 4, (2, eta=i): u1 = 1/i = mu^{-1} = mu^3
    Composition c({IndexPart{2, 1}}, 4);
    Word w = comp_to_word(c);
    REQUIRE(w.letters.size() == 2);
    REQUIRE(w.letters[0].is_zero);
    REQUIRE(!w.letters[1].is_zero);
    REQUIRE(w.letters[1].root == 3);
    REQUIRE(word_to_comp(w) == c);
}

TEST_CASE("shuffle product examples")
{
    // x0 x1 sh x0 x1 = 2 x0x1x0x1 + 4 x0x0x1x1
    WordSum s = shuffle(word_from({0, 1}), word_from({0, 1}));
    REQUIRE(s.coeff(word_from({0, 1, 0, 1})) == 2);
    REQUIRE(s.coeff(word_from({0, 0, 1, 1})) == 4);
    REQUIRE(s.size() == 2);

    // x0 x1 sh x1 = x1x0x1 + 2 x0x1x1
    s = shuffle(word_from({0, 1}), word_from({1}));
    REQUIRE(s.coeff(word_from({1, 0, 1})) == 1);
    REQUIRE(s.coeff(word_from({0, 1, 1})) == 2);

    // unit
    s = shuffle(word_from({0, 1, 1}), Word({}, 1));
    REQUIRE(s.coeff(word_from({0, 1, 1})) == 1);
    REQUIRE(s.size() == 1);
}

TEST_CASE("shuffle coefficient mass is binomial(|u|+|v|, |u|)")
{
    auto check = [](const Word& u, const Word& v) {
        WordSum s = shuffle(u, v);
        REQUIRE(s.total_coefficient() == Rational(binomial(u.weight() + v.weight(), u.weight())));
    };
    check(word_from({0, 1}), word_from({0, 1, 1}));
    check(word_from({0, 0, 1}), word_from({1, 1}));
    check(word_from({1}), word_from({0, 1, 0, 1}));
}

TEST_CASE("stuffle product examples")
{
    CompSum s = stuffle(Composition{3}, Composition{5});
    REQUIRE(s.coeff(Composition{3, 5}) == 1);
    REQUIRE(s.coeff(Composition{5, 3}) == 1);
    REQUIRE(s.coeff(Composition{8}) == 1);
    REQUIRE(s.size() == 3);

    s = stuffle(Composition{2}, Composition{2});
    REQUIRE(s.coeff(Composition{2, 2}) == 2);
    REQUIRE(s.coeff(Composition{4}) == 1);

    s = stuffle(Composition{1}, Composition{2});
    REQUIRE(s.coeff(Composition{1, 2}) == 1);
    REQUIRE(s.coeff(Composition{2, 1}) == 1);
    REQUIRE(s.coeff(Composition{3}) == 1);
}

TEST_CASE("stuffle multiplies colors")
{
    Composition a({IndexPart{1, 1}}, 4);
    Composition b({IndexPart{2, 3}}, 4);
    CompSum s = stuffle(a, b);
    REQUIRE(s.coeff(Composition({IndexPart{3, 0}}, 4)) == 1);
}

TEST_CASE("shuffle and stuffle are commutative and associative on small inputs")
{
    auto words = {word_from({1}), word_from({0, 1}), word_from({0, 1, 1})};
    for (const auto& u : words)
        for (const auto& v : words) {
            REQUIRE(shuffle(u, v) == shuffle(v, u));
        }
    for (const auto& u : words)
        for (const auto& v : words)
            for (const auto& w : words) {
                if (u.weight() + v.weight() + w.weight() > 6)
                    continue;
                REQUIRE(shuffle(shuffle(u, v), WordSum(w)) == shuffle(WordSum(u), shuffle(v, w)));
            }

    auto comps = {Composition{1}, Composition{2}, Composition{1, 2}, Composition{2, 1}};
    for (const auto& a : comps)
        for (const auto& b : comps) {
            REQUIRE(stuffle(a, b) == stuffle(b, a));
            for (const auto& c : comps) {
                if (a.weight() + b.weight() + c.weight() > 6)
                    continue;
                REQUIRE(stuffle(stuffle(a, b), CompSum(c)) == stuffle(CompSum(a), stuffle(b, c)));
            }
        }
}

TEST_CASE("duality")
{
    REQUIRE(dual(Composition{3}) == Composition{2, 1});
    REQUIRE(dual(Composition{4}) == Composition{2, 1, 1});
    REQUIRE(dual(Composition{2}) == Composition{2});

    for (int w = 2; w <= 8; ++w)
        for (const auto& c : admissible_compositions_of_weight(w)) {
            Composition d = dual(c);
            REQUIRE(d.weight() == c.weight());
            REQUIRE(d.admissible());
            REQUIRE(dual(d) == c);
        }

    REQUIRE_THROWS(dual(Composition{1, 2}));
    REQUIRE_THROWS(dual(Composition({IndexPart{2, 1}}, 4)));
}

TEST_CASE("stuffle regularization of (1,2)")
{
    CompPoly p = stuffle_regularize(Composition{1, 2});
    REQUIRE(p.degree() == 1);
    REQUIRE(p.coeff(1).coeff(Composition{2}) == 1);
    REQUIRE(p.coeff(1).size() == 1);
    REQUIRE(p.coeff(0).coeff(Composition{2, 1}) == -1);
    REQUIRE(p.coeff(0).coeff(Composition{3}) == -1);
    REQUIRE(p.coeff(0).size() == 2);
}

TEST_CASE("shuffle regularization of (1,2)")
{
    CompPoly p = shuffle_regularize(Composition{1, 2});
    REQUIRE(p.degree() == 1);
    REQUIRE(p.coeff(1).coeff(Composition{2}) == 1);
    REQUIRE(p.coeff(1).size() == 1);
    REQUIRE(p.coeff(0).coeff(Composition{2, 1}) == -2);
    REQUIRE(p.coeff(0).size() == 1);
}

TEST_CASE("regularization of admissible input is degree zero and identity")
{
    for (int w = 2; w <= 6; ++w)
        for (const auto& c : admissible_compositions_of_weight(w)) {
            CompPoly p = stuffle_regularize(c);
            REQUIRE(p.degree() == 0);
            REQUIRE(p.coeff(0) == CompSum(c));
            CompPoly q = shuffle_regularize(c);
            REQUIRE(q.degree() == 0);
            REQUIRE(q.coeff(0) == CompSum(c));
        }
}

TEST_CASE("regularization degree equals the number of leading ones")
{
    REQUIRE(stuffle_regularize(Composition{1, 1, 2}).degree() == 2);
    REQUIRE(stuffle_regularize(Composition{1, 1, 1, 2}).degree() == 3);
    REQUIRE(shuffle_regularize(Composition{1, 1, 3}).degree() == 2);
    REQUIRE(stuffle_regularize(Composition{1}).degree() == 1);
}

TEST_CASE("renormalized values")
{
    REQUIRE(renormalize(shuffle_regularize(Composition{1, 2}))
            == CompSum(Composition{2, 1}, Rational(-2)));
    CompSum r = renormalize(stuffle_regularize(Composition{1, 2}));
    REQUIRE(r.coeff(Composition{2, 1}) == -1);
    REQUIRE(r.coeff(Composition{3}) == -1);
    // degree-0 polynomial renormalizes to itself
    CompPoly p(CompSum(Composition{2, 1}));
    REQUIRE(renormalize(p) == CompSum(Composition{2, 1}));
}

TEST_CASE("rho map on low powers of T")
{
    // rho(T) = T
    CompPoly t = CompPoly::monomial(CompSum(Composition{}, Rational(1)), 1);
    CompPoly rt = rho_map(t);
    REQUIRE(rt == t);

    // rho of a constant polynomial is itself
    CompPoly c(CompSum(Composition{2, 1}));
    REQUIRE(rho_map(c) == c);

    // rho(T^2) = T^2 + zeta(2)
    CompPoly t2 = CompPoly::monomial(CompSum(Composition{}, Rational(1)), 2);
    CompPoly rt2 = rho_map(t2);
    REQUIRE(rt2.degree() == 2);
    REQUIRE(rt2.coeff(2) == CompSum(Composition{}, Rational(1)));
    REQUIRE(rt2.coeff(1).is_zero());
    REQUIRE(rt2.coeff(0) == CompSum(Composition{2}, Rational(1)));
}

TEST_CASE("rho intertwines the two regularizations at weight 2")
{
    // reg_*(1,1) = (T^2 - zeta(2))/2,  reg_sha(1,1) = T^2/2
    CompPoly su = stuffle_regularize(Composition{1, 1});
    REQUIRE(su.coeff(2) == CompSum(Composition{}, Rational(1, 2)));
    REQUIRE(su.coeff(0) == CompSum(Composition{2}, Rational(-1, 2)));
    CompPoly sh = shuffle_regularize(Composition{1, 1});
    REQUIRE(sh.coeff(2) == CompSum(Composition{}, Rational(1, 2)));
    REQUIRE(sh.coeff(0).is_zero());
    REQUIRE(rho_map(su) == sh);
}

TEST_CASE("double shuffle mining finds the Euler relations")
{
    auto relations = generate_dbsf(4);
    CompSum euler;
    euler.add(Composition{2, 1}, 1);
    euler.add(Composition{3}, -1);
    CompSum z4;
    z4.add(Composition{4}, 1);
    z4.add(Composition{3, 1}, -4);

    bool found_euler = false, found_z4 = false;
    for (const auto& r : relations) {
        CompSum a = r.sum;
        CompSum b = r.sum;
        b *= Rational(-1);
        if (a == euler || b == euler)
            found_euler = true;
        // accept any scalar multiple
        if (r.sum.size() == 2 && r.sum.coeff(Composition{4}) != 0) {
            Rational c4 = r.sum.coeff(Composition{4});
            Rational c31 = r.sum.coeff(Composition{3, 1});
            if (c31 == -4 * c4)
                found_z4 = true;
        }
    }
    REQUIRE(found_euler);
    REQUIRE(found_z4);
}

TEST_CASE("mined relations are weight homogeneous with tagged sources")
{
    auto relations = generate_dbsf(5);
    REQUIRE(!relations.empty());
    for (const auto& r : relations) {
        REQUIRE((r.source == "finite-dbsf" || r.source == "regularized-dbsf"));
        for (const auto& [c, q] : r.sum.terms()) {
            REQUIRE(c.weight() == r.weight);
            REQUIRE(c.admissible());
        }
    }
}
