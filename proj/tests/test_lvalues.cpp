#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "siegel/lvalues.hpp"

using namespace siegel;

TEST_CASE("bernoulli numbers") {
    CHECK(bernoulli_number(0) == 1);
    CHECK(bernoulli_number(1) == make_rational(Int(-1), Int(2)));
    CHECK(bernoulli_number(3) == 0);
    CHECK(bernoulli_number(4) == make_rational(Int(-1), Int(30)));
    CHECK(bernoulli_number(12) == make_rational(Int(-691), Int(2730)));
}

TEST_CASE("von staudt-clausen denominators") {
    // denominator of B_k is exactly the product of primes q with (q-1) | k
    for (unsigned long k = 2; k <= 40; k += 2) {
        Int den(1);
        for (long q : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L})
            if (k % (q - 1) == 0) den *= q;
        CHECK(bernoulli_number(k).get_den() == den);
    }
}

TEST_CASE("generalized bernoulli numbers") {
    auto trivial = DirichletCharacter::trivial();
    CHECK(gen_bernoulli(4, trivial).to_rational() == make_rational(Int(-1), Int(30)));
    CHECK(gen_bernoulli(1, trivial).to_rational() == make_rational(Int(1), Int(2)));

    auto chi4 = DirichletCharacter::kronecker_character(Int(-4));
    CHECK(gen_bernoulli(1, chi4).to_rational() == make_rational(Int(-1), Int(2)));
    // parity mismatch vanishes
    CHECK(gen_bernoulli(3, DirichletCharacter::kronecker_character(Int(5))).is_zero());
    CHECK(gen_bernoulli(2, chi4).is_zero());
}

TEST_CASE("L-values at non-positive integers") {
    auto trivial = DirichletCharacter::trivial();
    CHECK(L_at_negative(4, trivial).to_rational() == make_rational(Int(1), Int(120)));
    CHECK(L_at_negative(2, trivial).to_rational() == make_rational(Int(-1), Int(12)));
    CHECK(L_at_negative(1, DirichletCharacter::kronecker_character(Int(-4))).to_rational() ==
          make_rational(Int(1), Int(2)));
    CHECK_THROWS_AS(L_at_negative(1, trivial), PoleAtOneError);
}

TEST_CASE("depleted L-values") {
    auto trivial = DirichletCharacter::trivial();
    CHECK(L_depleted(4, trivial, 5).to_rational() == make_rational(Int(-31), Int(30)));
    CHECK(L_depleted(2, trivial, 2).to_rational() == make_rational(Int(1), Int(12)));
    // p dividing the conductor leaves the value unchanged
    auto chi4 = DirichletCharacter::kronecker_character(Int(-4));
    CHECK(L_depleted(1, chi4, 2) == L_at_negative(1, chi4));
}

TEST_CASE("parity vanishing over random small characters") {
    for (Int d : {Int(-3), Int(-4), Int(5), Int(8), Int(-8)}) {
        auto chi = DirichletCharacter::kronecker_character(d);
        bool odd_char = chi.parity() == -1;
        for (unsigned long k = 2; k <= 9; ++k) {
            bool k_odd = k % 2;
            if (odd_char != k_odd) CHECK(L_at_negative(k, chi).is_zero());
            else CHECK_FALSE(L_at_negative(k, chi).is_zero());
        }
    }
}

TEST_CASE("imprimitive values match the euler-factor identity") {
    // chi_{-4} viewed at modulus 12 loses the euler factor at 3
    auto chi4 = DirichletCharacter::kronecker_character(Int(-4));
    auto at12 = product_at(chi4, DirichletCharacter::trivial(), Int(12));
    for (unsigned long k : {1UL, 3UL, 5UL, 7UL}) {
        Rational prim = gen_bernoulli(k, chi4).to_rational();
        Rational impr = gen_bernoulli(k, at12).to_rational();
        Rational factor = Rational(1) - Rational(kronecker_symbol(Int(-4), Int(3))) *
                                            Rational(pow_int(3, k - 1));
        CHECK(impr == prim * factor);
    }
}
