#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "siegel/characters.hpp"

using namespace siegel;

namespace {

// independent Jacobi/Kronecker oracle via reciprocity
int jacobi_oracle(Int a, Int n) {
    // n odd positive
    a %= n;
    if (a < 0) a += n;
    int s = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            Int m = n % 8;
            if (m == 3 || m == 5) s = -s;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) s = -s;
        a %= n;
    }
    return n == 1 ? s : 0;
}

int kronecker_oracle(Int d, Int m) {
    if (m == 0) return (d == 1 || d == -1) ? 1 : 0;
    int s = 1;
    if (m < 0) {
        m = -m;
        if (d < 0) s = -s;
    }
    while (m % 2 == 0) {
        m /= 2;
        if (d % 2 == 0) return 0;
        Int r = d % 8;
        if (r < 0) r += 8;
        if (r == 3 || r == 5) s = -s;
    }
    return s * jacobi_oracle(d, m);
}

} // namespace

TEST_CASE("kronecker symbol") {
    CHECK(kronecker_symbol(Int(1), Int(17)) == 1);
    CHECK(kronecker_symbol(Int(-3), Int(2)) == -1);   // -3 == 5 mod 8
    CHECK(kronecker_symbol(Int(-4), Int(3)) == kronecker_oracle(Int(-4), Int(3)));
    std::mt19937_64 rng(3);
    for (int i = 0; i < 300; ++i) {
        Int d = Int(static_cast<long>(rng() % 201) - 100);
        Int m = Int(static_cast<long>(rng() % 201) - 100);
        if (d == 0) continue;
        CHECK(kronecker_symbol(d, m) == kronecker_oracle(d, m));
    }
}

TEST_CASE("kronecker at odd primes matches euler's criterion") {
    for (Int d : {Int(-4), Int(-3), Int(5), Int(8), Int(-8), Int(12)}) {
        for (long l : {3L, 5L, 7L, 11L, 13L}) {
            if (abs(d) % l == 0) continue;
            Int e;
            mpz_powm_ui(e.get_mpz_t(), Int(((d % l) + l) % l).get_mpz_t(), (l - 1) / 2,
                        Int(l).get_mpz_t());
            int euler = e == 1 ? 1 : -1;
            CHECK(kronecker_symbol(d, Int(l)) == euler);
        }
    }
}

TEST_CASE("kronecker periodicity in the second argument") {
    for (Int d : {Int(-4), Int(5), Int(-8), Int(13)}) {
        Int period = abs(d);
        for (long m = 1; m <= 60; ++m)
            CHECK(kronecker_symbol(d, Int(m)) == kronecker_symbol(d, Int(m) + period));
    }
}

TEST_CASE("trivial character") {
    auto chi = DirichletCharacter::trivial();
    CHECK(chi.order() == 1);
    CHECK(chi(Int(0)) == CyclotomicNumber(Rational(1)));
    CHECK(chi(Int(12345)) == CyclotomicNumber(Rational(1)));
    CHECK(chi.parity() == 1);
    CHECK(chi.conductor() == 1);
    CHECK(chi.is_primitive());
    CHECK(chi.square_locally_nontrivial());
}

TEST_CASE("order-6 character mod 7") {
    auto chi = DirichletCharacter::from_images(Int(7), {1});
    CHECK(chi.order() == 6);
    CHECK(chi(Int(7)).is_zero());
    CHECK(chi(Int(1)) == CyclotomicNumber(Rational(1)));
    // multiplicativity from the generator image: chi(3^2) = zeta_6^2 = zeta_3
    CHECK(chi(Int(9) % 7) == CyclotomicNumber::root_of_unity(6, 2));
    CHECK(chi(Int(2)) == chi(Int(3)) * chi(Int(3)));   // 2 == 9 mod 7
    CHECK(chi.parity() == -1);
    CHECK(chi.is_primitive());
    CHECK(chi.square_locally_nontrivial());   // square has order 3
    // complete multiplicativity on random units
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        Int a = Int(static_cast<long>(rng() % 100) + 1);
        Int b = Int(static_cast<long>(rng() % 100) + 1);
        CHECK(chi(a * b) == chi(a) * chi(b));
    }
}

TEST_CASE("kronecker characters") {
    auto chi4 = DirichletCharacter::kronecker_character(Int(-4));
    CHECK(chi4.order() == 2);
    CHECK(chi4.parity() == -1);
    CHECK(chi4.conductor() == 4);
    CHECK(chi4.is_primitive());
    for (long a = 1; a < 30; a += 2)
        CHECK(chi4(Int(a)).to_rational() == kronecker_symbol(Int(-4), Int(a)));
    CHECK_FALSE(DirichletCharacter::kronecker_character(Int(-3)).square_locally_nontrivial());

    for (Int d : {Int(-3), Int(5), Int(8), Int(-8), Int(12), Int(-24)}) {
        auto chi = DirichletCharacter::kronecker_character(d);
        CHECK(chi.conductor() == abs(d));
        for (long a = 1; a < 40; ++a)
            CHECK(chi(Int(a)) == CyclotomicNumber(Rational(kronecker_symbol(d, Int(a)))));
    }
}

TEST_CASE("twisting") {
    auto chi4 = DirichletCharacter::kronecker_character(Int(-4));
    auto chi3 = DirichletCharacter::kronecker_character(Int(-3));
    auto chi = DirichletCharacter::from_images(Int(7), {1});

    CHECK(twist(chi, DirichletCharacter::trivial()) == chi);
    CHECK(twist(chi4, chi4) == DirichletCharacter::trivial());

    auto chi12 = twist(chi3, chi4);
    CHECK(chi12.conductor() == 12);
    CHECK(chi12.modulus() == 12);
    for (long a = 1; a < 40; ++a)
        CHECK(chi12(Int(a)) == CyclotomicNumber(Rational(kronecker_symbol(Int(12), Int(a)))));
}

TEST_CASE("primitive reduction") {
    // the square of the order-6 character mod 7 at modulus 7 stays conductor 7
    auto chi = DirichletCharacter::from_images(Int(7), {1});
    auto sq = product_at(chi, chi, Int(7));
    CHECK(sq.order() == 3);
    CHECK(sq.conductor() == 7);
    // an imprimitive character: trivial at modulus 9
    auto imp = DirichletCharacter::from_images(Int(9), {0});
    CHECK(imp.conductor() == 1);
    CHECK(imp.primitive_character() == DirichletCharacter::trivial());
}

TEST_CASE("spec strings round-trip") {
    auto chi = DirichletCharacter::from_images(Int(7), {1});
    CHECK(DirichletCharacter::parse(chi.spec_string()) == chi);
    auto chi40 = DirichletCharacter::from_images(Int(40), {1, 1, 2});
    CHECK(DirichletCharacter::parse(chi40.spec_string()) == chi40);
    CHECK(DirichletCharacter::parse("1:") == DirichletCharacter::trivial());
}

#include "siegel/json_io.hpp"

TEST_CASE("generator images round-trip through json") {
    for (const auto& chi :
         {DirichletCharacter::from_images(Int(7), {1}), DirichletCharacter::kronecker_character(Int(-8)),
          DirichletCharacter::from_images(Int(45), {3, 2}), DirichletCharacter::trivial()}) {
        CHECK(character_from_json(to_json(chi)) == chi);
    }
}
