#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "siegel/exactnum.hpp"

using namespace siegel;

TEST_CASE("rational strings") {
    CHECK(rational_str(make_rational(Int(5), Int(2))) == "5/2");
    CHECK(rational_str(make_rational(Int(-4), Int(2))) == "-2");
    CHECK(rational_from_str("5/2") == make_rational(Int(5), Int(2)));
    CHECK(make_rational(Int(6), Int(-4)) == make_rational(Int(-3), Int(2)));
}

TEST_CASE("rational arithmetic is exact on random operands") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        Int a = Int(static_cast<long>(rng() % 2001) - 1000);
        Int b = Int(static_cast<long>(rng() % 999) + 1);
        Int c = Int(static_cast<long>(rng() % 2001) - 1000);
        Int d = Int(static_cast<long>(rng() % 999) + 1);
        Rational sum = make_rational(a, b) + make_rational(c, d);
        CHECK(sum * Rational(b * d) == Rational(a * d + c * b));
    }
}

TEST_CASE("squarefree kernel and factorization") {
    CHECK(squarefree_kernel(Int(12)) == 3);
    CHECK(squarefree_kernel(Int(-16)) == -1);
    CHECK(factorize(Int(360)).size() == 3);
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(12) == 4);
    CHECK(euler_phi(625) == 500);
}

TEST_CASE("cyclotomic roots of unity") {
    CHECK(CyclotomicNumber::root_of_unity(1, 0) == CyclotomicNumber(Rational(1)));
    // i^2 = -1
    auto i = CyclotomicNumber::root_of_unity(4, 1);
    CHECK(i * i == CyclotomicNumber(Rational(-1)));
    // full root sum vanishes for conductor 3
    auto z = CyclotomicNumber::root_of_unity(3, 0) + CyclotomicNumber::root_of_unity(3, 1) +
             CyclotomicNumber::root_of_unity(3, 2);
    CHECK(z.is_zero());
    // zeta_3 + zeta_3^2 = -1
    auto w = CyclotomicNumber::root_of_unity(3, 1) + CyclotomicNumber::root_of_unity(3, 2);
    CHECK(w.to_rational() == -1);
}

TEST_CASE("rational extraction") {
    CHECK(CyclotomicNumber::from_reduced(8, {Rational(5) / 2, Rational(0), Rational(0), Rational(0)})
              .to_rational() == Rational(5) / 2);
    CHECK_THROWS_AS(CyclotomicNumber::root_of_unity(4, 1).to_rational(), NotRationalError);
}

TEST_CASE("cyclotomic algebra on random triples") {
    std::mt19937_64 rng(11);
    auto random_elt = [&](long n) {
        std::vector<Rational> c(euler_phi(n));
        for (auto& x : c) x = Rational(static_cast<long>(rng() % 11) - 5);
        return CyclotomicNumber::from_reduced(n, std::move(c));
    };
    for (long n : {3L, 4L, 5L, 6L, 12L}) {
        for (int trial = 0; trial < 10; ++trial) {
            auto a = random_elt(n), b = random_elt(n), c = random_elt(n);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * b == b * a);
            CHECK(a.conjugate().conjugate() == a);
            CHECK((a + b).conjugate() == a.conjugate() + b.conjugate());
            if (!a.is_zero()) CHECK(a * a.inverse() == CyclotomicNumber(Rational(1)));
        }
    }
}

TEST_CASE("cyclotomic cross-conductor equality") {
    auto z6 = CyclotomicNumber::root_of_unity(6, 2);
    auto z3 = CyclotomicNumber::root_of_unity(3, 1);
    CHECK(z6 == z3);
    CHECK(z6.pow(3) == CyclotomicNumber(Rational(1)));
}

TEST_CASE("smith normal form examples") {
    auto m = IntMat::identity(2);
    auto s = smith_normal_form(m);
    CHECK(s.diag == std::vector<Int>{Int(1), Int(1)});

    IntMat d(2, 2);
    d.at(0, 0) = 2;
    d.at(1, 1) = 6;
    CHECK(smith_normal_form(d).diag == std::vector<Int>{Int(2), Int(6)});

    IntMat a(2, 2);
    a.at(0, 0) = 2; a.at(0, 1) = 4;
    a.at(1, 0) = 4; a.at(1, 1) = 2;
    CHECK(smith_normal_form(a).diag == std::vector<Int>{Int(2), Int(6)});
}

TEST_CASE("smith normal form reconstruction on random matrices") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        IntMat a(3, 3);
        for (long i = 0; i < 3; ++i)
            for (long j = 0; j < 3; ++j)
                a.at(i, j) = Int(static_cast<long>(rng() % 41) - 20);
        auto s = smith_normal_form(a);
        // unimodularity
        CHECK(abs(s.left.det()) == 1);
        CHECK(abs(s.right.det()) == 1);
        // reconstruction
        IntMat prod = s.left * a * s.right;
        for (long i = 0; i < 3; ++i)
            for (long j = 0; j < 3; ++j)
                CHECK(prod.at(i, j) == (i == j ? s.diag[i] : Int(0)));
        // divisibility chain on nonzero entries
        for (long i = 0; i + 1 < 3; ++i) {
            CHECK(s.diag[i] >= 0);
            if (s.diag[i] != 0 && s.diag[i + 1] != 0) CHECK(s.diag[i + 1] % s.diag[i] == 0);
            if (s.diag[i] == 0) CHECK(s.diag[i + 1] == 0);
        }
        // determinant up to sign
        if (a.det() != 0) CHECK(s.diag[0] * s.diag[1] * s.diag[2] == abs(a.det()));
    }
}

TEST_CASE("cyclotomic polynomial basics") {
    CHECK(cyclotomic_polynomial(1).degree() == 1);
    CHECK(cyclotomic_polynomial(8).degree() == 4);
    CHECK(cyclotomic_polynomial(9).coeffs() ==
          std::vector<Rational>{Rational(1), Rational(0), Rational(0), Rational(1), Rational(0),
                                Rational(0), Rational(1)});
}
