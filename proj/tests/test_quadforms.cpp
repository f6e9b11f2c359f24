#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "siegel/characters.hpp"
#include "siegel/quadforms.hpp"

using namespace siegel;

TEST_CASE("discriminant data") {
    // rank 1: frak-D = det itself
    CHECK(det_data(HalfIntegralMatrix::diag({Int(2)})).bigD == 2);

    auto dd = det_data(HalfIntegralMatrix::identity(2));
    CHECK(dd.bigD == 4);
    CHECK(*dd.fund == -4);
    CHECK(*dd.cond == 1);

    auto dd2 = det_data(HalfIntegralMatrix::diag({Int(1), Int(4)}));
    CHECK(dd2.bigD == 16);
    CHECK(*dd2.fund == -4);
    CHECK(*dd2.cond == 2);

    CHECK_THROWS_AS(det_data(HalfIntegralMatrix::zero(2)), DegenerateError);
}

TEST_CASE("fundamental discriminant reconstruction on random inputs") {
    std::mt19937_64 rng(19);
    int tested = 0;
    while (tested < 60) {
        long r = rng() % 2 ? 2 : 4;
        std::vector<Int> upper;
        for (long i = 0; i < r; ++i)
            for (long j = i; j < r; ++j)
                upper.push_back(i == j ? Int(2 * (static_cast<long>(rng() % 6) + 1))
                                       : Int(static_cast<long>(rng() % 9) - 4));
        HalfIntegralMatrix t = HalfIntegralMatrix::from_upper(r, upper);
        if (t.disc() == 0) continue;
        ++tested;
        auto dd = det_data(t);
        Int d0 = (r / 2) % 2 ? Int(-dd.bigD) : dd.bigD;
        // d * f^2 reconstructs exactly
        CHECK(*dd.fund * *dd.cond * *dd.cond == d0);
        CHECK(*dd.cond >= 1);
        // d is a fundamental discriminant: 1 mod 4 squarefree, or 4m with
        // m squarefree and 2 or 3 mod 4
        Int f = *dd.fund;
        Int m4 = f % 4;
        if (m4 < 0) m4 += 4;
        if (m4 == 1) {
            CHECK(squarefree_kernel(f) == f);
        } else {
            REQUIRE(m4 == 0);
            Int m = f / 4;
            Int mm4 = m % 4;
            if (mm4 < 0) mm4 += 4;
            CHECK(squarefree_kernel(m) == m);
            CHECK((mm4 == 2 || mm4 == 3));
        }
    }
}

TEST_CASE("square classes") {
    CHECK(xi_squareclass(Int(-1), 5) == 1);    // -1 is a square mod 5
    CHECK(xi_squareclass(Int(3), 3) == 0);     // odd valuation
    CHECK(xi_squareclass(Int(2), 3) == -1);    // non-residue, even valuation
    CHECK(xi_squareclass(Int(5), 2) == -1);    // 5 mod 8: unramified
    CHECK(xi_squareclass(Int(17), 2) == 1);
    CHECK(xi_squareclass(Int(3), 2) == 0);
}

TEST_CASE("xi matches the kronecker symbol of the fundamental discriminant") {
    std::mt19937_64 rng(17);
    int tested = 0;
    while (tested < 100) {
        long r = rng() % 2 ? 2 : 4;
        std::vector<Int> upper;
        for (long i = 0; i < r; ++i)
            for (long j = i; j < r; ++j)
                upper.push_back(i == j ? Int(2 * (static_cast<long>(rng() % 5) + 1))
                                       : Int(static_cast<long>(rng() % 7) - 3));
        HalfIntegralMatrix t = HalfIntegralMatrix::from_upper(r, upper);
        if (t.disc() == 0) continue;
        ++tested;
        auto dd = det_data(t);
        for (long l : {2L, 3L, 5L, 7L})
            CHECK(xi(t, l) == kronecker_symbol(*dd.fund, Int(l)));
    }
}

TEST_CASE("hilbert symbol values") {
    CHECK(hilbert_symbol(Rational(1), Rational(7), 3) == 1);
    CHECK(hilbert_symbol(Rational(-1), Rational(-1), 2) == -1);
    CHECK(hilbert_symbol(Rational(2), Rational(5), 5) == -1);
    CHECK(hilbert_symbol(Rational(-1), Rational(5), 5) == 1);
    CHECK(hilbert_symbol(Rational(2), Rational(3), 2) == -1);
}

TEST_CASE("hilbert symbol symmetry and bimultiplicativity") {
    std::mt19937_64 rng(23);
    auto rand_nonzero = [&]() {
        long v = static_cast<long>(rng() % 41) - 20;
        return Rational(v == 0 ? 1 : v);
    };
    for (long l : {2L, 3L, 5L, 7L}) {
        for (int trial = 0; trial < 50; ++trial) {
            Rational a = rand_nonzero(), b = rand_nonzero(), c = rand_nonzero();
            CHECK(hilbert_symbol(a, b, l) == hilbert_symbol(b, a, l));
            CHECK(hilbert_symbol(a * c, b, l) ==
                  hilbert_symbol(a, b, l) * hilbert_symbol(c, b, l));
        }
    }
}

TEST_CASE("hasse invariant") {
    for (long l : {2L, 3L, 5L}) CHECK(hasse_invariant(HalfIntegralMatrix::identity(3), l) == 1);
    // rank 1: (t, t)_l
    CHECK(hasse_invariant(HalfIntegralMatrix::diag({Int(2)}), 2) == hilbert_symbol(Rational(2), Rational(2), 2));
    // diag(1, -1) at l = 2: (1,1)(1,-1)(-1,-1) = -1
    CHECK(hasse_invariant(HalfIntegralMatrix::diag({Int(1), Int(-1)}), 2) == -1);
}

TEST_CASE("hasse invariant is a rational-equivalence invariant") {
    std::mt19937_64 rng(29);
    int done = 0;
    while (done < 50) {
        std::vector<Int> upper;
        long r = 3;
        for (long i = 0; i < r; ++i)
            for (long j = i; j < r; ++j)
                upper.push_back(i == j ? Int(2 * (static_cast<long>(rng() % 4) + 1))
                                       : Int(static_cast<long>(rng() % 5) - 2));
        HalfIntegralMatrix t = HalfIntegralMatrix::from_upper(r, upper);
        if (t.disc() == 0) continue;
        ++done;
        HalfIntegralMatrix conj = random_unimodular_conjugate(t, rng());
        for (long l : {2L, 3L, 5L}) CHECK(hasse_invariant(t, l) == hasse_invariant(conj, l));
    }
}

TEST_CASE("eta examples") {
    for (long l : {2L, 3L, 5L}) CHECK(eta(HalfIntegralMatrix::identity(1), l) == 1);
    CHECK(eta(HalfIntegralMatrix::diag({Int(5)}), 5) == 1);
    CHECK(eta(HalfIntegralMatrix::identity(3), 2) == -1);
    CHECK_THROWS_AS(eta(HalfIntegralMatrix::identity(2), 3), EvenRankError);
}

TEST_CASE("block embed and scale") {
    auto t = block_embed(HalfIntegralMatrix::diag({Int(2)}), 2);
    CHECK(t.key() == "2:4,0,0");
    CHECK(block_embed(HalfIntegralMatrix::zero(0), 2) == HalfIntegralMatrix::zero(2));
    CHECK(block_embed(HalfIntegralMatrix::identity(2), 3).key() == "3:2,0,0,2,0,0");
    CHECK(scale(HalfIntegralMatrix::diag({Int(1)}), Int(5)) == HalfIntegralMatrix::diag({Int(5)}));
    CHECK(scale(HalfIntegralMatrix::zero(2), Int(3)) == HalfIntegralMatrix::zero(2));
}

TEST_CASE("random unimodular conjugation") {
    HalfIntegralMatrix t = HalfIntegralMatrix::from_upper(2, {Int(2), Int(1), Int(4)});
    auto c1 = random_unimodular_conjugate(t, 42);
    auto c2 = random_unimodular_conjugate(t, 42);
    CHECK(c1 == c2);   // seed-deterministic
    CHECK(c1.doubled().det() == t.doubled().det());
    CHECK(random_unimodular_conjugate(t, 43).doubled().det() == t.doubled().det());
}

TEST_CASE("index enumeration") {
    auto g1 = enumerate_indices(1, 2);
    REQUIRE(g1.size() == 3);
    CHECK(g1[0] == HalfIntegralMatrix::zero(1));
    CHECK(g1[2] == HalfIntegralMatrix::diag({Int(2)}));

    CHECK(enumerate_indices(2, 0).size() == 1);

    auto g2 = enumerate_indices(2, 1);
    REQUIRE(g2.size() == 3);   // 0, diag(1,0), diag(0,1); nothing off-diagonal is psd
    for (const auto& t : g2) CHECK(t.is_psd());
}

TEST_CASE("enumeration is closed under sign conjugation") {
    for (long n : {2L, 3L}) {
        auto all = enumerate_indices(n, 3);
        for (const auto& t : all) {
            // flip the sign of the last basis vector
            IntMat u = IntMat::identity(n);
            u.at(n - 1, n - 1) = -1;
            HalfIntegralMatrix flipped = t.conjugated(u);
            CHECK(std::find(all.begin(), all.end(), flipped) != all.end());
        }
    }
}

TEST_CASE("radical block reduction") {
    // rank-1 matrix inside genus 2
    HalfIntegralMatrix t = HalfIntegralMatrix::from_upper(2, {Int(2), Int(2), Int(2)});
    auto red = radical_block_reduction(t);
    CHECK(red.rank == 1);
    CHECK(red.block.disc() != 0);
    CHECK(abs(red.u.det()) == 1);

    auto full = radical_block_reduction(HalfIntegralMatrix::identity(3));
    CHECK(full.rank == 3);

    auto zero = radical_block_reduction(HalfIntegralMatrix::zero(2));
    CHECK(zero.rank == 0);
}

TEST_CASE("matrix keys round-trip") {
    HalfIntegralMatrix t = HalfIntegralMatrix::from_upper(3, {Int(2), Int(1), Int(-1), Int(4), Int(0), Int(6)});
    CHECK(HalfIntegralMatrix::from_key(t.key()) == t);
}
