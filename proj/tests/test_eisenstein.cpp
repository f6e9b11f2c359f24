#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "siegel/eisenstein.hpp"

using namespace siegel;

namespace {
Rational sigma(long m, long k, long skip) {
    Rational acc(0);
    for (long d = 1; d <= m; ++d)
        if (m % d == 0 && (skip == 0 || d % skip != 0)) acc += Rational(pow_int(d, k));
    return acc;
}
} // namespace

TEST_CASE("parameter guards") {
    auto trivial = DirichletCharacter::trivial();
    CHECK_THROWS_AS(EisensteinParams(1, 2, trivial), InvalidParamsError);   // weight too small
    CHECK_THROWS_AS(EisensteinParams(1, 5, trivial), InvalidParamsError);   // parity mismatch
    CHECK_THROWS_AS(EisensteinParams(1, 4, DirichletCharacter::kronecker_character(Int(-4))),
                    InvalidParamsError);                                    // even modulus
    // quadratic character mod 5: square locally trivial
    CHECK_THROWS_AS(EisensteinParams(1, 5, DirichletCharacter::kronecker_character(Int(5))),
                    InvalidParamsError);
    CHECK_NOTHROW(EisensteinParams(2, 5, DirichletCharacter::from_images(Int(7), {1})));
}

TEST_CASE("stabilization polynomials") {
    auto sp1 = stabilization_polys(1, 5);
    CHECK(sp1.P == sp1.R);
    // 1 - pXY
    BivarPoly want = BivarPoly::constant(Int(1)) + BivarPoly::term(Int(-5), 1, 1);
    CHECK(sp1.R == want);
    // Rtilde = Y - pX
    BivarPoly wantr = BivarPoly::term(Int(1), 0, 1) + BivarPoly::term(Int(-5), 1, 0);
    CHECK(sp1.Rtilde == wantr);

    auto sp2 = stabilization_polys(2, 3);
    CHECK(sp2.P == sp2.R);
    BivarPoly want2 = (BivarPoly::constant(Int(1)) + BivarPoly::term(Int(-9), 1, 1)) *
                      (BivarPoly::constant(Int(1)) + BivarPoly::term(Int(-27), 2, 1));
    CHECK(sp2.P == want2);

    auto sp3 = stabilization_polys(3, 2);
    CHECK_FALSE(sp3.P == sp3.R);
    CHECK_NOTHROW(sp3.R.eval_y1().div_exact(sp3.P.eval_y1()));
}

TEST_CASE("genus 1 classical coefficients are divisor sums") {
    EisensteinParams params(1, 4, DirichletCharacter::trivial());
    CHECK(classical_coefficient(params, HalfIntegralMatrix::zero(1)).to_rational() ==
          make_rational(Int(1), Int(240)));
    CHECK(classical_coefficient(params, HalfIntegralMatrix::diag({Int(6)})).to_rational() == 252);
    for (long m = 1; m <= 20; ++m)
        CHECK(classical_coefficient(params, HalfIntegralMatrix::diag({Int(m)})).to_rational() ==
              sigma(m, 3, 0));
}

TEST_CASE("genus 1 stabilized coefficients drop p-divisible divisors") {
    EisensteinParams params(1, 4, DirichletCharacter::trivial());
    CHECK(stabilized_coefficient(params, 5, HalfIntegralMatrix::diag({Int(5)})).to_rational() == 1);
    CHECK(stabilized_coefficient(params, 5, HalfIntegralMatrix::diag({Int(10)})).to_rational() == 9);
    for (long m = 1; m <= 20; ++m)
        CHECK(stabilized_coefficient(params, 5, HalfIntegralMatrix::diag({Int(m)})).to_rational() ==
              sigma(m, 3, 5));
}

TEST_CASE("genus 2 constant term") {
    EisensteinParams params(2, 4, DirichletCharacter::trivial());
    CHECK(classical_coefficient(params, HalfIntegralMatrix::zero(2)).to_rational() ==
          make_rational(Int(-1), Int(60480)));
    // depleted variant
    Rational depleted = stabilized_coefficient(params, 5, HalfIntegralMatrix::zero(2)).to_rational();
    Rational want = Rational(1 - 125) * make_rational(Int(1), Int(120)) * Rational(1 - 3125) *
                    make_rational(Int(-1), Int(252)) / 2;
    CHECK(depleted == want);
}

TEST_CASE("floor-bracket two-power at rank 0 in genus 2") {
    // 2^{[(0+1)/2] - [(2+1)/2]} = 2^{-1}: the constant term carries exactly 1/2
    EisensteinParams params(2, 4, DirichletCharacter::trivial());
    Rational v = classical_coefficient(params, HalfIntegralMatrix::zero(2)).to_rational();
    Rational product = L_at_negative(4, DirichletCharacter::trivial()).to_rational() *
                       L_at_negative(6, DirichletCharacter::trivial()).to_rational();
    CHECK(v * 2 == product);
}

TEST_CASE("build_table fills deterministically") {
    EisensteinParams params(1, 4, DirichletCharacter::trivial());
    FourierTable t1 = build_table(params, std::nullopt, 3, 2);
    FourierTable t2 = build_table(params, std::nullopt, 3, 1);
    CHECK(t1.entries == t2.entries);
    CHECK(t1.entries.size() == 4);
    CHECK(t1.entries.at("1:6").to_rational() == 28);   // sigma_3(3)
}

TEST_CASE("u_pn re-indexing") {
    EisensteinParams params(1, 4, DirichletCharacter::trivial());
    FourierTable table = build_table(params, std::nullopt, 10);
    FourierTable shifted = u_pn_apply(table, 2, 5);
    CHECK(shifted.entries.at("1:4").to_rational() == sigma(4, 3, 0));   // entry at [2] <- [4]
    CHECK(shifted.entries.at("1:0") == table.entries.at("1:0"));
    FourierTable small = build_table(params, std::nullopt, 1);
    CHECK_THROWS_AS(u_pn_apply(small, 2), MissingIndexError);

    // stabilized tables are U_{p,n} fixed points
    FourierTable stab = build_table(params, 2, 10);
    FourierTable stab_shift = u_pn_apply(stab, 2, 5);
    for (const auto& [key, value] : stab_shift.entries)
        CHECK(value == stab.entries.at(key));

    // the zero table maps to the zero table
    FourierTable zeros{params, std::nullopt, 4, {}};
    for (const auto& t : enumerate_indices(1, 4))
        zeros.entries.emplace(t.key(), CyclotomicNumber(Rational(0)));
    FourierTable zshift = u_pn_apply(zeros, 2, 2);
    for (const auto& [key, value] : zshift.entries) CHECK(value.is_zero());
}

TEST_CASE("genus 1 operator stabilization reproduces the depleted sum") {
    EisensteinParams params(1, 4, DirichletCharacter::trivial());
    FourierTable via_op = stabilize_via_operator(params, 5, 6);
    for (const auto& [key, value] : via_op.entries) {
        HalfIntegralMatrix t = HalfIntegralMatrix::from_key(key);
        CHECK(value == stabilized_coefficient(params, 5, t));
    }
}

TEST_CASE("genus 2 operator identity at a small bound") {
    EisensteinParams params(2, 4, DirichletCharacter::trivial());
    FourierTable via_op = stabilize_via_operator(params, 3, 2);
    for (const auto& [key, value] : via_op.entries)
        CHECK(value == stabilized_coefficient(params, 3, HalfIntegralMatrix::from_key(key)));
}

TEST_CASE("operator constant term carries the depletion scalar") {
    // at T = 0 the combination collapses to P(chi(p) p^{kappa-n-1}, 1) * A(0)
    EisensteinParams params(2, 4, DirichletCharacter::trivial());
    FourierTable via_op = stabilize_via_operator(params, 5, 0);
    Rational a0 = classical_coefficient(params, HalfIntegralMatrix::zero(2)).to_rational();
    Rational scalar = Rational(1 - 125) * Rational(1 - 3125);
    CHECK(via_op.entries.at("2:0,0,0").to_rational() == scalar * a0);
}

TEST_CASE("normalized genus-2 weight-4 coefficients match the classical table") {
    // dividing by the constant term gives the integer expansion
    // 1, 240, 2160, 13440, 30240 at indices 0, [1], [2], disc-3, disc-4
    EisensteinParams params(2, 4, DirichletCharacter::trivial());
    Rational c0 = classical_coefficient(params, HalfIntegralMatrix::zero(2)).to_rational();
    auto norm = [&](const HalfIntegralMatrix& t) -> Rational {
        return classical_coefficient(params, t).to_rational() / c0;
    };
    CHECK(norm(HalfIntegralMatrix::diag({Int(1), Int(0)})) == 240);
    CHECK(norm(HalfIntegralMatrix::diag({Int(2), Int(0)})) == 2160);
    CHECK(norm(HalfIntegralMatrix::from_upper(2, {Int(2), Int(1), Int(2)})) == 13440);
    CHECK(norm(HalfIntegralMatrix::identity(2)) == 30240);
}

TEST_CASE("rank-deficient entries reproduce the lower-genus table") {
    // the coefficient at diag(T', 0) equals the genus-(n-1) coefficient times
    // the extra L-factor, uniformly in T' including the constant term
    auto trivial = DirichletCharacter::trivial();
    for (long kappa : {4L, 6L}) {
        EisensteinParams g2(2, kappa, trivial);
        EisensteinParams g1(1, kappa, trivial);
        Rational factor = L_at_negative(2 * kappa - 2, trivial).to_rational();
        for (long m = 0; m <= 6; ++m) {
            HalfIntegralMatrix t2 = block_embed(
                m ? HalfIntegralMatrix::diag({Int(m)}) : HalfIntegralMatrix::zero(0), 2);
            Rational lhs = classical_coefficient(g2, t2).to_rational();
            Rational rhs = factor * classical_coefficient(g1, HalfIntegralMatrix::diag({Int(m)}))
                                        .to_rational();
            if (m == 0) rhs = factor * classical_coefficient(g1, HalfIntegralMatrix::zero(1))
                                           .to_rational();
            CHECK(lhs == rhs);
        }
    }
    // one genus-3 spot check against genus 2: the floor-bracket two-powers
    // differ by 2^{-1} and the i-products are both empty at rank 2
    EisensteinParams g3(3, 6, trivial);
    EisensteinParams g2(2, 6, trivial);
    HalfIntegralMatrix t = block_embed(HalfIntegralMatrix::identity(2), 3);
    CHECK(classical_coefficient(g3, t).to_rational() * 2 ==
          classical_coefficient(g2, HalfIntegralMatrix::identity(2)).to_rational());
}

TEST_CASE("classical coefficients are GL-invariant") {
    std::mt19937_64 rng(47);
    EisensteinParams params(2, 4, DirichletCharacter::trivial());
    auto indices = enumerate_indices(2, 3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto& t = indices[trial % indices.size()];
        auto conj = random_unimodular_conjugate(t, rng());
        CHECK(classical_coefficient(params, conj) == classical_coefficient(params, t));
    }
}

TEST_CASE("nontrivial character tables") {
    DirichletCharacter chi = DirichletCharacter::from_images(Int(7), {1});
    EisensteinParams params(1, 3, chi);
    // sigma_{2,chi}(m) by hand for a few m
    for (long m : {1L, 2L, 3L, 6L, 7L, 14L}) {
        CyclotomicNumber want{Rational(0)};
        for (long d = 1; d <= m; ++d)
            if (m % d == 0) want = want + chi(Int(d)) * CyclotomicNumber(Rational(d * d));
        CHECK(classical_coefficient(params, HalfIntegralMatrix::diag({Int(m)})) == want);
    }
    // constant term: L(-2, chi) / 2
    CHECK(classical_coefficient(params, HalfIntegralMatrix::zero(1)) ==
          L_at_negative(3, chi) * CyclotomicNumber(make_rational(Int(1), Int(2))));
}
