#pragma once

// p-adic layer: truncated Z_p arithmetic with explicit precision tracking,
// Teichmuller lifts, the p-adic logarithm and the weight coordinate s(x),
// interpolated one-variable L-series, and the Iwasawa-algebra Fourier
// coefficients with their specialization contracts.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "siegel/characters.hpp"
#include "siegel/eisenstein.hpp"
#include "siegel/exactnum.hpp"
#include "siegel/quadforms.hpp"

namespace siegel {

// an element of Z_p known modulo p^prec; arithmetic tracks the worst-case
// precision of the result (division by p-powers subtracts, multiplication by
// high-valuation factors adds)
class PadicInt {
public:
    PadicInt() : p_(0), prec_(0) {}
    PadicInt(long p, const Int& value, long prec);

    static PadicInt from_rational(long p, const Rational& q, long prec);
    // embeds Q(zeta_d) for d | p-1 by sending the canonical root to the
    // Teichmuller lift of g^{(p-1)/d}, g the smallest primitive root mod p
    static PadicInt from_cyclotomic(long p, const CyclotomicNumber& z, long prec);

    long prime() const { return p_; }
    long prec() const { return prec_; }
    const Int& residue() const { return r_; }
    // lower bound for the valuation (exact when the residue is nonzero)
    long val_bound() const;

    PadicInt operator+(const PadicInt& o) const;
    PadicInt operator-(const PadicInt& o) const;
    PadicInt operator*(const PadicInt& o) const;
    PadicInt operator-() const;
    PadicInt mul_int(const Int& k) const;          // exact integer factor
    PadicInt div_exact_int(const Int& k) const;    // exact nonzero integer divisor
    PadicInt inverse() const;                      // unit only
    PadicInt pow(unsigned long e) const;
    PadicInt with_prec(long prec) const;           // cap precision

    bool congruent(const PadicInt& o, long digits) const;
    bool operator==(const PadicInt& o) const {
        return p_ == o.p_ && prec_ == o.prec_ && r_ == o.r_;
    }
    std::string str() const;

private:
    long p_;
    long prec_;
    Int r_;   // 0 <= r < p^prec
};

PadicInt teichmuller(const Int& x, long p, long prec);
PadicInt angle_part(const Int& x, long p, long prec);   // omega(x)^{-1} x in 1 + pZ_p
PadicInt padic_log(const PadicInt& x);                  // x in 1 + pZ_p
PadicInt s_of(const PadicInt& x);                       // log x / log(1+p), s(1+p) = 1

// a class of Z_p[[X]] modulo (p^*, X^xprec) with per-slot precision
class LambdaElement {
public:
    LambdaElement() : p_(0), xprec_(0) {}
    LambdaElement(long p, long xprec, std::vector<PadicInt> coeffs);

    static LambdaElement zero(long p, long xprec, long pprec);
    static LambdaElement constant(const PadicInt& c, long xprec);
    static LambdaElement from_qpoly(const QPoly& f, long p, long xprec, long pprec);

    long prime() const { return p_; }
    long xprec() const { return xprec_; }
    const std::vector<PadicInt>& coeffs() const { return c_; }
    const PadicInt& coeff(long k) const { return c_[k]; }

    LambdaElement operator+(const LambdaElement& o) const;
    LambdaElement operator-(const LambdaElement& o) const;
    LambdaElement operator*(const LambdaElement& o) const;
    LambdaElement scale(const PadicInt& s) const;

    // substitute u(X) for X; u must have constant term of valuation >= 1
    LambdaElement compose(const LambdaElement& u) const;

    // evaluate at a point of valuation >= 1; precision accounts for the
    // discarded tail beyond X^xprec
    PadicInt evaluate(const PadicInt& x) const;

    LambdaElement capped(const std::vector<long>& slot_prec) const;

private:
    long p_;
    long xprec_;
    std::vector<PadicInt> c_;
};

// sum_{k < xprec} C(s, k) X^k with p-adic binomial coefficients
LambdaElement binomial_series(const PadicInt& s, long xprec);

// the one-variable interpolated L-series attached to a tame character theta
// (p-power-free conductor) and a torsion tag b: the unique element whose
// value at X = (1+p)^k - 1, k == b mod (p-1), k > 1, is
//   ((1+p)^k - 1) * (depleted zeta value)   when theta and the tag are trivial,
//   L^{(p)}(1-k, theta)                    otherwise.
// Constructed by Newton interpolation at xprec sample weights with guard
// precision and validated at two held-out weights.
LambdaElement dirichlet_Lbar_series(const DirichletCharacter& theta, long b, long p, long xprec,
                                    long pprec);

// a pole-factor id: ('s', i) for (1+p)^{-2i}(1+X)^2 - 1, ('l', j) for
// (1+p)^{-j}(1+X) - 1 (so ('l', 0) is X itself)
using PoleFactor = std::pair<char, long>;

QPoly pole_factor_poly(const PoleFactor& f, long p);

// a specialization value mantissa * p^{-shift}; shift stays 0 unless a pole
// factor genuinely fails to cancel p-adically (the trivial-tag constant term)
struct WeightValue {
    PadicInt mantissa;
    long shift = 0;

    long prec() const { return mantissa.prec(); }
    bool congruent_rational(const Rational& r, long digits) const;
    std::string str() const;
};

struct LambdaFraction {
    LambdaElement num;
    std::vector<PoleFactor> poles;

    long pole_order() const { return static_cast<long>(poles.size()); }
    // value at X = (1+p)^kappa - 1
    WeightValue evaluate_at_weight(long kappa) const;
};

// the L-series wrapped with its pole bookkeeping: pole at X = 0 exactly when
// theta and the tag are trivial
LambdaFraction calL_series(const DirichletCharacter& theta, long b, long p, long xprec, long pprec);

// Fourier coefficient of the Iwasawa-algebra family at index T of genus n
LambdaFraction lambda_coefficient(const HalfIntegralMatrix& t, long n, const DirichletCharacter& chi,
                                  long a, long p, long xprec, long pprec);

// clearing polynomial, exact rational coefficients; asserts the two displayed
// factorizations agree
QPoly B_poly_exact(long n, long p);
LambdaElement B_poly(long n, long p, long xprec, long pprec);
std::vector<PoleFactor> B_poly_factors(long n);

// B-poly times the coefficient with exact pole cancellation; the result must
// have no remaining poles
LambdaElement integral_lambda_coefficient(const HalfIntegralMatrix& t, long n,
                                          const DirichletCharacter& chi, long a, long p, long xprec,
                                          long pprec);

} // namespace siegel
