#pragma once

// Exact arithmetic substrate: arbitrary-precision integers and rationals
// (GMP-backed), dense rational polynomials, cyclotomic numbers in the power
// basis modulo the cyclotomic polynomial, and integer-matrix normal forms.
// No floating point anywhere in this module.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "siegel/errors.hpp"

namespace siegel {

using Int = mpz_class;
using Rational = mpq_class;

// -------- integers / rationals --------

Int pow_int(const Int& base, unsigned long e);
Int pow_int(long base, unsigned long e);

// valuation of x at prime p; x must be nonzero
long valuation(const Int& x, const Int& p);
long valuation(const Rational& x, const Int& p);

Rational make_rational(const Int& num, const Int& den);
std::string rational_str(const Rational& q);          // "num/den", "/den" omitted when den = 1
Rational rational_from_str(const std::string& s);

Int binomial_int(unsigned long n, unsigned long k);

long euler_phi(long n);
std::vector<std::pair<Int, int>> factorize(Int n);    // n != 0, prime -> exponent, ascending

// squarefree kernel with sign: n = kernel * square, kernel squarefree
Int squarefree_kernel(const Int& n);

// -------- dense polynomials over Q --------

class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    explicit QPoly(const Rational& c0) : c_{c0} { trim(); }

    static QPoly monomial(const Rational& c, long deg);

    long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    Rational coeff(long i) const;
    const std::vector<Rational>& coeffs() const { return c_; }

    QPoly operator+(const QPoly& o) const;
    QPoly operator-(const QPoly& o) const;
    QPoly operator*(const QPoly& o) const;
    QPoly operator*(const Rational& s) const;
    bool operator==(const QPoly& o) const { return c_ == o.c_; }

    // euclidean division; remainder has degree < degree(d)
    static void divmod(const QPoly& n, const QPoly& d, QPoly& q, QPoly& r);
    QPoly mod(const QPoly& d) const;
    QPoly div_exact(const QPoly& d) const;            // throws NonIntegralQuotientError on remainder

    Rational eval(const Rational& x) const;

private:
    std::vector<Rational> c_;   // c_[i] = coefficient of x^i, no trailing zeros
    void trim();
};

const QPoly& cyclotomic_polynomial(long n);           // memoized

// -------- cyclotomic numbers --------

// An element of Q(zeta_N) stored in the power basis 1, x, ..., x^{phi(N)-1}
// reduced modulo the N-th cyclotomic polynomial, so equality at a fixed
// conductor is coefficient-wise.
class CyclotomicNumber {
public:
    CyclotomicNumber() : conductor_(1), c_(1, Rational(0)) {}
    explicit CyclotomicNumber(const Rational& r) : conductor_(1), c_(1, r) {}
    explicit CyclotomicNumber(const Int& z) : conductor_(1), c_(1, Rational(z)) {}
    explicit CyclotomicNumber(long z) : conductor_(1), c_(1, Rational(z)) {}

    static CyclotomicNumber root_of_unity(long n, long j);
    // from raw power-basis coefficients (any length), reduced mod Phi_n
    static CyclotomicNumber from_powers(long n, const std::vector<Rational>& raw);
    static CyclotomicNumber from_reduced(long n, std::vector<Rational> coeffs);

    long conductor() const { return conductor_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Rational to_rational() const;                     // throws NotRationalError

    CyclotomicNumber to_conductor(long m) const;      // conductor_ | m
    CyclotomicNumber conjugate() const;               // complex conjugation
    CyclotomicNumber inverse() const;                 // nonzero
    CyclotomicNumber pow(unsigned long e) const;

    CyclotomicNumber operator+(const CyclotomicNumber& o) const;
    CyclotomicNumber operator-(const CyclotomicNumber& o) const;
    CyclotomicNumber operator*(const CyclotomicNumber& o) const;
    CyclotomicNumber operator-() const;
    bool operator==(const CyclotomicNumber& o) const;

private:
    long conductor_;
    std::vector<Rational> c_;   // length phi(conductor_)
};

CyclotomicNumber rational_cyclo(const Rational& r);
Rational rational_from_cyclotomic(const CyclotomicNumber& z);

// -------- integer matrices --------

class IntMat {
public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(long rows, long cols) : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}

    static IntMat identity(long n);

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    Int& at(long i, long j) { return a_[i * cols_ + j]; }
    const Int& at(long i, long j) const { return a_[i * cols_ + j]; }

    IntMat operator*(const IntMat& o) const;
    IntMat transpose() const;
    bool operator==(const IntMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    bool is_symmetric() const;
    Int det() const;                                  // square, fraction-free elimination

    void swap_rows(long i, long j);
    void swap_cols(long i, long j);
    void add_row(long dst, long src, const Int& k);   // row dst += k * row src
    void add_col(long dst, long src, const Int& k);
    void scale_row(long i, const Int& k);
    void scale_col(long j, const Int& k);

private:
    long rows_, cols_;
    std::vector<Int> a_;
};

struct SmithDecomposition {
    IntMat left;            // unimodular
    std::vector<Int> diag;  // nonnegative, d_i | d_{i+1}
    IntMat right;           // unimodular;  left * input * right = diag
};

SmithDecomposition smith_normal_form(const IntMat& a);

// Unimodular U such that A*U has its zero columns last; rank_out gets rank(A).
// For symmetric A the congruence tU A U is then block-diagonal with a
// nondegenerate rank x rank block in the upper left.
IntMat kernel_completion(const IntMat& a, long& rank_out);

} // namespace siegel
