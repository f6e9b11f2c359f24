#pragma once

// The local Siegel series: brute-force computation of the exponential-sum
// power series b_l(S;X) from its definition, extraction of the polynomial
// part F_l(S;X), closed forms for ranks 1 and 2, the functional-equation
// check, and the stabilization polynomial identity check.

#include <vector>

#include "siegel/exactnum.hpp"
#include "siegel/quadforms.hpp"

namespace siegel {

struct SiegelSeriesPoly {
    std::vector<Int> coeffs;   // constant term first; constant term is 1
    long prime = 0;
    long rank = 0;

    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
    Int coeff(long i) const {
        return (i < 0 || i >= static_cast<long>(coeffs.size())) ? Int(0) : coeffs[i];
    }
    CyclotomicNumber eval(const CyclotomicNumber& x) const;
    bool operator==(const SiegelSeriesPoly& o) const {
        return coeffs == o.coeffs && prime == o.prime && rank == o.rank;
    }
};

struct BSeriesPrefix {
    std::vector<Rational> coeffs;   // coefficient m of b_l(S;X) at slot m
    long prime = 0;
};

struct BruteForceOptions {
    // refuse enumerations beyond ~2^cost_log2_limit symmetric matrices
    int cost_log2_limit = 31;
    int jobs = 0;   // 0 = auto
};

// number of symmetric matrices enumerated for a prefix of length m_max + 1
Int b_series_points(long rank, long l, long m_max);
bool b_series_affordable(const HalfIntegralMatrix& t, long l, long m_max,
                         const BruteForceOptions& opt = {});

// coefficients 0..m_max of b_l(T;X), each reduced to an exact rational
BSeriesPrefix b_series_bruteforce(const HalfIntegralMatrix& t, long l, long m_max,
                                  const BruteForceOptions& opt = {});

SiegelSeriesPoly F_closed_rank1(const Int& t, long l);
SiegelSeriesPoly F_closed_rank2(const HalfIntegralMatrix& t, long l);   // l odd

// least m such that l^m T^{-1} is half-integral over Z_l
long inverse_denominator_exponent(const HalfIntegralMatrix& t, long l);

// degree of F_l(T;X): 2 val_l(cond) for even rank, val_l(disc) for odd rank
long siegel_series_degree(const HalfIntegralMatrix& t, long l);

// divide the brute-forced b-prefix by the explicit rational cofactor; when
// fe_completion is set, only the lower half of the coefficients is brute
// forced and the rest is filled in through the functional equation
SiegelSeriesPoly F_from_b(const HalfIntegralMatrix& t, long l, bool fe_completion = false,
                          const BruteForceOptions& opt = {});

// dispatcher with a process-wide cache: closed forms for rank <= 2 (odd l),
// functional-equation-completed brute force otherwise
SiegelSeriesPoly F_local(const HalfIntegralMatrix& t, long l, const BruteForceOptions& opt = {});

bool functional_equation_check(const HalfIntegralMatrix& t, long l, const SiegelSeriesPoly& f);

// the rank-r alternating sum of scaled F-polynomials against the explicit
// rational side (elementary-symmetric combination identity)
bool spoly_identity_check(const HalfIntegralMatrix& tp, long p, const BruteForceOptions& opt = {});

} // namespace siegel
