#pragma once

// Classical and semi-ordinary p-stabilized Fourier coefficients of Siegel
// Eisenstein series, the U_{p,n} re-indexing action on tables, and the
// stabilization-polynomial machinery.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "siegel/characters.hpp"
#include "siegel/lvalues.hpp"
#include "siegel/quadforms.hpp"
#include "siegel/siegelseries.hpp"

namespace siegel {

struct EisensteinParams {
    long genus;
    long weight;
    DirichletCharacter chi;

    // enforces weight > genus + 1, chi(-1) = (-1)^weight, odd modulus, and
    // chi trivial or primitive with locally non-quadratic square
    EisensteinParams(long genus_, long weight_, DirichletCharacter chi_);
};

// sparse bivariate integer polynomial in (X, Y)
class BivarPoly {
public:
    BivarPoly() = default;
    static BivarPoly constant(const Int& c);
    static BivarPoly term(const Int& c, long dx, long dy);

    BivarPoly operator*(const BivarPoly& o) const;
    BivarPoly operator+(const BivarPoly& o) const;
    bool operator==(const BivarPoly& o) const { return c_ == o.c_; }

    QPoly eval_y1() const;             // substitute Y = 1, polynomial in X
    BivarPoly reflect_y(long n) const; // Y^n * this(X, 1/Y)
    const std::map<std::pair<long, long>, Int>& terms() const { return c_; }

private:
    std::map<std::pair<long, long>, Int> c_;   // (degX, degY) -> coefficient
    void drop_zeros();
};

struct StabilizationPolys {
    BivarPoly P, R, Rtilde;
};

// P = (1 - p^n XY) prod_{i<=n/2} (1 - p^{2n-2i+1} X^2 Y),
// R = prod_{j<=n} (1 - p^{j(2n-j+1)/2} X^j Y), Rtilde = Y^n R(X, 1/Y)
StabilizationPolys stabilization_polys(long n, long p);

// Fourier coefficient of the classical series at a positive-semidefinite
// index, through the rank-block reduction and the local-polynomial formula
CyclotomicNumber classical_coefficient(const EisensteinParams& params, const HalfIntegralMatrix& t);

// same with the Euler factor at p removed from every L-value and the local
// product restricted to primes away from p
CyclotomicNumber stabilized_coefficient(const EisensteinParams& params, long p,
                                        const HalfIntegralMatrix& t);

struct FourierTable {
    EisensteinParams params;
    std::optional<long> prime;   // stabilization prime, if any
    long trace_bound = 0;
    std::map<std::string, CyclotomicNumber> entries;   // canonical key -> value
};

FourierTable build_table(const EisensteinParams& params, std::optional<long> p, long trace_bound,
                         int jobs = 0);

// output entry at T = input entry at pT for every index with trace up to
// out_trace_bound (default: the whole input range); throws MissingIndexError
// when a required pT is absent
FourierTable u_pn_apply(const FourierTable& table, long p, long out_trace_bound = -1);

// the linear combination of U_{p,n}-powers with the scalar normalization that
// fixes the U_{p,n}-eigenvalue at 1, computed from classical coefficients
FourierTable stabilize_via_operator(const EisensteinParams& params, long p, long trace_bound,
                                    int jobs = 0);

} // namespace siegel
