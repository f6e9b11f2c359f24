#pragma once

// Half-integral symmetric matrices and their arithmetic invariants:
// discriminant data, the local square-class character xi_l, Hilbert symbol,
// Hasse invariant and the odd-rank functional-equation sign eta_l.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "siegel/exactnum.hpp"

namespace siegel {

// A symmetric positive-semidefinite (in Fourier-index use) half-integral
// matrix T, stored through its doubled matrix G = 2T so that every entry is
// an integer and the diagonal of G is even.
class HalfIntegralMatrix {
public:
    HalfIntegralMatrix() : n_(0), g_(0, 0) {}
    explicit HalfIntegralMatrix(IntMat doubled);

    static HalfIntegralMatrix zero(long n);
    static HalfIntegralMatrix identity(long n);
    static HalfIntegralMatrix diag(const std::vector<Int>& d);
    // row-major upper-triangular doubled entries g11, g12, ..., gnn
    static HalfIntegralMatrix from_upper(long n, const std::vector<Int>& upper);
    static HalfIntegralMatrix from_key(const std::string& key);

    long size() const { return n_; }
    const IntMat& doubled() const { return g_; }
    const Int& doubled_at(long i, long j) const { return g_.at(i, j); }

    Rational det_T() const;             // det of T itself
    Int disc() const;                   // frak-D = 2^{2*floor(n/2)} det T, an integer
    bool is_psd() const;                // every principal minor of G is >= 0

    std::string key() const;            // "n:g11,g12,...,gnn"
    std::vector<Int> upper() const;

    HalfIntegralMatrix scaled(const Int& c) const;
    HalfIntegralMatrix conjugated(const IntMat& u) const;   // tU T U

    bool operator==(const HalfIntegralMatrix& o) const { return n_ == o.n_ && g_ == o.g_; }
    bool operator<(const HalfIntegralMatrix& o) const;

private:
    long n_;
    IntMat g_;
};

// discriminant data: frak-D always; fundamental discriminant and conductor
// for even rank, via (-1)^{r/2} D = d * f^2
struct DiscriminantData {
    Int bigD;
    std::optional<Int> fund;
    std::optional<Int> cond;
};

DiscriminantData det_data(const HalfIntegralMatrix& t);

// square class of a nonzero integer (or rational) in Q_l:
// +1 square, -1 unramified non-square, 0 ramified
int xi_squareclass(const Int& x, long l);
int xi_squareclass(const Rational& x, long l);
// xi_l evaluated at (-1)^{r/2} det T, even rank only
int xi(const HalfIntegralMatrix& t, long l);

int hilbert_symbol(const Rational& a, const Rational& b, long l);

// Hasse invariant over a rational diagonalization diag(a_1..a_r):
// product of (a_i, a_j)_l over i <= j (convention includes i = j)
int hasse_invariant(const HalfIntegralMatrix& t, long l);

// h_l(S) (det S, (-1)^{(r-1)/2} det S)_l (-1,-1)_l^{(r^2-1)/8}, odd rank
int eta(const HalfIntegralMatrix& t, long l);

HalfIntegralMatrix block_embed(const HalfIntegralMatrix& tp, long n);
HalfIntegralMatrix scale(const HalfIntegralMatrix& t, const Int& c);

IntMat random_unimodular_matrix(long n, uint64_t seed);
HalfIntegralMatrix random_unimodular_conjugate(const HalfIntegralMatrix& t, uint64_t seed);

// all positive-semidefinite half-integral T of size n with trace <= bound,
// duplicate-free, sorted
std::vector<HalfIntegralMatrix> enumerate_indices(long n, long trace_bound);

// tU T U = diag(block, 0_{n-r}) with nondegenerate block of size r = rank T
struct BlockReduction {
    long rank;
    HalfIntegralMatrix block;
    IntMat u;
};
BlockReduction radical_block_reduction(const HalfIntegralMatrix& t);

} // namespace siegel
