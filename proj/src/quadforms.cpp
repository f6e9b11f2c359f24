#include "siegel/quadforms.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace siegel {

HalfIntegralMatrix::HalfIntegralMatrix(IntMat doubled) : n_(doubled.rows()), g_(std::move(doubled)) {
    if (!g_.is_symmetric()) throw Error("doubled matrix must be symmetric");
    for (long i = 0; i < n_; ++i)
        if (g_.at(i, i) % 2 != 0) throw Error("doubled matrix must have even diagonal");
}

HalfIntegralMatrix HalfIntegralMatrix::zero(long n) { return HalfIntegralMatrix(IntMat(n, n)); }

HalfIntegralMatrix HalfIntegralMatrix::identity(long n) {
    IntMat g(n, n);
    for (long i = 0; i < n; ++i) g.at(i, i) = 2;
    return HalfIntegralMatrix(std::move(g));
}

HalfIntegralMatrix HalfIntegralMatrix::diag(const std::vector<Int>& d) {
    long n = static_cast<long>(d.size());
    IntMat g(n, n);
    for (long i = 0; i < n; ++i) g.at(i, i) = 2 * d[i];
    return HalfIntegralMatrix(std::move(g));
}

HalfIntegralMatrix HalfIntegralMatrix::from_upper(long n, const std::vector<Int>& upper) {
    if (static_cast<long>(upper.size()) != n * (n + 1) / 2) throw Error("bad upper-triangle length");
    IntMat g(n, n);
    size_t k = 0;
    for (long i = 0; i < n; ++i)
        for (long j = i; j < n; ++j) {
            g.at(i, j) = upper[k];
            g.at(j, i) = upper[k];
            ++k;
        }
    return HalfIntegralMatrix(std::move(g));
}

HalfIntegralMatrix HalfIntegralMatrix::from_key(const std::string& key) {
    auto colon = key.find(':');
    if (colon == std::string::npos) throw Error("bad matrix key: " + key);
    long n = std::stol(key.substr(0, colon));
    std::vector<Int> upper;
    std::string rest = key.substr(colon + 1);
    std::stringstream ss(rest);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) upper.emplace_back(tok);
    return from_upper(n, upper);
}

Rational HalfIntegralMatrix::det_T() const {
    return make_rational(g_.det(), pow_int(2, n_));
}

Int HalfIntegralMatrix::disc() const {
    // 2^{2 floor(n/2)} det T = det G for even n, det G / 2 for odd n
    Int d = g_.det();
    if (n_ % 2 == 0) return d;
    if (d % 2 != 0) throw Error("odd-size doubled determinant must be even");
    return d / 2;
}

bool HalfIntegralMatrix::is_psd() const {
    // all principal minors of G nonnegative (handles rank degeneracy exactly)
    for (long mask = 1; mask < (1 << n_); ++mask) {
        std::vector<long> idx;
        for (long i = 0; i < n_; ++i)
            if (mask & (1 << i)) idx.push_back(i);
        IntMat sub(idx.size(), idx.size());
        for (size_t a = 0; a < idx.size(); ++a)
            for (size_t b = 0; b < idx.size(); ++b) sub.at(a, b) = g_.at(idx[a], idx[b]);
        if (sub.det() < 0) return false;
    }
    return true;
}

std::vector<Int> HalfIntegralMatrix::upper() const {
    std::vector<Int> u;
    for (long i = 0; i < n_; ++i)
        for (long j = i; j < n_; ++j) u.push_back(g_.at(i, j));
    return u;
}

std::string HalfIntegralMatrix::key() const {
    std::string s = std::to_string(n_) + ":";
    auto u = upper();
    for (size_t i = 0; i < u.size(); ++i) {
        if (i) s += ",";
        s += u[i].get_str();
    }
    return s;
}

HalfIntegralMatrix HalfIntegralMatrix::scaled(const Int& c) const {
    IntMat g = g_;
    for (long i = 0; i < n_; ++i)
        for (long j = 0; j < n_; ++j) g.at(i, j) *= c;
    return HalfIntegralMatrix(std::move(g));
}

HalfIntegralMatrix HalfIntegralMatrix::conjugated(const IntMat& u) const {
    return HalfIntegralMatrix(u.transpose() * g_ * u);
}

bool HalfIntegralMatrix::operator<(const HalfIntegralMatrix& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    auto a = upper(), b = o.upper();
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

DiscriminantData det_data(const HalfIntegralMatrix& t) {
    long r = t.size();
    Int d = t.disc();
    if (d == 0) throw DegenerateError("det_data: degenerate matrix");
    DiscriminantData out;
    out.bigD = d;
    if (r % 2) return out;

    Int d0 = (r / 2) % 2 ? Int(-d) : d;   // (-1)^{r/2} frak-D
    Int m4 = d0 % 4;
    if (m4 < 0) m4 += 4;
    if (m4 != 0 && m4 != 1) throw Error("even-rank discriminant not 0,1 mod 4");
    Int s = squarefree_kernel(d0);
    Int sm4 = s % 4;
    if (sm4 < 0) sm4 += 4;
    Int fund = (sm4 == 1) ? s : Int(4 * s);
    Int fsq = d0 / fund;
    Int f;
    mpz_sqrt(f.get_mpz_t(), fsq.get_mpz_t());
    if (f * f != fsq) throw Error("conductor extraction failed");
    out.fund = fund;
    out.cond = f;
    return out;
}

int xi_squareclass(const Int& x, long l) {
    if (x == 0) throw DegenerateError("xi of zero");
    long v = valuation(x, Int(l));
    Int u = x / pow_int(l, v);
    if (v % 2) return 0;
    if (l == 2) {
        Int m = u % 8;
        if (m < 0) m += 8;
        if (m == 1) return 1;
        if (m == 5) return -1;
        return 0;   // 3, 7 mod 8: ramified
    }
    return mpz_legendre(u.get_mpz_t(), Int(l).get_mpz_t());
}

int xi_squareclass(const Rational& x, long l) {
    // same square class as num * den
    return xi_squareclass(Int(x.get_num() * x.get_den()), l);
}

int xi(const HalfIntegralMatrix& t, long l) {
    if (t.size() % 2) throw OddRankError("xi needs even rank");
    Int d = t.disc();
    if (d == 0) throw DegenerateError("xi: degenerate matrix");
    Int d0 = (t.size() / 2) % 2 ? Int(-d) : d;
    return xi_squareclass(d0, l);
}

namespace {

// l-unit part of a nonzero rational, reduced mod l^k
Int unit_mod(const Rational& x, long l, long k) {
    Int lk = pow_int(l, k);
    Int num = x.get_num(), den = x.get_den();
    long v = valuation(num, Int(l));
    Int u = num / pow_int(l, v);
    long w = valuation(den, Int(l));
    Int d = den / pow_int(l, w);
    Int dinv;
    if (mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), lk.get_mpz_t()) == 0)
        throw Error("unit_mod: not invertible");
    Int r = (u * dinv) % lk;
    if (r < 0) r += lk;
    return r;
}

} // namespace

int hilbert_symbol(const Rational& a, const Rational& b, long l) {
    if (a == 0 || b == 0) throw Error("hilbert symbol of zero");
    long alpha = valuation(a, Int(l));
    long beta = valuation(b, Int(l));
    if (l == 2) {
        Int u = unit_mod(a, 2, 3), v = unit_mod(b, 2, 3);
        auto eps = [](const Int& x) { return ((x - 1) / 2) % 2 != 0; };       // x odd
        auto omg = [](const Int& x) { return ((x * x - 1) / 8) % 2 != 0; };
        bool e = (eps(u) && eps(v)) ^ (alpha % 2 != 0 && omg(v)) ^ (beta % 2 != 0 && omg(u));
        return e ? -1 : 1;
    }
    Int u = unit_mod(a, l, 1), v = unit_mod(b, l, 1);
    Int lz(l);
    int s = 1;
    if (beta % 2) s *= mpz_legendre(u.get_mpz_t(), lz.get_mpz_t());
    if (alpha % 2) s *= mpz_legendre(v.get_mpz_t(), lz.get_mpz_t());
    if ((alpha % 2) && (beta % 2) && (l % 4 == 3)) s = -s;
    return s;
}

namespace {

// rational diagonal of T under congruence (symmetric Gaussian elimination
// with the rank-1 corner trick for vanishing pivots)
std::vector<Rational> rational_diagonal(const HalfIntegralMatrix& t) {
    long n = t.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) a[i][j] = make_rational(t.doubled_at(i, j), Int(2));
    std::vector<Rational> diag;
    for (long k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            long piv = -1;
            for (long j = k + 1; j < n; ++j)
                if (a[j][j] != 0) { piv = j; break; }
            if (piv >= 0) {
                std::swap(a[k], a[piv]);
                for (long i = 0; i < n; ++i) std::swap(a[i][k], a[i][piv]);
            } else {
                long off = -1;
                for (long j = k + 1; j < n; ++j)
                    if (a[k][j] != 0) { off = j; break; }
                if (off < 0) throw DegenerateError("rational_diagonal: degenerate matrix");
                for (long i = 0; i < n; ++i) a[k][i] += a[off][i];
                for (long i = 0; i < n; ++i) a[i][k] += a[i][off];
            }
        }
        const Rational pivot = a[k][k];
        for (long i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            Rational f = a[i][k] / pivot;
            for (long j = k; j < n; ++j) a[i][j] -= f * a[k][j];
            for (long j = k; j < n; ++j) a[j][i] -= f * a[j][k];
        }
        diag.push_back(pivot);
    }
    return diag;
}

} // namespace

int hasse_invariant(const HalfIntegralMatrix& t, long l) {
    if (t.disc() == 0) throw DegenerateError("hasse_invariant: degenerate matrix");
    auto d = rational_diagonal(t);
    int h = 1;
    for (size_t i = 0; i < d.size(); ++i)
        for (size_t j = i; j < d.size(); ++j) h *= hilbert_symbol(d[i], d[j], l);
    return h;
}

int eta(const HalfIntegralMatrix& t, long l) {
    long r = t.size();
    if (r % 2 == 0) throw EvenRankError("eta needs odd rank");
    Rational det = t.det_T();
    if (det == 0) throw DegenerateError("eta: degenerate matrix");
    int h = hasse_invariant(t, l);
    Rational other = ((r - 1) / 2) % 2 ? Rational(-det) : det;
    int mid = hilbert_symbol(det, other, l);
    int e = ((r * r - 1) / 8) % 2 ? hilbert_symbol(Rational(-1), Rational(-1), l) : 1;
    return h * mid * e;
}

HalfIntegralMatrix block_embed(const HalfIntegralMatrix& tp, long n) {
    long r = tp.size();
    if (n < r) throw Error("block_embed: target size too small");
    IntMat g(n, n);
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < r; ++j) g.at(i, j) = tp.doubled_at(i, j);
    return HalfIntegralMatrix(std::move(g));
}

HalfIntegralMatrix scale(const HalfIntegralMatrix& t, const Int& c) { return t.scaled(c); }

namespace {

long rand_below(std::mt19937_64& rng, long n) { return static_cast<long>(rng() % n); }

} // namespace

IntMat random_unimodular_matrix(long n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    IntMat u = IntMat::identity(n);
    if (n < 2) return u;
    long rounds = 3 * n * n + 4;
    for (long t = 0; t < rounds; ++t) {
        long op = rand_below(rng, 4);
        long i = rand_below(rng, n);
        long j = rand_below(rng, n - 1);
        if (j >= i) ++j;
        switch (op) {
            case 0: case 1: {
                long k = rand_below(rng, 4) - 2;   // -2..1
                if (k == 0) k = 2;
                u.add_col(i, j, Int(k));
                break;
            }
            case 2: u.swap_cols(i, j); break;
            default: u.scale_col(i, Int(-1)); break;
        }
    }
    return u;
}

HalfIntegralMatrix random_unimodular_conjugate(const HalfIntegralMatrix& t, uint64_t seed) {
    return t.conjugated(random_unimodular_matrix(t.size(), seed));
}

namespace {

void enumerate_offdiag(long n, const std::vector<Int>& diag, std::vector<Int>& off,
                       long pos, std::vector<HalfIntegralMatrix>& out) {
    long total_off = n * (n - 1) / 2;
    if (pos == total_off) {
        IntMat g(n, n);
        for (long i = 0; i < n; ++i) g.at(i, i) = 2 * diag[i];
        long k = 0;
        for (long i = 0; i < n; ++i)
            for (long j = i + 1; j < n; ++j) {
                g.at(i, j) = off[k];
                g.at(j, i) = off[k];
                ++k;
            }
        HalfIntegralMatrix t{std::move(g)};
        if (t.is_psd()) out.push_back(std::move(t));
        return;
    }
    // recover (i, j) from the linear position
    long k = pos, i = 0;
    while (k >= n - 1 - i) { k -= n - 1 - i; ++i; }
    long j = i + 1 + k;
    // |2 t_ij| <= t_ii + t_jj for positive-semidefinite T
    Int bound = diag[i] + diag[j];
    for (Int v = -bound; v <= bound; ++v) {
        off[pos] = v;
        enumerate_offdiag(n, diag, off, pos + 1, out);
    }
}

void enumerate_diag(long n, long remaining, std::vector<Int>& diag, long pos,
                    std::vector<HalfIntegralMatrix>& out) {
    if (pos == n) {
        std::vector<Int> off(n * (n - 1) / 2, Int(0));
        enumerate_offdiag(n, diag, off, 0, out);
        return;
    }
    for (long d = 0; d <= remaining; ++d) {
        diag[pos] = d;
        enumerate_diag(n, remaining - d, diag, pos + 1, out);
    }
}

} // namespace

std::vector<HalfIntegralMatrix> enumerate_indices(long n, long trace_bound) {
    if (trace_bound < 0) throw Error("trace bound must be nonnegative");
    std::vector<HalfIntegralMatrix> out;
    std::vector<Int> diag(n, Int(0));
    enumerate_diag(n, trace_bound, diag, 0, out);
    std::sort(out.begin(), out.end());
    return out;
}

BlockReduction radical_block_reduction(const HalfIntegralMatrix& t) {
    long n = t.size();
    long rank = 0;
    IntMat u = kernel_completion(t.doubled(), rank);
    IntMat conj = u.transpose() * t.doubled() * u;
    // the radical columns are exact kernel vectors, so the complement block
    // is everything in the upper-left corner
    IntMat block(rank, rank);
    for (long i = 0; i < rank; ++i)
        for (long j = 0; j < rank; ++j) block.at(i, j) = conj.at(i, j);
    for (long i = 0; i < n; ++i)
        for (long j = rank; j < n; ++j)
            if (conj.at(i, j) != 0 || conj.at(j, i) != 0)
                throw Error("radical reduction failed to annihilate kernel block");
    BlockReduction out;
    out.rank = rank;
    out.block = HalfIntegralMatrix(std::move(block));
    out.u = std::move(u);
    return out;
}

} // namespace siegel
