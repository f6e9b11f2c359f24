#include "siegel/exactnum.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace siegel {

// -------- integers / rationals --------

Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Int pow_int(long base, unsigned long e) { return pow_int(Int(base), e); }

long valuation(const Int& x, const Int& p) {
    if (x == 0) throw Error("valuation of zero");
    Int rem;
    return static_cast<long>(mpz_remove(rem.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const Rational& x, const Int& p) {
    if (x == 0) throw Error("valuation of zero");
    return valuation(Int(x.get_num()), p) - valuation(Int(x.get_den()), p);
}

Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw Error("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string rational_str(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_str(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw Error("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

Int binomial_int(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

long euler_phi(long n) {
    if (n <= 0) throw Error("euler_phi of nonpositive");
    long result = 1;
    long m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        long pk = 1;
        while (m % p == 0) { m /= p; pk *= p; }
        result *= pk - pk / p;
    }
    if (m > 1) result *= m - 1;
    return result;
}

std::vector<std::pair<Int, int>> factorize(Int n) {
    if (n == 0) throw Error("factorize of zero");
    if (n < 0) n = -n;
    std::vector<std::pair<Int, int>> out;
    for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

Int squarefree_kernel(const Int& n) {
    if (n == 0) throw Error("squarefree_kernel of zero");
    Int k = n < 0 ? Int(-1) : Int(1);
    for (const auto& [p, e] : factorize(n))
        if (e % 2) k *= p;
    return k;
}

// -------- QPoly --------

void QPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly QPoly::monomial(const Rational& c, long deg) {
    std::vector<Rational> v(deg + 1, Rational(0));
    v[deg] = c;
    return QPoly(std::move(v));
}

Rational QPoly::coeff(long i) const {
    if (i < 0 || i >= static_cast<long>(c_.size())) return Rational(0);
    return c_[i];
}

QPoly QPoly::operator+(const QPoly& o) const {
    std::vector<Rational> v(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return QPoly(std::move(v));
}

QPoly QPoly::operator-(const QPoly& o) const {
    std::vector<Rational> v(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] -= o.c_[i];
    return QPoly(std::move(v));
}

QPoly QPoly::operator*(const QPoly& o) const {
    if (is_zero() || o.is_zero()) return QPoly();
    std::vector<Rational> v(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            if (o.c_[j] != 0) v[i + j] += c_[i] * o.c_[j];
    }
    return QPoly(std::move(v));
}

QPoly QPoly::operator*(const Rational& s) const {
    std::vector<Rational> v(c_);
    for (auto& x : v) x *= s;
    return QPoly(std::move(v));
}

void QPoly::divmod(const QPoly& n, const QPoly& d, QPoly& q, QPoly& r) {
    if (d.is_zero()) throw Error("polynomial division by zero");
    std::vector<Rational> rem(n.c_);
    long dd = d.degree();
    std::vector<Rational> quo;
    long qd = static_cast<long>(rem.size()) - 1 - dd;
    if (qd >= 0) quo.assign(qd + 1, Rational(0));
    const Rational lead = d.c_.back();
    for (long i = static_cast<long>(rem.size()) - 1; i >= dd; --i) {
        if (rem[i] == 0) continue;
        Rational f = rem[i] / lead;
        quo[i - dd] = f;
        for (long j = 0; j <= dd; ++j) rem[i - dd + j] -= f * d.c_[j];
    }
    q = QPoly(std::move(quo));
    r = QPoly(std::move(rem));
}

QPoly QPoly::mod(const QPoly& d) const {
    QPoly q, r;
    divmod(*this, d, q, r);
    return r;
}

QPoly QPoly::div_exact(const QPoly& d) const {
    QPoly q, r;
    divmod(*this, d, q, r);
    if (!r.is_zero()) throw NonIntegralQuotientError("inexact polynomial division");
    return q;
}

Rational QPoly::eval(const Rational& x) const {
    Rational acc(0);
    for (long i = degree(); i >= 0; --i) acc = acc * x + c_[i];
    return acc;
}

const QPoly& cyclotomic_polynomial(long n) {
    static std::map<long, QPoly> memo;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;

    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, computed recursively
    // without re-locking: build all divisors bottom up.
    std::vector<long> divisors;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) divisors.push_back(d);
    for (long d : divisors) {
        if (memo.count(d)) continue;
        std::vector<Rational> xd(d + 1, Rational(0));
        xd[0] = -1; xd[d] = 1;
        QPoly num{std::move(xd)};
        for (long e : divisors) {
            if (e >= d || d % e) continue;
            num = num.div_exact(memo.at(e));
        }
        memo.emplace(d, std::move(num));
    }
    return memo.at(n);
}

// -------- CyclotomicNumber --------

namespace {

std::vector<Rational> reduce_powers(long n, const std::vector<Rational>& raw) {
    long phi = euler_phi(n);
    std::vector<Rational> out(phi, Rational(0));
    if (raw.empty()) return out;
    QPoly r = QPoly(raw).mod(cyclotomic_polynomial(n));
    for (long i = 0; i <= r.degree(); ++i) out[i] = r.coeff(i);
    return out;
}

} // namespace

CyclotomicNumber CyclotomicNumber::from_reduced(long n, std::vector<Rational> coeffs) {
    CyclotomicNumber z;
    z.conductor_ = n;
    coeffs.resize(euler_phi(n), Rational(0));
    z.c_ = std::move(coeffs);
    return z;
}

CyclotomicNumber CyclotomicNumber::from_powers(long n, const std::vector<Rational>& raw) {
    return from_reduced(n, reduce_powers(n, raw));
}

CyclotomicNumber CyclotomicNumber::root_of_unity(long n, long j) {
    if (n < 1) throw Error("conductor must be positive");
    j %= n;
    if (j < 0) j += n;
    std::vector<Rational> raw(j + 1, Rational(0));
    raw[j] = 1;
    return from_powers(n, raw);
}

bool CyclotomicNumber::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool CyclotomicNumber::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rational CyclotomicNumber::to_rational() const {
    if (!is_rational()) throw NotRationalError("cyclotomic number is not rational");
    return c_[0];
}

CyclotomicNumber CyclotomicNumber::to_conductor(long m) const {
    if (m == conductor_) return *this;
    if (m % conductor_) throw Error("conductor does not divide target");
    long k = m / conductor_;
    std::vector<Rational> raw(static_cast<size_t>(c_.size() - 1) * k + 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) raw[i * k] = c_[i];
    return from_powers(m, raw);
}

CyclotomicNumber CyclotomicNumber::conjugate() const {
    long n = conductor_;
    std::vector<Rational> raw(n, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        long e = (n - static_cast<long>(i)) % n;
        raw[e] += c_[i];
    }
    return from_powers(n, raw);
}

CyclotomicNumber CyclotomicNumber::inverse() const {
    if (is_zero()) throw Error("inverse of zero");
    // extended euclid in Q[x] against the cyclotomic polynomial
    const QPoly& phi = cyclotomic_polynomial(conductor_);
    QPoly r0 = phi, r1 = QPoly(c_);
    QPoly s0, s1(Rational(1));
    while (!r1.is_zero()) {
        QPoly q, r;
        QPoly::divmod(r0, r1, q, r);
        QPoly s = s0 - q * s1;
        r0 = r1; r1 = r;
        s0 = s1; s1 = s;
    }
    // r0 = gcd (nonzero constant since Phi is irreducible and c_ != 0 mod Phi)
    if (r0.degree() != 0) throw Error("cyclotomic inverse: gcd not constant");
    QPoly inv = (s0 * (Rational(1) / r0.coeff(0))).mod(phi);
    std::vector<Rational> v(euler_phi(conductor_), Rational(0));
    for (long i = 0; i <= inv.degree(); ++i) v[i] = inv.coeff(i);
    return from_reduced(conductor_, std::move(v));
}

CyclotomicNumber CyclotomicNumber::pow(unsigned long e) const {
    CyclotomicNumber acc(Rational(1));
    CyclotomicNumber base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

namespace {
long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }
}

CyclotomicNumber CyclotomicNumber::operator+(const CyclotomicNumber& o) const {
    long m = lcm_long(conductor_, o.conductor_);
    CyclotomicNumber a = to_conductor(m), b = o.to_conductor(m);
    for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
}

CyclotomicNumber CyclotomicNumber::operator-(const CyclotomicNumber& o) const {
    long m = lcm_long(conductor_, o.conductor_);
    CyclotomicNumber a = to_conductor(m), b = o.to_conductor(m);
    for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
    return a;
}

CyclotomicNumber CyclotomicNumber::operator-() const {
    CyclotomicNumber a = *this;
    for (auto& x : a.c_) x = -x;
    return a;
}

CyclotomicNumber CyclotomicNumber::operator*(const CyclotomicNumber& o) const {
    long m = lcm_long(conductor_, o.conductor_);
    CyclotomicNumber a = to_conductor(m), b = o.to_conductor(m);
    std::vector<Rational> raw(2 * a.c_.size(), Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j)
            if (b.c_[j] != 0) raw[i + j] += a.c_[i] * b.c_[j];
    }
    return from_powers(m, raw);
}

bool CyclotomicNumber::operator==(const CyclotomicNumber& o) const {
    long m = lcm_long(conductor_, o.conductor_);
    return to_conductor(m).c_ == o.to_conductor(m).c_;
}

CyclotomicNumber rational_cyclo(const Rational& r) { return CyclotomicNumber(r); }

Rational rational_from_cyclotomic(const CyclotomicNumber& z) { return z.to_rational(); }

// -------- IntMat --------

IntMat IntMat::identity(long n) {
    IntMat m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::operator*(const IntMat& o) const {
    if (cols_ != o.rows_) throw Error("matrix size mismatch");
    IntMat r(rows_, o.cols_);
    for (long i = 0; i < rows_; ++i)
        for (long k = 0; k < cols_; ++k) {
            if (at(i, k) == 0) continue;
            for (long j = 0; j < o.cols_; ++j)
                r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

IntMat IntMat::transpose() const {
    IntMat r(cols_, rows_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool IntMat::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (long i = 0; i < rows_; ++i)
        for (long j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

Int IntMat::det() const {
    if (rows_ != cols_) throw Error("det of non-square matrix");
    long n = rows_;
    if (n == 0) return 1;
    // Bareiss fraction-free elimination
    IntMat a = *this;
    Int prev = 1;
    int sign = 1;
    for (long k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            long piv = -1;
            for (long i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) { piv = i; break; }
            if (piv < 0) return 0;
            a.swap_rows(k, piv);
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i)
            for (long j = k + 1; j < n; ++j) {
                Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                a.at(i, j) = t / prev;   // exact by Bareiss
            }
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

void IntMat::swap_rows(long i, long j) {
    if (i == j) return;
    for (long c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMat::swap_cols(long i, long j) {
    if (i == j) return;
    for (long r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void IntMat::add_row(long dst, long src, const Int& k) {
    for (long c = 0; c < cols_; ++c) at(dst, c) += k * at(src, c);
}

void IntMat::add_col(long dst, long src, const Int& k) {
    for (long r = 0; r < rows_; ++r) at(r, dst) += k * at(r, src);
}

void IntMat::scale_row(long i, const Int& k) {
    for (long c = 0; c < cols_; ++c) at(i, c) *= k;
}

void IntMat::scale_col(long j, const Int& k) {
    for (long r = 0; r < rows_; ++r) at(r, j) *= k;
}

// -------- Smith normal form --------

SmithDecomposition smith_normal_form(const IntMat& input) {
    if (input.rows() != input.cols()) throw Error("smith_normal_form expects a square matrix");
    long n = input.rows();
    IntMat s = input;
    IntMat left = IntMat::identity(n);
    IntMat right = IntMat::identity(n);

    auto abs_of = [](const Int& x) { return x < 0 ? Int(-x) : x; };

    for (long k = 0; k < n; ++k) {
        for (;;) {
            // minimal-absolute-value pivot in the trailing submatrix
            long pi = -1, pj = -1;
            Int best;
            for (long i = k; i < n; ++i)
                for (long j = k; j < n; ++j) {
                    if (s.at(i, j) == 0) continue;
                    Int a = abs_of(s.at(i, j));
                    if (pi < 0 || a < best) { best = a; pi = i; pj = j; }
                }
            if (pi < 0) { pi = -2; break; }   // all zero, done
            s.swap_rows(k, pi); left.swap_rows(k, pi);
            s.swap_cols(k, pj); right.swap_cols(k, pj);

            bool clean = true;
            const Int piv = s.at(k, k);
            for (long i = k + 1; i < n; ++i) {
                if (s.at(i, k) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), s.at(i, k).get_mpz_t(), piv.get_mpz_t());
                s.add_row(i, k, -q); left.add_row(i, k, -q);
                if (s.at(i, k) != 0) clean = false;
            }
            for (long j = k + 1; j < n; ++j) {
                if (s.at(k, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), s.at(k, j).get_mpz_t(), piv.get_mpz_t());
                s.add_col(j, k, -q); right.add_col(j, k, -q);
                if (s.at(k, j) != 0) clean = false;
            }
            if (!clean) continue;

            // pivot must divide every remaining entry
            bool divides = true;
            for (long i = k + 1; i < n && divides; ++i)
                for (long j = k + 1; j < n && divides; ++j)
                    if (s.at(i, j) % piv != 0) {
                        s.add_row(k, i, Int(1)); left.add_row(k, i, Int(1));
                        divides = false;
                    }
            if (divides) break;
        }
        if (s.at(k, k) == 0) break;
    }

    // sign-normalize the diagonal
    for (long k = 0; k < n; ++k)
        if (s.at(k, k) < 0) {
            s.scale_row(k, Int(-1));
            left.scale_row(k, Int(-1));
        }

    SmithDecomposition out;
    out.left = std::move(left);
    out.right = std::move(right);
    out.diag.resize(n);
    for (long k = 0; k < n; ++k) out.diag[k] = s.at(k, k);
    return out;
}

IntMat kernel_completion(const IntMat& a, long& rank_out) {
    SmithDecomposition snf = smith_normal_form(a);
    long n = a.rows();
    long rank = 0;
    for (long i = 0; i < n; ++i)
        if (snf.diag[i] != 0) ++rank;
    // columns of right with zero diagonal entry span ker(a) over Z;
    // reorder so the nonzero ones come first
    IntMat u(n, n);
    long pos = 0;
    for (long j = 0; j < n; ++j)
        if (snf.diag[j] != 0) {
            for (long i = 0; i < n; ++i) u.at(i, pos) = snf.right.at(i, j);
            ++pos;
        }
    for (long j = 0; j < n; ++j)
        if (snf.diag[j] == 0) {
            for (long i = 0; i < n; ++i) u.at(i, pos) = snf.right.at(i, j);
            ++pos;
        }
    rank_out = rank;
    return u;
}

} // namespace siegel
