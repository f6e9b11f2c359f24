#include "siegel/siegelseries.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <thread>

namespace siegel {

CyclotomicNumber SiegelSeriesPoly::eval(const CyclotomicNumber& x) const {
    CyclotomicNumber acc{Rational(0)};
    for (long i = degree(); i >= 0; --i)
        acc = acc * x + CyclotomicNumber(Rational(coeffs[i]));
    return acc;
}

// ---------- brute-force enumeration ----------

namespace {

long checked_pow_long(long l, long e) {
    long r = 1;
    for (long i = 0; i < e; ++i) {
        if (r > (1L << 40)) throw CostLimitError("modulus power too large");
        r *= l;
    }
    return r;
}

inline long val_capped(int64_t x, long l, long cap) {
    if (x == 0) return cap;
    if (x < 0) x = -x;
    long v = 0;
    while (v < cap && x % l == 0) { x /= l; ++v; }
    return v;
}

// worker state for one enumeration slice
struct Buckets {
    // counts[v][t]: classes with val(mu) = v and trace numerator t mod q
    std::vector<std::vector<uint64_t>> counts;
    Buckets(long m_max, long q) : counts(m_max + 1, std::vector<uint64_t>(q, 0)) {}
    void merge(const Buckets& o) {
        for (size_t v = 0; v < counts.size(); ++v)
            for (size_t t = 0; t < counts[v].size(); ++t) counts[v][t] += o.counts[v][t];
    }
};

// rank 1: entries (c00)
void scan_rank1(long q, long l, long m, const std::vector<int64_t>& w,
                int64_t lo, int64_t hi, Buckets& b) {
    for (int64_t c = lo; c < hi; ++c) {
        long a0 = val_capped(c, l, m);
        long v = m - a0;
        int64_t t = static_cast<int64_t>((__int128)w[0] * c % q);
        b.counts[v][t] += 1;
    }
}

// rank 2: entries (c00, c01, c11)
void scan_rank2(long q, long l, long m, const std::vector<int64_t>& w,
                int64_t lo, int64_t hi, Buckets& b) {
    for (int64_t c0 = lo; c0 < hi; ++c0) {
        long v0 = val_capped(c0, l, m);
        int64_t t0 = static_cast<int64_t>((__int128)w[0] * c0 % q);
        for (int64_t c1 = 0; c1 < q; ++c1) {
            long v01 = std::min(v0, val_capped(c1, l, m));
            int64_t t01 = (t0 + w[1] * c1) % q;
            int64_t det_part = c1 * c1;
            for (int64_t c2 = 0; c2 < q; ++c2) {
                long a1 = std::min(v01, val_capped(c2, l, m));
                int64_t det = c0 * c2 - det_part;
                long vdet = val_capped(det, l, 2 * m);
                long a2 = std::min(vdet - a1, m);           // second elementary divisor
                long v = 2 * m - std::min(a1, m) - a2;
                if (v <= m) {
                    int64_t t = (t01 + w[2] * c2) % q;
                    b.counts[v][t] += 1;
                }
            }
        }
    }
}

// rank 3: entries (c00, c01, c02, c11, c12, c22) of [[c0,c1,c2],[c1,c3,c4],[c2,c4,c5]]
void scan_rank3(long q, long l, long m, const std::vector<int64_t>& w,
                int64_t lo, int64_t hi, Buckets& b) {
    const long cap2 = 2 * m, cap3 = 3 * m;
    for (int64_t c0 = lo; c0 < hi; ++c0)
        for (int64_t c1 = 0; c1 < q; ++c1)
            for (int64_t c2 = 0; c2 < q; ++c2) {
                int64_t tp = (w[0] * c0 + w[1] * c1 + w[2] * c2) % q;
                long vp = std::min({val_capped(c0, l, m), val_capped(c1, l, m),
                                    val_capped(c2, l, m)});
                for (int64_t c3 = 0; c3 < q; ++c3) {
                    int64_t m01 = c0 * c3 - c1 * c1;   // rows{0,1} cols{0,1}
                    long vq = std::min(vp, val_capped(c3, l, m));
                    long vm01 = val_capped(m01, l, cap2);
                    for (int64_t c4 = 0; c4 < q; ++c4) {
                        int64_t tpp = (tp + w[3] * c3 + w[4] * c4) % q;
                        long vr = std::min(vq, val_capped(c4, l, m));
                        int64_t n3 = c1 * c4 - c2 * c3;
                        int64_t n5 = c0 * c4 - c1 * c2;
                        long vfix = std::min({vm01, val_capped(n3, l, cap2),
                                              val_capped(n5, l, cap2)});
                        for (int64_t c5 = 0; c5 < q; ++c5) {
                            long a1 = std::min(vr, val_capped(c5, l, m));
                            int64_t n1 = c3 * c5 - c4 * c4;
                            int64_t n2 = c1 * c5 - c2 * c4;
                            int64_t n4 = c0 * c5 - c2 * c2;
                            long v2 = std::min({vfix, val_capped(n1, l, cap2),
                                                val_capped(n2, l, cap2), val_capped(n4, l, cap2)});
                            int64_t det = c0 * n1 - c1 * n2 + c2 * n3;
                            long v3 = val_capped(det, l, cap3);
                            long v = 3 * m - a1 - std::min(v2 - a1, m) - std::min(v3 - v2, m);
                            if (v <= m) {
                                int64_t t = (tpp + w[5] * c5) % q;
                                b.counts[v][t] += 1;
                            }
                        }
                    }
                }
            }
}

// generic rank: exact minor-gcd valuations with arbitrary precision (guarded
// by the cost limit; used for rank >= 4 only)
void scan_generic(long rank, long q, long l, long m, const std::vector<int64_t>& w,
                  int64_t lo, int64_t hi, Buckets& b) {
    long k = rank * (rank + 1) / 2;
    std::vector<int64_t> c(k, 0);
    c[0] = lo;
    Int lz(l);
    auto entry_index = [rank](long i, long j) {
        if (i > j) std::swap(i, j);
        long idx = 0;
        for (long a = 0; a < i; ++a) idx += rank - a;
        return idx + (j - i);
    };
    for (;;) {
        // assemble the symmetric matrix and compute capped SNF valuations
        IntMat mat(rank, rank);
        for (long i = 0; i < rank; ++i)
            for (long j = i; j < rank; ++j) {
                mat.at(i, j) = c[entry_index(i, j)];
                mat.at(j, i) = mat.at(i, j);
            }
        auto snf = smith_normal_form(mat);
        long v = 0;
        for (long i = 0; i < rank; ++i) {
            long a = snf.diag[i] == 0 ? m : std::min(valuation(snf.diag[i], lz), m);
            v += m - a;
        }
        if (v <= m) {
            int64_t t = 0;
            for (long i = 0; i < k; ++i) t = (t + w[i] * c[i]) % q;
            b.counts[v][t] += 1;
        }
        // odometer (digit 0 is the sliced one)
        long d = k - 1;
        for (;;) {
            if (d == 0) {
                if (++c[0] >= hi) return;
                break;
            }
            if (++c[d] < q) break;
            c[d] = 0;
            --d;
        }
    }
}

std::vector<int64_t> trace_weights(const HalfIntegralMatrix& t, long q) {
    long n = t.size();
    std::vector<int64_t> w;
    for (long i = 0; i < n; ++i)
        for (long j = i; j < n; ++j) {
            Int x = (i == j) ? Int(t.doubled_at(i, i) / 2) : t.doubled_at(i, j);
            Int r = x % q;
            if (r < 0) r += q;
            w.push_back(r.get_si());
        }
    return w;
}

} // namespace

Int b_series_points(long rank, long l, long m_max) {
    return pow_int(l, static_cast<unsigned long>(m_max) * rank * (rank + 1) / 2);
}

bool b_series_affordable(const HalfIntegralMatrix& t, long l, long m_max,
                         const BruteForceOptions& opt) {
    Int limit = pow_int(2, opt.cost_log2_limit);
    return b_series_points(t.size(), l, m_max) <= limit;
}

BSeriesPrefix b_series_bruteforce(const HalfIntegralMatrix& t, long l, long m_max,
                                  const BruteForceOptions& opt) {
    long r = t.size();
    if (m_max < 0) throw Error("m_max must be nonnegative");
    if (r > 0 && t.disc() == 0) throw DegenerateError("b_series of degenerate matrix");

    BSeriesPrefix out;
    out.prime = l;
    out.coeffs.assign(m_max + 1, Rational(0));
    out.coeffs[0] = 1;
    if (r == 0 || m_max == 0) return out;

    if (!b_series_affordable(t, l, m_max, opt))
        throw CostLimitError("b-series enumeration exceeds the configured budget");

    long q = checked_pow_long(l, m_max);
    if (q > (1L << 20) || (m_max + 1) * q > (1L << 22))
        throw CostLimitError("b-series bucket table exceeds the memory budget");
    auto w = trace_weights(t, q);

    int jobs = opt.jobs > 0 ? opt.jobs
                            : static_cast<int>(std::min(8u, std::max(1u, std::thread::hardware_concurrency())));
    Int total_points = b_series_points(r, l, m_max);
    if (total_points < 1 << 18) jobs = 1;
    jobs = static_cast<int>(std::min<long>(jobs, q));

    auto run_slice = [&](int64_t lo, int64_t hi, Buckets& b) {
        switch (r) {
            case 1: scan_rank1(q, l, m_max, w, lo, hi, b); break;
            case 2: scan_rank2(q, l, m_max, w, lo, hi, b); break;
            case 3: scan_rank3(q, l, m_max, w, lo, hi, b); break;
            default: scan_generic(r, q, l, m_max, w, lo, hi, b); break;
        }
    };

    Buckets total(m_max, q);
    if (jobs <= 1) {
        run_slice(0, q, total);
    } else {
        std::vector<Buckets> parts(jobs, Buckets(m_max, q));
        std::vector<std::thread> threads;
        for (int i = 0; i < jobs; ++i) {
            int64_t lo = q * static_cast<int64_t>(i) / jobs;
            int64_t hi = q * static_cast<int64_t>(i + 1) / jobs;
            threads.emplace_back([&, lo, hi, i] { run_slice(lo, hi, parts[i]); });
        }
        for (auto& th : threads) th.join();
        for (const auto& p : parts) total.merge(p);
    }

    // collapse each valuation bucket into an exact rational through the
    // conductor-q cyclotomic relation
    long phi = q - q / l;
    long sub = q / l;   // l^{m_max - 1}
    for (long v = 1; v <= m_max; ++v) {
        std::vector<Rational> vec(q, Rational(0));
        for (long tt = 0; tt < q; ++tt)
            if (total.counts[v][tt]) vec[tt] = Rational(static_cast<unsigned long>(total.counts[v][tt]));
        // x^{phi + s} == -sum_{i=0}^{l-2} x^{i*sub + s}
        for (long e = q - 1; e >= phi; --e) {
            if (vec[e] == 0) continue;
            Rational cval = vec[e];
            vec[e] = 0;
            long s = e - phi;
            for (long i = 0; i + 1 < l; ++i) vec[i * sub + s] -= cval;
        }
        vec.resize(phi);
        CyclotomicNumber z = CyclotomicNumber::from_reduced(q, std::move(vec));
        out.coeffs[v] = z.to_rational();
    }
    return out;
}

// ---------- closed forms ----------

SiegelSeriesPoly F_closed_rank1(const Int& t, long l) {
    if (t == 0) throw DegenerateError("F_closed_rank1 of zero");
    long v = valuation(t, Int(l));
    SiegelSeriesPoly f;
    f.prime = l;
    f.rank = 1;
    f.coeffs.resize(v + 1);
    for (long i = 0; i <= v; ++i) f.coeffs[i] = pow_int(l, i);
    return f;
}

long inverse_denominator_exponent(const HalfIntegralMatrix& t, long l) {
    long n = t.size();
    Int detg = t.doubled().det();
    if (detg == 0) throw DegenerateError("inverse of degenerate matrix");
    // T^{-1} = 2 adj(G) / det(G); half-integrality over Z_l needs the diagonal
    // and the doubled off-diagonal entries to be l-integral
    long worst = 0;
    Int lz(l);
    for (long i = 0; i < n; ++i)
        for (long j = i; j < n; ++j) {
            // cofactor of G at (j, i)
            IntMat sub(n - 1, n - 1);
            for (long a = 0, ai = 0; a < n; ++a) {
                if (a == j) continue;
                for (long b = 0, bj = 0; b < n; ++b) {
                    if (b == i) continue;
                    sub.at(ai, bj) = t.doubled_at(a, b);
                    ++bj;
                }
                ++ai;
            }
            Int cof = sub.det();
            if ((i + j) % 2) cof = -cof;
            Int num = (i == j) ? Int(2 * cof) : Int(4 * cof);   // diag t'_ii vs 2 t'_ij
            if (num == 0) continue;
            long v = valuation(num, lz) - valuation(detg, lz);
            worst = std::min(worst, v);
        }
    return -worst;
}

SiegelSeriesPoly F_closed_rank2(const HalfIntegralMatrix& t, long l) {
    if (t.size() != 2) throw Error("F_closed_rank2 needs a 2x2 matrix");
    if (l == 2) throw EvenPrimeError("rank-2 closed form is for odd primes");
    auto dd = det_data(t);
    long v = valuation(*dd.cond, Int(l));
    // outer summation bound: the smaller elementary-divisor exponent of T
    // over Z_l, i.e. the content valuation; the brute-force oracle pins this
    // reading of the display's index
    long iota = 0;
    bool first = true;
    for (long i = 0; i < 2; ++i)
        for (long j = i; j < 2; ++j) {
            const Int& e = t.doubled_at(i, j);
            if (e == 0) continue;
            long ve = valuation(e, Int(l));
            iota = first ? ve : std::min(iota, ve);
            first = false;
        }
    int xi_val = xi(t, l);
    SiegelSeriesPoly f;
    f.prime = l;
    f.rank = 2;
    f.coeffs.assign(2 * v + 1, Int(0));
    for (long i = 0; i <= iota; ++i) {
        for (long j = 0; j <= v - i; ++j)
            f.coeffs[i + 2 * j] += pow_int(l, 2 * i + 3 * j);
        if (xi_val != 0)
            for (long j = 0; j <= v - i - 1; ++j)
                f.coeffs[i + 2 * j + 1] -= xi_val * pow_int(l, 2 * i + 3 * j + 1);
    }
    return f;
}

long siegel_series_degree(const HalfIntegralMatrix& t, long l) {
    long r = t.size();
    if (r == 0) return 0;
    auto dd = det_data(t);
    if (r % 2 == 0) return 2 * valuation(*dd.cond, Int(l));
    return valuation(dd.bigD, Int(l));
}

namespace {

// cofactor of the series factorization as an explicit polynomial in X
QPoly b_cofactor(const HalfIntegralMatrix& t, long l) {
    long r = t.size();
    QPoly cof(Rational(1));
    QPoly one_minus_x(std::vector<Rational>{Rational(1), Rational(-1)});
    cof = cof * one_minus_x;
    long half = r / 2;
    if (r % 2 == 0) {
        int xi_val = xi(t, l);
        for (long i = 1; i < half; ++i) {
            QPoly p(std::vector<Rational>{Rational(1), Rational(0), Rational(-pow_int(l, 2 * i))});
            cof = cof * p;
        }
        if (half >= 1) {
            if (xi_val == 1) {
                cof = cof * QPoly(std::vector<Rational>{Rational(1), Rational(pow_int(l, half))});
            } else if (xi_val == -1) {
                cof = cof * QPoly(std::vector<Rational>{Rational(1), Rational(-pow_int(l, half))});
            } else {
                cof = cof * QPoly(std::vector<Rational>{Rational(1), Rational(0), Rational(-pow_int(l, r))});
            }
        }
    } else {
        for (long i = 1; i <= (r - 1) / 2; ++i) {
            QPoly p(std::vector<Rational>{Rational(1), Rational(0), Rational(-pow_int(l, 2 * i))});
            cof = cof * p;
        }
    }
    return cof;
}

} // namespace

SiegelSeriesPoly F_from_b(const HalfIntegralMatrix& t, long l, bool fe_completion,
                          const BruteForceOptions& opt) {
    long r = t.size();
    SiegelSeriesPoly f;
    f.prime = l;
    f.rank = r;
    if (r == 0) {
        f.coeffs = {Int(1)};
        return f;
    }
    if (t.disc() == 0) throw DegenerateError("F_from_b of degenerate matrix");
    long deg = siegel_series_degree(t, l);
    long m_max = fe_completion ? deg / 2 : deg;
    BSeriesPrefix b = b_series_bruteforce(t, l, m_max, opt);
    if (b.coeffs[0] != 1) throw NonIntegralQuotientError("b-series constant term is not 1");

    QPoly cof = b_cofactor(t, l);
    // power-series division: f[m] = b[m] - sum_{j>=1} cof[j] f[m-j]
    std::vector<Rational> fr(m_max + 1, Rational(0));
    for (long m = 0; m <= m_max; ++m) {
        Rational acc = b.coeffs[m];
        for (long j = 1; j <= std::min<long>(m, cof.degree()); ++j)
            acc -= cof.coeff(j) * fr[m - j];
        fr[m] = acc;
    }
    f.coeffs.assign(deg + 1, Int(0));
    for (long m = 0; m <= m_max; ++m) {
        if (fr[m].get_den() != 1)
            throw NonIntegralQuotientError("siegel series has a non-integral coefficient");
        f.coeffs[m] = fr[m].get_num();
    }
    if (f.coeffs[0] != 1) throw NonIntegralQuotientError("siegel series constant term is not 1");

    if (fe_completion) {
        int sign = (r % 2 == 0) ? 1 : eta(t, l);
        for (long i = 0; i <= m_max; ++i) {
            long top = deg - i;
            Int val;
            if (r % 2 == 0) {
                val = f.coeffs[i] * pow_int(l, (r + 1) * (deg / 2 - i));
            } else {
                long e = ((r + 1) / 2) * (deg - 2 * i);
                val = sign > 0 ? Int(f.coeffs[i] * pow_int(l, e)) : Int(-f.coeffs[i] * pow_int(l, e));
            }
            if (top <= m_max) {
                if (f.coeffs[top] != val)
                    throw NonIntegralQuotientError("functional-equation completion mismatch");
            } else {
                f.coeffs[top] = val;
            }
        }
    }
    return f;
}

SiegelSeriesPoly F_local(const HalfIntegralMatrix& t, long l, const BruteForceOptions& opt) {
    long r = t.size();
    if (r == 0) {
        SiegelSeriesPoly f;
        f.prime = l;
        f.rank = 0;
        f.coeffs = {Int(1)};
        return f;
    }
    if (r == 1) return F_closed_rank1(Int(t.doubled_at(0, 0) / 2), l);

    static std::map<std::string, SiegelSeriesPoly> cache;
    static std::mutex cache_mu;
    std::string key = t.key() + "@" + std::to_string(l);
    {
        std::lock_guard<std::mutex> lock(cache_mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    SiegelSeriesPoly f = (r == 2 && l != 2) ? F_closed_rank2(t, l) : F_from_b(t, l, true, opt);
    {
        std::lock_guard<std::mutex> lock(cache_mu);
        cache.emplace(key, f);
    }
    return f;
}

bool functional_equation_check(const HalfIntegralMatrix& t, long l, const SiegelSeriesPoly& f) {
    long r = t.size();
    if (r == 0) return true;
    std::map<long, Rational> lhs, rhs;
    Rational lr1 = make_rational(Int(1), pow_int(l, r + 1));
    for (long i = 0; i <= f.degree(); ++i) {
        if (f.coeffs[i] == 0) continue;
        Rational p(1);
        for (long e = 0; e < i; ++e) p *= lr1;
        lhs[-i] += Rational(f.coeffs[i]) * p;
    }
    if (r % 2 == 0) {
        long v = valuation(*det_data(t).cond, Int(l));
        Rational sc = make_rational(Int(1), pow_int(l, (r + 1) * v));
        for (long i = 0; i <= f.degree(); ++i) {
            if (f.coeffs[i] == 0) continue;
            rhs[i - 2 * v] += Rational(f.coeffs[i]) * sc;
        }
    } else {
        long bigv = valuation(det_data(t).bigD, Int(l));
        int sign = eta(t, l);
        Rational sc = make_rational(Int(sign), pow_int(l, ((r + 1) / 2) * bigv));
        for (long i = 0; i <= f.degree(); ++i) {
            if (f.coeffs[i] == 0) continue;
            rhs[i - bigv] += Rational(f.coeffs[i]) * sc;
        }
    }
    for (auto& [e, c] : lhs)
        if (c == 0) lhs.erase(e);
    // compare maps, treating absent entries as zero
    for (const auto& [e, c] : lhs)
        if (c != (rhs.count(e) ? rhs.at(e) : Rational(0))) return false;
    for (const auto& [e, c] : rhs)
        if (c != (lhs.count(e) ? lhs.at(e) : Rational(0))) return false;
    return true;
}

bool spoly_identity_check(const HalfIntegralMatrix& tp, long p, const BruteForceOptions& opt) {
    long r = tp.size();
    if (r < 1) throw Error("spoly_identity_check needs rank >= 1");
    if (tp.disc() == 0) throw DegenerateError("spoly_identity_check: degenerate matrix");

    // coefficients of Y^m in prod_j (1 - p^{j(2r-j+1)/2} X^j Y), i.e. (-1)^m s_m
    std::vector<QPoly> sy(r + 1);
    sy[0] = QPoly(Rational(1));
    for (long j = 1; j <= r; ++j) {
        Int c = pow_int(p, static_cast<unsigned long>(j) * (2 * r - j + 1) / 2);
        QPoly term = QPoly::monomial(Rational(-c), j);
        for (long m = std::min(j, r); m >= 1; --m) {
            QPoly add = sy[m - 1] * term;
            sy[m] = (m < j) ? sy[m] + add : add;
        }
    }

    QPoly lhs;
    for (long m = 0; m <= r; ++m) {
        HalfIntegralMatrix scaled_t = tp.scaled(pow_int(p, r - m));
        SiegelSeriesPoly f = F_local(scaled_t, p, opt);
        std::vector<Rational> fc(f.coeffs.size());
        for (size_t i = 0; i < f.coeffs.size(); ++i) fc[i] = Rational(f.coeffs[i]);
        lhs = lhs + sy[m] * QPoly(std::move(fc));
    }

    // R_r(X,1) / P_r(X,1), an exact polynomial quotient
    QPoly rx(Rational(1)), px(Rational(1));
    for (long j = 1; j <= r; ++j) {
        Int c = pow_int(p, static_cast<unsigned long>(j) * (2 * r - j + 1) / 2);
        std::vector<Rational> bin(j + 1, Rational(0));
        bin[0] = 1;
        bin[j] = Rational(-c);
        rx = rx * QPoly(std::move(bin));
    }
    px = QPoly(std::vector<Rational>{Rational(1), Rational(-pow_int(p, r))});
    for (long i = 1; i <= r / 2; ++i)
        px = px * QPoly(std::vector<Rational>{Rational(1), Rational(0),
                                              Rational(-pow_int(p, 2 * r - 2 * i + 1))});
    QPoly rhs = rx.div_exact(px);
    if (r % 2 == 0) {
        Int d0 = (r / 2) % 2 ? Int(-tp.disc()) : tp.disc();
        int xv = xi_squareclass(d0, p);
        rhs = rhs * QPoly(std::vector<Rational>{Rational(1), Rational(-xv * pow_int(p, r / 2))});
    }
    return lhs == rhs;
}

} // namespace siegel
