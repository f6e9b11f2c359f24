#include "siegel/eisenstein.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <thread>

namespace siegel {

EisensteinParams::EisensteinParams(long genus_, long weight_, DirichletCharacter chi_)
    : genus(genus_), weight(weight_), chi(std::move(chi_)) {
    if (genus < 1) throw InvalidParamsError("genus must be >= 1");
    if (weight <= genus + 1) throw InvalidParamsError("weight must exceed genus + 1");
    int want = weight % 2 ? -1 : 1;
    if (chi.parity() != want) throw InvalidParamsError("character parity must match the weight");
    if (chi.modulus() % 2 == 0) throw InvalidParamsError("modulus must be odd");
    if (chi.modulus() > 1) {
        if (!chi.is_primitive()) throw InvalidParamsError("character must be primitive");
        if (!chi.square_locally_nontrivial())
            throw InvalidParamsError("character square must be locally non-trivial");
    }
}

// ---------- bivariate polynomials ----------

void BivarPoly::drop_zeros() {
    for (auto it = c_.begin(); it != c_.end();)
        it = it->second == 0 ? c_.erase(it) : std::next(it);
}

BivarPoly BivarPoly::constant(const Int& c) { return term(c, 0, 0); }

BivarPoly BivarPoly::term(const Int& c, long dx, long dy) {
    BivarPoly p;
    if (c != 0) p.c_[{dx, dy}] = c;
    return p;
}

BivarPoly BivarPoly::operator*(const BivarPoly& o) const {
    BivarPoly p;
    for (const auto& [da, ca] : c_)
        for (const auto& [db, cb] : o.c_)
            p.c_[{da.first + db.first, da.second + db.second}] += ca * cb;
    p.drop_zeros();
    return p;
}

BivarPoly BivarPoly::operator+(const BivarPoly& o) const {
    BivarPoly p = *this;
    for (const auto& [d, c] : o.c_) p.c_[d] += c;
    p.drop_zeros();
    return p;
}

QPoly BivarPoly::eval_y1() const {
    long dx = 0;
    for (const auto& [d, c] : c_) dx = std::max(dx, d.first);
    std::vector<Rational> v(dx + 1, Rational(0));
    for (const auto& [d, c] : c_) v[d.first] += Rational(c);
    return QPoly(std::move(v));
}

BivarPoly BivarPoly::reflect_y(long n) const {
    BivarPoly p;
    for (const auto& [d, c] : c_) {
        if (d.second > n) throw Error("reflect_y: Y-degree exceeds n");
        p.c_[{d.first, n - d.second}] = c;
    }
    return p;
}

StabilizationPolys stabilization_polys(long n, long p) {
    StabilizationPolys out;
    BivarPoly one = BivarPoly::constant(Int(1));
    out.P = one * (one + BivarPoly::term(-pow_int(p, n), 1, 1));
    for (long i = 1; i <= n / 2; ++i)
        out.P = out.P * (one + BivarPoly::term(-pow_int(p, 2 * n - 2 * i + 1), 2, 1));
    out.R = one;
    for (long j = 1; j <= n; ++j)
        out.R = out.R * (one + BivarPoly::term(-pow_int(p, static_cast<unsigned long>(j) * (2 * n - j + 1) / 2), j, 1));
    out.Rtilde = out.R.reflect_y(n);
    return out;
}

// ---------- coefficients ----------

namespace {

// shared classical/stabilized assembly; deplete_p engaged for stabilization
CyclotomicNumber coefficient_impl(const EisensteinParams& params, const HalfIntegralMatrix& t,
                                  std::optional<long> deplete_p) {
    long n = params.genus;
    long kappa = params.weight;
    const DirichletCharacter& chi = params.chi;
    if (t.size() != n) throw InvalidParamsError("index size does not match the genus");
    if (!t.is_psd()) throw InvalidParamsError("index must be positive-semidefinite");
    if (deplete_p && chi.modulus() % *deplete_p == 0)
        throw InvalidParamsError("stabilization prime must not divide the modulus");

    BlockReduction red = radical_block_reduction(t);
    long r = red.rank;
    const HalfIntegralMatrix& tb = red.block;

    auto lvalue = [&](unsigned long k, const DirichletCharacter& psi) {
        return deplete_p ? L_depleted(k, psi, *deplete_p) : L_at_negative(k, psi);
    };

    // 2^{floor((r+1)/2) - floor((n+1)/2)}
    long e2 = (r + 1) / 2 - (n + 1) / 2;
    Rational two_power = e2 >= 0 ? Rational(pow_int(2, e2))
                                 : make_rational(Int(1), pow_int(2, -e2));
    CyclotomicNumber acc{two_power};

    DirichletCharacter chi2 = product_at(chi, chi, chi.modulus());
    for (long i = r / 2 + 1; i <= n / 2; ++i)
        acc = acc * lvalue(2 * kappa - 2 * i, chi2);

    Int fprimes;   // product support for the local factors
    if (r % 2 == 0) {
        DiscriminantData dd = r == 0 ? DiscriminantData{Int(1), Int(1), Int(1)} : det_data(tb);
        DirichletCharacter kron = DirichletCharacter::kronecker_character(*dd.fund);
        Int lcm_mod = chi.modulus() * kron.modulus() / gcd(chi.modulus(), kron.modulus());
        DirichletCharacter twisted = product_at(chi, kron, lcm_mod);
        acc = acc * lvalue(kappa - r / 2, twisted);
        fprimes = *dd.cond;
    } else {
        fprimes = abs(det_data(tb).bigD);
    }

    for (const auto& [lp, ex] : factorize(fprimes)) {
        (void)ex;
        long l = lp.get_si();
        if (deplete_p && l == *deplete_p) continue;
        CyclotomicNumber chi_l = chi(lp);
        if (chi_l.is_zero()) continue;   // F_l evaluated at 0 is its constant term 1
        CyclotomicNumber arg = chi_l * CyclotomicNumber(Rational(pow_int(l, kappa - r - 1)));
        acc = acc * F_local(tb, l).eval(arg);
    }
    return acc;
}

} // namespace

CyclotomicNumber classical_coefficient(const EisensteinParams& params, const HalfIntegralMatrix& t) {
    return coefficient_impl(params, t, std::nullopt);
}

CyclotomicNumber stabilized_coefficient(const EisensteinParams& params, long p,
                                        const HalfIntegralMatrix& t) {
    return coefficient_impl(params, t, p);
}

namespace {

// deterministic parallel fill with exception propagation
void parallel_fill(size_t count, int jobs, const std::function<void(size_t)>& work) {
    if (jobs <= 0) jobs = static_cast<int>(std::min(8u, std::max(1u, std::thread::hardware_concurrency())));
    jobs = std::min<int>(jobs, count ? static_cast<int>(count) : 1);
    if (jobs <= 1) {
        for (size_t i = 0; i < count; ++i) work(i);
        return;
    }
    std::vector<std::thread> threads;
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    for (int j = 0; j < jobs; ++j)
        threads.emplace_back([&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    work(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!error) error = std::current_exception();
                    next.store(count);
                    return;
                }
            }
        });
    for (auto& th : threads) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace

FourierTable build_table(const EisensteinParams& params, std::optional<long> p, long trace_bound,
                         int jobs) {
    auto indices = enumerate_indices(params.genus, trace_bound);
    std::vector<CyclotomicNumber> values(indices.size());
    parallel_fill(indices.size(), jobs, [&](size_t i) {
        values[i] = p ? stabilized_coefficient(params, *p, indices[i])
                      : classical_coefficient(params, indices[i]);
    });
    FourierTable table{params, p, trace_bound, {}};
    for (size_t i = 0; i < indices.size(); ++i) table.entries.emplace(indices[i].key(), values[i]);
    return table;
}

FourierTable u_pn_apply(const FourierTable& table, long p, long out_trace_bound) {
    if (out_trace_bound < 0) out_trace_bound = table.trace_bound;
    FourierTable out{table.params, table.prime, out_trace_bound, {}};
    for (const auto& t : enumerate_indices(table.params.genus, out_trace_bound)) {
        std::string scaled_key = t.scaled(Int(p)).key();
        auto it = table.entries.find(scaled_key);
        if (it == table.entries.end())
            throw MissingIndexError("u_pn_apply: table lacks the index " + scaled_key);
        out.entries.emplace(t.key(), it->second);
    }
    return out;
}

FourierTable stabilize_via_operator(const EisensteinParams& params, long p, long trace_bound,
                                    int jobs) {
    long n = params.genus;
    long kappa = params.weight;
    if (params.chi.modulus() % p == 0)
        throw InvalidParamsError("stabilization prime must not divide the modulus");

    // x = chi(p) p^{kappa - n - 1}
    CyclotomicNumber x = params.chi(Int(p)) * CyclotomicNumber(Rational(pow_int(p, kappa - n - 1)));

    // coefficients of Y^m in prod_j (1 - p^{j(2n-j+1)/2} x^j Y): (-1)^m s_m
    std::vector<CyclotomicNumber> sm(n + 1, CyclotomicNumber(Rational(0)));
    sm[0] = CyclotomicNumber(Rational(1));
    for (long j = 1; j <= n; ++j) {
        CyclotomicNumber c = -(CyclotomicNumber(
                                   Rational(pow_int(p, static_cast<unsigned long>(j) * (2 * n - j + 1) / 2))) *
                               x.pow(j));
        for (long m = std::min(j, n); m >= 1; --m) sm[m] = sm[m] + sm[m - 1] * c;
    }

    // scalar P(x,1)/R(x,1)
    CyclotomicNumber pnum = CyclotomicNumber(Rational(1)) -
                            CyclotomicNumber(Rational(pow_int(p, n))) * x;
    for (long i = 1; i <= n / 2; ++i)
        pnum = pnum * (CyclotomicNumber(Rational(1)) -
                       CyclotomicNumber(Rational(pow_int(p, 2 * n - 2 * i + 1))) * x.pow(2));
    CyclotomicNumber rden{Rational(1)};
    for (long j = 1; j <= n; ++j)
        rden = rden * (CyclotomicNumber(Rational(1)) -
                       CyclotomicNumber(Rational(pow_int(p, static_cast<unsigned long>(j) * (2 * n - j + 1) / 2))) *
                           x.pow(j));
    CyclotomicNumber scalar = pnum * rden.inverse();

    auto indices = enumerate_indices(n, trace_bound);
    std::vector<CyclotomicNumber> values(indices.size());
    parallel_fill(indices.size(), jobs, [&](size_t i) {
        CyclotomicNumber acc{Rational(0)};
        for (long m = 0; m <= n; ++m) {
            HalfIntegralMatrix scaled_t = indices[i].scaled(pow_int(p, n - m));
            acc = acc + sm[m] * classical_coefficient(params, scaled_t);
        }
        values[i] = scalar * acc;
    });

    FourierTable table{params, p, trace_bound, {}};
    for (size_t i = 0; i < indices.size(); ++i) table.entries.emplace(indices[i].key(), values[i]);
    return table;
}

} // namespace siegel
