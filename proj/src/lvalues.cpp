#include "siegel/lvalues.hpp"

#include <mutex>
#include <vector>

namespace siegel {

namespace {
std::mutex memo_mu;
std::vector<Rational> bern_memo;   // guarded by memo_mu
}

Rational bernoulli_number(unsigned long k) {
    std::lock_guard<std::mutex> lock(memo_mu);
    if (bern_memo.empty()) {
        bern_memo.push_back(Rational(1));
        bern_memo.push_back(make_rational(Int(-1), Int(2)));
    }
    while (bern_memo.size() <= k) {
        unsigned long m = bern_memo.size();
        // sum_{j=0..m} C(m+1, j) B_j = 0
        Rational acc(0);
        for (unsigned long j = 0; j < m; ++j)
            acc += Rational(binomial_int(m + 1, j)) * bern_memo[j];
        bern_memo.push_back(-acc / Rational(Int(m + 1)));
    }
    return bern_memo[k];
}

QPoly bernoulli_polynomial(unsigned long k) {
    // B_k(x) = sum_j C(k, j) B_j x^{k-j}
    std::vector<Rational> c(k + 1, Rational(0));
    for (unsigned long j = 0; j <= k; ++j)
        c[k - j] = Rational(binomial_int(k, j)) * bernoulli_number(j);
    return QPoly(std::move(c));
}

CyclotomicNumber gen_bernoulli(unsigned long k, const DirichletCharacter& chi) {
    if (k == 0) throw Error("gen_bernoulli needs k >= 1");
    const Int& m = chi.modulus();
    QPoly bk = bernoulli_polynomial(k);
    long d = chi.order();
    // collect the rational weight in front of each character value zeta_d^t
    std::vector<Rational> weights(d, Rational(0));
    for (Int a = 1; a <= m; ++a) {
        long e = chi.value_exponent(a);
        if (e < 0) continue;
        weights[e] += bk.eval(make_rational(a, m));
    }
    Rational scale(pow_int(m, k - 1));
    std::vector<Rational> raw(d, Rational(0));
    for (long t = 0; t < d; ++t) raw[t] = weights[t] * scale;
    return CyclotomicNumber::from_powers(d, raw);
}

CyclotomicNumber L_at_negative(unsigned long k, const DirichletCharacter& chi) {
    if (k == 0) throw Error("L_at_negative needs k >= 1");
    if (k == 1 && chi.is_trivial())
        throw PoleAtOneError("L(s, trivial) has a pole at s = 1");
    CyclotomicNumber b = gen_bernoulli(k, chi);
    return b * CyclotomicNumber(make_rational(Int(-1), Int(k)));
}

CyclotomicNumber L_depleted(unsigned long k, const DirichletCharacter& chi, long p) {
    CyclotomicNumber l = L_at_negative(k, chi);
    CyclotomicNumber factor =
        CyclotomicNumber(Rational(1)) - chi(Int(p)) * CyclotomicNumber(Rational(pow_int(p, k - 1)));
    return factor * l;
}

} // namespace siegel
