#include "siegel/lambda_adic.hpp"

#include <algorithm>

#include "siegel/lvalues.hpp"

namespace siegel {

// ---------- PadicInt ----------

PadicInt::PadicInt(long p, const Int& value, long prec) : p_(p), prec_(std::max(0L, prec)) {
    if (p < 2) throw Error("bad prime");
    Int m = pow_int(p_, prec_);
    r_ = value % m;
    if (r_ < 0) r_ += m;
}

PadicInt PadicInt::from_rational(long p, const Rational& q, long prec) {
    Int den = q.get_den();
    if (den % p == 0) throw NotAUnitError("rational with p in the denominator");
    Int m = pow_int(p, prec);
    Int dinv;
    if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
        throw NotAUnitError("denominator not invertible");
    return PadicInt(p, q.get_num() * dinv, prec);
}

namespace {

Int primitive_root_mod_p(long p) {
    for (Int g = 2; g < p; ++g) {
        Int x = g;
        long o = 1;
        while (x != 1) {
            x = x * g % p;
            ++o;
        }
        if (o == p - 1) return g;
    }
    throw Error("no primitive root");
}

PadicInt exact_zero(long p, long prec) { return PadicInt(p, Int(0), prec); }

} // namespace

PadicInt PadicInt::from_cyclotomic(long p, const CyclotomicNumber& z, long prec) {
    long d = z.conductor();
    if ((p - 1) % d != 0)
        throw InvalidParamsError("cyclotomic conductor does not divide p - 1");
    PadicInt acc = exact_zero(p, prec);
    if (d == 1) return from_rational(p, z.coeffs()[0], prec);
    Int g = primitive_root_mod_p(p);
    Int seed;
    mpz_powm_ui(seed.get_mpz_t(), g.get_mpz_t(), (p - 1) / d, Int(p).get_mpz_t());
    PadicInt zeta = teichmuller(seed, p, prec);
    PadicInt power = PadicInt(p, Int(1), prec);
    for (size_t j = 0; j < z.coeffs().size(); ++j) {
        if (z.coeffs()[j] != 0) acc = acc + power * from_rational(p, z.coeffs()[j], prec);
        power = power * zeta;
    }
    return acc;
}

long PadicInt::val_bound() const {
    if (r_ == 0) return prec_;
    return std::min<long>(valuation(r_, Int(p_)), prec_);
}

PadicInt PadicInt::operator+(const PadicInt& o) const {
    if (p_ != o.p_) throw Error("prime mismatch");
    long prec = std::min(prec_, o.prec_);
    return PadicInt(p_, r_ + o.r_, prec);
}

PadicInt PadicInt::operator-(const PadicInt& o) const {
    if (p_ != o.p_) throw Error("prime mismatch");
    long prec = std::min(prec_, o.prec_);
    return PadicInt(p_, r_ - o.r_, prec);
}

PadicInt PadicInt::operator-() const { return PadicInt(p_, -r_, prec_); }

PadicInt PadicInt::operator*(const PadicInt& o) const {
    if (p_ != o.p_) throw Error("prime mismatch");
    long prec = std::min(prec_ + o.val_bound(), o.prec_ + val_bound());
    return PadicInt(p_, r_ * o.r_, prec);
}

PadicInt PadicInt::mul_int(const Int& k) const {
    if (k == 0) return exact_zero(p_, prec_ + 8);
    long v = valuation(k, Int(p_));
    return PadicInt(p_, r_ * k, prec_ + v);
}

PadicInt PadicInt::div_exact_int(const Int& k) const {
    if (k == 0) throw Error("division by zero");
    long v = valuation(k, Int(p_));
    Int u = k / pow_int(p_, v);
    if (prec_ - v <= 0) throw PrecisionExhaustedError("no digits left after division");
    if (r_ % pow_int(p_, std::min(v, prec_)) != 0)
        throw Error("p-adic division is not exact");
    Int m = pow_int(p_, prec_ - v);
    Int uinv;
    mpz_invert(uinv.get_mpz_t(), u.get_mpz_t(), m.get_mpz_t());
    return PadicInt(p_, (r_ / pow_int(p_, v)) * uinv, prec_ - v);
}

PadicInt PadicInt::inverse() const {
    if (val_bound() != 0) throw NotAUnitError("inverse of a non-unit");
    Int m = pow_int(p_, prec_);
    Int rinv;
    if (mpz_invert(rinv.get_mpz_t(), r_.get_mpz_t(), m.get_mpz_t()) == 0)
        throw NotAUnitError("residue not invertible");
    return PadicInt(p_, rinv, prec_);
}

PadicInt PadicInt::pow(unsigned long e) const {
    PadicInt acc(p_, Int(1), prec_ + 8);
    PadicInt base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc.with_prec(std::min(acc.prec(), prec_ + 8));
}

PadicInt PadicInt::with_prec(long prec) const { return PadicInt(p_, r_, std::min(prec, prec_)); }

bool PadicInt::congruent(const PadicInt& o, long digits) const {
    if (p_ != o.p_) return false;
    if (prec_ < digits || o.prec_ < digits) return false;
    Int m = pow_int(p_, digits);
    return (r_ - o.r_) % m == 0;
}

std::string PadicInt::str() const {
    return r_.get_str() + " (mod " + std::to_string(p_) + "^" + std::to_string(prec_) + ")";
}

PadicInt teichmuller(const Int& x, long p, long prec) {
    if (p == 2) throw InvalidParamsError("teichmuller lift needs an odd prime");
    if (gcd(x, Int(p)) != 1) throw NotAUnitError("teichmuller of a non-unit");
    Int m = pow_int(p, prec);
    Int y = x % m;
    if (y < 0) y += m;
    for (long i = 0; i < prec; ++i) {
        Int yn;
        mpz_powm_ui(yn.get_mpz_t(), y.get_mpz_t(), p, m.get_mpz_t());
        if (yn == y) break;
        y = yn;
    }
    return PadicInt(p, y, prec);
}

PadicInt angle_part(const Int& x, long p, long prec) {
    PadicInt t = teichmuller(x, p, prec);
    return PadicInt(p, x, prec) * t.inverse();
}

PadicInt padic_log(const PadicInt& x) {
    long p = x.prime();
    PadicInt y = x - PadicInt(p, Int(1), x.prec());
    long vy = y.val_bound();
    if (vy < 1) throw NotOnePlusPError("log needs an argument in 1 + pZ_p");
    long target = x.prec();
    auto logp_floor = [p](long k) {
        long v = 0;
        while (k >= p) { k /= p; ++v; }
        return v;
    };
    long kmax = 1;
    while (kmax * vy - logp_floor(kmax) < target + 1) ++kmax;
    PadicInt acc = exact_zero(p, target + 4);
    PadicInt power = y;
    for (long k = 1; k <= kmax; ++k) {
        acc = acc + (k % 2 ? power : -power).div_exact_int(Int(k));
        if (k < kmax) power = power * y;
    }
    return acc;
}

PadicInt s_of(const PadicInt& x) {
    long p = x.prime();
    PadicInt num = padic_log(x);
    PadicInt den = padic_log(PadicInt(p, Int(1 + p), x.prec() + 2));
    // both have valuation >= 1; shift out one power of p and divide
    return num.div_exact_int(Int(p)) * den.div_exact_int(Int(p)).inverse();
}

// ---------- LambdaElement ----------

LambdaElement::LambdaElement(long p, long xprec, std::vector<PadicInt> coeffs)
    : p_(p), xprec_(xprec), c_(std::move(coeffs)) {
    if (static_cast<long>(c_.size()) != xprec_) throw Error("coefficient count mismatch");
}

LambdaElement LambdaElement::zero(long p, long xprec, long pprec) {
    return LambdaElement(p, xprec, std::vector<PadicInt>(xprec, exact_zero(p, pprec)));
}

LambdaElement LambdaElement::constant(const PadicInt& c, long xprec) {
    std::vector<PadicInt> v(xprec, exact_zero(c.prime(), c.prec() + xprec + 8));
    v[0] = c;
    return LambdaElement(c.prime(), xprec, std::move(v));
}

LambdaElement LambdaElement::from_qpoly(const QPoly& f, long p, long xprec, long pprec) {
    std::vector<PadicInt> v;
    v.reserve(xprec);
    for (long k = 0; k < xprec; ++k) v.push_back(PadicInt::from_rational(p, f.coeff(k), pprec));
    for (long k = xprec; k <= f.degree(); ++k)
        if (f.coeff(k) != 0) throw Error("polynomial does not fit the X-precision");
    return LambdaElement(p, xprec, std::move(v));
}

LambdaElement LambdaElement::operator+(const LambdaElement& o) const {
    if (p_ != o.p_) throw Error("prime mismatch");
    long n = std::min(xprec_, o.xprec_);
    std::vector<PadicInt> v;
    v.reserve(n);
    for (long k = 0; k < n; ++k) v.push_back(c_[k] + o.c_[k]);
    return LambdaElement(p_, n, std::move(v));
}

LambdaElement LambdaElement::operator-(const LambdaElement& o) const {
    if (p_ != o.p_) throw Error("prime mismatch");
    long n = std::min(xprec_, o.xprec_);
    std::vector<PadicInt> v;
    v.reserve(n);
    for (long k = 0; k < n; ++k) v.push_back(c_[k] - o.c_[k]);
    return LambdaElement(p_, n, std::move(v));
}

LambdaElement LambdaElement::operator*(const LambdaElement& o) const {
    if (p_ != o.p_) throw Error("prime mismatch");
    long n = std::min(xprec_, o.xprec_);
    std::vector<PadicInt> v(n, exact_zero(p_, 1));
    for (long k = 0; k < n; ++k) {
        PadicInt acc = exact_zero(p_, 256);
        for (long i = std::max(0L, k - (o.xprec_ - 1)); i <= k && i < xprec_; ++i)
            acc = acc + c_[i] * o.c_[k - i];
        v[k] = acc;
    }
    return LambdaElement(p_, n, std::move(v));
}

LambdaElement LambdaElement::scale(const PadicInt& s) const {
    std::vector<PadicInt> v;
    v.reserve(xprec_);
    for (const auto& c : c_) v.push_back(c * s);
    return LambdaElement(p_, xprec_, std::move(v));
}

LambdaElement LambdaElement::compose(const LambdaElement& u) const {
    if (p_ != u.prime()) throw Error("prime mismatch");
    if (u.coeff(0).val_bound() < 1)
        throw Error("composition needs a constant term of positive valuation");
    long n = std::min(xprec_, u.xprec());
    LambdaElement acc = LambdaElement::constant(c_[xprec_ - 1], n);
    for (long k = xprec_ - 2; k >= 0; --k)
        acc = acc * u + LambdaElement::constant(c_[k], n);
    return acc;
}

PadicInt LambdaElement::evaluate(const PadicInt& x) const {
    if (x.prime() != p_) throw Error("prime mismatch");
    long vx = x.val_bound();
    if (vx < 1) throw Error("evaluation point must have positive valuation");
    PadicInt acc = c_[xprec_ - 1];
    for (long k = xprec_ - 2; k >= 0; --k) acc = acc * x + c_[k];
    // the discarded tail contributes O(p^{xprec * vx})
    return acc.with_prec(std::min(acc.prec(), xprec_ * vx));
}

LambdaElement LambdaElement::capped(const std::vector<long>& slot_prec) const {
    std::vector<PadicInt> v;
    v.reserve(xprec_);
    for (long k = 0; k < xprec_; ++k)
        v.push_back(k < static_cast<long>(slot_prec.size()) ? c_[k].with_prec(slot_prec[k]) : c_[k]);
    return LambdaElement(p_, xprec_, std::move(v));
}

LambdaElement binomial_series(const PadicInt& s, long xprec) {
    long p = s.prime();
    std::vector<PadicInt> v;
    v.reserve(xprec);
    PadicInt c(p, Int(1), s.prec() + 8);
    v.push_back(c);
    for (long k = 1; k < xprec; ++k) {
        c = c * (s - PadicInt(p, Int(k - 1), s.prec() + 8));
        c = c.div_exact_int(Int(k));
        v.push_back(c);
    }
    return LambdaElement(p, xprec, std::move(v));
}

// ---------- interpolated L-series ----------

namespace {

long mod_pm1(long b, long p) {
    long m = ((b % (p - 1)) + (p - 1)) % (p - 1);
    return m;
}

} // namespace

LambdaElement dirichlet_Lbar_series(const DirichletCharacter& theta, long b, long p, long xprec,
                                    long pprec) {
    if (p < 3) throw InvalidParamsError("the p-adic layer needs an odd prime");
    if (theta.modulus() % p == 0) throw InvalidParamsError("tame conductor must avoid p");
    if ((p - 1) % theta.order() != 0)
        throw InvalidParamsError("character order must divide p - 1 for the Z_p embedding");
    if (xprec < 2) throw InvalidParamsError("xprec must be at least 2");

    long b0 = mod_pm1(b, p);
    bool trivial_branch = theta.order() == 1 && b0 == 0;
    long k0 = b0 <= 1 ? b0 + (p - 1) : b0;
    if (k0 <= 1) k0 += p - 1;

    long guard = 0;
    for (long t = 1; t < xprec; ++t) guard += 1 + valuation(Int(t), Int(p));
    long work = pprec + guard + 4;

    DirichletCharacter trivial = DirichletCharacter::trivial();
    Int onep(1 + p);

    auto node = [&](long t) { return Int(pow_int(onep, k0 + t * (p - 1)) - 1); };
    auto sample = [&](long t) -> PadicInt {
        long k = k0 + t * (p - 1);
        if (trivial_branch) {
            Rational lv = L_depleted(k, trivial, p).to_rational();
            return PadicInt::from_rational(p, Rational(node(t)) * lv, work);
        }
        return PadicInt::from_cyclotomic(p, L_depleted(k, theta, p), work);
    };

    std::vector<Int> xs(xprec);
    std::vector<PadicInt> c(xprec, exact_zero(p, work));
    for (long t = 0; t < xprec; ++t) {
        xs[t] = node(t);
        c[t] = sample(t);
    }
    // Newton divided differences
    for (long j = 1; j < xprec; ++j)
        for (long i = xprec - 1; i >= j; --i)
            c[i] = (c[i] - c[i - 1]).div_exact_int(xs[i] - xs[i - j]);
    // expand into monomial coefficients
    std::vector<PadicInt> poly(xprec, exact_zero(p, work + 8));
    poly[0] = c[xprec - 1];
    long used = 1;
    for (long j = xprec - 2; j >= 0; --j) {
        // poly <- poly * (X - x_j) + c_j
        for (long k = std::min(used, xprec - 1); k >= 1; --k)
            poly[k] = poly[k - 1] - poly[k].mul_int(xs[j]);
        poly[0] = c[j] - poly[0].mul_int(xs[j]);
        used = std::min(used + 1, xprec);
    }
    LambdaElement elem(p, xprec, std::move(poly));
    // the interpolant agrees with the underlying series only up to the node
    // product, which caps slot k at p^{xprec - k}
    std::vector<long> caps(xprec);
    for (long k = 0; k < xprec; ++k) caps[k] = xprec - k;
    std::vector<long> slot(xprec);
    for (long k = 0; k < xprec; ++k) slot[k] = std::min(elem.coeff(k).prec(), caps[k]);
    elem = elem.capped(slot);

    // mandatory validation at two held-out weights
    for (long t = xprec; t < xprec + 2; ++t) {
        Int xh = node(t);
        long bound = 0;
        for (long i = 0; i < xprec; ++i) bound += valuation(Int(xh - xs[i]), Int(p));
        PadicInt got = elem.evaluate(PadicInt(p, xh, work + 8));
        PadicInt want = sample(t);
        long digits = std::min({got.prec(), want.prec(), bound});
        if (digits < 1) throw PrecisionExhaustedError("held-out weight has no checkable digits");
        if (!got.congruent(want, digits))
            throw ValidationFailedError("interpolation failed a held-out weight");
    }
    return elem;
}

QPoly pole_factor_poly(const PoleFactor& f, long p) {
    Rational u = make_rational(Int(1), pow_int(1 + p, f.first == 's' ? 2 * f.second : f.second));
    if (f.first == 's') {
        // (1+p)^{-2i} (1+X)^2 - 1
        return QPoly(std::vector<Rational>{u - 1, 2 * u, u});
    }
    // (1+p)^{-j} (1+X) - 1
    return QPoly(std::vector<Rational>{u - 1, u});
}

bool WeightValue::congruent_rational(const Rational& r, long digits) const {
    long p = mantissa.prime();
    Rational scaled = r * Rational(pow_int(p, shift));
    if (scaled != 0 && valuation(scaled, Int(p)) < 0) return false;
    return mantissa.congruent(PadicInt::from_rational(p, scaled, digits), digits);
}

std::string WeightValue::str() const {
    std::string s = mantissa.str();
    if (shift) s += " * " + std::to_string(mantissa.prime()) + "^-" + std::to_string(shift);
    return s;
}

WeightValue LambdaFraction::evaluate_at_weight(long kappa) const {
    long p = num.prime();
    Int x = pow_int(Int(1 + p), kappa) - 1;
    long big = 0;
    for (const auto& c : num.coeffs()) big = std::max(big, c.prec());
    WeightValue out{num.evaluate(PadicInt(p, x, big + num.xprec() + 8)), 0};
    for (const auto& f : poles) {
        Rational fv = pole_factor_poly(f, p).eval(Rational(x));
        if (fv == 0) throw Error("pole factor vanishes at the weight");
        long v = valuation(fv, Int(p));
        Rational unit = fv / Rational(pow_int(p, v));
        out.mantissa = out.mantissa * PadicInt::from_rational(p, Rational(1) / unit,
                                                              out.mantissa.prec() + 2);
        out.shift += v;
    }
    // pull exact p-powers back out of the mantissa
    while (out.shift > 0 && out.mantissa.prec() > 1 && out.mantissa.residue() % p == 0) {
        out.mantissa = out.mantissa.div_exact_int(Int(p));
        --out.shift;
    }
    return out;
}

LambdaFraction calL_series(const DirichletCharacter& theta, long b, long p, long xprec, long pprec) {
    LambdaElement elem = dirichlet_Lbar_series(theta, b, p, xprec, pprec);
    LambdaFraction out{std::move(elem), {}};
    if (theta.order() == 1 && mod_pm1(b, p) == 0) out.poles.push_back({'l', 0});
    return out;
}

// ---------- the Iwasawa-algebra Fourier coefficients ----------

LambdaFraction lambda_coefficient(const HalfIntegralMatrix& t, long n, const DirichletCharacter& chi,
                                  long a, long p, long xprec, long pprec) {
    if (p < 3) throw InvalidParamsError("the p-adic layer needs an odd prime");
    if (chi.modulus() % p == 0) throw InvalidParamsError("p must not divide the tame modulus");
    if ((p - 1) % chi.order() != 0)
        throw InvalidParamsError("character order must divide p - 1 for the Z_p embedding");
    a = mod_pm1(a, p);

    long guard = 0;
    for (long tt = 1; tt < xprec; ++tt) guard += 1 + valuation(Int(tt), Int(p));
    long work = pprec + guard + 4;

    BlockReduction red = radical_block_reduction(t);
    long r = red.rank;
    const HalfIntegralMatrix& tb = red.block;

    long e2 = (r + 1) / 2 - (n + 1) / 2;
    Rational two_power = e2 >= 0 ? Rational(pow_int(2, e2)) : make_rational(Int(1), pow_int(2, -e2));
    LambdaFraction out{LambdaElement::constant(PadicInt::from_rational(p, two_power, work), xprec), {}};

    DirichletCharacter chi2 = product_at(chi, chi, chi.modulus());
    for (long i = r / 2 + 1; i <= n / 2; ++i) {
        long b = mod_pm1(2 * a - 2 * i, p);
        LambdaElement lbar = dirichlet_Lbar_series(chi2, b, p, xprec, pprec);
        LambdaElement arg = LambdaElement::from_qpoly(pole_factor_poly({'s', i}, p), p, xprec, work);
        out.num = out.num * lbar.compose(arg);
        if (chi2.order() == 1 && b == 0) out.poles.push_back({'s', i});
    }

    Int fprimes;
    if (r % 2 == 0) {
        DiscriminantData dd = r == 0 ? DiscriminantData{Int(1), Int(1), Int(1)} : det_data(tb);
        DirichletCharacter kron = DirichletCharacter::kronecker_character(*dd.fund);
        Int lcm_mod = chi.modulus() * kron.modulus() / gcd(chi.modulus(), kron.modulus());
        DirichletCharacter tame = product_at(chi, kron, lcm_mod);
        long b = mod_pm1(a - r / 2, p);
        LambdaElement lbar = dirichlet_Lbar_series(tame, b, p, xprec, pprec);
        LambdaElement arg =
            LambdaElement::from_qpoly(pole_factor_poly({'l', r / 2}, p), p, xprec, work);
        out.num = out.num * lbar.compose(arg);
        if (tame.order() == 1 && b == 0) out.poles.push_back({'l', r / 2});
        fprimes = *dd.cond;
    } else {
        fprimes = abs(det_data(tb).bigD);
    }

    for (const auto& [lp, ex] : factorize(fprimes)) {
        (void)ex;
        long l = lp.get_si();
        if (l == p) continue;
        CyclotomicNumber chi_l = chi(lp);
        if (chi_l.is_zero()) continue;
        // chi omega^a (l) and the weight coordinate of <l>
        PadicInt c = PadicInt::from_cyclotomic(p, chi_l, work) * teichmuller(lp, p, work).pow(a);
        PadicInt sl = s_of(angle_part(lp, p, work));
        PadicInt linv = PadicInt(p, lp, work).inverse();
        SiegelSeriesPoly f = F_local(tb, l);
        LambdaElement factor = LambdaElement::zero(p, xprec, work);
        for (long d = 0; d <= f.degree(); ++d) {
            if (f.coeffs[d] == 0) continue;
            PadicInt coeff = c.pow(d) * linv.pow(static_cast<unsigned long>(d) * (r + 1));
            coeff = coeff.mul_int(f.coeffs[d]);
            factor = factor + binomial_series(sl.mul_int(Int(d)), xprec).scale(coeff);
        }
        out.num = out.num * factor;
    }
    return out;
}

QPoly B_poly_exact(long n, long p) {
    QPoly first(Rational(1));
    for (long i = 1; i <= n / 2; ++i) first = first * pole_factor_poly({'s', i}, p);
    for (long j = 0; j <= n / 2; ++j) first = first * pole_factor_poly({'l', j}, p);

    QPoly second = QPoly(std::vector<Rational>{Rational(0), Rational(1)});   // X
    for (long i = 1; i <= n / 2; ++i) {
        QPoly v = pole_factor_poly({'l', i}, p);
        Rational u = make_rational(Int(1), pow_int(1 + p, i));
        QPoly w(std::vector<Rational>{u + 1, u});   // (1+p)^{-i}(1+X) + 1
        second = second * v * v * w;
    }
    if (!(first == second)) throw Error("clearing-polynomial factorizations disagree");
    return first;
}

std::vector<PoleFactor> B_poly_factors(long n) {
    std::vector<PoleFactor> out;
    for (long i = 1; i <= n / 2; ++i) out.push_back({'s', i});
    for (long j = 0; j <= n / 2; ++j) out.push_back({'l', j});
    return out;
}

LambdaElement B_poly(long n, long p, long xprec, long pprec) {
    return LambdaElement::from_qpoly(B_poly_exact(n, p), p, xprec, pprec);
}

LambdaElement integral_lambda_coefficient(const HalfIntegralMatrix& t, long n,
                                          const DirichletCharacter& chi, long a, long p, long xprec,
                                          long pprec) {
    LambdaFraction frac = lambda_coefficient(t, n, chi, a, p, xprec, pprec);
    auto factors = B_poly_factors(n);
    for (const auto& pole : frac.poles) {
        auto it = std::find(factors.begin(), factors.end(), pole);
        if (it == factors.end())
            throw PoleNotCancelledError("pole factor not covered by the clearing polynomial");
        factors.erase(it);
    }
    long work = pprec + xprec + 8;
    LambdaElement acc = frac.num;
    for (const auto& f : factors)
        acc = acc * LambdaElement::from_qpoly(pole_factor_poly(f, p), p, xprec, work);
    return acc;
}

} // namespace siegel
