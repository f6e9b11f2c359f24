#include "siegel/characters.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace siegel {

namespace {

Int crt_lift(const Int& target, const Int& q, const Int& modulus) {
    // x == target mod q, x == 1 mod modulus/q (q a prime-power component)
    Int rest = modulus / q;
    if (rest == 1) return target % modulus;
    Int qinv, rinv;
    mpz_invert(qinv.get_mpz_t(), q.get_mpz_t(), rest.get_mpz_t());
    mpz_invert(rinv.get_mpz_t(), rest.get_mpz_t(), q.get_mpz_t());
    Int x = (target * rest % modulus) * rinv % modulus + (q * qinv % modulus);
    x %= modulus;
    if (x < 0) x += modulus;
    return x;
}

long order_mod(const Int& g, const Int& q, long group_order) {
    Int x = g % q;
    long o = 1;
    while (x != 1) {
        x = x * g % q;
        ++o;
        if (o > group_order) throw Error("order_mod: not a unit");
    }
    return o;
}

Int smallest_primitive_root(const Int& q, long phi) {
    for (Int g = 2; g < q; ++g) {
        if (gcd(g, q) != 1) continue;
        if (order_mod(g, q, phi) == phi) return g;
    }
    throw Error("no primitive root found");
}

std::vector<CyclicFactor> canonical_factors(const Int& modulus) {
    std::vector<CyclicFactor> out;
    if (modulus == 1) return out;
    auto fac = factorize(modulus);
    // 2-part first: <5> then <-1> (just <-1>, i.e. 3, for modulus 4)
    for (const auto& [p, e] : fac) {
        if (p != 2) continue;
        Int q = pow_int(p, e);
        if (e == 1) continue;   // (Z/2)^x trivial
        if (e == 2) {
            out.push_back({p, q, crt_lift(Int(3), q, modulus), 2});
        } else {
            out.push_back({p, q, crt_lift(Int(5), q, modulus), 1L << (e - 2)});
            out.push_back({p, q, crt_lift(q - 1, q, modulus), 2});
        }
    }
    for (const auto& [p, e] : fac) {
        if (p == 2) continue;
        Int q = pow_int(p, e);
        Int ph = q - q / p;
        if (!ph.fits_slong_p()) throw Error("modulus too large");
        long phi = ph.get_si();
        out.push_back({p, q, crt_lift(smallest_primitive_root(q, phi), q, modulus), phi});
    }
    return out;
}

long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

long dlog(const Int& a, const Int& g, long order, const Int& q) {
    Int x = 1;
    for (long t = 0; t < order; ++t) {
        if (x == a) return t;
        x = x * g % q;
    }
    throw Error("discrete log failed");
}

// true when a 2-part factor is the <5> generator rather than <-1>
bool is_five_factor(const CyclicFactor& f) {
    if (f.prime != 2 || f.prime_power < 8) return false;
    Int g = f.generator % f.prime_power;
    if (g < 0) g += f.prime_power;
    return g % 4 == 1;
}

} // namespace

DirichletCharacter::DirichletCharacter() : modulus_(1), order_(1) {}

DirichletCharacter DirichletCharacter::from_images(const Int& modulus, const std::vector<long>& images) {
    DirichletCharacter chi;
    chi.modulus_ = modulus;
    chi.factors_ = canonical_factors(modulus);
    if (images.size() != chi.factors_.size())
        throw Error("image count does not match the canonical generators");
    chi.images_.resize(images.size());
    chi.order_ = 1;
    for (size_t i = 0; i < images.size(); ++i) {
        long n = chi.factors_[i].order;
        long e = images[i] % n;
        if (e < 0) e += n;
        chi.images_[i] = e;
        long value_order = e == 0 ? 1 : n / std::gcd(n, e);
        chi.order_ = lcm_long(chi.order_, value_order);
    }
    return chi;
}

long DirichletCharacter::value_exponent(const Int& a) const {
    if (gcd(a, modulus_) != 1) return -1;
    long e = 0;
    for (size_t i = 0; i < factors_.size(); ++i) {
        const auto& f = factors_[i];
        if (images_[i] == 0) continue;
        Int am = a % f.prime_power;
        if (am < 0) am += f.prime_power;
        Int gq = f.generator % f.prime_power;
        if (gq < 0) gq += f.prime_power;
        long t;
        if (f.prime == 2 && f.prime_power >= 8) {
            // a == (-1)^s 5^t mod 2^e with s read off a mod 4
            if (is_five_factor(f)) {
                Int b = (am % 4 == 3) ? Int(f.prime_power - am) : am;
                t = dlog(b, gq, f.order, f.prime_power);
            } else {
                t = (am % 4 == 3) ? 1 : 0;
            }
        } else {
            t = dlog(am, gq, f.order, f.prime_power);
        }
        long n = f.order;
        long g = std::gcd(images_[i], n);
        long sub = n / g;                    // order of the value chi(g_i)
        long step = order_ / sub;
        long c = ((images_[i] / g) % sub) * (t % sub) % sub;
        e = (e + c * step) % order_;
    }
    return e;
}

CyclotomicNumber DirichletCharacter::operator()(const Int& a) const {
    long e = value_exponent(a);
    if (e < 0) return CyclotomicNumber(Rational(0));
    return CyclotomicNumber::root_of_unity(order_, e);
}

int DirichletCharacter::parity() const {
    return value_exponent(Int(-1)) == 0 ? 1 : -1;
}

Int DirichletCharacter::conductor() const {
    Int cond = 1;
    for (size_t i = 0; i < factors_.size(); ++i) {
        const auto& f = factors_[i];
        long n = f.order;
        long e = images_[i];
        long value_order = e == 0 ? 1 : n / std::gcd(n, e);
        if (value_order == 1) continue;
        Int c;
        if (f.prime == 2) {
            if (is_five_factor(f)) {
                long v = 0, vo = value_order;
                while (vo > 1) { vo /= 2; ++v; }
                c = pow_int(2, v + 2);       // order 2^v on <5> forces conductor 2^{v+2}
            } else {
                c = 4;
            }
        } else {
            long v = 0, vo = value_order;
            long pl = f.prime.get_si();
            while (vo % pl == 0) { vo /= pl; ++v; }
            c = pow_int(f.prime, v + 1);
        }
        cond = cond * c / gcd(cond, c);      // lcm; same-prime powers combine to the max
    }
    return cond;
}

bool DirichletCharacter::is_primitive() const { return conductor() == modulus_; }

DirichletCharacter DirichletCharacter::primitive_character() const {
    Int f = conductor();
    if (f == modulus_) return *this;
    auto gens = canonical_factors(f);
    std::vector<long> images;
    for (const auto& gf : gens) {
        // a coprime lift of the generator from mod f to mod modulus_
        Int x = gf.generator % f;
        if (x < 0) x += f;
        while (gcd(x, modulus_) != 1) x += f;
        long t = value_exponent(x);
        if (t < 0) throw Error("primitive restriction failed");
        if ((t * gf.order) % order_ != 0)
            throw Error("primitive restriction: incompatible value order");
        images.push_back(t * gf.order / order_);
    }
    return from_images(f, images);
}

bool DirichletCharacter::square_locally_nontrivial() const {
    if (modulus_ == 1) return true;
    for (const auto& [p, e] : factorize(modulus_)) {
        (void)e;
        long local_order = 1;
        for (size_t i = 0; i < factors_.size(); ++i) {
            if (factors_[i].prime != p) continue;
            long n = factors_[i].order;
            long img = images_[i];
            long value_order = img == 0 ? 1 : n / std::gcd(n, img);
            local_order = lcm_long(local_order, value_order);
        }
        if (local_order == 2) return false;   // quadratic local component
    }
    return true;
}

DirichletCharacter DirichletCharacter::kronecker_character(const Int& d) {
    if (d == 0) throw Error("kronecker character of zero");
    if (d == 1) return trivial();
    Int m4 = d % 4;
    if (m4 < 0) m4 += 4;
    if (m4 != 0 && m4 != 1) throw Error("not a fundamental discriminant");
    Int modulus = abs(d);
    auto gens = canonical_factors(modulus);
    std::vector<long> images;
    for (const auto& g : gens) {
        int v = kronecker_symbol(d, g.generator);
        if (v == 0) throw Error("kronecker character: generator not coprime");
        if (v == 1) {
            images.push_back(0);
        } else {
            if (g.order % 2) throw Error("kronecker character: odd factor order");
            images.push_back(g.order / 2);
        }
    }
    return from_images(modulus, images);
}

std::string DirichletCharacter::spec_string() const {
    std::string s = modulus_.get_str() + ":";
    for (size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += ",";
        s += factors_[i].generator.get_str() + "^" + std::to_string(images_[i]);
    }
    return s;
}

DirichletCharacter DirichletCharacter::parse(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw Error("bad character spec: " + spec);
    Int m(spec.substr(0, colon));
    std::string rest = spec.substr(colon + 1);
    auto gens = canonical_factors(m);
    std::vector<long> images;
    if (!rest.empty()) {
        std::stringstream ss(rest);
        std::string tok;
        std::vector<std::pair<Int, long>> parts;
        while (std::getline(ss, tok, ',')) {
            auto caret = tok.find('^');
            if (caret == std::string::npos) throw Error("bad character spec token: " + tok);
            parts.emplace_back(Int(tok.substr(0, caret)), std::stol(tok.substr(caret + 1)));
        }
        if (parts.size() != gens.size()) throw Error("character spec: generator count mismatch");
        for (size_t i = 0; i < gens.size(); ++i) {
            // accept the canonical lifted generator or its component representative
            Int want = gens[i].generator % gens[i].prime_power;
            Int got = parts[i].first % gens[i].prime_power;
            if (want < 0) want += gens[i].prime_power;
            if (got < 0) got += gens[i].prime_power;
            if (want != got && parts[i].first != gens[i].generator)
                throw Error("character spec: unexpected generator " + parts[i].first.get_str());
            images.push_back(parts[i].second);
        }
    } else {
        images.assign(gens.size(), 0);
    }
    return from_images(m, images);
}

bool DirichletCharacter::operator==(const DirichletCharacter& o) const {
    return modulus_ == o.modulus_ && images_ == o.images_;
}

DirichletCharacter product_at(const DirichletCharacter& chi, const DirichletCharacter& xi,
                              const Int& modulus) {
    if (modulus % chi.modulus() != 0 || modulus % xi.modulus() != 0)
        throw Error("product_at: modulus must be a common multiple");
    auto gens = canonical_factors(modulus);
    std::vector<long> images;
    for (const auto& g : gens) {
        long ea = chi.value_exponent(g.generator);
        long eb = xi.value_exponent(g.generator);
        if (ea < 0 || eb < 0) throw Error("product_at: generator not coprime to a modulus");
        long da = chi.order(), db = xi.order();
        long big = lcm_long(da, db);
        long t = (ea * (big / da) + eb * (big / db)) % big;
        if ((t * g.order) % big != 0)
            throw Error("product_at: value order does not divide generator order");
        images.push_back(t * g.order / big);
    }
    return DirichletCharacter::from_images(modulus, images);
}

DirichletCharacter twist(const DirichletCharacter& chi, const DirichletCharacter& xi) {
    Int m = chi.modulus() * xi.modulus() / gcd(chi.modulus(), xi.modulus());
    return product_at(chi, xi, m).primitive_character();
}

int kronecker_symbol(const Int& d, const Int& m) {
    return mpz_kronecker(d.get_mpz_t(), m.get_mpz_t());
}

} // namespace siegel
