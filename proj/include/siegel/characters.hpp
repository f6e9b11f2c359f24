#pragma once

// Dirichlet characters with exact cyclotomic values, represented by images of
// canonical generators on the CRT decomposition of (Z/MZ)^x. Canonical
// generators: 5 and -1 for powers of two (just -1 for modulus 4), the
// smallest primitive root for each odd prime power, 2-part first then odd
// primes ascending.

#include <string>
#include <vector>

#include "siegel/exactnum.hpp"

namespace siegel {

struct CyclicFactor {
    Int prime;        // underlying prime
    Int prime_power;  // q = prime^e component of the modulus
    Int generator;    // lifted mod M (== 1 on the other components)
    long order;       // order of the generator in (Z/qZ)^x (or the subgroup it generates)
};

class DirichletCharacter {
public:
    DirichletCharacter();                                        // trivial, modulus 1

    // chi(g_i) = zeta_{order(g_i)}^{images[i]} on the canonical generators
    static DirichletCharacter from_images(const Int& modulus, const std::vector<long>& images);
    static DirichletCharacter trivial() { return DirichletCharacter(); }
    static DirichletCharacter kronecker_character(const Int& d);  // d a fundamental discriminant
    static DirichletCharacter parse(const std::string& spec);     // "M:g1^e1,g2^e2,..."

    const Int& modulus() const { return modulus_; }
    long order() const { return order_; }
    const std::vector<CyclicFactor>& factors() const { return factors_; }
    const std::vector<long>& images() const { return images_; }
    bool is_trivial() const { return order_ == 1; }

    CyclotomicNumber operator()(const Int& a) const;
    // exponent e with chi(a) = zeta_order^e, or -1 when gcd(a, M) > 1
    long value_exponent(const Int& a) const;

    int parity() const;                   // chi(-1): +1 even, -1 odd
    Int conductor() const;
    bool is_primitive() const;
    DirichletCharacter primitive_character() const;
    bool square_locally_nontrivial() const;

    std::string spec_string() const;

    bool operator==(const DirichletCharacter& o) const;

private:
    Int modulus_;
    std::vector<CyclicFactor> factors_;
    std::vector<long> images_;   // reduced mod factor order
    long order_;
};

// the product character a -> chi(a) xi(a) at a common modulus (a multiple of
// both moduli); no reduction to the primitive inducing character
DirichletCharacter product_at(const DirichletCharacter& chi, const DirichletCharacter& xi,
                              const Int& modulus);

// product character reduced to its primitive inducing character
DirichletCharacter twist(const DirichletCharacter& chi, const DirichletCharacter& xi);

int kronecker_symbol(const Int& d, const Int& m);

} // namespace siegel
