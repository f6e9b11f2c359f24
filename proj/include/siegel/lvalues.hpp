#pragma once

// Exact Dirichlet L-values at non-positive integers via generalized Bernoulli
// numbers, and Euler-factor-depleted variants.

#include "siegel/characters.hpp"
#include "siegel/exactnum.hpp"

namespace siegel {

// B_k with the convention B_1 = -1/2; memoized
Rational bernoulli_number(unsigned long k);

// B_k(x) as a polynomial
QPoly bernoulli_polynomial(unsigned long k);

// B_{k,chi} = M^{k-1} sum_{a=1..M} chi(a) B_k(a/M); for trivial chi the sum
// runs over a = M and evaluates B_k(1), which carries the k = 1 sign so that
// L(0, triv) = -1/2
CyclotomicNumber gen_bernoulli(unsigned long k, const DirichletCharacter& chi);

// L(1-k, chi) = -B_{k,chi}/k; the (1, trivial) pole is a hard error
CyclotomicNumber L_at_negative(unsigned long k, const DirichletCharacter& chi);

// (1 - chi(p) p^{k-1}) L(1-k, chi)
CyclotomicNumber L_depleted(unsigned long k, const DirichletCharacter& chi, long p);

} // namespace siegel
