#pragma once

// Verification suites shared by the CLI `verify` verb and the acceptance
// runner: each returns one result per checked property.

#include <cstdint>
#include <string>
#include <vector>

namespace siegel {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// genus-1 divisor-sum regression, weights {4, 6}, p = 5, indices up to 50
std::vector<CheckResult> verify_genus1();

// randomized local-series oracle suite: integrality, constant term, degree,
// functional equation, closed-form agreement on ranks 1..3 at l in {2,3,5}
std::vector<CheckResult> verify_siegel_series(uint64_t seed, int instances = 50);

// operator-vs-closed-form stabilization identity, U_{p,n} fixed point and
// GL_n(Z)-invariance over genus 1..3, p in {2,3,5}, trivial and order-6 chars
std::vector<CheckResult> verify_operator(uint64_t seed, int jobs = 0);

// Iwasawa-family specialization against exact stabilized coefficients
std::vector<CheckResult> verify_lambda_specialize();

// integrality of the cleared family and the weight congruence mod p^2
std::vector<CheckResult> verify_kummer();

// stabilization-polynomial and clearing-polynomial bookkeeping
std::vector<CheckResult> verify_poly_bookkeeping();

// all acceptance criteria in order; one aggregated result per criterion
std::vector<CheckResult> run_all_criteria(uint64_t seed, int jobs = 0);

} // namespace siegel
