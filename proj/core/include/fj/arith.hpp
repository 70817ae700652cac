#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "fj/error.hpp"

namespace fj {

// Arbitrary-precision nonnegative integer. Moduli, group orders and
// exponents such as (p^m-1)/(p-1) for 86-bit p all live here.
using Nat = mpz_class;

Nat parse_nat(const std::string& text);
std::string to_decimal(const Nat& v);

// Number of bits needed to write any residue in [0, p), i.e. ceil(log2 p).
std::size_t residue_bits(const Nat& p);

Nat mod_pow(const Nat& base, const Nat& exponent, const Nat& modulus);

// Deterministic Miller-Rabin below 2^64; 64 seeded random rounds above.
bool is_prime(const Nat& v);

struct PrimePower {
    Nat prime;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct FactoredInteger {
    Nat value;
    std::vector<PrimePower> factors;  // ascending primes
    bool complete = false;
    Nat unfactored = 1;               // composite remainder left when incomplete

    Nat product() const;
};

inline constexpr std::uint64_t kDefaultFactorBudget = 2'000'000;

// Trial division to 10^6, then Pollard-Brent rho with at most effort_budget
// iterations overall. Budget exhaustion yields complete = false.
FactoredInteger factor(const Nat& v, std::uint64_t effort_budget = kDefaultFactorBudget);

// Wraps a caller-certified factorization (for example "this cofactor is
// prime"). Throws InvalidInput when the product is wrong or a factor is not
// prime.
FactoredInteger known_factorization(const Nat& value, std::vector<PrimePower> factors);

struct CrtBasis {
    Nat modulus;               // N = p_1 * ... * p_l
    std::vector<Nat> coefficients;  // u_i = 1 mod p_i, 0 mod p_j
};

CrtBasis crt_coefficients(std::span<const Nat> primes);

}  // namespace fj
