// saito/modsolve.hpp — multi-modular linear solving.
//
// Strategy: scale rows to integers, solve per prime (< 2^62) by dense
// elimination, combine residues by CRT, lift with balanced rational
// reconstruction, then verify the candidate exactly against every row of the
// original system. Primes that drop rank or fake an inconsistency are
// detected against the other primes and skipped. Non-unique systems are
// delegated to solve_exact, which owns classification.
#pragma once

#include <cstdint>
#include <optional>

#include "linalg.hpp"

namespace saito {

struct ModularOptions {
    // When nonempty, exactly these moduli are used in order (tests inject a
    // known-bad prime this way). Every entry must be prime.
    std::vector<std::uint64_t> prime_pool;
    unsigned threads = 1;
    // Give up threshold; reaching it means the verify step kept failing.
    std::size_t max_primes = 10000;
};

// Same contract and result semantics as solve_exact.
SolveResult solve_modular(const Matrix& A, std::span<const Rational> b,
                          const ModularOptions& opts = {});

// Balanced rational reconstruction: the unique n/d with n ≡ x·d (mod M),
// |n| <= sqrt(M/2), 0 < d <= sqrt(M/2), gcd(n, d) = 1 — nullopt if none.
std::optional<Rational> rational_reconstruct(const Int& x, const Int& modulus);

// Deterministic descending sequence of 62-bit primes, index-addressable.
std::uint64_t nth_solver_prime(std::size_t index);

}  // namespace saito
