// saito/poly.hpp — sparse multivariate polynomials over exact rationals.
//
// Representation: terms sorted in the ring's canonical order (graded-lex
// descending), no zero coefficients. Every operation preserves both
// invariants, so serialization is deterministic by construction.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rational.hpp"
#include "ring.hpp"

namespace saito {

struct Term {
    Monomial mono;
    Rational coeff;
};

class Poly {
  public:
    Poly() = default;
    explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

    static Poly zero(RingPtr ring) { return Poly(std::move(ring)); }
    static Poly constant(RingPtr ring, const Rational& c);
    static Poly variable(RingPtr ring, std::size_t var, std::uint32_t exp = 1);
    static Poly linear_form(RingPtr ring, std::span<const Rational> coeffs);
    // Terms in any order, duplicates combined, zeros dropped.
    static Poly from_terms(RingPtr ring, std::vector<Term> terms);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Rational coeff(const Monomial& m) const;
    // Largest term in canonical order; pre: !is_zero().
    const Term& leading_term() const { return terms_.front(); }

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly operator*(const Rational& c) const;
    friend Poly operator*(const Rational& c, const Poly& p) { return p * c; }

    Poly pow(std::uint64_t e) const;

    // Partial derivative in variable var.
    Poly diff(std::size_t var) const;

    // Exact evaluation; point.size() == ring->nvars().
    Rational eval(std::span<const Rational> point) const;

    // Ring homomorphism: variable i -> images[i]. All images share one target
    // ring; eval/substitute commute with arithmetic.
    Poly substitute(std::span<const Poly> images) const;

    // Weighted degree of the largest term (nullopt for zero).
    std::optional<std::uint64_t> weighted_degree() const;
    // True if every term has equal weighted degree (zero counts as
    // homogeneous of any degree).
    bool is_homogeneous() const;
    bool is_homogeneous_of_degree(std::uint64_t d) const;

  private:
    friend class PolyBuilder;
    RingPtr ring_;
    std::vector<Term> terms_;  // canonical descending order, coeffs nonzero
    void assert_same_ring(const Poly& o) const;
};

// Accumulates terms out of order, then emits a canonical Poly. Used by the
// heavier algorithms (products, substitution) to avoid repeated merging.
class PolyBuilder {
  public:
    explicit PolyBuilder(RingPtr ring) : ring_(std::move(ring)) {}
    void add(const Monomial& m, const Rational& c);
    Poly build();

  private:
    RingPtr ring_;
    std::vector<Term> terms_;
};

}  // namespace saito
