// saito/ring.hpp — named polynomial rings and monomials.
//
// A Ring fixes the variable names, their order, and an integer weight per
// variable (1 for plain total degree; generator rings carry the invariant
// degrees; auxiliary unknowns may carry weight 0). Term order everywhere is
// graded lex, descending: higher weighted degree first, ties broken by
// lexicographically larger exponent vector (earlier variables dominate).
#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

namespace saito {

struct Monomial {
    std::vector<std::uint32_t> exps;

    explicit Monomial(std::size_t nvars = 0) : exps(nvars, 0) {}
    explicit Monomial(std::vector<std::uint32_t> e) : exps(std::move(e)) {}

    std::size_t nvars() const { return exps.size(); }
    bool is_constant() const {
        for (auto e : exps)
            if (e) return false;
        return true;
    }
    std::uint64_t total_degree() const {
        return std::accumulate(exps.begin(), exps.end(), std::uint64_t{0});
    }
    std::uint64_t weighted_degree(const std::vector<std::uint32_t>& weights) const {
        std::uint64_t d = 0;
        for (std::size_t i = 0; i < exps.size(); ++i) d += std::uint64_t{exps[i]} * weights[i];
        return d;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r(*this);
        for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] += o.exps[i];
        return r;
    }
    bool divides(const Monomial& o) const {
        for (std::size_t i = 0; i < exps.size(); ++i)
            if (exps[i] > o.exps[i]) return false;
        return true;
    }
    // Pre: this->divides(o) was checked by the caller.
    Monomial divide_into(const Monomial& o) const {
        Monomial r(o);
        for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] -= exps[i];
        return r;
    }

    bool operator==(const Monomial& o) const { return exps == o.exps; }
    bool operator!=(const Monomial& o) const { return exps != o.exps; }
};

class Ring {
  public:
    Ring(std::vector<std::string> names, std::vector<std::uint32_t> weights);
    // All-weights-1 convenience.
    explicit Ring(std::vector<std::string> names);

    std::size_t nvars() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<std::uint32_t>& weights() const { return weights_; }
    std::uint32_t weight(std::size_t i) const { return weights_[i]; }

    // -1 if absent.
    int index_of(const std::string& name) const;

    std::uint64_t weighted_degree(const Monomial& m) const { return m.weighted_degree(weights_); }

    // Canonical term order: true if a precedes b (a is the "larger" term).
    bool precedes(const Monomial& a, const Monomial& b) const;

    bool operator==(const Ring& o) const { return names_ == o.names_ && weights_ == o.weights_; }
    bool operator!=(const Ring& o) const { return !(*this == o); }

  private:
    std::vector<std::string> names_;
    std::vector<std::uint32_t> weights_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> names, std::vector<std::uint32_t> weights) {
    return std::make_shared<Ring>(std::move(names), std::move(weights));
}
inline RingPtr make_ring(std::vector<std::string> names) {
    return std::make_shared<Ring>(std::move(names));
}

// The degree data of a Coxeter group's invariant ring: ascending degrees,
// first entry 2, last entry the Coxeter number h.
struct WeightSystem {
    std::vector<std::uint32_t> degrees;
    std::uint32_t coxeter_number() const { return degrees.back(); }
};

// All exponent vectors c with sum c_i * degrees_i == degree, in canonical
// (graded-lex descending) order. The count equals the coefficient of
// q^degree in prod_i 1/(1-q^{d_i}).
std::vector<Monomial> enumerate_weighted_monomials(const WeightSystem& ws, std::uint64_t degree);

}  // namespace saito
