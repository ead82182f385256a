#include "saito/poly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace saito {

void Poly::assert_same_ring(const Poly& o) const {
    if (!ring_ || !o.ring_ || *ring_ != *o.ring_)
        throw std::invalid_argument("Poly: ring mismatch");
}

Poly Poly::constant(RingPtr ring, const Rational& c) {
    Poly p(std::move(ring));
    if (c != 0) p.terms_.push_back({Monomial(p.ring_->nvars()), c});
    return p;
}

Poly Poly::variable(RingPtr ring, std::size_t var, std::uint32_t exp) {
    Poly p(std::move(ring));
    if (var >= p.ring_->nvars()) throw std::out_of_range("Poly::variable: index");
    if (exp == 0) return constant(p.ring_, 1);
    Monomial m(p.ring_->nvars());
    m.exps[var] = exp;
    p.terms_.push_back({std::move(m), Rational(1)});
    return p;
}

Poly Poly::linear_form(RingPtr ring, std::span<const Rational> coeffs) {
    Poly p(std::move(ring));
    if (coeffs.size() != p.ring_->nvars())
        throw std::invalid_argument("Poly::linear_form: size mismatch");
    PolyBuilder b(p.ring_);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        Monomial m(p.ring_->nvars());
        m.exps[i] = 1;
        b.add(m, coeffs[i]);
    }
    return b.build();
}

Poly Poly::from_terms(RingPtr ring, std::vector<Term> terms) {
    PolyBuilder b(std::move(ring));
    for (auto& t : terms) b.add(t.mono, t.coeff);
    return b.build();
}

Rational Poly::coeff(const Monomial& m) const {
    for (const auto& t : terms_)
        if (t.mono == m) return t.coeff;
    return Rational(0);
}

bool Poly::operator==(const Poly& o) const {
    if (!ring_ || !o.ring_) return terms_.empty() && o.terms_.empty();
    if (*ring_ != *o.ring_) return false;
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].mono != o.terms_[i].mono || terms_[i].coeff != o.terms_[i].coeff)
            return false;
    return true;
}

Poly Poly::operator-() const {
    Poly r(*this);
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

// Merge of two canonically sorted term lists.
Poly Poly::operator+(const Poly& o) const {
    assert_same_ring(o);
    Poly r(ring_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        if (terms_[i].mono == o.terms_[j].mono) {
            Rational c = terms_[i].coeff + o.terms_[j].coeff;
            if (c != 0) r.terms_.push_back({terms_[i].mono, std::move(c)});
            ++i;
            ++j;
        } else if (ring_->precedes(terms_[i].mono, o.terms_[j].mono)) {
            r.terms_.push_back(terms_[i++]);
        } else {
            r.terms_.push_back(o.terms_[j++]);
        }
    }
    while (i < terms_.size()) r.terms_.push_back(terms_[i++]);
    while (j < o.terms_.size()) r.terms_.push_back(o.terms_[j++]);
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    assert_same_ring(o);
    if (is_zero() || o.is_zero()) return Poly(ring_);
    PolyBuilder b(ring_);
    for (const auto& ta : terms_)
        for (const auto& tb : o.terms_) b.add(ta.mono * tb.mono, ta.coeff * tb.coeff);
    return b.build();
}

Poly Poly::operator*(const Rational& c) const {
    if (c == 0) return Poly(ring_);
    Poly r(*this);
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

Poly Poly::pow(std::uint64_t e) const {
    if (!ring_) throw std::invalid_argument("Poly::pow: no ring");
    if (e == 0) return constant(ring_, 1);
    // Square-and-multiply; intermediate sizes stay modest for our uses.
    Poly base(*this), acc;
    bool have = false;
    while (e) {
        if (e & 1) {
            acc = have ? acc * base : base;
            have = true;
        }
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

Poly Poly::diff(std::size_t var) const {
    if (var >= ring_->nvars()) throw std::out_of_range("Poly::diff: index");
    Poly r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        if (t.mono.exps[var] == 0) continue;
        Term d{t.mono, t.coeff * Rational(t.mono.exps[var])};
        d.mono.exps[var] -= 1;
        r.terms_.push_back(std::move(d));
    }
    // Dropping a variable's power preserves the relative canonical order of
    // the surviving terms, so no re-sort is needed.
    return r;
}

Rational Poly::eval(std::span<const Rational> point) const {
    if (point.size() != ring_->nvars()) throw std::invalid_argument("Poly::eval: point size");
    // Cache powers per variable on demand.
    std::vector<std::vector<Rational>> powers(point.size());
    auto power = [&](std::size_t v, std::uint32_t e) -> const Rational& {
        auto& tab = powers[v];
        if (tab.empty()) tab.push_back(Rational(1));
        while (tab.size() <= e) tab.push_back(tab.back() * point[v]);
        return tab[e];
    };
    Rational sum(0);
    for (const auto& t : terms_) {
        Rational prod = t.coeff;
        for (std::size_t v = 0; v < point.size(); ++v)
            if (t.mono.exps[v]) prod *= power(v, t.mono.exps[v]);
        sum += prod;
    }
    return sum;
}

Poly Poly::substitute(std::span<const Poly> images) const {
    if (images.size() != ring_->nvars())
        throw std::invalid_argument("Poly::substitute: one image per variable required");
    if (images.empty()) throw std::invalid_argument("Poly::substitute: empty ring");
    RingPtr target = images[0].ring();
    for (const auto& im : images)
        if (*im.ring() != *target) throw std::invalid_argument("Poly::substitute: image ring mismatch");
    std::vector<std::vector<Poly>> powers(images.size());
    auto power = [&](std::size_t v, std::uint32_t e) -> const Poly& {
        auto& tab = powers[v];
        if (tab.empty()) tab.push_back(Poly::constant(target, 1));
        while (tab.size() <= e) tab.push_back(tab.back() * images[v]);
        return tab[e];
    };
    Poly sum(target);
    for (const auto& t : terms_) {
        Poly prod = Poly::constant(target, t.coeff);
        for (std::size_t v = 0; v < images.size(); ++v)
            if (t.mono.exps[v]) prod *= power(v, t.mono.exps[v]);
        sum += prod;
    }
    return sum;
}

std::optional<std::uint64_t> Poly::weighted_degree() const {
    if (terms_.empty()) return std::nullopt;
    return ring_->weighted_degree(terms_.front().mono);
}

bool Poly::is_homogeneous() const {
    if (terms_.empty()) return true;
    std::uint64_t d = ring_->weighted_degree(terms_.front().mono);
    for (const auto& t : terms_)
        if (ring_->weighted_degree(t.mono) != d) return false;
    return true;
}

bool Poly::is_homogeneous_of_degree(std::uint64_t d) const {
    for (const auto& t : terms_)
        if (ring_->weighted_degree(t.mono) != d) return false;
    return true;
}

void PolyBuilder::add(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    terms_.push_back({m, c});
}

Poly PolyBuilder::build() {
    Poly p(ring_);
    if (terms_.empty()) return p;
    const Ring& ring = *ring_;
    std::sort(terms_.begin(), terms_.end(), [&ring](const Term& a, const Term& b) {
        return ring.precedes(a.mono, b.mono);
    });
    p.terms_.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coeff += t.coeff;
            if (p.terms_.back().coeff == 0) p.terms_.pop_back();
        } else {
            p.terms_.push_back(std::move(t));
        }
    }
    terms_.clear();
    return p;
}

}  // namespace saito
