#include "saito/ring.hpp"

#include <algorithm>
#include <stdexcept>

namespace saito {

Ring::Ring(std::vector<std::string> names, std::vector<std::uint32_t> weights)
    : names_(std::move(names)), weights_(std::move(weights)) {
    if (names_.size() != weights_.size())
        throw std::invalid_argument("Ring: names/weights size mismatch");
    for (std::size_t i = 0; i < names_.size(); ++i)
        for (std::size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j]) throw std::invalid_argument("Ring: duplicate variable name");
}

Ring::Ring(std::vector<std::string> names)
    : Ring(names, std::vector<std::uint32_t>(names.size(), 1)) {}

int Ring::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return -1;
}

bool Ring::precedes(const Monomial& a, const Monomial& b) const {
    std::uint64_t da = weighted_degree(a), db = weighted_degree(b);
    if (da != db) return da > db;
    // Lex descending: first differing exponent, larger wins.
    for (std::size_t i = 0; i < a.exps.size(); ++i)
        if (a.exps[i] != b.exps[i]) return a.exps[i] > b.exps[i];
    return false;
}

namespace {

void enumerate_rec(const std::vector<std::uint32_t>& degrees, std::size_t var, std::uint64_t left,
                   Monomial& current, std::vector<Monomial>& out) {
    if (var == degrees.size()) {
        if (left == 0) out.push_back(current);
        return;
    }
    if (var + 1 == degrees.size()) {
        if (left % degrees[var] == 0) {
            current.exps[var] = static_cast<std::uint32_t>(left / degrees[var]);
            out.push_back(current);
            current.exps[var] = 0;
        }
        return;
    }
    // Largest exponent first keeps the output in graded-lex descending order
    // for equal-degree monomials (earlier variables dominate).
    for (std::uint64_t e = left / degrees[var] + 1; e-- > 0;) {
        current.exps[var] = static_cast<std::uint32_t>(e);
        enumerate_rec(degrees, var + 1, left - e * degrees[var], current, out);
    }
    current.exps[var] = 0;
}

}  // namespace

std::vector<Monomial> enumerate_weighted_monomials(const WeightSystem& ws, std::uint64_t degree) {
    std::vector<Monomial> out;
    Monomial current(ws.degrees.size());
    enumerate_rec(ws.degrees, 0, degree, current, out);
    return out;
}

}  // namespace saito
