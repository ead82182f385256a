// saito/metric.hpp — the two flat pairings on the orbit space.
//
// g^{ab} is the pushforward of the invariant inner product to the generator
// coordinates: g^{ab} = sigma * sum_ij (dp_a/dy_i) G^{ij} (dp_b/dy_j),
// re-expressed as a polynomial in the generators. eta^{ab} is its derivative
// by the top-degree generator; it is the second flat structure.
//
// The default path never expands the pairings in chart variables: it samples
// exact values on a deterministic grid and solves for the generator-monomial
// coefficients (with surplus rows and fresh-point back-substitution as
// verification). A fully symbolic path exists for cross-checks on the small
// groups.
#pragma once

#include <cstdint>
#include <vector>

#include "groups.hpp"

namespace saito {

enum class SolverKind { Exact, Modular };

struct MetricOptions {
    Rational sigma = 2;  // overall scale of the pairing
    SolverKind solver = SolverKind::Modular;
    unsigned threads = 1;
    std::uint64_t seed = 271828182845904523ULL;  // sampling/check points
};

struct MetricTable {
    GroupId group;
    Rational sigma;
    // entries[a][b], symmetric, in the generator ring; entry (a,b) is
    // weighted-homogeneous of degree d_a + d_b - 2.
    std::vector<std::vector<Poly>> entries;
};

// Deterministic sample points: all nondecreasing integer tuples with entries
// in [1, rank-2] first (the classical interpolation profile), then seeded
// pseudo-random rational points, `count` in total.
std::vector<std::vector<Rational>> sample_points(GroupId g, std::size_t count,
                                                 std::uint64_t seed);

// Pairing value at an evaluated point: grad_a^T (sigma G^{-1}) grad_b.
Rational pairing_at(GroupId g, const PointEval& pe, std::size_t a, std::size_t b,
                    const Rational& sigma);

// Chart-variable expansion of the pairing (small groups / small degrees).
Poly pairing_symbolic(GroupId g, std::size_t a, std::size_t b, const Rational& sigma);

// Express a weighted-homogeneous chart polynomial in the generators by exact
// coefficient matching against symbolically expanded generator monomials.
// Throws if the polynomial is not in the invariant ring.
Poly rewrite_in_invariants(GroupId g, const Poly& chart_poly);

MetricTable metric_table(GroupId g, const MetricOptions& opt = {});

// Entry-wise derivative by the top-degree generator.
MetricTable eta_table(const MetricTable& g_table);

}  // namespace saito
