#pragma once

#include "saito/flat.hpp"

namespace saito {

// The main table pushed through the frame and rewritten in the flat
// coordinates; entry (a,b) is homogeneous of degree d_a + d_b - 2 over the
// flat ring. Requires frame and table to carry the same overall scale.
std::vector<std::vector<Poly>> metric_in_flat(const FlatFrame& frame, const MetricTable& gtable);

// The prepotential and the constants implied by its third derivatives.
struct Potential {
    GroupId group;
    Poly F;            // flat ring, homogeneous of weighted degree 2h + 2
    Matrix eta_third;  // d^3 F / dt_a dt_b dt_top — constant, antidiagonal
    Rational eta_unit; // the antidiagonal value (1/h by construction)
};

// Builds F so that its Hessian reproduces the dualized flat-coordinate table
// up to the degree factors, then integrates and re-verifies the full Hessian
// and the constancy of the third-derivative pairing. Throws logic_error if
// the table is not an exact Hessian in these coordinates.
Potential frobenius_potential(const FlatFrame& frame, const MetricTable& gtable);

// Quasi-homogeneity: sum_a d_a t_a dF/dt_a == (2h+2) F, exactly.
bool check_euler(const Potential& pot);

// Associativity of the product defined by F, as the full polynomial identity.
bool check_wdvv_symbolic(const Potential& pot);

// Associativity checked at `count` deterministic rational points (exact
// arithmetic at each point; a failed identity at any point is a hard fail).
bool check_wdvv_sampled(const Potential& pot, std::size_t count, std::uint64_t seed);

}  // namespace saito
