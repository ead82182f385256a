#pragma once

#include "saito/metric.hpp"

namespace saito {

// A graded polynomial coordinate change on the orbit space that renders the
// secondary metric (the highest-generator derivative of the main table)
// constant. coords[a] is homogeneous of the a-th generator degree, stored
// over the generator ring, and equals scales[a] * monic_coords[a] where
// monic_coords[a] has leading coefficient 1 on the a-th generator.
struct FlatFrame {
    GroupId group;
    Rational sigma;  // overall scale carried by the source tables
    std::vector<Poly> coords;
    std::vector<Poly> monic_coords;
    std::vector<Rational> scales;
    Rational eta_const;  // common antidiagonal value of the transformed metric
};

// Solves for the frame from a main-table computation. The corrections to the
// monic ansatz are uniquely determined by the vanishing of the transformed
// secondary metric above the antidiagonal; the scales are then fixed by
// making the lower member of each dual pair monic and the antidiagonal
// constants all equal. Throws logic_error if the equations do not close or
// the equal-antidiagonal rule needs an irrational scale.
FlatFrame flat_frame(GroupId g, const MetricTable& gtable);
FlatFrame flat_frame(GroupId g, const MetricOptions& opt = {});

// The transformed secondary metric as a dense constant matrix:
// eta_const on the antidiagonal, zero elsewhere (verified during the solve).
Matrix eta_flat_matrix(const FlatFrame& frame);

// Each generator written as a polynomial in the flat coordinates (triangular
// inversion of the frame, exact).
std::vector<Poly> generators_in_flat(const FlatFrame& frame);

}  // namespace saito
