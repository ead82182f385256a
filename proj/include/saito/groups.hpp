// saito/groups.hpp — the reflection-group catalog.
//
// Each entry fixes: the ambient realization (constraints + integer chart),
// the generating reflections, the stable family of linear forms whose power
// sums give the basic invariants, the invariant degrees, and the two
// normalization constants (quadratic normalizer, top frame scale). The A2/A3
// entries exist purely as small brute-force oracles for the pipeline.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "poly.hpp"

namespace saito {

enum class GroupId { A2, A3, E6, E7, E8 };

GroupId group_from_string(const std::string& name);  // throws on unknown name
const std::string& group_name(GroupId g);
const std::vector<GroupId>& all_groups();

struct FormFamily {
    // Linear forms as chart covectors (i.e. already restricted to V); all
    // entries are integers for every catalog group.
    std::vector<std::vector<Rational>> forms;
    Rational prefactor;      // multiplies this family's power sum
    bool closed_up_to_sign;  // true: reflections permute the forms only up to
                             // sign, so invariance holds for even powers only
};

struct GroupSpec {
    GroupId id;
    std::string name;
    std::size_t ambient_dim;
    std::size_t rank;

    // Ambient covectors vanishing on V.
    std::vector<std::vector<Rational>> constraints;
    // Ambient indices kept as chart coordinates.
    std::vector<std::size_t> chart_vars;
    // Ambient coordinate i as a linear form in chart coordinates.
    std::vector<std::vector<Rational>> embedding;

    // Reflection generators: ambient hyperplane normals, plus the exact
    // chart-coordinate matrices (verified involutions).
    std::vector<std::vector<Rational>> reflection_normals;
    std::vector<Matrix> reflections_chart;

    std::vector<FormFamily> families;
    WeightSystem weights;
    Rational quad_normalizer;  // applied to the degree-2 power sum
    Rational top_scale;        // frame scale of the degree-h flat coordinate
    bool even_only;            // invariance certificate covers even powers only

    RingPtr chart_ring;      // y1..y_rank, weight 1
    RingPtr generator_ring;  // u2.. / v2.. / w2.. / p2.., weights = degrees
    RingPtr flat_ring;       // t2.., weights = degrees

    std::uint32_t coxeter_number() const { return weights.coxeter_number(); }
    // Index pairing d_α + d_dual(α) = h + 2 (degrees are symmetric about
    // (h+2)/2 for every catalog group).
    std::size_t dual_index(std::size_t alpha) const;
};

const GroupSpec& group_spec(GroupId g);

// The degree-m basic invariant on the chart: prefactor-weighted power sums of
// the form families, with the quadratic normalizer applied at m == 2.
// Throws for E8 with odd m (those sums are not reflection-invariant).
// Results are cached; the returned reference stays valid for process life.
const Poly& basic_invariant(GroupId g, std::uint32_t m);

// All generators p_{d_1}, ..., p_{d_n} in degree order.
const std::vector<Poly>& basic_invariants(GroupId g);

struct CartanMetric {
    Matrix G;      // covariant: p_2 = (1/2) y^T G y on the chart
    Matrix G_inv;  // exact inverse
};
// Verified symmetric positive definite (leading principal minors).
const CartanMetric& cartan_metric(GroupId g);

// Exact values and chart gradients of every basic invariant at a chart
// point, computed from the form values by the chain rule — no symbolic
// expansion, so this stays cheap even where the expanded invariants have
// millions of terms.
struct PointEval {
    std::vector<Rational> values;              // one per generator
    std::vector<std::vector<Rational>> grads;  // per generator, per chart var
};
PointEval eval_generators(GroupId g, std::span<const Rational> y);

// Exact identity p(r(y)) == p(y) for every generating reflection, by generic
// substitution. Cost grows quickly with degree; intended for small cases and
// negative controls.
bool check_invariance_symbolic(const GroupSpec& spec, const Poly& p_chart);

// The degree-m power sum of the reflected forms l ∘ r for one generating
// reflection, expanded by the same multinomial route as basic_invariant
// (normalizers included). Equality with basic_invariant(g, m) is a full
// symbolic proof of invariance that scales far better than generic
// substitution.
Poly reflected_power_sum(GroupId g, std::uint32_t m, std::size_t reflection_index);

// Certificate that every reflection permutes each form family (as a set, or
// up to sign where declared). Power sums of the declared parity are then
// invariant without expanding p ∘ r symbolically.
bool check_form_closure(const GroupSpec& spec);

}  // namespace saito
