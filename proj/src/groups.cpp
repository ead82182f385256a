#include "saito/groups.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace saito {

namespace {

using Covector = std::vector<Rational>;

// Ambient covector restricted to the chart: a ∘ embedding.
Covector restrict_covector(const GroupSpec& spec, const Covector& ambient) {
    Covector out(spec.rank, Rational(0));
    for (std::size_t i = 0; i < spec.ambient_dim; ++i) {
        if (ambient[i] == 0) continue;
        for (std::size_t j = 0; j < spec.rank; ++j)
            out[j] += ambient[i] * spec.embedding[i][j];
    }
    return out;
}

Rational dot(const Covector& a, const Covector& b) {
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Reflection about the hyperplane normal^perp, conjugated to chart
// coordinates: R = P (I - 2 v v^T / v.v) C with P the chart projection and C
// the embedding.
Matrix chart_reflection(const GroupSpec& spec, const Covector& normal) {
    const std::size_t n = spec.ambient_dim, r = spec.rank;
    Rational vv = dot(normal, normal);
    if (vv == 0) throw std::logic_error("chart_reflection: zero normal");
    Matrix R(r, r);
    for (std::size_t a = 0; a < r; ++a) {
        const std::size_t ca = spec.chart_vars[a];
        // row ca of the ambient reflection, as an ambient covector
        Covector row(n, Rational(0));
        row[ca] = 1;
        Rational f = 2 * normal[ca] / vv;
        for (std::size_t i = 0; i < n; ++i) row[i] -= f * normal[i];
        Covector chart_row = restrict_covector(spec, row);
        for (std::size_t j = 0; j < r; ++j) R.at(a, j) = chart_row[j];
    }
    return R;
}

void append_form(FormFamily& fam, const GroupSpec& spec, const Covector& ambient) {
    Covector c = restrict_covector(spec, ambient);
    for (const Rational& x : c)
        if (!is_integer(x))
            throw std::logic_error("group catalog: non-integer chart form");
    fam.forms.push_back(std::move(c));
}

void finish_spec(GroupSpec& spec, const char* gen_prefix) {
    // Rings.
    std::vector<std::string> ynames, gnames, tnames;
    for (std::size_t i = 0; i < spec.rank; ++i) ynames.push_back("y" + std::to_string(i + 1));
    for (std::uint32_t d : spec.weights.degrees) {
        gnames.push_back(gen_prefix + std::to_string(d));
        tnames.push_back("t" + std::to_string(d));
    }
    spec.chart_ring = make_ring(std::move(ynames));
    spec.generator_ring = make_ring(std::move(gnames), spec.weights.degrees);
    spec.flat_ring = make_ring(std::move(tnames), spec.weights.degrees);

    // Reflections, after checking the normals fix the subspace V.
    for (const Covector& v : spec.reflection_normals) {
        for (const Covector& c : spec.constraints)
            if (dot(c, v) != 0)
                throw std::logic_error("group catalog: reflection normal leaves V");
        spec.reflections_chart.push_back(chart_reflection(spec, v));
    }
    Matrix id = Matrix::identity(spec.rank);
    for (const Matrix& R : spec.reflections_chart)
        if (!(R * R == id)) throw std::logic_error("group catalog: reflection not involutive");

    // Embedded chart coordinates must satisfy the constraints identically.
    for (const Covector& c : spec.constraints)
        for (const Rational& x : restrict_covector(spec, c))
            if (x != 0) throw std::logic_error("group catalog: embedding violates constraint");

    // Forms within a family must be pairwise distinct so that set membership
    // is a valid permutation certificate.
    for (const FormFamily& fam : spec.families)
        for (std::size_t i = 0; i < fam.forms.size(); ++i)
            for (std::size_t j = i + 1; j < fam.forms.size(); ++j)
                if (fam.forms[i] == fam.forms[j])
                    throw std::logic_error("group catalog: duplicate form");

    const auto& deg = spec.weights.degrees;
    for (std::size_t i = 0; i < deg.size(); ++i)
        if (deg[i] + deg[deg.size() - 1 - i] != spec.coxeter_number() + 2)
            throw std::logic_error("group catalog: degrees not dual-paired");
}

Covector unit(std::size_t n, std::size_t i, int sign = 1) {
    Covector v(n, Rational(0));
    v[i] = sign;
    return v;
}

// Adjacent-transposition normals e_i - e_{i+1} for i in [0, count).
void add_transpositions(GroupSpec& spec, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
        Covector v(spec.ambient_dim, Rational(0));
        v[i] = 1;
        v[i + 1] = -1;
        spec.reflection_normals.push_back(std::move(v));
    }
}

// Embedding rows: chart coordinates are ambient units; each eliminated
// coordinate is a given chart covector.
void set_embedding(GroupSpec& spec, const std::map<std::size_t, Covector>& eliminated) {
    spec.embedding.assign(spec.ambient_dim, Covector(spec.rank, Rational(0)));
    for (std::size_t a = 0; a < spec.rank; ++a) spec.embedding[spec.chart_vars[a]][a] = 1;
    for (const auto& [amb, row] : eliminated) spec.embedding[amb] = row;
}

// Symmetric group S_{l+1} on x_1 + ... + x_{l+1} = 0 with power-sum
// invariants; chart drops the last coordinate. Small control case.
GroupSpec make_a(std::size_t l) {
    GroupSpec s;
    s.id = l == 2 ? GroupId::A2 : GroupId::A3;
    s.name = "a" + std::to_string(l);
    s.ambient_dim = l + 1;
    s.rank = l;
    s.constraints = {Covector(l + 1, Rational(1))};
    for (std::size_t i = 0; i < l; ++i) s.chart_vars.push_back(i);
    Covector last(l, Rational(-1));
    set_embedding(s, {{l, last}});
    add_transpositions(s, l);

    FormFamily fam;
    fam.prefactor = 1;
    fam.closed_up_to_sign = false;
    for (std::size_t i = 0; i <= l; ++i) append_form(fam, s, unit(l + 1, i));
    s.families.push_back(std::move(fam));

    std::vector<std::uint32_t> degs;
    for (std::uint32_t d = 2; d <= l + 1; ++d) degs.push_back(d);
    s.weights = WeightSystem{degs};
    s.quad_normalizer = make_rational(1, 2);
    s.top_scale = 1;
    s.even_only = false;
    finish_spec(s, "p");
    return s;
}

// 27 forms on x_1+...+x_6 = 0, x_7+x_8 = 0: the two chart-nonzero pieces of
// ±(x_7-x_8)/2 - x_i + S/6 and x_i + x_j - S/3 where S = x_1+...+x_6.
GroupSpec make_e6() {
    GroupSpec s;
    s.id = GroupId::E6;
    s.name = "e6";
    s.ambient_dim = 8;
    s.rank = 6;
    Covector c1(8, Rational(0)), c2(8, Rational(0));
    for (std::size_t i = 0; i < 6; ++i) c1[i] = 1;
    c2[6] = c2[7] = 1;
    s.constraints = {c1, c2};
    s.chart_vars = {0, 1, 2, 3, 4, 6};
    Covector x6(6, Rational(-1));
    x6[5] = 0;  // x_6 = -(x_1+...+x_5); x_8 = -x_7
    Covector x8(6, Rational(0));
    x8[5] = -1;
    set_embedding(s, {{5, x6}, {7, x8}});

    add_transpositions(s, 5);
    Covector special{1, 1, 1, -1, -1, -1, 1, -1};
    s.reflection_normals.push_back(special);

    FormFamily fam;
    fam.prefactor = 1;
    fam.closed_up_to_sign = false;
    for (std::size_t i = 0; i < 6; ++i)
        for (int sg : {1, -1}) {
            Covector a(8, make_rational(1, 6));
            a[i] -= 1;
            a[6] = make_rational(sg, 2);
            a[7] = make_rational(-sg, 2);
            append_form(fam, s, a);
        }
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i + 1; j < 6; ++j) {
            Covector a(8, make_rational(-1, 3));
            a[6] = a[7] = 0;
            a[i] += 1;
            a[j] += 1;
            append_form(fam, s, a);
        }
    s.families.push_back(std::move(fam));

    s.weights = WeightSystem{{2, 5, 6, 8, 9, 12}};
    s.quad_normalizer = make_rational(1, 12);
    s.top_scale = 1;
    s.even_only = false;
    finish_spec(s, "u");
    return s;
}

// 56 forms ±(x_i+x_j) - S/4 on S = x_1+...+x_8 = 0, summed with weight 1/2.
// Odd power sums cancel in ± pairs on the chart.
GroupSpec make_e7() {
    GroupSpec s;
    s.id = GroupId::E7;
    s.name = "e7";
    s.ambient_dim = 8;
    s.rank = 7;
    s.constraints = {Covector(8, Rational(1))};
    s.chart_vars = {0, 1, 2, 3, 4, 5, 6};
    set_embedding(s, {{7, Covector(7, Rational(-1))}});

    add_transpositions(s, 6);
    Covector special{1, 1, 1, 1, -1, -1, -1, -1};
    s.reflection_normals.push_back(special);

    FormFamily fam;
    fam.prefactor = make_rational(1, 2);
    fam.closed_up_to_sign = false;
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = i + 1; j < 8; ++j)
            for (int sg : {1, -1}) {
                Covector a(8, make_rational(-1, 4));
                a[i] += sg;
                a[j] += sg;
                append_form(fam, s, a);
            }
    s.families.push_back(std::move(fam));

    s.weights = WeightSystem{{2, 6, 8, 10, 12, 14, 18}};
    s.quad_normalizer = make_rational(1, 12);
    s.top_scale = make_rational(2, 1229);
    s.even_only = false;
    finish_spec(s, "v");
    return s;
}

// 36 difference forms x_i - x_j plus 84 triple forms S/3 - x_i - x_j - x_k on
// S = x_1+...+x_9 = 0. Reflections permute these only up to sign, so only
// even power sums are invariant.
GroupSpec make_e8() {
    GroupSpec s;
    s.id = GroupId::E8;
    s.name = "e8";
    s.ambient_dim = 9;
    s.rank = 8;
    s.constraints = {Covector(9, Rational(1))};
    s.chart_vars = {0, 1, 2, 3, 4, 5, 6, 7};
    set_embedding(s, {{8, Covector(8, Rational(-1))}});

    add_transpositions(s, 7);
    Covector special{2, 2, 2, -1, -1, -1, -1, -1, -1};
    s.reflection_normals.push_back(special);

    FormFamily fam;
    fam.prefactor = 1;
    fam.closed_up_to_sign = true;
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = i + 1; j < 9; ++j) {
            Covector a(9, Rational(0));
            a[i] = 1;
            a[j] = -1;
            append_form(fam, s, a);
        }
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = i + 1; j < 9; ++j)
            for (std::size_t k = j + 1; k < 9; ++k) {
                Covector a(9, make_rational(1, 3));
                a[i] -= 1;
                a[j] -= 1;
                a[k] -= 1;
                append_form(fam, s, a);
            }
    s.families.push_back(std::move(fam));

    s.weights = WeightSystem{{2, 8, 12, 14, 18, 20, 24, 30}};
    s.quad_normalizer = make_rational(1, 60);
    s.top_scale = make_rational(96, 61);
    s.even_only = true;
    finish_spec(s, "w");
    return s;
}

}  // namespace

std::size_t GroupSpec::dual_index(std::size_t alpha) const {
    return weights.degrees.size() - 1 - alpha;
}

const std::vector<GroupId>& all_groups() {
    static const std::vector<GroupId> ids{GroupId::A2, GroupId::A3, GroupId::E6, GroupId::E7,
                                          GroupId::E8};
    return ids;
}

GroupId group_from_string(const std::string& name) {
    for (GroupId g : all_groups())
        if (group_name(g) == name) return g;
    throw std::invalid_argument("unknown group: " + name);
}

const std::string& group_name(GroupId g) {
    return group_spec(g).name;
}

const GroupSpec& group_spec(GroupId g) {
    static const GroupSpec a2 = make_a(2);
    static const GroupSpec a3 = make_a(3);
    static const GroupSpec e6 = make_e6();
    static const GroupSpec e7 = make_e7();
    static const GroupSpec e8 = make_e8();
    switch (g) {
        case GroupId::A2: return a2;
        case GroupId::A3: return a3;
        case GroupId::E6: return e6;
        case GroupId::E7: return e7;
        case GroupId::E8: return e8;
    }
    throw std::logic_error("group_spec: bad id");
}

const CartanMetric& cartan_metric(GroupId g) {
    static std::mutex mu;
    static std::map<GroupId, CartanMetric> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(g);
    if (it != cache.end()) return it->second;

    const GroupSpec& spec = group_spec(g);
    const Poly& p2 = basic_invariant(g, 2);
    const std::size_t n = spec.rank;
    CartanMetric cm;
    cm.G = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        Poly di = p2.diff(i);
        for (std::size_t j = 0; j < n; ++j) {
            Poly dij = di.diff(j);
            if (!dij.is_zero() && !dij.terms().front().mono.is_constant())
                throw std::logic_error("cartan_metric: quadratic invariant is not quadratic");
            cm.G.at(i, j) = dij.is_zero() ? Rational(0) : dij.terms().front().coeff;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (cm.G.at(i, j) != cm.G.at(j, i)) throw std::logic_error("cartan_metric: asymmetric");
    // Positive definiteness via leading principal minors.
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = cm.G.at(i, j);
        if (!(determinant(sub) > 0)) throw std::logic_error("cartan_metric: not positive definite");
    }
    cm.G_inv = inverse(cm.G);
    return cache.emplace(g, std::move(cm)).first->second;
}

bool check_invariance_symbolic(const GroupSpec& spec, const Poly& p_chart) {
    for (const Matrix& R : spec.reflections_chart) {
        std::vector<Poly> images;
        images.reserve(spec.rank);
        for (std::size_t i = 0; i < spec.rank; ++i) {
            std::vector<Rational> row(spec.rank);
            for (std::size_t j = 0; j < spec.rank; ++j) row[j] = R.at(i, j);
            images.push_back(Poly::linear_form(spec.chart_ring, row));
        }
        if (p_chart.substitute(images) != p_chart) return false;
    }
    return true;
}

bool check_form_closure(const GroupSpec& spec) {
    for (const FormFamily& fam : spec.families) {
        for (const Matrix& R : spec.reflections_chart) {
            for (const auto& form : fam.forms) {
                // image covector: (l ∘ R)_j = sum_i l_i R(i, j)
                Covector img(spec.rank, Rational(0));
                for (std::size_t i = 0; i < spec.rank; ++i) {
                    if (form[i] == 0) continue;
                    for (std::size_t j = 0; j < spec.rank; ++j) img[j] += form[i] * R.at(i, j);
                }
                bool found = false;
                for (const auto& other : fam.forms) {
                    if (other == img) {
                        found = true;
                        break;
                    }
                    if (fam.closed_up_to_sign) {
                        bool neg = true;
                        for (std::size_t j = 0; j < spec.rank; ++j)
                            if (other[j] != -img[j]) {
                                neg = false;
                                break;
                            }
                        if (neg) {
                            found = true;
                            break;
                        }
                    }
                }
                // Forms are pairwise distinct and R is invertible, so
                // membership of every image certifies a permutation.
                if (!found) return false;
            }
        }
    }
    return true;
}

}  // namespace saito
