#include "saito/metric.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

#include "saito/modsolve.hpp"

namespace saito {

namespace {

// Nondecreasing integer tuples with entries in [1, hi], lexicographic order.
void profile_tuples(std::size_t n, long hi, std::vector<std::vector<Rational>>& out,
                    std::size_t limit) {
    if (hi < 1) return;
    std::vector<long> cur(n, 1);
    while (out.size() < limit) {
        std::vector<Rational> pt(cur.begin(), cur.end());
        out.push_back(std::move(pt));
        // next nondecreasing tuple
        std::size_t i = n;
        while (i > 0 && cur[i - 1] == hi) --i;
        if (i == 0) return;
        ++cur[i - 1];
        for (std::size_t j = i; j < n; ++j) cur[j] = cur[i - 1];
    }
}

std::vector<Rational> random_rational_point(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(1, 40);
    std::uniform_int_distribution<long> den(1, 4);
    std::vector<Rational> pt;
    pt.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pt.push_back(make_rational(num(rng), den(rng)));
    return pt;
}

struct SampleSet {
    GroupId g;
    std::uint64_t seed;
    std::vector<std::vector<Rational>> points;
    std::vector<PointEval> evals;

    void ensure(std::size_t count) {
        if (points.size() < count) points = sample_points(g, count, seed);
        while (evals.size() < points.size()) evals.push_back(eval_generators(g, points[evals.size()]));
    }
};

// Values of each basis monomial at the evaluated generator values.
std::vector<Rational> basis_row(const GroupSpec& spec, const std::vector<Monomial>& basis,
                                const PointEval& pe) {
    // power caches per generator
    std::vector<std::vector<Rational>> pows(spec.rank, {Rational(1)});
    auto power = [&](std::size_t v, std::uint32_t e) -> const Rational& {
        auto& tab = pows[v];
        while (tab.size() <= e) tab.push_back(tab.back() * pe.values[v]);
        return tab[e];
    };
    std::vector<Rational> row;
    row.reserve(basis.size());
    for (const Monomial& m : basis) {
        Rational prod(1);
        for (std::size_t v = 0; v < spec.rank; ++v)
            if (m.exps[v]) prod *= power(v, m.exps[v]);
        row.push_back(std::move(prod));
    }
    return row;
}

SolveResult run_solver(const Matrix& A, std::span<const Rational> b, const MetricOptions& opt) {
    if (opt.solver == SolverKind::Exact) return solve_exact(A, b);
    ModularOptions mo;
    mo.threads = opt.threads;
    return solve_modular(A, b, mo);
}

// Find the generator-ring polynomial of the given weighted degree whose
// values match `value_at` on sample points. Surplus rows make the solve
// self-verifying; three fresh points check the result independently.
template <typename ValueFn>
Poly interpolate_in_generators(const GroupSpec& spec, std::uint64_t degree, ValueFn value_at,
                               SampleSet& samples, const MetricOptions& opt) {
    const std::vector<Monomial> basis = enumerate_weighted_monomials(spec.weights, degree);
    if (basis.empty()) throw std::logic_error("interpolate: empty basis for degree");

    std::size_t rows = basis.size() + 5;
    for (int attempt = 0; attempt < 6; ++attempt) {
        samples.ensure(rows);
        Matrix A(rows, basis.size());
        std::vector<Rational> b(rows);
        for (std::size_t r = 0; r < rows; ++r) {
            std::vector<Rational> row = basis_row(spec, basis, samples.evals[r]);
            for (std::size_t c = 0; c < basis.size(); ++c) A.at(r, c) = std::move(row[c]);
            b[r] = value_at(samples.evals[r]);
        }
        SolveResult res = run_solver(A, b, opt);
        if (res.status == SolveStatus::Inconsistent)
            throw std::logic_error("interpolate: inconsistent sample system");
        if (res.status == SolveStatus::Underdetermined) {
            rows += basis.size() / 2 + 8;  // grow past degenerate sample sets
            continue;
        }
        // fresh-point back-substitution, disjoint from the solve stream
        std::mt19937_64 rng(opt.seed ^ 0xF0E1D2C3B4A59687ULL);
        for (int chk = 0; chk < 3; ++chk) {
            std::vector<Rational> pt = random_rational_point(spec.rank, rng);
            PointEval pe = eval_generators(spec.id, pt);
            std::vector<Rational> row = basis_row(spec, basis, pe);
            Rational lhs(0);
            for (std::size_t c = 0; c < basis.size(); ++c) lhs += row[c] * res.solution[c];
            if (lhs != value_at(pe))
                throw std::logic_error("interpolate: fresh-point check failed");
        }
        std::vector<Term> terms;
        for (std::size_t c = 0; c < basis.size(); ++c)
            if (res.solution[c] != 0) terms.push_back(Term{basis[c], res.solution[c]});
        return Poly::from_terms(spec.generator_ring, std::move(terms));
    }
    throw std::logic_error("interpolate: sample system stayed rank-deficient");
}

}  // namespace

std::vector<std::vector<Rational>> sample_points(GroupId g, std::size_t count,
                                                 std::uint64_t seed) {
    const GroupSpec& spec = group_spec(g);
    std::vector<std::vector<Rational>> pts;
    pts.reserve(count);
    profile_tuples(spec.rank, long(spec.rank) - 2, pts, count);
    std::mt19937_64 rng(seed);
    while (pts.size() < count) pts.push_back(random_rational_point(spec.rank, rng));
    return pts;
}

Rational pairing_at(GroupId g, const PointEval& pe, std::size_t a, std::size_t b,
                    const Rational& sigma) {
    const GroupSpec& spec = group_spec(g);
    const Matrix& Ginv = cartan_metric(g).G_inv;
    Rational acc(0);
    for (std::size_t i = 0; i < spec.rank; ++i) {
        if (pe.grads[a][i] == 0) continue;
        Rational w(0);
        for (std::size_t j = 0; j < spec.rank; ++j) w += Ginv.at(i, j) * pe.grads[b][j];
        acc += pe.grads[a][i] * w;
    }
    return acc * sigma;
}

Poly pairing_symbolic(GroupId g, std::size_t a, std::size_t b, const Rational& sigma) {
    const GroupSpec& spec = group_spec(g);
    const Matrix& Ginv = cartan_metric(g).G_inv;
    const Poly& pa = basic_invariant(g, spec.weights.degrees[a]);
    const Poly& pb = basic_invariant(g, spec.weights.degrees[b]);
    std::vector<Poly> db;
    for (std::size_t j = 0; j < spec.rank; ++j) db.push_back(pb.diff(j));
    Poly acc = Poly::zero(spec.chart_ring);
    for (std::size_t i = 0; i < spec.rank; ++i) {
        Poly raised = Poly::zero(spec.chart_ring);
        for (std::size_t j = 0; j < spec.rank; ++j)
            if (Ginv.at(i, j) != 0) raised += db[j] * Ginv.at(i, j);
        if (raised.is_zero()) continue;
        acc += pa.diff(i) * raised;
    }
    return acc * sigma;
}

Poly rewrite_in_invariants(GroupId g, const Poly& chart_poly) {
    const GroupSpec& spec = group_spec(g);
    if (chart_poly.is_zero()) return Poly::zero(spec.generator_ring);
    if (*chart_poly.ring() != *spec.chart_ring)
        throw std::invalid_argument("rewrite_in_invariants: not a chart polynomial");
    if (!chart_poly.is_homogeneous())
        throw std::invalid_argument("rewrite_in_invariants: not homogeneous");
    const std::uint64_t degree = *chart_poly.weighted_degree();
    const std::vector<Monomial> basis = enumerate_weighted_monomials(spec.weights, degree);
    if (basis.empty())
        throw std::invalid_argument("rewrite_in_invariants: no invariants in this degree");

    // Expanded basis monomials, cached across calls.
    static std::mutex mu;
    static std::map<std::pair<GroupId, std::vector<std::uint32_t>>, Poly> cache;
    std::vector<const Poly*> expansions;
    {
        std::lock_guard<std::mutex> lock(mu);
        for (const Monomial& m : basis) {
            auto key = std::make_pair(g, m.exps);
            auto it = cache.find(key);
            if (it == cache.end()) {
                // peel one variable and recurse through the cache
                Poly exp;
                std::size_t v = 0;
                while (m.exps[v] == 0) ++v;
                Monomial rest = m;
                rest.exps[v] -= 1;
                auto rit = cache.find(std::make_pair(g, rest.exps));
                const Poly& head = basic_invariant(g, spec.weights.degrees[v]);
                if (rit != cache.end())
                    exp = rit->second * head;
                else if (rest.is_constant())
                    exp = head;
                else {
                    exp = head;
                    for (std::size_t w = 0; w < spec.rank; ++w)
                        for (std::uint32_t e = (w == v ? 1 : 0); e < m.exps[w]; ++e)
                            exp *= basic_invariant(g, spec.weights.degrees[w]);
                }
                it = cache.emplace(std::move(key), std::move(exp)).first;
            }
            expansions.push_back(&it->second);
        }
    }

    // Equation index: every chart monomial appearing anywhere.
    std::vector<Monomial> eq_monos;
    for (const Poly* p : expansions)
        for (const Term& t : p->terms()) eq_monos.push_back(t.mono);
    for (const Term& t : chart_poly.terms()) eq_monos.push_back(t.mono);
    const Ring& cr = *spec.chart_ring;
    std::sort(eq_monos.begin(), eq_monos.end(),
              [&cr](const Monomial& x, const Monomial& y) { return cr.precedes(x, y); });
    eq_monos.erase(std::unique(eq_monos.begin(), eq_monos.end()), eq_monos.end());

    Matrix A(eq_monos.size(), basis.size());
    std::vector<Rational> rhs(eq_monos.size(), Rational(0));
    auto mono_index = [&](const Monomial& m) {
        auto it = std::lower_bound(eq_monos.begin(), eq_monos.end(), m,
                                   [&cr](const Monomial& x, const Monomial& y) {
                                       return cr.precedes(x, y);
                                   });
        return std::size_t(it - eq_monos.begin());
    };
    for (std::size_t c = 0; c < expansions.size(); ++c)
        for (const Term& t : expansions[c]->terms()) A.at(mono_index(t.mono), c) = t.coeff;
    for (const Term& t : chart_poly.terms()) rhs[mono_index(t.mono)] = t.coeff;

    SolveResult res = solve_exact(A, rhs);
    if (res.status == SolveStatus::Inconsistent)
        throw std::invalid_argument("rewrite_in_invariants: polynomial is not invariant");
    if (res.status != SolveStatus::Unique)
        throw std::logic_error("rewrite_in_invariants: generator monomials dependent");
    std::vector<Term> terms;
    for (std::size_t c = 0; c < basis.size(); ++c)
        if (res.solution[c] != 0) terms.push_back(Term{basis[c], res.solution[c]});
    return Poly::from_terms(spec.generator_ring, std::move(terms));
}

MetricTable metric_table(GroupId g, const MetricOptions& opt) {
    const GroupSpec& spec = group_spec(g);
    const std::size_t n = spec.rank;
    const auto& deg = spec.weights.degrees;

    SampleSet samples{g, opt.seed, {}, {}};
    MetricTable table;
    table.group = g;
    table.sigma = opt.sigma;
    table.entries.assign(n, std::vector<Poly>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            const std::uint64_t D = deg[a] + deg[b] - 2;
            Poly e = interpolate_in_generators(
                spec, D,
                [&](const PointEval& pe) { return pairing_at(g, pe, a, b, opt.sigma); },
                samples, opt);
            table.entries[a][b] = e;
            table.entries[b][a] = std::move(e);
        }
    return table;
}

MetricTable eta_table(const MetricTable& g_table) {
    const GroupSpec& spec = group_spec(g_table.group);
    MetricTable eta;
    eta.group = g_table.group;
    eta.sigma = g_table.sigma;
    const std::size_t n = spec.rank;
    eta.entries.assign(n, std::vector<Poly>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            eta.entries[a][b] = g_table.entries[a][b].diff(n - 1);
    return eta;
}

}  // namespace saito
