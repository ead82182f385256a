#include "saito/flat.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "saito/linalg.hpp"

namespace saito {

namespace {

// Correction monomials for coordinate a: every generator monomial of the
// coordinate's weighted degree except the generator itself. Their unknown
// coefficients are what the solver determines.
std::vector<Monomial> correction_monomials(const GroupSpec& s, std::size_t a) {
    std::vector<Monomial> out;
    for (const auto& m : enumerate_weighted_monomials(s.weights, s.weights.degrees[a])) {
        bool leading = m.exps[a] == 1 && m.total_degree() == 1;
        if (!leading) out.push_back(m);
    }
    return out;
}

// Re-express a generator-ring polynomial over the extended ring (generators
// first, then the weight-0 unknowns).
Poly widen(const Poly& p, const RingPtr& ext, std::size_t nvars) {
    std::vector<Term> terms;
    terms.reserve(p.term_count());
    for (const auto& t : p.terms()) {
        Monomial m(ext->nvars());
        std::copy(t.mono.exps.begin(), t.mono.exps.end(), m.exps.begin());
        (void)nvars;
        terms.push_back({std::move(m), t.coeff});
    }
    return Poly::from_terms(ext, std::move(terms));
}

// Substitute the already-determined unknowns into an equation; remaining
// unknowns stay symbolic. Equations live over the extended ring but their
// monomials only touch the unknown block.
Poly bind_known(const Poly& eq, const std::vector<std::optional<Rational>>& value,
                std::size_t ngen) {
    PolyBuilder acc(eq.ring());
    for (const auto& t : eq.terms()) {
        Rational c = t.coeff;
        Monomial m = t.mono;
        for (std::size_t j = 0; j < value.size(); ++j) {
            std::uint32_t e = m.exps[ngen + j];
            if (e && value[j]) {
                c *= rational_pow(*value[j], e);
                m.exps[ngen + j] = 0;
            }
        }
        acc.add(m, c);
    }
    return acc.build();
}

struct EqShape {
    bool constant = false;
    bool linear = false;           // every term has unknown-degree <= 1
    std::vector<std::size_t> vars; // unknown indices that appear
    Rational constant_term;
};

EqShape shape_of(const Poly& eq, std::size_t ngen, std::size_t nunknown) {
    EqShape sh;
    std::set<std::size_t> vars;
    std::uint64_t maxdeg = 0;
    for (const auto& t : eq.terms()) {
        std::uint64_t deg = 0;
        for (std::size_t j = 0; j < nunknown; ++j) {
            if (t.mono.exps[ngen + j]) {
                vars.insert(j);
                deg += t.mono.exps[ngen + j];
            }
        }
        maxdeg = std::max(maxdeg, deg);
        if (deg == 0) sh.constant_term += t.coeff;
    }
    sh.vars.assign(vars.begin(), vars.end());
    sh.constant = vars.empty();
    sh.linear = maxdeg <= 1;
    return sh;
}

// eta-pairing of two ansatz polynomials: sum over generator indices of
// (d ta / d u_a) * eta^{ab} * (d tb / d u_b).
Poly eta_pairing(const std::vector<Poly>& da, const std::vector<Poly>& db,
                 const std::vector<std::vector<Poly>>& eta) {
    Poly acc(da[0].ring());
    for (std::size_t a = 0; a < da.size(); ++a) {
        if (da[a].is_zero()) continue;
        for (std::size_t b = 0; b < db.size(); ++b) {
            if (eta[a][b].is_zero() || db[b].is_zero()) continue;
            acc += da[a] * eta[a][b] * db[b];
        }
    }
    return acc;
}

}  // namespace

FlatFrame flat_frame(GroupId g, const MetricTable& gtable) {
    const GroupSpec& s = group_spec(g);
    const std::size_t n = s.rank;
    const std::uint32_t h = s.coxeter_number();
    MetricTable etab = eta_table(gtable);

    // --- extended ring: generators plus one weight-0 variable per unknown
    std::vector<std::vector<Monomial>> corr(n);
    std::size_t nunknown = 0;
    for (std::size_t a = 0; a < n; ++a) {
        corr[a] = correction_monomials(s, a);
        nunknown += corr[a].size();
    }
    std::vector<std::string> names = s.generator_ring->names();
    std::vector<std::uint32_t> weights = s.generator_ring->weights();
    for (std::size_t j = 0; j < nunknown; ++j) {
        names.push_back("k" + std::to_string(j + 1));
        weights.push_back(0);
    }
    RingPtr ext = make_ring(std::move(names), std::move(weights));

    // --- monic ansatz over the extended ring, plus its partial derivatives
    std::vector<Poly> ansatz;
    std::vector<std::vector<Poly>> dansatz(n);
    {
        std::size_t next = 0;
        for (std::size_t a = 0; a < n; ++a) {
            std::vector<Term> terms;
            Monomial lead(ext->nvars());
            lead.exps[a] = 1;
            terms.push_back({std::move(lead), Rational(1)});
            for (const auto& cm : corr[a]) {
                Monomial m(ext->nvars());
                std::copy(cm.exps.begin(), cm.exps.end(), m.exps.begin());
                m.exps[n + next] = 1;
                ++next;
                terms.push_back({std::move(m), Rational(1)});
            }
            ansatz.push_back(Poly::from_terms(ext, std::move(terms)));
        }
        for (std::size_t a = 0; a < n; ++a) {
            dansatz[a].reserve(n);
            for (std::size_t i = 0; i < n; ++i) dansatz[a].push_back(ansatz[a].diff(i));
        }
    }

    std::vector<std::vector<Poly>> eta_ext(n, std::vector<Poly>(n, Poly::zero(ext)));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) eta_ext[a][b] = widen(etab.entries[a][b], ext, n);

    // --- vanishing constraints: for every pair above the antidiagonal,
    // each generator-monomial coefficient of the transformed entry is a
    // polynomial in the unknowns that must vanish
    std::vector<Poly> equations;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            if (s.weights.degrees[a] + s.weights.degrees[b] <= h + 2) continue;
            Poly entry = eta_pairing(dansatz[a], dansatz[b], eta_ext);
            std::map<std::vector<std::uint32_t>, PolyBuilder> by_umono;
            for (const auto& t : entry.terms()) {
                std::vector<std::uint32_t> key(t.mono.exps.begin(), t.mono.exps.begin() + n);
                Monomial kpart(t.mono.exps);
                std::fill(kpart.exps.begin(), kpart.exps.begin() + n, 0u);
                by_umono.try_emplace(key, ext).first->second.add(kpart, t.coeff);
            }
            for (auto& [key, builder] : by_umono) {
                Poly eq = builder.build();
                if (!eq.is_zero()) equations.push_back(std::move(eq));
            }
        }

    // --- propagation: repeatedly bind known values; solve single-unknown
    // linear equations directly, fall back to a joint linear solve when the
    // single-unknown pass stalls. Higher-degree equations defer until enough
    // unknowns are bound (they end their life as consistency checks below).
    std::vector<std::optional<Rational>> value(nunknown);
    std::size_t bound = 0;
    std::vector<Poly> pending = equations;
    while (bound < nunknown) {
        bool progressed = false;
        std::vector<Poly> next_round;
        for (const auto& eq0 : pending) {
            Poly eq = bind_known(eq0, value, n);
            if (eq.is_zero()) continue;
            EqShape sh = shape_of(eq, n, nunknown);
            if (sh.constant)
                throw std::logic_error("flat frame: constraint forces a nonzero constant");
            if (sh.linear && sh.vars.size() == 1) {
                // c1 * k + c0 == 0
                Monomial km(ext->nvars());
                km.exps[n + sh.vars[0]] = 1;
                Rational c1 = eq.coeff(km);
                value[sh.vars[0]] = -sh.constant_term / c1;
                ++bound;
                progressed = true;
                continue;
            }
            next_round.push_back(std::move(eq));
        }
        pending = std::move(next_round);
        if (progressed) continue;

        // joint linear fallback over whatever is still linear
        std::vector<std::size_t> cols;
        std::vector<const Poly*> rows;
        {
            std::set<std::size_t> colset;
            for (const auto& eq : pending) {
                EqShape sh = shape_of(eq, n, nunknown);
                if (!sh.linear) continue;
                rows.push_back(&eq);
                colset.insert(sh.vars.begin(), sh.vars.end());
            }
            cols.assign(colset.begin(), colset.end());
        }
        if (rows.empty())
            throw std::logic_error("flat frame: constraints leave unknowns undetermined");
        Matrix A(rows.size(), cols.size());
        std::vector<Rational> rhs(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (std::size_t c = 0; c < cols.size(); ++c) {
                Monomial km(ext->nvars());
                km.exps[n + cols[c]] = 1;
                A.at(r, c) = rows[r]->coeff(km);
            }
            rhs[r] = -shape_of(*rows[r], n, nunknown).constant_term;
        }
        SolveResult res = solve_exact(A, rhs);
        if (res.status != SolveStatus::Unique)
            throw std::logic_error("flat frame: linear fallback cannot pin the unknowns");
        for (std::size_t c = 0; c < cols.size(); ++c) {
            value[cols[c]] = res.solution[c];
            ++bound;
        }
        std::vector<Poly> survivors;
        for (auto& eq : pending) {
            Poly left = bind_known(eq, value, n);
            if (!left.is_zero()) survivors.push_back(std::move(left));
        }
        pending = std::move(survivors);
    }

    // every original constraint must now close exactly
    for (const auto& eq : equations)
        if (!bind_known(eq, value, n).is_zero())
            throw std::logic_error("flat frame: constraints do not close after propagation");

    // --- project the solved ansatz back to the generator ring
    std::vector<Poly> monic;
    {
        std::size_t next = 0;
        for (std::size_t a = 0; a < n; ++a) {
            std::vector<Term> terms;
            Monomial lead(n);
            lead.exps[a] = 1;
            terms.push_back({std::move(lead), Rational(1)});
            for (const auto& cm : corr[a]) {
                const Rational& v = *value[next++];
                if (v != 0) terms.push_back({cm, v});
            }
            monic.push_back(Poly::from_terms(s.generator_ring, std::move(terms)));
        }
    }

    // --- scales: lower member of each dual pair monic, antidiagonal equal
    auto pairing_gen = [&](const Poly& ta, const Poly& tb) {
        std::vector<Poly> da, db;
        for (std::size_t i = 0; i < n; ++i) {
            da.push_back(ta.diff(i));
            db.push_back(tb.diff(i));
        }
        Poly acc(s.generator_ring);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (da[a].is_zero() || etab.entries[a][b].is_zero() || db[b].is_zero()) continue;
                acc += da[a] * etab.entries[a][b] * db[b];
            }
        return acc;
    };

    // The common antidiagonal value is pinned by the catalog scale of the top
    // coordinate: target = top_scale * <d u_2, d (monic top)>. The quadratic
    // generator needs no correction terms, so that pairing is the Euler row
    // constant of the table and the (2, h) pair automatically gets the scales
    // (1, top_scale) below.
    const Rational target = [&]() -> Rational {
        Poly c = pairing_gen(monic[0], monic[n - 1]);
        if (c.is_zero() || !c.terms().front().mono.is_constant() || c.term_count() != 1)
            throw std::logic_error("flat frame: Euler pairing is not a nonzero constant");
        return s.top_scale * c.terms().front().coeff;
    }();
    std::vector<Rational> scales(n, Rational(1));
    for (std::size_t a = 0; a < n; ++a) {
        std::size_t b = s.dual_index(a);
        if (a > b) continue;
        Poly c = pairing_gen(monic[a], monic[b]);
        if (c.is_zero() || !c.terms().front().mono.is_constant() || c.term_count() != 1)
            throw std::logic_error("flat frame: antidiagonal pairing is not a nonzero constant");
        Rational cval = c.terms().front().coeff;
        if (a == b) {
            auto root = rational_sqrt(target / cval);
            if (!root)
                throw std::logic_error("flat frame: self-dual scale has no rational square root");
            scales[a] = *root;
        } else {
            scales[a] = 1;
            scales[b] = target / cval;
        }
    }

    FlatFrame frame;
    frame.group = g;
    frame.sigma = gtable.sigma;
    frame.monic_coords = std::move(monic);
    frame.scales = scales;
    frame.eta_const = target;
    for (std::size_t a = 0; a < n; ++a)
        frame.coords.push_back(frame.monic_coords[a] * scales[a]);

    // --- full verification of the transformed secondary metric
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            Poly entry = pairing_gen(frame.coords[a], frame.coords[b]);
            Poly want = s.dual_index(a) == b ? Poly::constant(s.generator_ring, target)
                                             : Poly::zero(s.generator_ring);
            if (entry != want)
                throw std::logic_error("flat frame: transformed metric is not the constant form");
        }
    return frame;
}

FlatFrame flat_frame(GroupId g, const MetricOptions& opt) {
    return flat_frame(g, metric_table(g, opt));
}

Matrix eta_flat_matrix(const FlatFrame& frame) {
    const GroupSpec& s = group_spec(frame.group);
    Matrix m(s.rank, s.rank);
    for (std::size_t a = 0; a < s.rank; ++a) m.at(a, s.dual_index(a)) = frame.eta_const;
    return m;
}

std::vector<Poly> generators_in_flat(const FlatFrame& frame) {
    const GroupSpec& s = group_spec(frame.group);
    const std::size_t n = s.rank;
    RingPtr fr = s.flat_ring;
    std::vector<Poly> u_in_t(n, Poly::zero(fr));
    std::vector<bool> known(n, false);
    // ascending degree order makes the inversion triangular: the corrections
    // of coordinate a only involve generators of strictly smaller degree
    for (std::size_t a = 0; a < n; ++a) {
        Poly corr = frame.monic_coords[a] - Poly::variable(s.generator_ring, a);
        for (const auto& t : corr.terms())
            for (std::size_t b = 0; b < n; ++b)
                if (t.mono.exps[b] && !known[b])
                    throw std::logic_error("frame inversion: correction uses an unsolved generator");
        std::vector<Poly> images;
        for (std::size_t b = 0; b < n; ++b)
            images.push_back(known[b] ? u_in_t[b] : Poly::zero(fr));
        Poly expr = Poly::variable(fr, a) * (Rational(1) / frame.scales[a]);
        if (!corr.is_zero()) expr -= corr.substitute(images);
        u_in_t[a] = std::move(expr);
        known[a] = true;
    }
    // exact inversion check: push each expression back through the frame
    for (std::size_t a = 0; a < n; ++a) {
        Poly back = frame.coords[a].substitute(u_in_t);
        if (back != Poly::variable(fr, a))
            throw std::logic_error("frame inversion: round trip failed");
    }
    return u_in_t;
}

}  // namespace saito
