#include "saito/potential.hpp"

#include <random>
#include <stdexcept>

namespace saito {

std::vector<std::vector<Poly>> metric_in_flat(const FlatFrame& frame, const MetricTable& gtable) {
    const GroupSpec& s = group_spec(frame.group);
    if (gtable.group != frame.group)
        throw std::invalid_argument("metric_in_flat: table is for a different group");
    if (gtable.sigma != frame.sigma)
        throw std::invalid_argument("metric_in_flat: frame and table scales differ");
    const std::size_t n = s.rank;

    std::vector<std::vector<Poly>> J(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c) J[a].push_back(frame.coords[a].diff(c));

    // two-step congruence keeps the intermediate products small:
    // R[a][d] = sum_c J[a][c] g^{cd},  G[a][b] = sum_d R[a][d] J[b][d]
    std::vector<std::vector<Poly>> R(n, std::vector<Poly>(n, Poly::zero(s.generator_ring)));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t d = 0; d < n; ++d)
            for (std::size_t c = 0; c < n; ++c) {
                if (J[a][c].is_zero() || gtable.entries[c][d].is_zero()) continue;
                R[a][d] += J[a][c] * gtable.entries[c][d];
            }

    auto u_in_t = generators_in_flat(frame);
    std::vector<std::vector<Poly>> out(n, std::vector<Poly>(n, Poly::zero(s.flat_ring)));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            Poly acc(s.generator_ring);
            for (std::size_t d = 0; d < n; ++d) {
                if (R[a][d].is_zero() || J[b][d].is_zero()) continue;
                acc += R[a][d] * J[b][d];
            }
            Poly entry = acc.substitute(u_in_t);
            std::uint64_t want = s.weights.degrees[a] + s.weights.degrees[b] - 2;
            if (!entry.is_homogeneous_of_degree(want))
                throw std::logic_error("metric_in_flat: entry has the wrong degree");
            out[a][b] = std::move(entry);
            if (a != b) out[b][a] = out[a][b];
        }
    return out;
}

Potential frobenius_potential(const FlatFrame& frame, const MetricTable& gtable) {
    const GroupSpec& s = group_spec(frame.group);
    const std::size_t n = s.rank;
    const std::uint32_t h = s.coxeter_number();
    const std::uint64_t fdeg = 2 * std::uint64_t{h} + 2;
    auto gt = metric_in_flat(frame, gtable);

    // Hessian ansatz: cross the table on the antidiagonal and divide out the
    // degree factors; the double Euler integration below then recovers F.
    std::vector<std::vector<Poly>> H(n, std::vector<Poly>(n, Poly::zero(s.flat_ring)));
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t m = 0; m < n; ++m) {
            std::size_t a = s.dual_index(l), b = s.dual_index(m);
            Rational factor = gtable.sigma * long(h) *
                              long(s.weights.degrees[a] + s.weights.degrees[b] - 2);
            H[l][m] = gt[a][b] * (Rational(1) / factor);
        }

    std::vector<Poly> dF;
    for (std::size_t m = 0; m < n; ++m) {
        Poly acc(s.flat_ring);
        for (std::size_t l = 0; l < n; ++l) {
            if (H[l][m].is_zero()) continue;
            acc += Poly::variable(s.flat_ring, l) * H[l][m] * Rational(long(s.weights.degrees[l]));
        }
        dF.push_back(acc * make_rational(1, long(fdeg - s.weights.degrees[m])));
    }
    Poly F(s.flat_ring);
    for (std::size_t m = 0; m < n; ++m)
        F += Poly::variable(s.flat_ring, m) * dF[m] * Rational(long(s.weights.degrees[m]));
    F = F * make_rational(1, long(fdeg));

    if (!F.is_homogeneous_of_degree(fdeg))
        throw std::logic_error("potential: wrong homogeneity degree");
    // integrability: the reconstruction must reproduce the full Hessian
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t m = l; m < n; ++m)
            if (F.diff(l).diff(m) != H[l][m])
                throw std::logic_error("potential: table is not an exact Hessian");

    Potential pot;
    pot.group = frame.group;
    pot.F = std::move(F);
    pot.eta_third = Matrix(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Poly third = pot.F.diff(a).diff(b).diff(n - 1);
            if (third.is_zero()) continue;
            if (third.term_count() != 1 || !third.terms().front().mono.is_constant())
                throw std::logic_error("potential: third-derivative pairing is not constant");
            pot.eta_third.at(a, b) = third.terms().front().coeff;
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            bool anti = s.dual_index(a) == b;
            if (anti && pot.eta_third.at(a, b) == 0)
                throw std::logic_error("potential: vanishing antidiagonal pairing");
            if (!anti && pot.eta_third.at(a, b) != 0)
                throw std::logic_error("potential: pairing has off-antidiagonal entries");
            if (anti && pot.eta_third.at(a, b) != pot.eta_third.at(0, n - 1))
                throw std::logic_error("potential: unequal antidiagonal pairings");
        }
    // Fix the overall scale: the coupling of each dual pair through the top
    // coordinate becomes exactly 1/h. When the quadratic coordinate is the
    // Euler form of the pairing this is a no-op; otherwise it absorbs the
    // normalization of the degree-2 generator into the potential.
    Rational ratio = Rational(1) / (pot.eta_third.at(0, n - 1) * long(h));
    if (ratio != 1) {
        pot.F = pot.F * ratio;
        for (std::size_t a = 0; a < n; ++a) {
            std::size_t b = s.dual_index(a);
            pot.eta_third.at(a, b) = pot.eta_third.at(a, b) * ratio;
        }
    }
    pot.eta_unit = pot.eta_third.at(0, n - 1);
    return pot;
}

bool check_euler(const Potential& pot) {
    const GroupSpec& s = group_spec(pot.group);
    Poly acc(s.flat_ring);
    for (std::size_t a = 0; a < s.rank; ++a)
        acc += Poly::variable(s.flat_ring, a) * pot.F.diff(a) *
               Rational(long(s.weights.degrees[a]));
    return acc == pot.F * Rational(2 * long(s.coxeter_number()) + 2);
}

namespace {

// Third derivatives of F, indexed symmetrically.
std::vector<std::vector<std::vector<Poly>>> third_cube(const Potential& pot, std::size_t n) {
    std::vector<std::vector<std::vector<Poly>>> C(
        n, std::vector<std::vector<Poly>>(n, std::vector<Poly>(n, Poly(pot.F.ring()))));
    for (std::size_t a = 0; a < n; ++a) {
        Poly Fa = pot.F.diff(a);
        for (std::size_t b = a; b < n; ++b) {
            Poly Fab = Fa.diff(b);
            for (std::size_t c = b; c < n; ++c) {
                Poly Fabc = Fab.diff(c);
                C[a][b][c] = C[a][c][b] = C[b][a][c] = Fabc;
                C[b][c][a] = C[c][a][b] = C[c][b][a] = Fabc;
            }
        }
    }
    return C;
}

}  // namespace

bool check_wdvv_symbolic(const Potential& pot) {
    const GroupSpec& s = group_spec(pot.group);
    const std::size_t n = s.rank;
    auto C = third_cube(pot, n);
    // associativity: contracting two third-derivative tensors through the
    // (constant) pairing is symmetric in the outer indices; the common
    // pairing normalization cancels from both sides
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t d = a + 1; d < n; ++d)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c) {
                    Poly lhs(pot.F.ring()), rhs(pot.F.ring());
                    for (std::size_t e = 0; e < n; ++e) {
                        std::size_t f = s.dual_index(e);
                        if (!C[a][b][e].is_zero() && !C[f][c][d].is_zero())
                            lhs += C[a][b][e] * C[f][c][d];
                        if (!C[d][b][e].is_zero() && !C[f][c][a].is_zero())
                            rhs += C[d][b][e] * C[f][c][a];
                    }
                    if (lhs != rhs) return false;
                }
    return true;
}

bool check_wdvv_sampled(const Potential& pot, std::size_t count, std::uint64_t seed) {
    const GroupSpec& s = group_spec(pot.group);
    const std::size_t n = s.rank;
    auto C = third_cube(pot, n);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-19, 19);
    std::uniform_int_distribution<long> den(1, 5);
    for (std::size_t trial = 0; trial < count; ++trial) {
        std::vector<Rational> pt;
        for (std::size_t i = 0; i < n; ++i) pt.push_back(make_rational(num(rng), den(rng)));
        std::vector<std::vector<std::vector<Rational>>> V(
            n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a; b < n; ++b)
                for (std::size_t c = b; c < n; ++c) {
                    Rational v = C[a][b][c].eval(pt);
                    V[a][b][c] = V[a][c][b] = V[b][a][c] = v;
                    V[b][c][a] = V[c][a][b] = V[c][b][a] = v;
                }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t d = a + 1; d < n; ++d)
                for (std::size_t b = 0; b < n; ++b)
                    for (std::size_t c = 0; c < n; ++c) {
                        Rational lhs, rhs;
                        for (std::size_t e = 0; e < n; ++e) {
                            std::size_t f = s.dual_index(e);
                            lhs += V[a][b][e] * V[f][c][d];
                            rhs += V[d][b][e] * V[f][c][a];
                        }
                        if (lhs != rhs) return false;
                    }
    }
    return true;
}

}  // namespace saito
