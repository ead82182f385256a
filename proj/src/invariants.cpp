// Basic invariants as power sums of the catalog form families, plus the
// pointwise evaluator used by the sampling pipeline. The symbolic builder
// expands each linear form by direct multinomial enumeration over its
// support; chart forms have integer coefficients, so accumulation normally
// stays in Int, with a rational fallback for reflected (conjugated) forms.
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "saito/groups.hpp"

namespace saito {

namespace {

Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Int binom(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Rational rat_pow(const Rational& base, unsigned long e) {
    return rational_pow(base, e);
}
Rational rat_binom(unsigned long n, unsigned long k) {
    return Rational(binom(n, k));
}
Int same_pow(const Int& b, unsigned long e) {
    return int_pow(b, e);
}
Int same_binom(unsigned long n, unsigned long k) {
    return binom(n, k);
}

// Exponent vectors are packed 8 bits per variable into the map key; callers
// guarantee rank <= 8 and degree <= 255.
template <typename C>
using Accum = std::unordered_map<std::uint64_t, C>;

template <typename C, typename PowFn, typename BinFn>
void expand_form_power(const std::vector<std::pair<std::size_t, C>>& support, std::size_t pos,
                       std::uint32_t rem, std::uint64_t key, const C& coeff, PowFn powf,
                       BinFn binf, Accum<C>& acc) {
    const auto& [var, c] = support[pos];
    if (pos + 1 == support.size()) {
        acc[key | (std::uint64_t(rem) << (8 * var))] += coeff * powf(c, rem);
        return;
    }
    for (std::uint32_t a = 0; a <= rem; ++a)
        expand_form_power(support, pos + 1, rem - a, key | (std::uint64_t(a) << (8 * var)),
                          C(coeff * binf(rem, a) * powf(c, a)), powf, binf, acc);
}

template <typename C>
std::vector<Term> accum_to_terms(const GroupSpec& spec, const Accum<C>& acc,
                                 const Rational& scale) {
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (const auto& [key, c] : acc) {
        if (c == 0) continue;
        Monomial mono(spec.rank);
        for (std::size_t i = 0; i < spec.rank; ++i)
            mono.exps[i] = std::uint32_t((key >> (8 * i)) & 0xff);
        terms.push_back(Term{std::move(mono), Rational(c) * scale});
    }
    return terms;
}

using Covector = std::vector<Rational>;

// sum_l l^m over the given forms, times scale.
Poly form_power_sum(const GroupSpec& spec, const std::vector<Covector>& forms, std::uint32_t m,
                    const Rational& scale) {
    if (spec.rank > 8 || m > 255) throw std::invalid_argument("form_power_sum: packing range");
    bool all_integer = true;
    for (const auto& form : forms)
        for (const auto& x : form)
            if (!is_integer(x)) all_integer = false;

    auto run = [&](auto zero, auto powf, auto binf, auto extract) {
        using C = decltype(zero);
        Accum<C> acc;
        for (const auto& form : forms) {
            std::vector<std::pair<std::size_t, C>> support;
            for (std::size_t i = 0; i < spec.rank; ++i)
                if (form[i] != 0) support.emplace_back(i, extract(form[i]));
            if (support.empty()) throw std::logic_error("form_power_sum: zero form");
            expand_form_power<C>(support, 0, m, 0, C(1), powf, binf, acc);
        }
        return Poly::from_terms(spec.chart_ring, accum_to_terms(spec, acc, scale));
    };
    if (all_integer)
        return run(Int(0), same_pow, same_binom, [](const Rational& x) { return numerator(x); });
    return run(Rational(0), rat_pow, rat_binom, [](const Rational& x) { return x; });
}

Poly power_sum(const GroupSpec& spec, std::uint32_t m,
               const Matrix* reflect /* nullptr: identity */) {
    Poly total = Poly::zero(spec.chart_ring);
    for (const FormFamily& fam : spec.families) {
        std::vector<Covector> forms;
        if (!reflect) {
            forms = fam.forms;
        } else {
            for (const auto& form : fam.forms) {
                Covector img(spec.rank, Rational(0));
                for (std::size_t i = 0; i < spec.rank; ++i) {
                    if (form[i] == 0) continue;
                    for (std::size_t j = 0; j < spec.rank; ++j)
                        img[j] += form[i] * reflect->at(i, j);
                }
                forms.push_back(std::move(img));
            }
        }
        total += form_power_sum(spec, forms, m, fam.prefactor);
    }
    if (m == 2) total = total * spec.quad_normalizer;
    return total;
}

}  // namespace

const Poly& basic_invariant(GroupId g, std::uint32_t m) {
    if (m == 0) throw std::invalid_argument("basic_invariant: degree must be positive");
    const GroupSpec& spec = group_spec(g);
    if (spec.even_only && m % 2 != 0)
        throw std::invalid_argument(spec.name + ": odd power sums are not invariant");

    static std::mutex mu;
    static std::map<std::pair<GroupId, std::uint32_t>, Poly> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(g, m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, power_sum(spec, m, nullptr)).first->second;
}

const std::vector<Poly>& basic_invariants(GroupId g) {
    static std::mutex mu;
    static std::map<GroupId, std::vector<Poly>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(g);
        if (it != cache.end()) return it->second;
    }
    std::vector<Poly> v;
    for (std::uint32_t d : group_spec(g).weights.degrees) v.push_back(basic_invariant(g, d));
    std::lock_guard<std::mutex> lock(mu);
    return cache.try_emplace(g, std::move(v)).first->second;
}

Poly reflected_power_sum(GroupId g, std::uint32_t m, std::size_t reflection_index) {
    if (m == 0) throw std::invalid_argument("reflected_power_sum: degree must be positive");
    const GroupSpec& spec = group_spec(g);
    if (reflection_index >= spec.reflections_chart.size())
        throw std::out_of_range("reflected_power_sum: reflection index");
    return power_sum(spec, m, &spec.reflections_chart[reflection_index]);
}

PointEval eval_generators(GroupId g, std::span<const Rational> y) {
    const GroupSpec& spec = group_spec(g);
    if (y.size() != spec.rank) throw std::invalid_argument("eval_generators: wrong point size");
    const auto& degs = spec.weights.degrees;
    const std::uint32_t h = spec.coxeter_number();

    PointEval pe;
    pe.values.assign(degs.size(), Rational(0));
    pe.grads.assign(degs.size(), std::vector<Rational>(spec.rank, Rational(0)));

    std::vector<Rational> powers(h + 1);
    for (const FormFamily& fam : spec.families) {
        for (const auto& form : fam.forms) {
            Rational val(0);
            for (std::size_t i = 0; i < spec.rank; ++i)
                if (form[i] != 0) val += form[i] * y[i];
            powers[0] = 1;
            for (std::uint32_t k = 1; k <= h; ++k) powers[k] = powers[k - 1] * val;
            for (std::size_t a = 0; a < degs.size(); ++a) {
                const std::uint32_t m = degs[a];
                pe.values[a] += fam.prefactor * powers[m];
                Rational gc = fam.prefactor * m * powers[m - 1];
                if (gc == 0) continue;
                for (std::size_t i = 0; i < spec.rank; ++i)
                    if (form[i] != 0) pe.grads[a][i] += gc * form[i];
            }
        }
    }
    for (std::size_t a = 0; a < degs.size(); ++a) {
        if (degs[a] != 2) continue;
        pe.values[a] *= spec.quad_normalizer;
        for (auto& x : pe.grads[a]) x *= spec.quad_normalizer;
    }
    return pe;
}

}  // namespace saito
