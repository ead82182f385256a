// tests/acceptance.cpp — end-to-end gate for the whole pipeline.
//
// Nine independent checks, one [PASS]/[FAIL] line each, exit nonzero if any
// failed. Golden data comes from the fixture tree (argv[1], default
// "fixtures") plus a handful of values pinned inline; check 7 is the
// property suite and deliberately uses no recorded data at all.

#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "saito/fixtures.hpp"
#include "saito/manifest.hpp"
#include "saito/modsolve.hpp"
#include "saito/poly_text.hpp"

using namespace saito;
namespace fs = std::filesystem;

namespace {

fs::path g_fixtures = "fixtures";
int g_failures = 0;

struct CheckFail {
    std::string msg;
};

void req(bool cond, const std::string& msg) {
    if (!cond) throw CheckFail{msg};
}

void req_none(const std::optional<std::string>& problem) {
    if (problem) throw CheckFail{*problem};
}

void criterion(int num, const std::string& title, const std::function<void()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    try {
        body();
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        std::cout << "[PASS] " << num << ". " << title << " (" << ms << " ms)\n";
    } catch (const CheckFail& f) {
        ++g_failures;
        std::cout << "[FAIL] " << num << ". " << title << ": " << f.msg << "\n";
    } catch (const std::exception& e) {
        ++g_failures;
        std::cout << "[FAIL] " << num << ". " << title << ": unexpected exception: " << e.what()
                  << "\n";
    }
    std::cout.flush();
}

// Shared products, each computed once and reused by later checks.
const MetricTable& table_of(GroupId g) {
    static std::map<GroupId, MetricTable> cache;
    auto it = cache.find(g);
    if (it == cache.end()) {
        MetricOptions opt;
        opt.threads = 4;
        it = cache.emplace(g, metric_table(g, opt)).first;
    }
    return it->second;
}

const FlatFrame& frame_of(GroupId g) {
    static std::map<GroupId, FlatFrame> cache;
    auto it = cache.find(g);
    if (it == cache.end()) it = cache.emplace(g, flat_frame(g, table_of(g))).first;
    return it->second;
}

const Potential& potential_of(GroupId g) {
    static std::map<GroupId, Potential> cache;
    auto it = cache.find(g);
    if (it == cache.end())
        it = cache.emplace(g, frobenius_potential(frame_of(g), table_of(g))).first;
    return it->second;
}

const FixtureSet& fixtures_of(GroupId g) {
    static std::map<GroupId, FixtureSet> cache;
    auto it = cache.find(g);
    if (it == cache.end()) it = cache.emplace(g, load_fixtures(g, g_fixtures)).first;
    return it->second;
}

Monomial pure_power(std::size_t nvars, std::size_t var, std::uint32_t exp) {
    Monomial m(nvars);
    m.exps[var] = exp;
    return m;
}

std::size_t nonzero_upper_entries(const MetricTable& t) {
    std::size_t n = 0;
    for (std::size_t a = 0; a < t.entries.size(); ++a)
        for (std::size_t b = a; b < t.entries.size(); ++b)
            if (!t.entries[a][b].is_zero()) ++n;
    return n;
}

// ---------------------------------------------------------------------------

void check_1_e6_metric() {
    auto t0 = std::chrono::steady_clock::now();
    const MetricTable& mt = table_of(GroupId::E6);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    req(ms < 300000, "table took " + std::to_string(ms) + " ms (budget 300000)");

    req(nonzero_upper_entries(mt) == 21, "expected all 21 upper entries nonzero");
    const FixtureSet& fx = fixtures_of(GroupId::E6);
    req(fx.metric.has_value(), "no metric fixture recorded for e6");
    req_none(compare_metric(fx, mt));

    // one entry pinned inline as well (degrees 5 and 9)
    const GroupSpec& s = group_spec(GroupId::E6);
    Poly want = parse_poly(s.generator_ring,
                           "+168*u12-1092*u2^2*u8-28/3*u6^2+1792*u2^3*u6"
                           "+56/5*u2*u5^2-9072*u2^6",
                           ParseMode::Lenient);
    req_none(diff_polys("entry (5,9)", mt.entries[1][4], want));
}

void check_2_e6_eta() {
    const MetricTable& eta = eta_table(table_of(GroupId::E6));
    req(nonzero_upper_entries(eta) == 9, "expected exactly nine nonzero entries");
    const FixtureSet& fx = fixtures_of(GroupId::E6);
    req(fx.eta.has_value(), "no eta fixture recorded for e6");
    req_none(compare_eta(fx, eta));

    const GroupSpec& s = group_spec(GroupId::E6);
    req(eta.entries[0][5] == Poly::constant(s.generator_ring, 24),
        "entry (2,12) is not the constant 24");
    Poly want = parse_poly(s.generator_ring, "+1064/9*u6+25376/3*u2^3", ParseMode::Lenient);
    req_none(diff_polys("entry (8,12)", eta.entries[3][5], want));
    // after the frame normalizes the dual pairs, the whole antidiagonal is 24
    req(frame_of(GroupId::E6).eta_const == 24, "flat-frame antidiagonal constant is not 24");
}

void check_3_e6_frame_potential() {
    const FlatFrame& f = frame_of(GroupId::E6);
    const Potential& pot = potential_of(GroupId::E6);
    const FixtureSet& fx = fixtures_of(GroupId::E6);
    req(fx.frame.has_value() && fx.potential.has_value(), "missing e6 frame/potential fixture");
    req_none(compare_frame(fx, f));
    req_none(compare_potential(fx, pot));

    std::vector<Rational> scales = {1, 1, 1, make_rational(3, 16), make_rational(1, 7), 1};
    req(f.scales == scales, "frame scales differ from the recorded normalization");
    req(pot.F.terms().size() == 24, "prepotential should carry exactly 24 nonzero terms");
    req(pot.F.coeff(pure_power(6, 0, 13)) == make_rational(25, 1757184),
        "coefficient of t2^13 is wrong");
    req(pot.eta_unit == make_rational(1, 12), "third-derivative unit should be 1/12");
}

void check_4_e7_frame_potential() {
    auto t0 = std::chrono::steady_clock::now();
    const FlatFrame& f = frame_of(GroupId::E7);
    const Potential& pot = potential_of(GroupId::E7);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    req(ms < 1800000, "pipeline took " + std::to_string(ms) + " ms (budget 1800000)");

    const FixtureSet& fx = fixtures_of(GroupId::E7);
    req(fx.frame.has_value() && fx.potential.has_value(), "missing e7 frame/potential fixture");
    req_none(compare_frame(fx, f));
    req_none(compare_potential(fx, pot));

    // spot values: the v2^9 coefficient inside monic t18, one F coefficient
    req(f.monic_coords[6].coeff(pure_power(7, 0, 9)) ==
            make_rational(Int("-4178016043387"), Int("1387061010")),
        "t18: coefficient of v2^9 is wrong");
    req(pot.F.terms().size() == 79, "prepotential should carry exactly 79 nonzero terms");
    req(pot.F.coeff(pure_power(7, 0, 19)) == make_rational(Int("16"), Int("91224740283363")),
        "coefficient of t2^19 is wrong");
}

void check_5_e8_frame_potential() {
    const FlatFrame& f = frame_of(GroupId::E8);
    const Potential& pot = potential_of(GroupId::E8);

    const FixtureSet& fx = fixtures_of(GroupId::E8);
    req(fx.frame.has_value() && fx.potential.has_value(), "missing e8 frame/potential fixture");
    req_none(compare_frame(fx, f));
    req_none(compare_potential(fx, pot));

    req(f.monic_coords[7].coeff(pure_power(8, 0, 15)) ==
            make_rational(Int("-130055065986893806638453467"), Int("203550732000000")),
        "t30: coefficient of w2^15 is wrong");
    req(pot.F.terms().size() == 140, "prepotential should carry exactly 140 nonzero terms");
    Monomial t8_7_t2_3(8);
    t8_7_t2_3.exps[0] = 3;  // t2^3
    t8_7_t2_3.exps[1] = 7;  // t8^7
    req(pot.F.coeff(t8_7_t2_3) == make_rational(Int("1002001"), Int("18575209267200")),
        "coefficient of t8^7 t2^3 is wrong");
}

void check_6_monomial_count() {
    const GroupSpec& s = group_spec(GroupId::E8);
    auto monos = enumerate_weighted_monomials(s.weights, 58);
    req(monos.size() == 163,
        "expected 163 monomials of weighted degree 58, got " + std::to_string(monos.size()));
}

void check_7_property_suite() {
    // (a) reflection invariance, certificate route (all groups, all degrees)
    for (GroupId g : all_groups())
        req(check_form_closure(group_spec(g)),
            group_name(g) + ": form family is not closed under some reflection");

    // (b) reflection invariance, direct expansion spot checks
    {
        const GroupSpec& e6 = group_spec(GroupId::E6);
        for (std::uint32_t m : {2u, 5u, 6u, 8u, 9u, 12u}) {
            const Poly& p = basic_invariant(GroupId::E6, m);
            for (std::size_t r = 0; r < e6.reflections_chart.size(); ++r)
                req(reflected_power_sum(GroupId::E6, m, r) == p,
                    "e6 degree " + std::to_string(m) + " moves under reflection " +
                        std::to_string(r));
        }
        for (std::uint32_t m : {2u, 6u})
            for (std::size_t r : {std::size_t{0}, group_spec(GroupId::E7).reflections_chart.size() - 1})
                req(reflected_power_sum(GroupId::E7, m, r) == basic_invariant(GroupId::E7, m),
                    "e7 degree " + std::to_string(m) + " moves under a reflection");
        for (std::uint32_t m : {2u, 8u})
            for (std::size_t r : {std::size_t{0}, group_spec(GroupId::E8).reflections_chart.size() - 1})
                req(reflected_power_sum(GroupId::E8, m, r) == basic_invariant(GroupId::E8, m),
                    "e8 degree " + std::to_string(m) + " moves under a reflection");
    }

    // (c) generators are independent: the chart Jacobian has full rank at a
    // generic point
    std::mt19937_64 rng(0xACCE97ULL);
    std::uniform_int_distribution<long> num(-19, 19);
    std::uniform_int_distribution<long> den(1, 5);
    for (GroupId g : all_groups()) {
        const GroupSpec& s = group_spec(g);
        bool full_rank = false;
        for (int attempt = 0; attempt < 3 && !full_rank; ++attempt) {
            std::vector<Rational> y;
            for (std::size_t i = 0; i < s.rank; ++i) y.push_back(make_rational(num(rng), den(rng)));
            PointEval pe = eval_generators(g, y);
            Matrix J(s.rank, s.rank);
            for (std::size_t a = 0; a < s.rank; ++a)
                for (std::size_t i = 0; i < s.rank; ++i) J.at(a, i) = pe.grads[a][i];
            full_rank = determinant(J) != 0;
        }
        req(full_rank, s.name + ": Jacobian singular at three random points");
    }

    // (d) in flat coordinates the top-variable derivative of the table is the
    // constant antidiagonal — zero everywhere off it (chain rule divides the
    // frame constant by the top scale)
    for (GroupId g : all_groups()) {
        const GroupSpec& s = group_spec(g);
        const FlatFrame& f = frame_of(g);
        auto flat_g = metric_in_flat(f, table_of(g));
        Rational want_const = f.eta_const / f.scales[s.rank - 1];
        for (std::size_t a = 0; a < s.rank; ++a)
            for (std::size_t b = a; b < s.rank; ++b) {
                Poly d = flat_g[a][b].diff(s.rank - 1);
                Poly want = s.dual_index(a) == b ? Poly::constant(s.flat_ring, want_const)
                                                 : Poly::zero(s.flat_ring);
                req(d == want, s.name + ": secondary entry (" +
                                   std::to_string(s.weights.degrees[a]) + "," +
                                   std::to_string(s.weights.degrees[b]) +
                                   ") not constant in flat coordinates");
            }
    }

    // (e) the dualized table is an exact Hessian (construction throws
    // otherwise), F is homogeneous of degree 2h+2, and the Euler identity holds
    for (GroupId g : all_groups()) {
        const GroupSpec& s = group_spec(g);
        const Potential& pot = potential_of(g);
        std::uint64_t want_deg = 2ull * s.coxeter_number() + 2;
        req(pot.F.is_homogeneous_of_degree(want_deg),
            s.name + ": F is not homogeneous of degree " + std::to_string(want_deg));
        req(check_euler(pot), s.name + ": Euler identity fails");
    }

    // (f) associativity: 50 seeded exact points each, plus the full
    // polynomial identity for E6
    for (GroupId g : {GroupId::E6, GroupId::E7, GroupId::E8})
        req(check_wdvv_sampled(potential_of(g), 50, 271828182845904523ULL),
            group_name(g) + ": associativity fails at a sample point");
    req(check_wdvv_symbolic(potential_of(GroupId::E6)),
        "e6: associativity fails as a polynomial identity");

    // (g) solver cross-validation: exact vs modular on 100 random systems of
    // mixed shape and status
    std::size_t unique_count = 0, other_count = 0;
    for (int i = 0; i < 100; ++i) {
        std::size_t n = 1 + static_cast<std::size_t>(i) % 5;
        std::size_t m = n + static_cast<std::size_t>(i) % 3;
        if (i % 7 == 0) m = (n > 1) ? n - 1 : 1;  // wide systems too
        Matrix A(m, n);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < n; ++c) A.at(r, c) = make_rational(num(rng), den(rng));
        if (i % 11 == 0 && m >= 2)  // force rank drops / inconsistency
            for (std::size_t c = 0; c < n; ++c) A.at(1, c) = A.at(0, c);
        std::vector<Rational> b;
        for (std::size_t r = 0; r < m; ++r) b.push_back(make_rational(num(rng), den(rng)));
        SolveResult ex = solve_exact(A, b);
        SolveResult md = solve_modular(A, b);
        req(ex.status == md.status, "system " + std::to_string(i) + ": status disagreement");
        if (ex.status == SolveStatus::Unique) {
            req(ex.solution == md.solution,
                "system " + std::to_string(i) + ": solution disagreement");
            ++unique_count;
        } else {
            ++other_count;
        }
    }
    req(unique_count > 0 && other_count > 0, "random systems did not mix statuses");
}

void check_8_small_group_oracle() {
    // Independent route: expand each pairing fully in chart variables and
    // rewrite it in the generators by exact coefficient matching — no
    // sampling, no interpolation, no modular arithmetic. Every later stage is
    // then recomputed from that table and compared bit-for-bit.
    for (GroupId g : {GroupId::A2, GroupId::A3}) {
        const GroupSpec& s = group_spec(g);
        MetricTable direct;
        direct.group = g;
        direct.sigma = 2;
        direct.entries.assign(s.rank, std::vector<Poly>(s.rank, Poly::zero(s.generator_ring)));
        for (std::size_t a = 0; a < s.rank; ++a)
            for (std::size_t b = a; b < s.rank; ++b) {
                Poly chart = pairing_symbolic(g, a, b, 2);
                direct.entries[a][b] = direct.entries[b][a] = rewrite_in_invariants(g, chart);
            }

        const MetricTable& interp = table_of(g);
        for (std::size_t a = 0; a < s.rank; ++a)
            for (std::size_t b = 0; b < s.rank; ++b)
                req(direct.entries[a][b] == interp.entries[a][b],
                    s.name + ": table entry (" + std::to_string(s.weights.degrees[a]) + "," +
                        std::to_string(s.weights.degrees[b]) + ") differs between routes");

        MetricTable eta_direct = eta_table(direct);
        MetricTable eta_interp = eta_table(interp);
        for (std::size_t a = 0; a < s.rank; ++a)
            for (std::size_t b = 0; b < s.rank; ++b)
                req(eta_direct.entries[a][b] == eta_interp.entries[a][b],
                    s.name + ": secondary entry differs between routes");

        FlatFrame f_direct = flat_frame(g, direct);
        const FlatFrame& f_interp = frame_of(g);
        req(f_direct.coords == f_interp.coords && f_direct.monic_coords == f_interp.monic_coords,
            s.name + ": flat coordinates differ between routes");
        req(f_direct.scales == f_interp.scales && f_direct.eta_const == f_interp.eta_const,
            s.name + ": frame normalization differs between routes");

        Potential p_direct = frobenius_potential(f_direct, direct);
        const Potential& p_interp = potential_of(g);
        req(p_direct.F == p_interp.F, s.name + ": prepotential differs between routes");
        req(p_direct.eta_unit == p_interp.eta_unit && p_direct.eta_third == p_interp.eta_third,
            s.name + ": third-derivative constants differ between routes");
    }
}

void check_9_manifest_determinism() {
    fs::path base = fs::temp_directory_path() /
                    ("saito_accept9_" + std::to_string(static_cast<unsigned>(::getpid())));
    fs::path dir1 = base / "run1";
    fs::path dir2 = base / "run2";
    fs::remove_all(base);
    try {
        RunConfig cfg;  // defaults: e6, sigma 2, modular, "auto" threads
        cfg.cache_dir = dir1;
        run_pipeline(cfg, Stage::Potential);
        cfg.cache_dir = dir2;
        run_pipeline(cfg, Stage::Potential);

        std::string m1 = read_file(dir1 / "e6" / "manifest.txt");
        std::string m2 = read_file(dir2 / "e6" / "manifest.txt");
        req(m1 == m2, "manifests differ between two identical runs");
        for (const char* name : {"metric.txt", "eta.txt", "frame.txt", "potential.txt"})
            req(read_file(dir1 / "e6" / name) == read_file(dir2 / "e6" / name),
                std::string(name) + " differs between two identical runs");

        // a third run on the warm cache must leave the manifest untouched
        cfg.cache_dir = dir1;
        run_pipeline(cfg, Stage::Potential);
        req(read_file(dir1 / "e6" / "manifest.txt") == m1, "warm rerun changed the manifest");
    } catch (...) {
        fs::remove_all(base);
        throw;
    }
    fs::remove_all(base);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_fixtures = argv[1];
    std::cout << "acceptance gate — fixtures at " << g_fixtures.string() << "\n";

    criterion(1, "E6 pairing table matches the recorded fixtures", check_1_e6_metric);
    criterion(2, "E6 secondary table: nine entries and the constants", check_2_e6_eta);
    criterion(3, "E6 flat frame and prepotential", check_3_e6_frame_potential);
    criterion(4, "E7 flat frame and prepotential", check_4_e7_frame_potential);
    criterion(5, "E8 flat frame and prepotential (stress)", check_5_e8_frame_potential);
    criterion(6, "weighted monomial count at degree 58", check_6_monomial_count);
    criterion(7, "property suite without recorded data", check_7_property_suite);
    criterion(8, "A2/A3 direct symbolic route agrees stage by stage", check_8_small_group_oracle);
    criterion(9, "byte-identical manifests for identical configuration", check_9_manifest_determinism);

    if (g_failures) {
        std::cout << "acceptance: " << (9 - g_failures) << "/9 passed, " << g_failures
                  << " failed\n";
        return 1;
    }
    std::cout << "acceptance: 9/9 passed\n";
    return 0;
}
