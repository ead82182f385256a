#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "saito/metric.hpp"
#include "saito/poly_text.hpp"

using namespace saito;

namespace {

Poly gen_poly(GroupId g, const char* text) {
    return parse_poly(group_spec(g).generator_ring, text, ParseMode::Lenient);
}

std::vector<Rational> random_point(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 3);
    std::vector<Rational> pt;
    for (std::size_t i = 0; i < n; ++i) pt.push_back(make_rational(num(rng), den(rng)));
    return pt;
}

}  // namespace

TEST_CASE("sample points: integer profile first, then seeded rationals") {
    // rank-n profile: nondecreasing tuples in [1, n-2]^n, C(2n-3, n) of them
    auto check = [](GroupId g, std::size_t expect_profile) {
        const GroupSpec& s = group_spec(g);
        CAPTURE(s.name);
        auto pts = sample_points(g, expect_profile + 7, 42);
        REQUIRE(pts.size() == expect_profile + 7);
        for (std::size_t p = 0; p < expect_profile; ++p) {
            for (const Rational& x : pts[p]) {
                CHECK(is_integer(x));
                CHECK(x >= 1);
                CHECK(x <= long(s.rank) - 2);
            }
            for (std::size_t i = 0; i + 1 < s.rank; ++i) CHECK(pts[p][i] <= pts[p][i + 1]);
            if (p > 0) CHECK(pts[p] != pts[p - 1]);
        }
        // extension points are non-integer-profile (fresh stream)
        CHECK(pts[expect_profile] != pts[expect_profile - 1]);
        // determinism; the seed only affects points beyond the fixed profile
        auto again = sample_points(g, expect_profile + 7, 42);
        CHECK(again == pts);
        auto reseeded = sample_points(g, expect_profile + 7, 43);
        CHECK(std::vector(reseeded.begin(), reseeded.begin() + expect_profile) ==
              std::vector(pts.begin(), pts.begin() + expect_profile));
        CHECK(reseeded.back() != pts.back());
    };
    check(GroupId::E6, 84);    // C(9,6)
    check(GroupId::E7, 330);   // C(11,7)
    check(GroupId::E8, 1287);  // C(13,8)
    // A2 has an empty integer profile; every point is from the seeded stream
    auto a2 = sample_points(GroupId::A2, 6, 1);
    CHECK(a2.size() == 6);
    CHECK(sample_points(GroupId::A2, 6, 2) != a2);
}

TEST_CASE("pairing row for the quadratic generator is the Euler field") {
    // <dp_2, dp_k>* = sigma * k * p_k, exactly, for every group; the pairing
    // normalizes against the quadratic generator, so its row is insensitive
    // to how that generator itself is scaled
    std::mt19937_64 rng(99);
    for (GroupId g : all_groups()) {
        const GroupSpec& s = group_spec(g);
        CAPTURE(s.name);
        for (int trial = 0; trial < 3; ++trial) {
            auto y = random_point(s.rank, rng);
            PointEval pe = eval_generators(g, y);
            for (std::size_t b = 0; b < s.rank; ++b) {
                Rational expect = Rational(2) * long(s.weights.degrees[b]) * pe.values[b];
                CHECK(pairing_at(g, pe, 0, b, 2) == expect);
            }
        }
    }
}

TEST_CASE("metric tables: symmetry, homogeneity, Euler row") {
    for (GroupId g : {GroupId::A2, GroupId::A3, GroupId::E6}) {
        const GroupSpec& s = group_spec(g);
        CAPTURE(s.name);
        MetricTable t = metric_table(g);
        REQUIRE(t.entries.size() == s.rank);
        for (std::size_t a = 0; a < s.rank; ++a)
            for (std::size_t b = 0; b < s.rank; ++b) {
                CHECK(t.entries[a][b] == t.entries[b][a]);
                CHECK(t.entries[a][b].is_homogeneous_of_degree(s.weights.degrees[a] +
                                                               s.weights.degrees[b] - 2));
            }
        // first row: sigma * d_b * p_b
        for (std::size_t b = 0; b < s.rank; ++b) {
            Poly expect = Poly::variable(s.generator_ring, b) *
                          Rational(2 * long(s.weights.degrees[b]));
            CHECK(t.entries[0][b] == expect);
        }
    }
}

TEST_CASE("interpolated tables match the fully symbolic route") {
    for (GroupId g : {GroupId::A2, GroupId::A3}) {
        const GroupSpec& s = group_spec(g);
        CAPTURE(s.name);
        MetricTable t = metric_table(g);
        for (std::size_t a = 0; a < s.rank; ++a)
            for (std::size_t b = a; b < s.rank; ++b) {
                Poly direct = rewrite_in_invariants(g, pairing_symbolic(g, a, b, 2));
                CHECK(t.entries[a][b] == direct);
            }
    }
    // E6: pairs of modest joint degree (the symbolic expansion of the top
    // pairs is needlessly large; they are covered by the reference table)
    const GroupSpec& s = group_spec(GroupId::E6);
    MetricTable t = metric_table(GroupId::E6);
    for (std::size_t a = 0; a < s.rank; ++a)
        for (std::size_t b = a; b < s.rank; ++b) {
            if (s.weights.degrees[a] + s.weights.degrees[b] - 2 > 16) continue;
            CAPTURE(a);
            CAPTURE(b);
            Poly direct = rewrite_in_invariants(GroupId::E6, pairing_symbolic(GroupId::E6, a, b, 2));
            CHECK(t.entries[a][b] == direct);
        }
}

TEST_CASE("E6 table agrees with the reference values") {
    MetricTable t = metric_table(GroupId::E6);
    // degrees (2,5,6,8,9,12) -> indices 0..5
    CHECK(t.entries[1][1] == gen_poly(GroupId::E6, "+120*u8-320*u2*u6+2400*u2^4"));
    CHECK(t.entries[1][2] == gen_poly(GroupId::E6, "+720/7*u9-360*u2^2*u5"));
    CHECK(t.entries[2][2] == gen_poly(GroupId::E6, "+144*u2*u8+576*u2^2*u6+48/5*u5^2-3456*u2^5"));
    CHECK(t.entries[1][3] ==
          gen_poly(GroupId::E6, "+9760/21*u2*u9+160/3*u5*u6-3680*u2^3*u5"));
    CHECK(t.entries[1][4] ==
          gen_poly(GroupId::E6,
                   "+168*u12-1092*u2^2*u8-28/3*u6^2+1792*u2^3*u6+56/5*u2*u5^2-9072*u2^6"));
    CHECK(t.entries[2][3] ==
          gen_poly(GroupId::E6,
                   "+128*u12-448*u2^2*u8+224/9*u6^2+5824/3*u2^3*u6-1288/15*u2*u5^2-16128*u2^6"));
}

TEST_CASE("eta tables: grading structure and reference values") {
    const GroupSpec& s = group_spec(GroupId::E6);
    MetricTable g = metric_table(GroupId::E6);
    MetricTable eta = eta_table(g);
    const std::uint32_t h = s.coxeter_number();
    for (std::size_t a = 0; a < s.rank; ++a)
        for (std::size_t b = 0; b < s.rank; ++b) {
            std::uint32_t dd = s.weights.degrees[a] + s.weights.degrees[b];
            CAPTURE(a);
            CAPTURE(b);
            if (dd < h + 2) {
                CHECK(eta.entries[a][b].is_zero());
            } else if (dd == h + 2) {
                REQUIRE(!eta.entries[a][b].is_zero());
                CHECK(eta.entries[a][b].terms().front().mono.is_constant());
            } else {
                CHECK(eta.entries[a][b].is_homogeneous_of_degree(dd - 2 - h));
            }
        }
    // antidiagonal constants and the nontrivial entries
    CHECK(eta.entries[0][5] == gen_poly(GroupId::E6, "+24"));
    CHECK(eta.entries[1][4] == gen_poly(GroupId::E6, "+168"));
    CHECK(eta.entries[2][3] == gen_poly(GroupId::E6, "+128"));
    CHECK(eta.entries[2][5] == gen_poly(GroupId::E6, "+2752*u2^2"));
    CHECK(eta.entries[3][3] == gen_poly(GroupId::E6, "+896*u2"));
    CHECK(eta.entries[3][5] == gen_poly(GroupId::E6, "+1064/9*u6+25376/3*u2^3"));
    CHECK(eta.entries[4][4] == gen_poly(GroupId::E6, "+14112/5*u2^2"));
    CHECK(eta.entries[4][5] == gen_poly(GroupId::E6, "+742*u2*u5"));
    CHECK(eta.entries[5][5] ==
          gen_poly(GroupId::E6, "+1254*u2*u8-6952/9*u2^2*u6+242/5*u5^2+183656/3*u2^5"));
}

TEST_CASE("solver choice and thread count do not change the result") {
    MetricOptions modular;
    MetricOptions exact;
    exact.solver = SolverKind::Exact;
    MetricOptions threaded;
    threaded.threads = 4;
    for (GroupId g : {GroupId::A3, GroupId::E6}) {
        CAPTURE(group_name(g));
        MetricTable tm = metric_table(g, modular);
        MetricTable te = metric_table(g, exact);
        MetricTable tt = metric_table(g, threaded);
        for (std::size_t a = 0; a < tm.entries.size(); ++a)
            for (std::size_t b = 0; b < tm.entries.size(); ++b) {
                CHECK(tm.entries[a][b] == te.entries[a][b]);
                CHECK(tm.entries[a][b] == tt.entries[a][b]);
            }
    }
}

TEST_CASE("metric scale flows through linearly") {
    MetricOptions one;
    one.sigma = 1;
    MetricTable t1 = metric_table(GroupId::A3, one);
    MetricTable t2 = metric_table(GroupId::A3);
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b)
            CHECK(t1.entries[a][b] * Rational(2) == t2.entries[a][b]);
}

TEST_CASE("rewrite_in_invariants: round trips and rejections") {
    // a generator expands to itself
    Poly u5 = rewrite_in_invariants(GroupId::E6, basic_invariant(GroupId::E6, 5));
    CHECK(u5 == Poly::variable(group_spec(GroupId::E6).generator_ring, 1));
    // non-generator invariant pulls back to a polynomial in the generators
    Poly u4 = rewrite_in_invariants(GroupId::E6, basic_invariant(GroupId::E6, 4));
    CHECK(!u4.is_zero());
    CHECK(u4.is_homogeneous_of_degree(4));
    // symmetric-but-wrong-degree input: no invariants of odd small degree
    const GroupSpec& a2 = group_spec(GroupId::A2);
    CHECK_THROWS_AS(rewrite_in_invariants(GroupId::A2, Poly::variable(a2.chart_ring, 0)),
                    std::invalid_argument);
    // right degree, not invariant
    Poly skew = Poly::variable(a2.chart_ring, 0, 2) - Poly::variable(a2.chart_ring, 1, 2);
    CHECK_THROWS_AS(rewrite_in_invariants(GroupId::A2, skew), std::invalid_argument);
    // inhomogeneous input
    Poly mixed = Poly::variable(a2.chart_ring, 0, 2) + Poly::variable(a2.chart_ring, 1);
    CHECK_THROWS_AS(rewrite_in_invariants(GroupId::A2, mixed), std::invalid_argument);
}
