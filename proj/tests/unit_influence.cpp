#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "blogrank/influence_flow.hpp"
#include "test_util.hpp"

using namespace blogrank;
using testutil::inlink;
using testutil::post;

namespace {

int node_of(const InfluenceGraph& g, const std::string& id) {
    const auto it = std::find(g.post_ids.begin(), g.post_ids.end(), id);
    REQUIRE(it != g.post_ids.end());
    return static_cast<int>(it - g.post_ids.begin());
}

}  // namespace

TEST_CASE("length weight ramps linearly and saturates") {
    InfluenceParams params;
    params.length_ref = 1000;
    CHECK(length_weight(1000, params) == doctest::Approx(1.0));
    CHECK(length_weight(250, params) == doctest::Approx(0.25));
    CHECK(length_weight(5000, params) == doctest::Approx(1.0));
    CHECK(length_weight(1, params) == doctest::Approx(0.001));
    CHECK_THROWS_AS(length_weight(0, params), std::invalid_argument);
}

TEST_CASE("graph construction with no cross references") {
    const Date d(2008, 5, 1);
    const Corpus c = make_corpus(
        {
            post("p1", "a", d, 3, {inlink(d.plus_days(1)), inlink(d.plus_days(2))}),
            post("p2", "b", d.plus_days(1), 1, {}),
        },
        d.plus_days(30));
    const InfluenceGraph g = build_influence_graph(c, {});
    REQUIRE(g.size() == 2);
    const int p1 = node_of(g, "p1");
    CHECK(g.external_in[p1] == 2);
    CHECK(g.citers[p1].empty());
    CHECK(g.cited[p1].empty());
    CHECK(g.comment_counts[p1] == 3);
}

TEST_CASE("a resolvable source becomes an edge") {
    const Date d(2008, 5, 1);
    const Corpus c = make_corpus(
        {
            post("b", "bob", d, 0, {inlink(d.plus_days(3), "a", "ann")}),
            post("a", "ann", d.plus_days(3), 0, {}, 1),
        },
        d.plus_days(30));
    const InfluenceGraph g = build_influence_graph(c, {});
    const int a = node_of(g, "a");
    const int b = node_of(g, "b");
    CHECK(g.citers[b] == std::vector<int>{a});
    CHECK(g.cited[a] == std::vector<int>{b});
    CHECK(g.external_in[b] == 0);
    CHECK(g.unresolved_out(a) == 0);

    // an unresolvable source is external
    const Corpus c2 = make_corpus({post("b", "bob", d, 0, {inlink(d.plus_days(3), "zebra")})},
                                  d.plus_days(30));
    const InfluenceGraph g2 = build_influence_graph(c2, {});
    CHECK(g2.external_in[node_of(g2, "b")] == 1);
}

TEST_CASE("self-citations are dropped with a warning") {
    const Date d(2008, 5, 1);
    const Corpus c =
        make_corpus({post("s1", "a", d, 2, {inlink(d.plus_days(1), "s1")})}, d.plus_days(30));
    std::vector<std::string> warnings;
    const InfluenceGraph g = build_influence_graph(c, {}, &warnings);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("s1") != std::string::npos);
    CHECK(g.citers[0].empty());
    CHECK(g.external_in[0] == 0);
}

TEST_CASE("missing lengths fail loudly unless defaulted") {
    const Date d(2008, 5, 1);
    const Corpus c = make_corpus(
        {
            post("p1", "a", d, 0, {}, 0, std::nullopt),
            post("p2", "a", d, 0, {}, 0, std::nullopt),
            post("p3", "b", d, 0, {}, 0, 700),
        },
        d.plus_days(1));
    InfluenceParams params;
    try {
        build_influence_graph(c, params);
        FAIL("expected CorpusError");
    } catch (const CorpusError& e) {
        const std::string what = e.what();
        CHECK(what.find("p1") != std::string::npos);
        CHECK(what.find("p2") != std::string::npos);
        CHECK(what.find("p3") == std::string::npos);
    }
    params.default_length = 450;
    const InfluenceGraph g = build_influence_graph(c, params);
    CHECK(g.lengths[node_of(g, "p1")] == 450);
    CHECK(g.lengths[node_of(g, "p3")] == 700);
}

TEST_CASE("an edgeless graph degenerates to weighted comment counts") {
    const Date d(2008, 5, 1);
    const Corpus c = make_corpus(
        {
            post("p1", "a", d, 6, {}),
            post("p2", "b", d, 11, {}, 0, 250),
        },
        d.plus_days(1));
    const std::map<std::string, double> scores = solve_influence(build_influence_graph(c, {}), {});
    CHECK(scores.at("p1") == 6.0);
    CHECK(scores.at("p2") == doctest::Approx(0.25 * 11.0));
}

TEST_CASE("zero in/out weights reduce to the source term exactly") {
    std::mt19937 rng(17);
    const Corpus c = testutil::random_corpus(rng, 3, 25);
    InfluenceParams params;
    params.w_in = 0.0;
    params.w_out = 0.0;
    params.w_com = 1.5;
    params.default_length = 1000;
    const InfluenceGraph g = build_influence_graph(c, params);
    const auto scores = solve_influence(g, params);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double expected = length_weight(g.lengths[i], params) *
                                (params.w_com * static_cast<double>(g.comment_counts[i]));
        CHECK(scores.at(g.post_ids[i]) == expected);
    }
}

TEST_CASE("acyclic chain matches the topological evaluation") {
    const Date d(2008, 5, 1);
    // edges: a cites b, b cites c; only w_in active, so values resolve from
    // the uncited end downward: I(a)=2, I(b)=1+0.7*2, I(c)=3+0.7*I(b)
    const Corpus c = make_corpus(
        {
            post("c", "carol", d, 3, {inlink(d.plus_days(1), "b")}),
            post("b", "bob", d.plus_days(1), 1, {inlink(d.plus_days(2), "a")}, 1),
            post("a", "ann", d.plus_days(2), 2, {}, 1),
        },
        d.plus_days(30));
    InfluenceParams params;
    params.w_in = 0.7;
    params.w_out = 0.0;
    const auto scores = solve_influence(build_influence_graph(c, params), params);
    CHECK(scores.at("a") == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(scores.at("b") == doctest::Approx(2.4).epsilon(1e-12));
    CHECK(scores.at("c") == doctest::Approx(4.68).epsilon(1e-12));
}

TEST_CASE("two-node cycle agrees with the direct linear solve") {
    const Date d(2008, 5, 1);
    const Corpus c = make_corpus(
        {
            post("u", "ann", d, 5, {inlink(d, "v")}, 1),
            post("v", "bob", d, 2, {inlink(d, "u")}, 1),
        },
        d.plus_days(30));

    SUBCASE("contractive weights") {
        InfluenceParams params;
        params.w_in = 0.3;
        params.w_out = 0.2;
        const auto scores = solve_influence(build_influence_graph(c, params), params);
        // I(u) = 5 + 0.1*I(v), I(v) = 2 + 0.1*I(u)  =>  I(u) = 5.2/0.99
        CHECK(scores.at("u") == doctest::Approx(5.2 / 0.99).epsilon(1e-8));
        CHECK(scores.at("v") == doctest::Approx(2.0 + 0.1 * (5.2 / 0.99)).epsilon(1e-8));
    }
    SUBCASE("unit weights cancel and converge") {
        const auto scores = solve_influence(build_influence_graph(c, {}), {});
        CHECK(scores.at("u") == doctest::Approx(5.0));
        CHECK(scores.at("v") == doctest::Approx(2.0));
    }
}

TEST_CASE("oscillating instances raise ConvergenceError") {
    const Date d(2008, 5, 1);
    // a cites b with unit weights: I(a) = 1 - I(b), I(b) = I(a); the sweep
    // values cycle with period four and never settle
    const Corpus c = make_corpus(
        {
            post("b", "bob", d, 0, {inlink(d.plus_days(1), "a")}),
            post("a", "ann", d.plus_days(1), 1, {}, 1),
        },
        d.plus_days(30));
    InfluenceParams params;
    params.max_iter = 500;
    try {
        solve_influence(build_influence_graph(c, params), params);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.iterations() == 500);
        CHECK(e.residual() > 0.0);
    }
}

TEST_CASE("diverging cycles raise ConvergenceError") {
    const Date d(2008, 5, 1);
    const Corpus c = make_corpus(
        {
            post("u", "ann", d, 1, {inlink(d, "v")}, 1),
            post("v", "bob", d, 1, {inlink(d, "u")}, 1),
        },
        d.plus_days(30));
    InfluenceParams params;
    params.w_in = 1.0;
    params.w_out = 0.0;
    params.max_iter = 200;
    CHECK_THROWS_AS(solve_influence(build_influence_graph(c, params), params), ConvergenceError);
}

TEST_CASE("solver output is deterministic and order-independent") {
    std::mt19937 rng(23);
    Corpus c = testutil::random_corpus(rng, 4, 40);
    InfluenceParams params;
    params.w_in = 0.1;
    params.w_out = 0.1;
    const auto first = solve_influence(build_influence_graph(c, params), params);
    const auto second = solve_influence(build_influence_graph(c, params), params);
    CHECK(first == second);  // bit-identical

    std::vector<PostRecord> shuffled = c.posts;
    std::mt19937 shuffle_rng(99);
    std::shuffle(shuffled.begin(), shuffled.end(), shuffle_rng);
    const Corpus permuted = make_corpus(std::move(shuffled), c.as_of);
    const auto third = solve_influence(build_influence_graph(permuted, params), params);
    CHECK(third == first);
}

TEST_CASE("scaling the source terms scales every score linearly") {
    const Date d(2008, 5, 1);
    const Corpus c = make_corpus(
        {
            post("c", "carol", d, 3, {inlink(d.plus_days(1), "b"), inlink(d.plus_days(2))}),
            post("b", "bob", d.plus_days(1), 1, {inlink(d.plus_days(2), "a")}, 2),
            post("a", "ann", d.plus_days(2), 2, {inlink(d.plus_days(3))}, 1),
        },
        d.plus_days(30));
    InfluenceParams base;
    base.w_in = 0.2;
    base.w_out = 0.1;
    InfluenceParams scaled = base;
    scaled.w_com *= 3.0;
    scaled.external_influence *= 3.0;
    const auto lo = solve_influence(build_influence_graph(c, base), base);
    const auto hi = solve_influence(build_influence_graph(c, scaled), scaled);
    for (const auto& [id, value] : lo) {
        CHECK(hi.at(id) == doctest::Approx(3.0 * value).epsilon(1e-7));
    }
}

TEST_CASE("solver parameters are validated") {
    const Date d(2008, 5, 1);
    const Corpus c = make_corpus({post("p1", "a", d, 1, {})}, d);
    const InfluenceGraph g = build_influence_graph(c, {});
    InfluenceParams params;
    params.w_in = -0.5;
    CHECK_THROWS_AS(solve_influence(g, params), std::invalid_argument);
    params = {};
    params.tol = 0.0;
    CHECK_THROWS_AS(solve_influence(g, params), std::invalid_argument);
    params = {};
    params.max_iter = 0;
    CHECK_THROWS_AS(solve_influence(g, params), std::invalid_argument);
}

TEST_CASE("i_index picks the blogger's best post") {
    const Date d(2008, 5, 1);
    const Corpus c = make_corpus(
        {
            post("p1", "ana", d, 0, {}),
            post("p2", "ana", d, 0, {}),
            post("p3", "ana", d, 0, {}),
            post("q1", "bo", d, 0, {}),
        },
        d.plus_days(1));
    const std::map<std::string, double> solved{{"p1", -2.0}, {"p2", 7.0}, {"p3", 3.0}, {"q1", -4.0}};
    CHECK(i_index("ana", c, solved) == 7.0);
    CHECK(i_index("bo", c, solved) == -4.0);
    CHECK_THROWS_AS(i_index("nobody", c, solved), std::invalid_argument);

    const std::map<std::string, double> partial{{"p1", 1.0}};
    CHECK_THROWS_AS(i_index("ana", c, partial), std::invalid_argument);
}
