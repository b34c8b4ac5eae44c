#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pcpforge/label_cover.hpp"
#include "pcpforge/rng.hpp"

using namespace pcpforge;

namespace {

Labeling random_labeling(const LabelCoverInstance& inst, CounterRng& rng) {
    Labeling l;
    for (int u = 0; u < inst.u_count; ++u)
        l.left.push_back(static_cast<int>(rng.uniform(inst.k)));
    for (int v = 0; v < inst.v_count; ++v)
        l.right.push_back(static_cast<int>(rng.uniform(inst.m)));
    return l;
}

// Independent per-edge recount of the satisfied fraction.
Rational value_recount(const LabelCoverInstance& inst, const Labeling& l) {
    int sat = 0;
    for (std::size_t e = 0; e < inst.edges.size(); ++e) {
        int u = inst.edges[e].u, v = inst.edges[e].v;
        if (inst.edges[e].pi.at(l.right.at(v)) == l.left.at(u)) ++sat;
    }
    return Rational(sat, static_cast<std::int64_t>(inst.edges.size()));
}

}  // namespace

TEST_CASE("single-cell planted instance") {
    auto [inst, labeling] = generate_planted(1, 1, 1, 1, 1, 0);
    REQUIRE(inst.edges.size() == 1);
    CHECK(inst.edges[0].pi == std::vector<int>{0});
    CHECK(labeling.left == std::vector<int>{0});
    CHECK(labeling.right == std::vector<int>{0});
    CHECK(value(inst, labeling) == 1);
}

TEST_CASE("planted instances are perfect and deterministic") {
    auto [inst, labeling] = generate_planted(4, 4, 2, 3, 6, 7);
    CHECK(value(inst, labeling) == 1);
    auto [inst2, labeling2] = generate_planted(4, 4, 2, 3, 6, 7);
    CHECK(inst.edges.size() == inst2.edges.size());
    for (std::size_t e = 0; e < inst.edges.size(); ++e) {
        CHECK(inst.edges[e].u == inst2.edges[e].u);
        CHECK(inst.edges[e].v == inst2.edges[e].v);
        CHECK(inst.edges[e].pi == inst2.edges[e].pi);
    }

    // a uniformly random right label satisfies an edge with probability
    // |pi^{-1}(l_u)| / m; compare the empirical mean to the exact one
    Rational expect = 0;
    for (const auto& e : inst.edges) {
        int preimage = 0;
        for (int t : e.pi) preimage += t == labeling.left[e.u];
        expect += Rational(preimage, inst.m);
    }
    expect /= static_cast<std::int64_t>(inst.edges.size());
    CounterRng rng(1, 0);
    Rational sum = 0;
    for (int t = 0; t < 1000; ++t) {
        Labeling l = labeling;
        for (int v = 0; v < inst.v_count; ++v)
            l.right[v] = static_cast<int>(rng.uniform(inst.m));
        sum += value(inst, l);
    }
    double mean = to_double(sum / 1000);
    CHECK(std::abs(mean - to_double(expect)) < 0.05);
}

TEST_CASE("planted parameter validation") {
    CHECK_THROWS_AS(generate_planted(2, 2, 3, 2, 3, 0), config_error);
    CHECK_THROWS_AS(generate_planted(2, 2, 1, 4, 3, 0), config_error);
}

TEST_CASE("clause-variable game") {
    Clause3 c{{{{0, false}, {1, false}, {2, false}}}};
    LabelCoverInstance single = from_3sat_base_game({c});
    CHECK(single.k == 2);
    CHECK(single.m == 7);
    CHECK(single.edges.size() == 3);
    CHECK(optimum_bruteforce(single).first == 1);

    // all 8 sign patterns on 3 variables: unsatisfiable
    std::vector<Clause3> cnf;
    for (int s = 0; s < 8; ++s)
        cnf.push_back({{{{0, (s & 1) != 0}, {1, (s & 2) != 0}, {2, (s & 4) != 0}}}});
    LabelCoverInstance game = from_3sat_base_game(cnf);
    auto [opt, witness] = optimum_bruteforce(game);
    CHECK(opt == Rational(23, 24));
    CHECK(value(game, witness) == opt);

    CHECK_THROWS_AS(from_3sat_base_game({}), input_error);
    Clause3 dup{{{{0, false}, {0, true}, {1, false}}}};
    CHECK_THROWS_AS(from_3sat_base_game({dup}), input_error);
}

TEST_CASE("value recount oracle") {
    auto [inst, labeling] = generate_planted(5, 6, 3, 2, 4, 3);
    CounterRng rng(9, 0);
    for (int t = 0; t < 50; ++t) {
        Labeling l = random_labeling(inst, rng);
        CHECK(value(inst, l) == value_recount(inst, l));
    }
    Labeling bad = labeling;
    bad.left.pop_back();
    CHECK_THROWS_AS(value(inst, bad), input_error);
}

TEST_CASE("parallel repetition") {
    auto [inst, labeling] = generate_planted(3, 3, 2, 2, 3, 5);
    LabelCoverInstance same = parallel_repetition(inst, 1, 1 << 20);
    CHECK(same.k == inst.k);
    CHECK(same.m == inst.m);
    CHECK(same.edges.size() == inst.edges.size());

    LabelCoverInstance sq = parallel_repetition(inst, 2, 1 << 20);
    CHECK(sq.k == inst.k * inst.k);
    CHECK(sq.m == inst.m * inst.m);
    Labeling lifted = lift_labeling(labeling, inst.u_count, inst.v_count, inst.k, inst.m, 2);
    CHECK(value(sq, lifted) == 1);

    // imperfect base: product value never exceeds base value
    LabelCoverInstance conflict;
    conflict.u_count = 1;
    conflict.v_count = 2;
    conflict.k = 2;
    conflict.m = 2;
    conflict.edges = {{0, 0, {0, 0}}, {0, 1, {1, 1}}};
    Rational base = optimum_bruteforce(conflict).first;
    REQUIRE(base == Rational(1, 2));
    LabelCoverInstance prod = parallel_repetition(conflict, 2, std::size_t(1) << 20);
    CHECK(optimum_bruteforce(prod).first <= base);

    std::vector<Clause3> cnf;
    for (int s = 0; s < 8; ++s)
        cnf.push_back({{{{0, (s & 1) != 0}, {1, (s & 2) != 0}, {2, (s & 4) != 0}}}});
    LabelCoverInstance game = from_3sat_base_game(cnf);
    CHECK_THROWS_AS(parallel_repetition(game, 9, 1 << 20), size_error);
}

TEST_CASE("brute-force optimum") {
    auto [inst, labeling] = generate_planted(3, 4, 2, 2, 3, 11);
    auto [opt, witness] = optimum_bruteforce(inst);
    CHECK(opt == 1);
    CHECK(value(inst, witness) == 1);

    // two edges forcing conflicting left labels
    LabelCoverInstance conflict;
    conflict.u_count = 1;
    conflict.v_count = 2;
    conflict.k = 2;
    conflict.m = 2;
    conflict.edges = {{0, 0, {0, 0}}, {0, 1, {1, 1}}};
    CHECK(optimum_bruteforce(conflict).first == Rational(1, 2));

    CounterRng rng(21, 0);
    for (int t = 0; t < 100; ++t) CHECK(opt >= value(inst, random_labeling(inst, rng)));
}

TEST_CASE("projection expansion stats") {
    auto [inst, labeling] = generate_planted(4, 4, 2, 3, 6, 2);
    ExpansionStats one = projection_expansion_stats(inst, 1, 200, 0);
    CHECK(one.mean == 1);
    CHECK(one.fitted_c0 == 0.0);

    // bijective projections: |pi(S)| = |S| always
    LabelCoverInstance bij;
    bij.u_count = 2;
    bij.v_count = 2;
    bij.k = 4;
    bij.m = 4;
    bij.edges = {{0, 0, {0, 1, 2, 3}}, {1, 0, {3, 2, 1, 0}}, {0, 1, {1, 0, 3, 2}},
                 {1, 1, {2, 3, 0, 1}}};
    ExpansionStats stats = projection_expansion_stats(bij, 3, 100, 4);
    CHECK(stats.mean == Rational(1, 3));

    ExpansionStats mid = projection_expansion_stats(inst, 4, 300, 9);
    CHECK(mid.mean >= Rational(1, 4));
    CHECK(mid.mean <= 1);
}
