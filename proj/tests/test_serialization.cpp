#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "pcpforge/serialization.hpp"

using namespace pcpforge;

TEST_CASE("label cover instances round-trip through JSON") {
    auto [lc, labeling] = generate_planted(3, 4, 2, 2, 3, 11);
    Json j = to_json(lc);
    CHECK(j["k"] == 2);
    CHECK(j["u_count"] == 3);
    CHECK(j["edges"].size() == lc.edges.size());
    // 1-based on the wire
    for (const auto& je : j["edges"]) {
        CHECK(je["u"].get<int>() >= 1);
        CHECK(je["v"].get<int>() >= 1);
        for (const auto& t : je["pi"]) CHECK(t.get<int>() >= 1);
    }
    LabelCoverInstance back = label_cover_from_json(j);
    CHECK(back.k == lc.k);
    CHECK(back.m == lc.m);
    CHECK(back.u_count == lc.u_count);
    CHECK(back.v_count == lc.v_count);
    REQUIRE(back.edges.size() == lc.edges.size());
    for (std::size_t i = 0; i < lc.edges.size(); ++i) {
        CHECK(back.edges[i].u == lc.edges[i].u);
        CHECK(back.edges[i].v == lc.edges[i].v);
        CHECK(back.edges[i].pi == lc.edges[i].pi);
    }
    // round-trip is byte-stable
    CHECK(to_json(back).dump() == j.dump());
}

TEST_CASE("malformed label cover JSON is rejected") {
    Json bad = {{"k", 1}, {"m", 1}, {"u_count", 1}, {"v_count", 1}};
    CHECK_THROWS_AS(label_cover_from_json(bad), input_error);  // no edges key
    Json j = to_json(generate_planted(2, 2, 1, 1, 2, 3).first);
    j["edges"][0]["pi"][0] = 99;  // label out of range
    CHECK_THROWS_AS(label_cover_from_json(j), input_error);
    j["edges"] = "nope";
    CHECK_THROWS_AS(label_cover_from_json(j), input_error);
}

TEST_CASE("labelings round-trip through JSON") {
    Labeling labeling;
    labeling.left = {0, 2, 1};
    labeling.right = {3, 0};
    Json j = to_json(labeling);
    CHECK(j["left"] == Json::array({1, 3, 2}));
    CHECK(j["right"] == Json::array({4, 1}));
    Labeling back = labeling_from_json(j);
    CHECK(back.left == labeling.left);
    CHECK(back.right == labeling.right);
    CHECK_THROWS_AS(labeling_from_json(Json{{"left", Json::array()}}), input_error);
}

TEST_CASE("boolean tables round-trip through JSON") {
    CounterRng rng(13, 0);
    for (auto mode : {BooleanTable::Mode::pm1, BooleanTable::Mode::indicator}) {
        BooleanTable t = mode == BooleanTable::Mode::pm1 ? BooleanTable::random_pm1(4, rng)
                                                         : BooleanTable::random_indicator(4, rng);
        Json j = to_json(t);
        CHECK(j["dim"] == 4);
        CHECK(j["values"].size() == 16);
        BooleanTable back = boolean_table_from_json(j);
        CHECK(back.mode == t.mode);
        CHECK(back.values == t.values);
    }
    Json bad = {{"dim", 2}, {"mode", "ternary"}, {"values", {1, 1, 1, 1}}};
    CHECK_THROWS_AS(boolean_table_from_json(bad), input_error);
    Json mismatch = {{"dim", 2}, {"mode", "pm1"}, {"values", {1, 1, 1}}};
    CHECK_THROWS_AS(boolean_table_from_json(mismatch), input_error);
    Json range = {{"dim", 1}, {"mode", "indicator"}, {"values", {1, -1}}};
    CHECK_THROWS_AS(boolean_table_from_json(range), input_error);
}

TEST_CASE("proof bundles round-trip through JSON") {
    auto [lc, labeling] = generate_planted(2, 3, 2, 2, 3, 17);
    ProofAssignment proofs = long_code_proofs(lc, labeling, ReductionKind::e3sat);
    Json j = to_json(proofs);
    CHECK(j["folded"] == true);
    CHECK(j["left"].size() == 2);
    CHECK(j["right"].size() == 3);
    CHECK(j["right"].contains("1"));
    CHECK(j["right"].contains("3"));
    ProofAssignment back = proofs_from_json(j);
    CHECK(back.folded == proofs.folded);
    REQUIRE(back.right.size() == proofs.right.size());
    for (std::size_t v = 0; v < proofs.right.size(); ++v)
        CHECK(back.right[v].values == proofs.right[v].values);
    for (std::size_t u = 0; u < proofs.left.size(); ++u)
        CHECK(back.left[u].values == proofs.left[u].values);

    Json bad = j;
    bad["right"]["9"] = j["right"]["1"];
    CHECK_THROWS_AS(proofs_from_json(bad), input_error);
}

TEST_CASE("weighted CNF text export") {
    auto [lc, labeling] = generate_planted(2, 2, 2, 1, 2, 19);
    CnfInstance cnf = export_e3sat_cnf(lc, Rational(1, 4));
    std::ostringstream os;
    write_wcnf(os, cnf);
    std::istringstream is(os.str());
    std::string p, kind;
    int vars = 0;
    std::size_t clauses = 0;
    is >> p >> kind >> vars >> clauses;
    CHECK(p == "p");
    CHECK(kind == "wcnf");
    CHECK(vars == cnf.var_count);
    CHECK(clauses == cnf.clauses.size());
    Rational total = 0;
    for (std::size_t i = 0; i < clauses; ++i) {
        long long num = 0, den = 0;
        int l1 = 0, l2 = 0, l3 = 0, zero = -1;
        is >> num >> den >> l1 >> l2 >> l3 >> zero;
        CHECK(zero == 0);
        CHECK(den > 0);
        for (int lit : {l1, l2, l3}) {
            CHECK(lit != 0);
            CHECK(std::abs(lit) <= vars);
        }
        total += Rational(num, den);
    }
    CHECK(total == 1);
}

TEST_CASE("set splitting text export") {
    auto [lc, labeling] = generate_planted(2, 2, 2, 1, 2, 23);
    SetSplitInstance inst = export_4ss_instance(lc, Rational(1, 4));
    std::ostringstream os;
    write_setsplit(os, inst);
    std::istringstream is(os.str());
    std::string p, kind;
    std::size_t elements = 0, sets = 0;
    is >> p >> kind >> elements >> sets;
    CHECK(p == "p");
    CHECK(kind == "setsplit");
    CHECK(elements == static_cast<std::size_t>(inst.element_count));
    CHECK(sets == inst.sets.size());
    Rational total = 0;
    for (std::size_t i = 0; i < sets; ++i) {
        long long num = 0, den = 0, e1, e2, e3, e4;
        is >> num >> den >> e1 >> e2 >> e3 >> e4;
        for (long long e : {e1, e2, e3, e4}) {
            CHECK(e >= 1);
            CHECK(e <= static_cast<long long>(elements));
        }
        total += Rational(num, den);
    }
    CHECK(total == 1);
}

TEST_CASE("hypergraph text export") {
    auto [lc, labeling] = generate_planted(2, 2, 2, 1, 1, 29);
    HypergraphInstance h = build_hypergraph(lc);
    std::ostringstream os;
    write_hypergraph(os, h);
    std::istringstream is(os.str());
    std::string p, kind;
    std::size_t vertices = 0, edges = 0;
    is >> p >> kind >> vertices >> edges;
    CHECK(p == "p");
    CHECK(kind == "hyper");
    CHECK(vertices == static_cast<std::size_t>(h.vertex_count()));
    CHECK(edges == enumerate_hyperedges(h).size());
    for (std::size_t i = 0; i < edges; ++i) {
        long long v1, v2, v3, v4;
        is >> v1 >> v2 >> v3 >> v4;
        for (long long v : {v1, v2, v3, v4}) {
            CHECK(v >= 1);
            CHECK(v <= static_cast<long long>(vertices));
        }
    }
    CHECK(is.good());
}
