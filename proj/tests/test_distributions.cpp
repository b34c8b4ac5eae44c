#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pcpforge/distributions.hpp"
#include "pcpforge/rng.hpp"

using namespace pcpforge;

namespace {

// Expectation of a character product read off the enumerated support —
// the independent oracle for the blockwise formulas.
Rational quad_char_oracle(const HypergraphJoint& j, std::uint32_t a, std::uint32_t ap,
                          std::uint32_t b, std::uint32_t bp) {
    Rational sum = 0;
    for (const auto& [state, w] : j.enumerate().entries) {
        QuadQuery q = j.unpack(state);
        sum += w * (character(a, q.x) * character(ap, q.xp) * character(b, q.y) *
                    character(bp, q.yp));
    }
    return sum;
}

Rational quad_char_oracle(const FourSSJoint& j, std::uint32_t a, std::uint32_t ap, std::uint32_t b,
                          std::uint32_t bp) {
    Rational sum = 0;
    for (const auto& [state, w] : j.enumerate().entries) {
        QuadQuery q = j.unpack(state);
        sum += w * (character(a, q.x) * character(ap, q.xp) * character(b, q.y) *
                    character(bp, q.yp));
    }
    return sum;
}

Rational triple_char_oracle(const E3SatJoint& j, std::uint32_t a, std::uint32_t b,
                            std::uint32_t bp) {
    Rational sum = 0;
    for (const auto& [state, w] : j.enumerate().entries) {
        TripleQuery q = j.unpack(state);
        sum += w * (character(a, q.x) * character(b, q.y) * character(bp, q.yp));
    }
    return sum;
}

}  // namespace

TEST_CASE("preimage masks") {
    auto blocks = preimage_masks({0, 1, 0, 2}, 3);
    CHECK(blocks == std::vector<std::uint32_t>{0b0101, 0b0010, 0b1000});
    CHECK_THROWS_AS(preimage_masks({0, 3}, 3), input_error);
}

TEST_CASE("hypergraph joint at k = m = 1") {
    HypergraphJoint joint({0}, {0}, 1);
    SupportDistribution dist = joint.enumerate();
    CHECK(dist.total() == 1);
    // (x, x', y, y') = (+1, -1, +1, +1): only branch a contributes
    std::uint64_t state = joint.pack({0, 1, 0, 0});
    Rational p = 0;
    for (const auto& [s, w] : dist.entries)
        if (s == state) p = w;
    CHECK(p == Rational(1, 16));
    // all-equal on the shared coordinate never happens
    for (const auto& [s, w] : dist.entries) {
        QuadQuery q = joint.unpack(s);
        bool all_pos = q.x == 0 && q.xp == 0 && q.y == 0 && q.yp == 0;
        bool all_neg = q.x == 1 && q.xp == 1 && q.y == 1 && q.yp == 1;
        if (all_pos || all_neg) CHECK(w == 0);
    }
}

TEST_CASE("hypergraph joint: structural zero on projected pairs") {
    std::vector<int> pv{0, 1, 0}, pw{1, 0, 0};
    HypergraphJoint joint(pv, pw, 2);
    SupportDistribution dist = joint.enumerate();
    CHECK(dist.total() == 1);
    for (const auto& [s, w] : dist.entries) {
        QuadQuery q = joint.unpack(s);
        for (int jv = 0; jv < 3; ++jv)
            for (int jw = 0; jw < 3; ++jw) {
                if (pv[jv] != pw[jw]) continue;
                int a = coord(q.x, jv), b = coord(q.xp, jv);
                int c = coord(q.y, jw), d = coord(q.yp, jw);
                if (a == b && b == c && c == d) CHECK(w == 0);
            }
    }
}

TEST_CASE("hypergraph character expectations match enumeration") {
    HypergraphJoint joint({0, 1, 0}, {1, 0, 1}, 2);
    for (std::uint32_t a = 0; a < 8; ++a)
        for (std::uint32_t ap = 0; ap < 8; ++ap)
            for (std::uint32_t b = 0; b < 8; ++b)
                for (std::uint32_t bp = 0; bp < 8; ++bp)
                    CHECK(joint.char_expectation(a, ap, b, bp) ==
                          quad_char_oracle(joint, a, ap, b, bp));
}

TEST_CASE("hypergraph marginals are uniform") {
    HypergraphJoint joint({0, 1}, {0, 1}, 2);
    std::vector<Rational> px(4, 0), py(4, 0);
    for (const auto& [s, w] : joint.enumerate().entries) {
        QuadQuery q = joint.unpack(s);
        px[q.x] += w;
        py[q.yp] += w;
    }
    for (int p = 0; p < 4; ++p) {
        CHECK(px[p] == Rational(1, 4));
        CHECK(py[p] == Rational(1, 4));
    }
}

TEST_CASE("e3sat block values") {
    Rational eps(1, 4);
    for (int s = 1; s <= 3; ++s) {
        E3SatJoint joint(std::vector<int>(s, 0), 1, eps);
        std::uint32_t full = (1u << s) - 1;
        // E[chi_J(y y')] and E[x chi_J(y y')]
        Rational plain = joint.char_expectation(0, full, full);
        Rational with_x = joint.char_expectation(1, full, full);
        if (s % 2 == 1) {
            CHECK(plain == -eps / 2);
            CHECK(with_x == -(1 - eps / 2));
        } else {
            CHECK(plain == 1 - eps / 2);
            CHECK(with_x == eps / 2);
        }
    }
    // E[x_i] = 0: single block, empty y masks
    E3SatJoint joint({0}, 1, eps);
    CHECK(joint.char_expectation(1, 0, 0) == 0);
    CHECK_THROWS_AS(E3SatJoint({0}, 1, Rational(1)), input_error);
}

TEST_CASE("e3sat character expectations match enumeration") {
    E3SatJoint joint({0, 1, 1}, 2, Rational(1, 16));
    CHECK(joint.enumerate().total() == 1);
    for (std::uint32_t a = 0; a < 4; ++a)
        for (std::uint32_t b = 0; b < 8; ++b)
            for (std::uint32_t bp = 0; bp < 8; ++bp)
                CHECK(joint.char_expectation(a, b, bp) == triple_char_oracle(joint, a, b, bp));
}

TEST_CASE("4ss character expectations match enumeration") {
    FourSSJoint joint({0, 1}, {1, 0}, 2, Rational(1, 4));
    CHECK(joint.enumerate().total() == 1);
    for (std::uint32_t a = 0; a < 4; ++a)
        for (std::uint32_t ap = 0; ap < 4; ++ap)
            for (std::uint32_t b = 0; b < 4; ++b)
                for (std::uint32_t bp = 0; bp < 4; ++bp)
                    CHECK(joint.char_expectation(a, ap, b, bp) ==
                          quad_char_oracle(joint, a, ap, b, bp));
}

TEST_CASE("samplers are deterministic per seed") {
    HypergraphJoint hj({0, 1, 0}, {1, 0, 1}, 2);
    CounterRng base(5, 40);
    QuadQuery q1 = hj.sample(base.fork(3));
    QuadQuery q2 = hj.sample(base.fork(3));
    CHECK(q1.x == q2.x);
    CHECK(q1.xp == q2.xp);
    CHECK(q1.y == q2.y);
    CHECK(q1.yp == q2.yp);
}

TEST_CASE("rho-correlated pairs") {
    std::vector<std::vector<Rational>> binary{{Rational(1, 2), Rational(1, 2)}};
    RhoCorrelated indep(binary, 0);
    CHECK(indep.joint_weight(0, 1) == Rational(1, 4));

    RhoCorrelated copy(binary, 1);
    CHECK(copy.joint_weight(0, 1) == 0);
    CHECK(copy.joint_weight(1, 1) == Rational(1, 2));

    RhoCorrelated half(binary, Rational(1, 2));
    Rational pr_equal = half.joint_weight(0, 0) + half.joint_weight(1, 1);
    CHECK(pr_equal == Rational(3, 4));
    CHECK(half.enumerate().total() == 1);

    // marginals of X and Y both equal mu
    RhoCorrelated skew({{Rational(1, 4), Rational(3, 4)}, {Rational(1, 2), Rational(1, 2)}},
                       Rational(1, 4));
    std::vector<Rational> mx(4, 0), my(4, 0);
    for (const auto& [s, w] : skew.enumerate().entries) {
        mx[s / 4] += w;
        my[s % 4] += w;
    }
    for (std::size_t st = 0; st < 4; ++st) {
        CHECK(mx[st] == skew.mu(st));
        CHECK(my[st] == skew.mu(st));
    }

    CHECK_THROWS_AS(RhoCorrelated({{Rational(1, 2), Rational(1, 3)}}, 0), input_error);
    CHECK_THROWS_AS(RhoCorrelated({{Rational(0), Rational(1)}}, 0), input_error);
    CHECK_THROWS_AS(RhoCorrelated(binary, Rational(3, 2)), input_error);
}
