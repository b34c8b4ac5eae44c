#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pcpforge/boolean_fourier.hpp"
#include "pcpforge/rng.hpp"

using namespace pcpforge;

namespace {

// Direct-definition transform, O(4^d): coeff(a) = E[f(x) chi_a(x)].
FourierSpectrum naive_wht(const BooleanTable& t) {
    FourierSpectrum spec;
    spec.dim = t.dim;
    for (std::uint32_t a = 0; a < t.size(); ++a) {
        Rational sum = 0;
        for (std::uint32_t p = 0; p < t.size(); ++p)
            sum += Rational(t(p) * character(a, p));
        spec.coeffs.push_back(sum / static_cast<std::int64_t>(t.size()));
    }
    return spec;
}

}  // namespace

TEST_CASE("characters") {
    CHECK(character(0, 0b101) == 1);
    // mask {1,2}, point x1=-1, x2=-1, x3=+1
    CHECK(character(0b011, 0b011) == 1);
    CHECK(character(0b001, 0b001) == -1);
    CounterRng rng(3, 0);
    for (int t = 0; t < 1000; ++t) {
        std::uint32_t a = static_cast<std::uint32_t>(rng.bits(6));
        std::uint32_t x = static_cast<std::uint32_t>(rng.bits(6));
        std::uint32_t xp = static_cast<std::uint32_t>(rng.bits(6));
        // pointwise product of +-1 vectors is xor of encodings
        CHECK(character(a, x) * character(a, xp) == character(a, x ^ xp));
    }
}

TEST_CASE("wht matches the naive transform and round-trips") {
    CounterRng rng(7, 0);
    for (int t = 0; t < 20; ++t) {
        int d = 1 + static_cast<int>(rng.uniform(6));
        BooleanTable table = (t % 2 == 0) ? BooleanTable::random_pm1(d, rng)
                                          : BooleanTable::random_indicator(d, rng);
        FourierSpectrum fast = wht(table);
        FourierSpectrum slow = naive_wht(table);
        REQUIRE(fast.coeffs == slow.coeffs);
        BooleanTable back = inverse_wht(fast, table.mode);
        CHECK(back.values == table.values);
    }
}

TEST_CASE("constant and dictator spectra") {
    FourierSpectrum c = wht(BooleanTable::constant(3, 1));
    CHECK(c[0] == 1);
    for (std::uint32_t a = 1; a < 8; ++a) CHECK(c[a] == 0);

    FourierSpectrum d = wht(long_code(2, 3));
    for (std::uint32_t a = 0; a < 8; ++a) CHECK(d[a] == (a == 0b010 ? 1 : 0));
}

TEST_CASE("long_code validation and shape") {
    CHECK_THROWS_AS(long_code(0, 3), input_error);
    CHECK_THROWS_AS(long_code(4, 3), input_error);
    BooleanTable lc = long_code(1, 1);
    CHECK(lc(0) == 1);   // x_1 = +1
    CHECK(lc(1) == -1);  // x_1 = -1
    BooleanTable lc2 = long_code(2, 4);
    CHECK(fold(lc2).values == lc2.values);
}

TEST_CASE("folding") {
    BooleanTable c = BooleanTable::constant(2, 1);
    BooleanTable f = fold(c);
    CHECK(f.values == std::vector<int8_t>{1, -1, 1, -1});
    CHECK(f.is_folded());
    CHECK(fold(f).values == f.values);

    CounterRng rng(11, 0);
    for (int t = 0; t < 10; ++t) {
        BooleanTable table = BooleanTable::random_pm1(4, rng);
        BooleanTable folded = fold(table);
        std::uint32_t all = 15;
        for (std::uint32_t p = 0; p < 16; ++p) CHECK(folded(p) == -folded(p ^ all));
        FourierSpectrum spec = wht(folded);
        for (std::uint32_t a = 0; a < 16; ++a)
            if (__builtin_popcount(a) % 2 == 0) CHECK(spec[a] == 0);
    }

    BooleanTable ind = BooleanTable::constant(2, 1, BooleanTable::Mode::indicator);
    CHECK_THROWS_AS(fold(ind), mode_error);
}

TEST_CASE("parseval") {
    CounterRng rng(13, 0);
    for (int t = 0; t < 10; ++t) {
        BooleanTable pm = BooleanTable::random_pm1(5, rng);
        CHECK(parseval(wht(pm)) == 1);
        BooleanTable ind = BooleanTable::random_indicator(5, rng);
        std::int64_t pop = 0;
        for (int8_t v : ind.values) pop += v;
        CHECK(parseval(wht(ind)) == Rational(pop, 32));
    }
    // indicator of exactly half the cube
    BooleanTable half = BooleanTable::constant(3, 0, BooleanTable::Mode::indicator);
    for (std::uint32_t p = 0; p < 4; ++p) half.values[p] = 1;
    CHECK(parseval(wht(half)) == Rational(1, 2));
}

TEST_CASE("dimension cap") {
    CHECK_THROWS_AS(BooleanTable::constant(21, 1), size_error);
}
