#pragma once

#include <cstdint>
#include <vector>

#include "rational.hpp"
#include "rng.hpp"

namespace pcpforge {

// Point indexing: bit i of an index is 0 iff coordinate x_{i+1} = +1.
inline int coord(std::uint32_t point, int i) { return (point >> i) & 1 ? -1 : 1; }

// chi_mask(point) = product of the selected coordinates; chi_empty = 1.
inline int character(std::uint32_t mask, std::uint32_t point) {
    return __builtin_popcount(mask & point) & 1 ? -1 : 1;
}

// A function on {-1,1}^dim stored as a 2^dim table. pm1 tables take
// values in {-1,+1}; indicator tables in {0,1}.
struct BooleanTable {
    enum class Mode { pm1, indicator };

    static constexpr int kDimCap = 20;

    int dim = 0;
    Mode mode = Mode::pm1;
    std::vector<int8_t> values;

    static BooleanTable constant(int dim, int value, Mode mode = Mode::pm1) {
        check_dim(dim);
        BooleanTable t;
        t.dim = dim;
        t.mode = mode;
        t.values.assign(std::size_t(1) << dim, static_cast<int8_t>(value));
        t.validate();
        return t;
    }

    static BooleanTable random_pm1(int dim, CounterRng& rng) {
        check_dim(dim);
        BooleanTable t;
        t.dim = dim;
        t.values.resize(std::size_t(1) << dim);
        for (auto& v : t.values) v = static_cast<int8_t>(rng.pm1());
        return t;
    }

    static BooleanTable random_indicator(int dim, CounterRng& rng) {
        BooleanTable t = random_pm1(dim, rng);
        t.mode = Mode::indicator;
        for (auto& v : t.values) v = v > 0 ? 1 : 0;
        return t;
    }

    static void check_dim(int dim) {
        if (dim < 0 || dim > kDimCap) throw size_error("boolean table dimension exceeds cap");
    }

    void validate() const {
        check_dim(dim);
        if (values.size() != std::size_t(1) << dim)
            throw input_error("boolean table: wrong length");
        for (int8_t v : values) {
            bool ok = mode == Mode::pm1 ? (v == 1 || v == -1) : (v == 0 || v == 1);
            if (!ok) throw input_error("boolean table: value out of mode range");
        }
    }

    std::size_t size() const { return values.size(); }
    int operator()(std::uint32_t point) const { return values[point]; }

    bool is_folded() const {
        if (mode != Mode::pm1) return false;
        std::uint32_t all = static_cast<std::uint32_t>(size() - 1);
        for (std::uint32_t p = 0; p < size(); ++p)
            if (values[p] != -values[p ^ all]) return false;
        return true;
    }

    Rational mean() const {
        std::int64_t sum = 0;
        for (int8_t v : values) sum += v;
        return Rational(sum, static_cast<std::int64_t>(size()));
    }
};

// Long Code of label j (1-based): the dictator x -> x_j.
inline BooleanTable long_code(int j, int dim) {
    if (j < 1 || j > dim) throw input_error("long_code: label out of range");
    BooleanTable::check_dim(dim);
    BooleanTable t;
    t.dim = dim;
    t.values.resize(std::size_t(1) << dim);
    for (std::uint32_t p = 0; p < t.size(); ++p)
        t.values[p] = static_cast<int8_t>(coord(p, j - 1));
    return t;
}

// Enforces f(-x) = -f(x): the point whose first coordinate is +1 (index
// bit 0 clear) is the representative, its antipode gets the negation.
inline BooleanTable fold(const BooleanTable& table) {
    if (table.mode != BooleanTable::Mode::pm1) throw mode_error("fold: requires pm1 table");
    if (table.dim == 0) throw input_error("fold: dimension must be at least 1");
    BooleanTable out = table;
    std::uint32_t all = static_cast<std::uint32_t>(table.size() - 1);
    for (std::uint32_t p = 0; p < table.size(); ++p)
        if ((p & 1) == 0) out.values[p ^ all] = static_cast<int8_t>(-out.values[p]);
    return out;
}

struct FourierSpectrum {
    int dim = 0;
    std::vector<Rational> coeffs;  // indexed by subset bitmask

    const Rational& operator[](std::uint32_t mask) const { return coeffs[mask]; }
};

// Walsh-Hadamard transform, exact: coeff(mask) = E[f * chi_mask].
// In-place integer butterfly; the naive O(4^d) evaluator lives in tests.
inline FourierSpectrum wht(const BooleanTable& table) {
    table.validate();
    std::vector<std::int64_t> buf(table.values.begin(), table.values.end());
    std::size_t n = buf.size();
    for (std::size_t len = 1; len < n; len <<= 1) {
        for (std::size_t base = 0; base < n; base += len << 1) {
            for (std::size_t t = base; t < base + len; ++t) {
                std::int64_t a = buf[t], b = buf[t + len];
                buf[t] = a + b;
                buf[t + len] = a - b;
            }
        }
    }
    FourierSpectrum spec;
    spec.dim = table.dim;
    spec.coeffs.reserve(n);
    for (std::int64_t c : buf) spec.coeffs.emplace_back(c, static_cast<std::int64_t>(n));
    return spec;
}

inline BooleanTable inverse_wht(const FourierSpectrum& spec,
                                BooleanTable::Mode mode = BooleanTable::Mode::pm1) {
    std::size_t n = spec.coeffs.size();
    std::vector<Rational> buf = spec.coeffs;
    for (std::size_t len = 1; len < n; len <<= 1) {
        for (std::size_t base = 0; base < n; base += len << 1) {
            for (std::size_t t = base; t < base + len; ++t) {
                Rational a = buf[t], b = buf[t + len];
                buf[t] = a + b;
                buf[t + len] = a - b;
            }
        }
    }
    BooleanTable out;
    out.dim = spec.dim;
    out.mode = mode;
    out.values.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        if (denominator(buf[t]) != 1) throw input_error("inverse_wht: non-integral table value");
        out.values[t] = static_cast<int8_t>(static_cast<long>(numerator(buf[t])));
    }
    out.validate();
    return out;
}

// Sum of squared coefficients; equals E[f^2] of the source table.
inline Rational parseval(const FourierSpectrum& spec) {
    Rational sum = 0;
    for (const auto& c : spec.coeffs) sum += c * c;
    return sum;
}

}  // namespace pcpforge
