#pragma once

#include <cstdint>

#include "rational.hpp"

namespace pcpforge {

// Counter-based generator: output n is a hash of (seed, stream, n).
// There is no hidden state, so draws keyed by sample index are
// reproducible regardless of evaluation order or thread count.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix(mix(seed + 0x9e3779b97f4a7c15ULL) ^ mix(stream + 0xbf58476d1ce4e5b9ULL))) {}

    // Derives an independent substream, e.g. one per sample index.
    CounterRng fork(std::uint64_t id) const {
        CounterRng child(0, 0);
        child.key_ = mix(key_ ^ mix(id + 0x94d049bb133111ebULL));
        child.counter_ = 0;
        return child;
    }

    std::uint64_t next_u64() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

    // Uniform in [0, n) without modulo bias.
    std::uint64_t uniform(std::uint64_t n) {
        if (n == 0) throw input_error("uniform(0)");
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % n;
    }

    // +1 or -1, equiprobable.
    int pm1() { return (next_u64() & 1) ? -1 : 1; }

    // True with probability exactly num/den (den must fit in 64 bits).
    bool bernoulli(const Rational& p) {
        auto num = static_cast<std::uint64_t>(numerator(p));
        auto den = static_cast<std::uint64_t>(denominator(p));
        return uniform(den) < num;
    }

    // d independent uniform bits packed into the low bits of a word.
    std::uint64_t bits(int d) {
        if (d == 0) return 0;
        return next_u64() >> (64 - d);
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

}  // namespace pcpforge
