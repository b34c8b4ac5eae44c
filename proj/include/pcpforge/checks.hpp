#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "analysis.hpp"
#include "boolean_fourier.hpp"
#include "distributions.hpp"
#include "rational.hpp"
#include "rng.hpp"

// Lemma/identity check suites shared by the CLI and the test binaries.
// Every suite is deterministic given its seed and emits records in a
// fixed order, so serialized reports are byte-identical across runs.

namespace pcpforge {

using Json = nlohmann::json;

struct CheckRecord {
    std::string check;
    std::string digest;  // hash of the inputs that produced the record
    std::string lhs;
    std::string rhs;
    bool pass = false;
};

struct CheckConfig {
    std::uint64_t seed = 0;
    int gamma_projections = 100;
    int bb1_trials = 200;
    int rt_trials = 100;
    int mixing_trials = 500;
    int pmeasure_trials = 200;
    int parseval_trials = 50;
    int albeta_trials = 1000;
    std::int64_t tv_samples = 1000000;
};

namespace detail {

inline std::string fnv_digest(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string describe_pi(const std::vector<int>& pi) {
    std::string s = "pi:";
    for (int t : pi) s += std::to_string(t) + ",";
    return s;
}

inline std::vector<int> random_projection(CounterRng& rng, int k, int m) {
    std::vector<int> pi(m);
    // force the projection onto [k] so images are never degenerate
    for (int i = 0; i < k; ++i) pi[i] = i;
    for (int j = k; j < m; ++j) pi[j] = static_cast<int>(rng.uniform(k));
    for (int j = m - 1; j > 0; --j) std::swap(pi[j], pi[rng.uniform(j + 1)]);
    return pi;
}

}  // namespace detail

// Closed-form Gamma vs blockwise brute force, all masks per projection.
inline std::vector<CheckRecord> suite_gamma(const CheckConfig& cfg) {
    std::vector<CheckRecord> out;
    CounterRng base(cfg.seed, /*stream=*/101);
    for (int t = 0; t < cfg.gamma_projections; ++t) {
        CounterRng rng = base.fork(t);
        int k = 1 + static_cast<int>(rng.uniform(4));
        int m = k + static_cast<int>(rng.uniform(5 - k + 1));
        auto pi = detail::random_projection(rng, k, m);
        int mismatches = 0;
        for (std::uint32_t alpha = 0; alpha < (std::uint32_t(1) << m); ++alpha) {
            GammaReport rep = gamma(pi, alpha, k);
            if (rep.closed_form != rep.brute_force) ++mismatches;
        }
        out.push_back({"gamma", detail::fnv_digest(detail::describe_pi(pi)),
                       std::to_string(mismatches), "0", mismatches == 0});
    }
    return out;
}

// |E[B(y)B(y')]| <= eps/2 on random folded tables.
inline std::vector<CheckRecord> suite_bb1(const CheckConfig& cfg) {
    std::vector<CheckRecord> out;
    CounterRng base(cfg.seed, /*stream=*/102);
    const Rational eps_values[2] = {Rational(1, 4), Rational(1, 16)};
    for (int t = 0; t < cfg.bb1_trials; ++t) {
        CounterRng rng = base.fork(t);
        int k = 1 + static_cast<int>(rng.uniform(3));
        int m = k + static_cast<int>(rng.uniform(6 - k + 1));
        auto pi = detail::random_projection(rng, k, m);
        BooleanTable B = fold(BooleanTable::random_pm1(m, rng));
        const Rational& eps = eps_values[t % 2];
        BoundReport rep = lemma_bb1_check(B, pi, k, eps);
        out.push_back({"bb1",
                       detail::fnv_digest(detail::describe_pi(pi) + "t" + std::to_string(t)),
                       format_rational(rep.lhs), format_rational(rep.bound), rep.pass});
    }
    return out;
}

// Three-term bound on |E[A(x)B(y)B(y')]| for folded pairs.
inline std::vector<CheckRecord> suite_rt(const CheckConfig& cfg) {
    std::vector<CheckRecord> out;
    CounterRng base(cfg.seed, /*stream=*/103);
    const std::pair<int, int> rts[2] = {{4, 2}, {8, 2}};
    for (int t = 0; t < cfg.rt_trials; ++t) {
        CounterRng rng = base.fork(t);
        int k = 1 + static_cast<int>(rng.uniform(5));
        int m = k + static_cast<int>(rng.uniform(5 - k + 1));
        auto pi = detail::random_projection(rng, k, m);
        BooleanTable A = fold(BooleanTable::random_pm1(k, rng));
        BooleanTable B = fold(BooleanTable::random_pm1(m, rng));
        for (auto [R, T] : rts) {
            RtReport rep = lemma_rt_bound(A, B, pi, Rational(1, 4), R, T);
            out.push_back({"rt",
                           detail::fnv_digest(detail::describe_pi(pi) + "t" + std::to_string(t) +
                                              "R" + std::to_string(R)),
                           format_rational(rep.lhs), rep.rhs.str(20), rep.pass});
        }
    }
    return out;
}

// Single-block pair-character tables and the cross-magnitude bound for
// the four-query splitting test.
inline std::vector<CheckRecord> suite_4ss_tables(const CheckConfig& cfg) {
    std::vector<CheckRecord> out;
    const Rational eps_values[2] = {Rational(1, 4), Rational(1, 16)};
    for (const Rational& eps : eps_values) {
        std::string tag = "eps" + format_rational(eps);
        for (int s = 1; s <= 4; ++s) {
            std::vector<int> pi(s, 0);
            FourSSJoint joint(pi, pi, 1, eps);
            int bad = 0;
            std::uint32_t full = (std::uint32_t(1) << s) - 1;
            for (std::uint32_t j = 1; j <= full; ++j) {
                // E[chi_J(xx')]: -eps/2 odd, 1 - eps/2 even
                Rational expect_j =
                    (__builtin_popcount(j) & 1) ? Rational(-eps / 2) : Rational(1 - eps / 2);
                if (joint.char_expectation(j, j, 0, 0) != expect_j) ++bad;
                for (std::uint32_t kmask = 1; kmask <= full; ++kmask) {
                    bool jo = __builtin_popcount(j) & 1, ko = __builtin_popcount(kmask) & 1;
                    // E[chi_J(xx') chi_K(yy')]: -(1-eps) both odd,
                    // 1-eps both even, 0 mixed
                    Rational expect_jk =
                        jo == ko ? (jo ? Rational(-(1 - eps)) : Rational(1 - eps)) : Rational(0);
                    if (joint.char_expectation(j, j, kmask, kmask) != expect_jk) ++bad;
                }
            }
            out.push_back({"4ss-tables", detail::fnv_digest(tag + "s" + std::to_string(s)),
                           std::to_string(bad), "0", bad == 0});
        }
        // |E[chi_a(xx') chi_b(yy')]| <= (1-eps/2)^{max(|pi(a)|,|pi(b)|)}
        CounterRng rng(cfg.seed, /*stream=*/104);
        int violations = 0;
        for (int t = 0; t < cfg.albeta_trials; ++t) {
            CounterRng trial = rng.fork(t + (eps == eps_values[0] ? 0 : cfg.albeta_trials));
            int k = 1 + static_cast<int>(trial.uniform(3));
            int m = k + static_cast<int>(trial.uniform(4 - k + 1));
            auto pv = detail::random_projection(trial, k, m);
            auto pw = detail::random_projection(trial, k, m);
            std::uint32_t a = static_cast<std::uint32_t>(trial.bits(m));
            std::uint32_t b = static_cast<std::uint32_t>(trial.bits(m));
            FourSSJoint joint(pv, pw, k, eps);
            Rational val = joint.char_expectation(a, a, b, b);
            if (val < 0) val = -val;
            int r = std::max(__builtin_popcount(pi_image(pv, a)),
                             __builtin_popcount(pi_image(pw, b)));
            if (val > rational_pow(1 - eps / 2, r)) ++violations;
        }
        out.push_back({"4ss-albeta", detail::fnv_digest(tag), std::to_string(violations), "0",
                       violations == 0});
    }
    return out;
}

// Reverse-hypercontractive mixing on random product spaces.
inline std::vector<CheckRecord> suite_mixing(const CheckConfig& cfg) {
    std::vector<CheckRecord> out;
    CounterRng base(cfg.seed, /*stream=*/105);
    const Rational rhos[4] = {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4)};
    for (int t = 0; t < cfg.mixing_trials; ++t) {
        CounterRng rng = base.fork(t);
        int coords = 1 + static_cast<int>(rng.uniform(4));
        std::vector<std::vector<Rational>> measures(coords);
        for (auto& mu : measures) {
            int size = 2 + static_cast<int>(rng.uniform(3));
            // composition of 64 units with every atom at least 1/64
            std::vector<int> units(size, 1);
            for (int left = 64 - size; left > 0; --left)
                ++units[rng.uniform(static_cast<std::uint64_t>(size))];
            for (int u : units) mu.emplace_back(u, 64);
        }
        RhoCorrelated space(measures, rhos[t % 4]);
        std::size_t n = space.state_count();
        std::vector<char> in_a(n), in_b(n);
        auto fill = [&](std::vector<char>& in) {
            bool any = false;
            while (!any)
                for (std::size_t s = 0; s < n; ++s) any |= (in[s] = rng.next_u64() & 1);
        };
        fill(in_a);
        fill(in_b);
        MixingReport rep = mixing_bound_check(space, in_a, in_b);
        out.push_back({"mixing", detail::fnv_digest("trial" + std::to_string(t)),
                       format_rational(rep.lhs), rep.rhs.str(20), rep.pass});
    }
    return out;
}

// p_beta is a probability measure and matches the blockwise magnitudes.
inline std::vector<CheckRecord> suite_pmeasure(const CheckConfig& cfg) {
    std::vector<CheckRecord> out;
    CounterRng base(cfg.seed, /*stream=*/106);
    const Rational eps_values[2] = {Rational(1, 4), Rational(1, 16)};
    for (int t = 0; t < cfg.pmeasure_trials; ++t) {
        CounterRng rng = base.fork(t);
        int k = 1 + static_cast<int>(rng.uniform(4));
        int m = k + static_cast<int>(rng.uniform(5 - k + 1));
        auto pi = detail::random_projection(rng, k, m);
        std::uint32_t beta = 0;
        while (beta == 0) beta = static_cast<std::uint32_t>(rng.bits(m));
        const Rational& eps = eps_values[t % 2];
        E3SatJoint joint(pi, k, eps);
        std::uint32_t image = pi_image(pi, beta);
        Rational sum = 0;
        bool magnitudes_ok = true;
        detail::for_each_submask(image, [&](std::uint32_t alpha) {
            Rational p = p_measure(pi, beta, alpha, eps);
            sum += p;
            Rational direct = joint.char_expectation(alpha, beta, beta);
            if (direct < 0) direct = -direct;
            if (direct != p) magnitudes_ok = false;
        });
        bool pass = (sum == 1) && magnitudes_ok;
        out.push_back({"p-measure",
                       detail::fnv_digest(detail::describe_pi(pi) + "b" + std::to_string(beta)),
                       format_rational(sum), "1", pass});
    }
    return out;
}

// Sum of squared coefficients equals E[f^2].
inline std::vector<CheckRecord> suite_parseval(const CheckConfig& cfg) {
    std::vector<CheckRecord> out;
    CounterRng base(cfg.seed, /*stream=*/107);
    for (int t = 0; t < cfg.parseval_trials; ++t) {
        CounterRng rng = base.fork(t);
        int d = 1 + static_cast<int>(rng.uniform(6));
        BooleanTable table = (t % 2 == 0) ? BooleanTable::random_pm1(d, rng)
                                          : BooleanTable::random_indicator(d, rng);
        Rational expect = 0;
        for (int8_t v : table.values) expect += Rational(std::int64_t(v) * v, 1);
        expect /= static_cast<std::int64_t>(table.size());
        Rational got = parseval(wht(table));
        out.push_back({"parseval", detail::fnv_digest("trial" + std::to_string(t)),
                       format_rational(got), format_rational(expect), got == expect});
    }
    return out;
}

namespace detail {

// Total-variation distance between empirical counts and an exact
// distribution, as an exact rational.
inline Rational tv_distance(const std::map<std::uint64_t, std::int64_t>& counts,
                            const SupportDistribution& exact, std::int64_t samples) {
    std::map<std::uint64_t, Rational> diff;
    for (const auto& [state, w] : exact.entries) diff[state] = -w;
    for (const auto& [state, c] : counts) diff[state] += Rational(c, samples);
    Rational tv = 0;
    for (const auto& [state, d] : diff) tv += d < 0 ? -d : d;
    return tv / 2;
}

}  // namespace detail

// Empirical samplers vs exact block-factored enumerations.
inline std::vector<CheckRecord> suite_sampler_tv(const CheckConfig& cfg) {
    std::vector<CheckRecord> out;
    Rational bound(1, 100);
    std::vector<int> pi{0, 1};  // k = m = 2, identity blocks
    auto record = [&](const std::string& name, const Rational& tv) {
        out.push_back({"sampler-tv", detail::fnv_digest(name), format_rational(tv),
                       format_rational(bound), tv < bound});
    };
    {
        HypergraphJoint joint(pi, pi, 2);
        CounterRng base(cfg.seed, /*stream=*/108);
        std::map<std::uint64_t, std::int64_t> counts;
        for (std::int64_t s = 0; s < cfg.tv_samples; ++s)
            ++counts[joint.pack(joint.sample(base.fork(s)))];
        record("hypergraph", detail::tv_distance(counts, joint.enumerate(), cfg.tv_samples));
    }
    {
        E3SatJoint joint(pi, 2, Rational(1, 4));
        CounterRng base(cfg.seed, /*stream=*/109);
        std::map<std::uint64_t, std::int64_t> counts;
        for (std::int64_t s = 0; s < cfg.tv_samples; ++s)
            ++counts[joint.pack(joint.sample(base.fork(s)))];
        record("e3sat", detail::tv_distance(counts, joint.enumerate(), cfg.tv_samples));
    }
    {
        FourSSJoint joint(pi, pi, 2, Rational(1, 4));
        CounterRng base(cfg.seed, /*stream=*/110);
        std::map<std::uint64_t, std::int64_t> counts;
        for (std::int64_t s = 0; s < cfg.tv_samples; ++s)
            ++counts[joint.pack(joint.sample(base.fork(s)))];
        record("4ss", detail::tv_distance(counts, joint.enumerate(), cfg.tv_samples));
    }
    {
        RhoCorrelated space({{Rational(1, 2), Rational(1, 2)},
                             {Rational(1, 4), Rational(1, 4), Rational(1, 2)}},
                            Rational(1, 2));
        CounterRng base(cfg.seed, /*stream=*/111);
        std::map<std::uint64_t, std::int64_t> counts;
        for (std::int64_t s = 0; s < cfg.tv_samples; ++s) {
            auto [x, y] = space.sample(base.fork(s));
            ++counts[std::uint64_t(x) * space.state_count() + y];
        }
        record("rho", detail::tv_distance(counts, space.enumerate(), cfg.tv_samples));
    }
    return out;
}

inline Json to_json(const CheckRecord& rec) {
    return {{"check", rec.check},
            {"inputs-digest", rec.digest},
            {"lhs", rec.lhs},
            {"rhs", rec.rhs},
            {"pass", rec.pass}};
}

// Runs every suite in a fixed order, streaming one JSON record per
// line plus a terminating summary. Returns true iff nothing failed.
inline bool run_all_checks(const CheckConfig& cfg, std::ostream& os) {
    std::vector<CheckRecord> records;
    auto append = [&](std::vector<CheckRecord> suite) {
        for (auto& rec : suite) records.push_back(std::move(rec));
    };
    append(suite_gamma(cfg));
    append(suite_bb1(cfg));
    append(suite_rt(cfg));
    append(suite_4ss_tables(cfg));
    append(suite_mixing(cfg));
    append(suite_pmeasure(cfg));
    append(suite_parseval(cfg));
    append(suite_sampler_tv(cfg));
    std::int64_t failures = 0;
    for (const auto& rec : records) {
        if (!rec.pass) ++failures;
        os << to_json(rec).dump() << "\n";
    }
    Json summary = {{"summary", failures == 0 ? "pass" : "fail"},
                    {"checks", records.size()},
                    {"failures", failures}};
    os << summary.dump() << "\n";
    return failures == 0;
}

}  // namespace pcpforge
