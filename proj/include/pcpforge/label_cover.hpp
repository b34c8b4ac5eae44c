#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "rational.hpp"
#include "rng.hpp"

namespace pcpforge {

// Bipartite projection game. Vertices and labels are 0-based in memory;
// serialization shifts to 1-based.
struct LabelCoverInstance {
    struct Edge {
        int u = 0;
        int v = 0;
        std::vector<int> pi;  // pi[label of v] = label of u
    };

    int u_count = 0;
    int v_count = 0;
    int k = 0;  // left label count
    int m = 0;  // right label count
    std::vector<Edge> edges;

    void validate() const {
        if (u_count <= 0 || v_count <= 0 || k <= 0 || m <= 0)
            throw input_error("label cover: counts must be positive");
        if (k > m) throw input_error("label cover: requires k <= m");
        if (edges.empty()) throw input_error("label cover: no edges");
        std::vector<char> u_seen(u_count, 0), v_seen(v_count, 0);
        for (const auto& e : edges) {
            if (e.u < 0 || e.u >= u_count || e.v < 0 || e.v >= v_count)
                throw input_error("label cover: edge endpoint out of range");
            if (static_cast<int>(e.pi.size()) != m)
                throw input_error("label cover: projection not defined on all of [m]");
            for (int t : e.pi)
                if (t < 0 || t >= k) throw input_error("label cover: projection value out of range");
            u_seen[e.u] = v_seen[e.v] = 1;
        }
        for (char c : u_seen)
            if (!c) throw input_error("label cover: isolated u vertex");
        for (char c : v_seen)
            if (!c) throw input_error("label cover: isolated v vertex");
    }

    bool all_projections_onto() const {
        for (const auto& e : edges) {
            std::vector<char> hit(k, 0);
            for (int t : e.pi) hit[t] = 1;
            if (std::count(hit.begin(), hit.end(), 1) != k) return false;
        }
        return true;
    }

    // Not enforced by generators; recorded for diagnostics only.
    bool is_biregular() const {
        std::vector<int> du(u_count, 0), dv(v_count, 0);
        for (const auto& e : edges) {
            ++du[e.u];
            ++dv[e.v];
        }
        return std::all_of(du.begin(), du.end(), [&](int d) { return d == du[0]; }) &&
               std::all_of(dv.begin(), dv.end(), [&](int d) { return d == dv[0]; });
    }

    // Edge indices incident to each u.
    std::vector<std::vector<int>> u_adjacency() const {
        std::vector<std::vector<int>> adj(u_count);
        for (int e = 0; e < static_cast<int>(edges.size()); ++e) adj[edges[e].u].push_back(e);
        return adj;
    }

    std::vector<std::vector<int>> v_adjacency() const {
        std::vector<std::vector<int>> adj(v_count);
        for (int e = 0; e < static_cast<int>(edges.size()); ++e) adj[edges[e].v].push_back(e);
        return adj;
    }
};

struct Labeling {
    std::vector<int> left;   // values in [0, k)
    std::vector<int> right;  // values in [0, m)
};

inline Rational value(const LabelCoverInstance& inst, const Labeling& labeling) {
    if (static_cast<int>(labeling.left.size()) != inst.u_count ||
        static_cast<int>(labeling.right.size()) != inst.v_count)
        throw input_error("value: labeling dimensions do not match instance");
    for (int l : labeling.left)
        if (l < 0 || l >= inst.k) throw input_error("value: left label out of range");
    for (int l : labeling.right)
        if (l < 0 || l >= inst.m) throw input_error("value: right label out of range");
    std::int64_t satisfied = 0;
    for (const auto& e : inst.edges)
        if (e.pi[labeling.right[e.v]] == labeling.left[e.u]) ++satisfied;
    return Rational(satisfied, static_cast<std::int64_t>(inst.edges.size()));
}

// Planted YES instance: the returned labeling satisfies every edge and
// projections are uniformly random subject to pi(l_v) = l_u.
inline std::pair<LabelCoverInstance, Labeling> generate_planted(int u_count, int v_count,
                                                                int degree, int k, int m,
                                                                std::uint64_t seed) {
    if (u_count <= 0 || v_count <= 0 || degree <= 0 || k <= 0 || m <= 0)
        throw config_error("generate_planted: parameters must be positive");
    if (k > m) throw config_error("generate_planted: requires k <= m");
    if (degree > v_count) throw config_error("generate_planted: degree exceeds v_count");
    if (static_cast<std::int64_t>(degree) * u_count < v_count)
        throw config_error("generate_planted: too few edges to cover every v");

    CounterRng rng(seed, /*stream=*/1);

    // Each u gets `degree` distinct neighbors; then uncovered v's are
    // swapped in over duplicated occurrences.
    std::vector<std::vector<int>> nbrs(u_count);
    std::vector<int> occurrences(v_count, 0);
    for (int u = 0; u < u_count; ++u) {
        std::vector<int> pool(v_count);
        std::iota(pool.begin(), pool.end(), 0);
        for (int t = 0; t < degree; ++t) {
            std::size_t pick = t + rng.uniform(pool.size() - t);
            std::swap(pool[t], pool[pick]);
            nbrs[u].push_back(pool[t]);
            ++occurrences[pool[t]];
        }
    }
    for (int v = 0; v < v_count; ++v) {
        if (occurrences[v] > 0) continue;
        bool placed = false;
        for (int u = 0; u < u_count && !placed; ++u) {
            if (std::find(nbrs[u].begin(), nbrs[u].end(), v) != nbrs[u].end()) continue;
            for (int t = 0; t < degree && !placed; ++t) {
                if (occurrences[nbrs[u][t]] > 1) {
                    --occurrences[nbrs[u][t]];
                    nbrs[u][t] = v;
                    ++occurrences[v];
                    placed = true;
                }
            }
        }
        if (!placed) throw config_error("generate_planted: cannot cover every v");
    }

    Labeling labeling;
    labeling.left.resize(u_count);
    labeling.right.resize(v_count);
    for (int u = 0; u < u_count; ++u) labeling.left[u] = static_cast<int>(rng.uniform(k));
    for (int v = 0; v < v_count; ++v) labeling.right[v] = static_cast<int>(rng.uniform(m));

    LabelCoverInstance inst;
    inst.u_count = u_count;
    inst.v_count = v_count;
    inst.k = k;
    inst.m = m;
    for (int u = 0; u < u_count; ++u) {
        for (int v : nbrs[u]) {
            LabelCoverInstance::Edge e;
            e.u = u;
            e.v = v;
            e.pi.resize(m);
            for (int j = 0; j < m; ++j) e.pi[j] = static_cast<int>(rng.uniform(k));
            e.pi[labeling.right[v]] = labeling.left[u];
            inst.edges.push_back(std::move(e));
        }
    }
    inst.validate();
    return {std::move(inst), std::move(labeling)};
}

struct Clause3 {
    struct Literal {
        int var = 0;
        bool negated = false;
    };
    std::array<Literal, 3> literals;
};

// Clause-variable game at repetition 1: U = variables (k = 2, label 0
// reads the variable as false, 1 as true), V = clauses with the 7
// satisfying assignments of a 3-clause as labels.
inline LabelCoverInstance from_3sat_base_game(const std::vector<Clause3>& cnf) {
    if (cnf.empty()) throw input_error("from_3sat_base_game: empty CNF");
    int var_count = 0;
    for (const auto& c : cnf) {
        if (c.literals[0].var == c.literals[1].var || c.literals[0].var == c.literals[2].var ||
            c.literals[1].var == c.literals[2].var)
            throw input_error("from_3sat_base_game: clause variables must be distinct");
        for (const auto& lit : c.literals) {
            if (lit.var < 0) throw input_error("from_3sat_base_game: negative variable index");
            var_count = std::max(var_count, lit.var + 1);
        }
    }
    if (var_count == 0) throw input_error("from_3sat_base_game: no variables");

    LabelCoverInstance inst;
    inst.u_count = var_count;
    inst.v_count = static_cast<int>(cnf.size());
    inst.k = 2;
    inst.m = 7;
    for (int c = 0; c < static_cast<int>(cnf.size()); ++c) {
        const auto& clause = cnf[c];
        // Satisfying assignments of the clause, as 3-bit patterns
        // (bit t = value of literal t's variable), in increasing order.
        std::vector<int> sat;
        for (int a = 0; a < 8; ++a) {
            bool ok = false;
            for (int t = 0; t < 3; ++t) {
                bool val = (a >> t) & 1;
                if (val != clause.literals[t].negated) ok = true;
            }
            if (ok) sat.push_back(a);
        }
        // Exactly one falsifying assignment per E3 clause.
        for (int t = 0; t < 3; ++t) {
            LabelCoverInstance::Edge e;
            e.u = clause.literals[t].var;
            e.v = c;
            e.pi.resize(7);
            for (int j = 0; j < 7; ++j) e.pi[j] = (sat[j] >> t) & 1;
            inst.edges.push_back(std::move(e));
        }
    }
    inst.validate();
    return inst;
}

// r-fold product game: vertices and labels become r-tuples (mixed radix,
// first component least significant), edges all r-tuples of base edges.
inline LabelCoverInstance parallel_repetition(const LabelCoverInstance& inst, int r,
                                              std::int64_t cap = std::int64_t(1) << 24) {
    if (r <= 0) throw input_error("parallel_repetition: r must be positive");
    auto powi = [cap](std::int64_t b, int e) {
        std::int64_t p = 1;
        for (int i = 0; i < e; ++i) {
            if (p > cap / b) throw size_error("parallel_repetition: cap exceeded");
            p *= b;
        }
        return p;
    };
    std::int64_t uc = powi(inst.u_count, r);
    std::int64_t vc = powi(inst.v_count, r);
    std::int64_t kk = powi(inst.k, r);
    std::int64_t mm = powi(inst.m, r);
    std::int64_t ec = powi(static_cast<std::int64_t>(inst.edges.size()), r);
    if (ec * mm > cap) throw size_error("parallel_repetition: cap exceeded");

    LabelCoverInstance out;
    out.u_count = static_cast<int>(uc);
    out.v_count = static_cast<int>(vc);
    out.k = static_cast<int>(kk);
    out.m = static_cast<int>(mm);
    std::vector<int> tuple(r, 0);
    for (std::int64_t code = 0; code < ec; ++code) {
        std::int64_t rem = code;
        for (int t = 0; t < r; ++t) {
            tuple[t] = static_cast<int>(rem % inst.edges.size());
            rem /= inst.edges.size();
        }
        LabelCoverInstance::Edge e;
        std::int64_t u = 0, v = 0;
        for (int t = r - 1; t >= 0; --t) {
            u = u * inst.u_count + inst.edges[tuple[t]].u;
            v = v * inst.v_count + inst.edges[tuple[t]].v;
        }
        e.u = static_cast<int>(u);
        e.v = static_cast<int>(v);
        e.pi.resize(mm);
        for (std::int64_t lv = 0; lv < mm; ++lv) {
            std::int64_t l = lv, lu = 0, mult = 1;
            for (int t = 0; t < r; ++t) {
                lu += mult * inst.edges[tuple[t]].pi[l % inst.m];
                l /= inst.m;
                mult *= inst.k;
            }
            e.pi[lv] = static_cast<int>(lu);
        }
        out.edges.push_back(std::move(e));
    }
    out.validate();
    return out;
}

// Lifts a base labeling to the product game.
inline Labeling lift_labeling(const Labeling& base, int u_count, int v_count, int k, int m, int r) {
    Labeling out;
    std::int64_t uc = 1, vc = 1;
    for (int t = 0; t < r; ++t) {
        uc *= u_count;
        vc *= v_count;
    }
    out.left.resize(uc);
    out.right.resize(vc);
    for (std::int64_t u = 0; u < uc; ++u) {
        std::int64_t rem = u, label = 0, mult = 1;
        for (int t = 0; t < r; ++t) {
            label += mult * base.left[rem % u_count];
            rem /= u_count;
            mult *= k;
        }
        out.left[u] = static_cast<int>(label);
    }
    for (std::int64_t v = 0; v < vc; ++v) {
        std::int64_t rem = v, label = 0, mult = 1;
        for (int t = 0; t < r; ++t) {
            label += mult * base.right[rem % v_count];
            rem /= v_count;
            mult *= m;
        }
        out.right[v] = static_cast<int>(label);
    }
    return out;
}

// Exhaustive over right labelings; each left label is the majority vote
// of its incident projections (ties to the smallest label). Ties between
// right labelings break to the lexicographically smallest.
inline std::pair<Rational, Labeling> optimum_bruteforce(const LabelCoverInstance& inst,
                                                        std::int64_t cap = std::int64_t(1)
                                                                           << 24) {
    double states = inst.v_count * std::log(static_cast<double>(inst.m));
    if (states > std::log(static_cast<double>(cap)) + 1e-9)
        throw size_error("optimum_bruteforce: right labeling space exceeds cap");

    auto adj = inst.u_adjacency();
    std::vector<int> right(inst.v_count, 0);
    std::int64_t best_count = -1;
    Labeling best;
    std::vector<int> votes(inst.k);
    while (true) {
        std::int64_t satisfied = 0;
        std::vector<int> left(inst.u_count);
        for (int u = 0; u < inst.u_count; ++u) {
            std::fill(votes.begin(), votes.end(), 0);
            for (int e : adj[u]) ++votes[inst.edges[e].pi[right[inst.edges[e].v]]];
            int pick = 0;
            for (int l = 1; l < inst.k; ++l)
                if (votes[l] > votes[pick]) pick = l;
            left[u] = pick;
            satisfied += votes[pick];
        }
        if (satisfied > best_count) {
            best_count = satisfied;
            best = Labeling{std::move(left), right};
        }
        int pos = inst.v_count - 1;
        while (pos >= 0 && right[pos] == inst.m - 1) right[pos--] = 0;
        if (pos < 0) break;
        ++right[pos];
    }
    return {Rational(best_count, static_cast<std::int64_t>(inst.edges.size())), best};
}

struct ExpansionStats {
    int set_size = 0;
    int trials = 0;
    Rational mean;      // empirical E[|pi(S)|^{-1}]
    double fitted_c0 = 0.0;  // largest c0 with mean <= |S|^{-2 c0}
};

inline ExpansionStats projection_expansion_stats(const LabelCoverInstance& inst, int set_size,
                                                 int trials, std::uint64_t seed) {
    if (set_size <= 0 || set_size > inst.m)
        throw input_error("projection_expansion_stats: set size out of range");
    if (trials <= 0) throw input_error("projection_expansion_stats: trials must be positive");
    auto vadj = inst.v_adjacency();
    CounterRng rng(seed, /*stream=*/2);
    Rational sum = 0;
    std::vector<int> pool(inst.m);
    for (int t = 0; t < trials; ++t) {
        int v = static_cast<int>(rng.uniform(inst.v_count));
        const auto& e = inst.edges[vadj[v][rng.uniform(vadj[v].size())]];
        std::iota(pool.begin(), pool.end(), 0);
        std::uint64_t image = 0;
        for (int s = 0; s < set_size; ++s) {
            std::size_t pick = s + rng.uniform(pool.size() - s);
            std::swap(pool[s], pool[pick]);
            image |= std::uint64_t(1) << e.pi[pool[s]];
        }
        sum += Rational(1, static_cast<int>(__builtin_popcountll(image)));
    }
    ExpansionStats stats;
    stats.set_size = set_size;
    stats.trials = trials;
    stats.mean = sum / trials;
    stats.fitted_c0 =
        set_size == 1 ? 0.0
                      : -std::log(to_double(stats.mean)) / (2.0 * std::log(double(set_size)));
    return stats;
}

}  // namespace pcpforge
