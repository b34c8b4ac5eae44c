#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "boolean_fourier.hpp"
#include "distributions.hpp"
#include "label_cover.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace pcpforge {

// One Boolean table per Long Code copy. Right tables live on V (dim m);
// left tables on U (dim k) exist only for the E3SAT verifier.
struct ProofAssignment {
    std::vector<BooleanTable> left;
    std::vector<BooleanTable> right;
    bool folded = false;
};

enum class ReductionKind { hypergraph, e3sat, fourss };

inline ProofAssignment long_code_proofs(const LabelCoverInstance& lc, const Labeling& labeling,
                                        ReductionKind kind) {
    ProofAssignment proofs;
    proofs.folded = true;  // dictators are folded
    for (int v = 0; v < lc.v_count; ++v)
        proofs.right.push_back(long_code(labeling.right[v] + 1, lc.m));
    if (kind == ReductionKind::e3sat)
        for (int u = 0; u < lc.u_count; ++u)
            proofs.left.push_back(long_code(labeling.left[u] + 1, lc.k));
    return proofs;
}

inline ProofAssignment random_folded_proofs(const LabelCoverInstance& lc, ReductionKind kind,
                                            CounterRng& rng) {
    ProofAssignment proofs;
    proofs.folded = true;
    for (int v = 0; v < lc.v_count; ++v)
        proofs.right.push_back(fold(BooleanTable::random_pm1(lc.m, rng)));
    if (kind == ReductionKind::e3sat)
        for (int u = 0; u < lc.u_count; ++u)
            proofs.left.push_back(fold(BooleanTable::random_pm1(lc.k, rng)));
    return proofs;
}

// E over a random (v, x) of the fraction of +1 proof entries, mapped
// from E[A^v(x)] = 2 rho - 1.
inline Rational ones_fraction(const ProofAssignment& proofs) {
    if (proofs.right.empty()) throw input_error("ones_fraction: no proof tables");
    Rational mean = 0;
    for (const auto& t : proofs.right) {
        if (t.mode != BooleanTable::Mode::pm1) throw input_error("ones_fraction: pm1 tables only");
        mean += t.mean();
    }
    mean /= static_cast<int>(proofs.right.size());
    return (mean + 1) / 2;
}

// -------------------------------------------------------------------------
// Hypergraph reduction: vertex (v, z) for z in {-1,1}^m; hyperedges are
// drawn by choosing u u.a.r., two neighbors v, w u.a.r., then a quad
// query. The edge set is implicit; it is enumerated only under a cap.
// -------------------------------------------------------------------------
struct HypergraphInstance {
    LabelCoverInstance lc;
    std::vector<std::vector<int>> u_adj;  // edge indices per u

    struct Triple {
        int u;
        int ev;  // edge index giving v and pi_vu
        int ew;
        Rational weight;  // 1/(|U| deg(u)^2)
    };
    std::vector<Triple> triples;

    std::int64_t vertex_count() const {
        return std::int64_t(lc.v_count) << lc.m;
    }

    std::int64_t vertex_id(int v, std::uint32_t point) const {
        return (std::int64_t(v) << lc.m) + point;
    }

    HypergraphJoint joint(const Triple& t) const {
        return HypergraphJoint(lc.edges[t.ev].pi, lc.edges[t.ew].pi, lc.k);
    }
};

inline HypergraphInstance build_hypergraph(const LabelCoverInstance& lc) {
    lc.validate();
    HypergraphInstance h;
    h.lc = lc;
    h.u_adj = lc.u_adjacency();
    for (int u = 0; u < lc.u_count; ++u) {
        auto deg = static_cast<std::int64_t>(h.u_adj[u].size());
        Rational w = Rational(1, lc.u_count) / (deg * deg);
        for (int ev : h.u_adj[u])
            for (int ew : h.u_adj[u]) h.triples.push_back({u, ev, ew, w});
    }
    return h;
}

struct WeightedHyperedge {
    std::array<std::int64_t, 4> vertices;  // (v,x), (v,x'), (w,y), (w,y')
    Rational weight;
};

inline std::vector<WeightedHyperedge> enumerate_hyperedges(
    const HypergraphInstance& h, std::size_t cap_states = std::size_t(1) << 20) {
    std::vector<WeightedHyperedge> out;
    for (const auto& t : h.triples) {
        auto joint = h.joint(t);
        for (const auto& [state, w] : joint.enumerate(cap_states).entries) {
            QuadQuery q = joint.unpack(state);
            int v = h.lc.edges[t.ev].v, wv = h.lc.edges[t.ew].v;
            out.push_back({{h.vertex_id(v, q.x), h.vertex_id(v, q.xp), h.vertex_id(wv, q.y),
                            h.vertex_id(wv, q.yp)},
                           t.weight * w});
            if (out.size() > cap_states) throw size_error("hyperedge enumeration exceeds cap");
        }
    }
    return out;
}

inline WeightedHyperedge sample_hyperedge(const HypergraphInstance& h, std::uint64_t seed,
                                          std::uint64_t index) {
    CounterRng rng = CounterRng(seed, /*stream=*/11).fork(index);
    int u = static_cast<int>(rng.uniform(h.lc.u_count));
    const auto& adj = h.u_adj[u];
    int ev = adj[rng.uniform(adj.size())];
    int ew = adj[rng.uniform(adj.size())];
    auto joint = HypergraphJoint(h.lc.edges[ev].pi, h.lc.edges[ew].pi, h.lc.k);
    QuadQuery q = joint.sample(rng.fork(1ULL << 32));
    int v = h.lc.edges[ev].v, wv = h.lc.edges[ew].v;
    return {{h.vertex_id(v, q.x), h.vertex_id(v, q.xp), h.vertex_id(wv, q.y),
             h.vertex_id(wv, q.yp)},
            Rational(0)};
}

// Two-coloring from a perfect labeling: class of (v, z) is the sign of
// z at the planted coordinate. Entry is 1 for z_sigma(v) = -1.
inline std::vector<char> yes_two_coloring(const LabelCoverInstance& lc, const Labeling& labeling) {
    if (value(lc, labeling) != 1)
        throw precondition_error("yes_two_coloring: labeling must satisfy every edge");
    std::vector<char> color(std::size_t(lc.v_count) << lc.m);
    for (int v = 0; v < lc.v_count; ++v)
        for (std::uint32_t p = 0; p < (std::uint32_t(1) << lc.m); ++p)
            color[(std::size_t(v) << lc.m) + p] = coord(p, labeling.right[v]) == -1 ? 1 : 0;
    return color;
}

struct MonteCarloEstimate {
    Rational mean;
    double standard_error = 0.0;
    std::int64_t samples = 0;
};

// Exact fraction of hyperedge weight fully inside `subset`, via the
// Fourier expansion E[A(x)A(x')B(y)B(y')] of the per-copy indicators.
inline Rational independent_set_violations_exact(const HypergraphInstance& h,
                                                 const std::vector<char>& subset) {
    if (subset.size() != static_cast<std::size_t>(h.vertex_count()))
        throw input_error("subset size mismatch");
    std::vector<std::optional<FourierSpectrum>> spectra(h.lc.v_count);
    auto spectrum_of = [&](int v) -> const FourierSpectrum& {
        if (!spectra[v]) {
            BooleanTable ind;
            ind.dim = h.lc.m;
            ind.mode = BooleanTable::Mode::indicator;
            ind.values.resize(std::size_t(1) << h.lc.m);
            for (std::uint32_t p = 0; p < ind.size(); ++p)
                ind.values[p] = subset[(std::size_t(v) << h.lc.m) + p];
            spectra[v] = wht(ind);
        }
        return *spectra[v];
    };
    Rational total = 0;
    for (const auto& t : h.triples) {
        auto joint = h.joint(t);
        const auto& sa = spectrum_of(h.lc.edges[t.ev].v);
        const auto& sb = spectrum_of(h.lc.edges[t.ew].v);
        Rational edge = 0;
        for (std::uint32_t a = 0; a < sa.coeffs.size(); ++a) {
            if (sa.coeffs[a] == 0) continue;
            for (std::uint32_t b = 0; b < sb.coeffs.size(); ++b) {
                if (sb.coeffs[b] == 0) continue;
                Rational e = joint.char_expectation(a, a, b, b);
                if (e != 0) edge += sa.coeffs[a] * sa.coeffs[a] * sb.coeffs[b] * sb.coeffs[b] * e;
            }
        }
        total += t.weight * edge;
    }
    return total;
}

inline MonteCarloEstimate independent_set_violations_sampled(const HypergraphInstance& h,
                                                             const std::vector<char>& subset,
                                                             std::int64_t samples,
                                                             std::uint64_t seed) {
    std::int64_t hits = 0;
    for (std::int64_t s = 0; s < samples; ++s) {
        auto edge = sample_hyperedge(h, seed, static_cast<std::uint64_t>(s));
        bool inside = true;
        for (auto vid : edge.vertices) inside = inside && subset[vid];
        if (inside) ++hits;
    }
    MonteCarloEstimate est;
    est.mean = Rational(hits, samples);
    double p = to_double(est.mean);
    est.standard_error = std::sqrt(std::max(p * (1 - p), 0.0) / double(samples));
    est.samples = samples;
    return est;
}

// Fraction of hyperedge weight monochromatic under a two-coloring.
inline Rational monochromatic_fraction_exact(const HypergraphInstance& h,
                                             const std::vector<char>& color) {
    std::vector<char> class0(color.size()), class1(color.size());
    for (std::size_t i = 0; i < color.size(); ++i) {
        class0[i] = color[i] == 0;
        class1[i] = color[i] == 1;
    }
    return independent_set_violations_exact(h, class0) +
           independent_set_violations_exact(h, class1);
}

inline std::int64_t monochromatic_count_sampled(const HypergraphInstance& h,
                                                const std::vector<char>& color,
                                                std::int64_t samples, std::uint64_t seed) {
    std::int64_t bad = 0;
    for (std::int64_t s = 0; s < samples; ++s) {
        auto edge = sample_hyperedge(h, seed, static_cast<std::uint64_t>(s));
        char c = color[edge.vertices[0]];
        bool mono = true;
        for (auto vid : edge.vertices) mono = mono && color[vid] == c;
        if (mono) ++bad;
    }
    return bad;
}

// -------------------------------------------------------------------------
// E3SAT verifier evaluation and export.
// -------------------------------------------------------------------------

namespace detail {

// Spectrum of 1 + f, used when expanding products of (1 + f) factors.
inline FourierSpectrum shifted_spectrum(const BooleanTable& t) {
    FourierSpectrum s = wht(t);
    s.coeffs[0] += 1;
    return s;
}

}  // namespace detail

// Exact acceptance probability of the E3SAT verifier: the average over
// edges (u, v) of 1 - E[(1+A(x))(1+B(y))(1+B(y'))]/8, each expectation
// expanded over the proofs' Fourier coefficients with blockwise
// character expectations.
inline Rational e3sat_acceptance_exact(const LabelCoverInstance& lc, const ProofAssignment& proofs,
                                       const Rational& eps) {
    if (!proofs.folded) throw precondition_error("e3sat verifier requires folded proofs");
    if (static_cast<int>(proofs.left.size()) != lc.u_count ||
        static_cast<int>(proofs.right.size()) != lc.v_count)
        throw input_error("proof bundle does not match instance");
    auto u_adj = lc.u_adjacency();
    std::vector<FourierSpectrum> ca, cb;
    for (const auto& t : proofs.left) {
        if (t.dim != lc.k || !t.is_folded()) throw precondition_error("left proof not folded");
        ca.push_back(detail::shifted_spectrum(t));
    }
    for (const auto& t : proofs.right) {
        if (t.dim != lc.m || !t.is_folded()) throw precondition_error("right proof not folded");
        cb.push_back(detail::shifted_spectrum(t));
    }
    Rational total = 0;
    for (int u = 0; u < lc.u_count; ++u) {
        Rational edge_weight = Rational(1, lc.u_count) / static_cast<int>(u_adj[u].size());
        for (int e : u_adj[u]) {
            const auto& edge = lc.edges[e];
            E3SatJoint joint(edge.pi, lc.k, eps);
            const auto& sa = ca[u];
            const auto& sb = cb[edge.v];
            Rational reject = 0;  // E[(1+A)(1+B)(1+B')]
            for (std::uint32_t alpha = 0; alpha < sa.coeffs.size(); ++alpha) {
                if (sa.coeffs[alpha] == 0) continue;
                for (std::uint32_t beta = 0; beta < sb.coeffs.size(); ++beta) {
                    if (sb.coeffs[beta] == 0) continue;
                    for (std::uint32_t betap = 0; betap < sb.coeffs.size(); ++betap) {
                        if (sb.coeffs[betap] == 0) continue;
                        Rational ev = joint.char_expectation(alpha, beta, betap);
                        if (ev != 0)
                            reject += sa.coeffs[alpha] * sb.coeffs[beta] * sb.coeffs[betap] * ev;
                    }
                }
            }
            total += edge_weight * (1 - reject / 8);
        }
    }
    return total;
}

inline MonteCarloEstimate e3sat_acceptance_sampled(const LabelCoverInstance& lc,
                                                   const ProofAssignment& proofs,
                                                   const Rational& eps, std::int64_t samples,
                                                   std::uint64_t seed) {
    if (!proofs.folded) throw precondition_error("e3sat verifier requires folded proofs");
    auto u_adj = lc.u_adjacency();
    std::int64_t accepted = 0;
    for (std::int64_t s = 0; s < samples; ++s) {
        CounterRng rng = CounterRng(seed, /*stream=*/12).fork(static_cast<std::uint64_t>(s));
        int u = static_cast<int>(rng.uniform(lc.u_count));
        const auto& edge = lc.edges[u_adj[u][rng.uniform(u_adj[u].size())]];
        E3SatJoint joint(edge.pi, lc.k, eps);
        TripleQuery q = joint.sample(rng.fork(1ULL << 32));
        if (!(proofs.left[u](q.x) == 1 && proofs.right[edge.v](q.y) == 1 &&
              proofs.right[edge.v](q.yp) == 1))
            ++accepted;
    }
    MonteCarloEstimate est;
    est.mean = Rational(accepted, samples);
    double p = to_double(est.mean);
    est.standard_error = std::sqrt(std::max(p * (1 - p), 0.0) / double(samples));
    est.samples = samples;
    return est;
}

// Weighted E3-CNF over one variable per antipodal pair of each folded
// Long Code. Literals are DIMACS-style: +-(var index + 1).
struct CnfInstance {
    struct WeightedClause {
        Rational weight;
        std::array<int, 3> literals;
    };
    std::int64_t var_count = 0;
    std::vector<WeightedClause> clauses;

    Rational satisfied_weight(const std::vector<char>& assignment) const {
        if (assignment.size() != static_cast<std::size_t>(var_count))
            throw input_error("assignment length mismatch");
        Rational sum = 0;
        for (const auto& c : clauses) {
            bool sat = false;
            for (int lit : c.literals) {
                int var = std::abs(lit) - 1;
                if ((lit > 0) == (assignment[var] != 0)) sat = true;
            }
            if (sat) sum += c.weight;
        }
        return sum;
    }
};

namespace detail {

// Variable layout: u-side pairs first, then v-side pairs. The
// representative of each antipodal pair is the point with bit 0 clear.
struct E3SatVarLayout {
    int k, m;
    std::int64_t u_count, v_count;

    std::int64_t var_count() const {
        return u_count * (std::int64_t(1) << (k - 1)) + v_count * (std::int64_t(1) << (m - 1));
    }
    std::int64_t u_var(int u, std::uint32_t rep) const {
        return std::int64_t(u) * (std::int64_t(1) << (k - 1)) + (rep >> 1);
    }
    std::int64_t v_var(int v, std::uint32_t rep) const {
        return u_count * (std::int64_t(1) << (k - 1)) +
               std::int64_t(v) * (std::int64_t(1) << (m - 1)) + (rep >> 1);
    }

    // Literal asserting "value read at this point is NOT 1". Querying
    // the antipode of a representative reads the variable negated.
    static int reject_literal(std::int64_t var_of_rep, bool antipode) {
        int lit = static_cast<int>(var_of_rep) + 1;
        return antipode ? lit : -lit;
    }
};

}  // namespace detail

// Materializes the verifier as a weighted CNF. Variable true means the
// table value at the pair's representative is +1.
inline CnfInstance export_e3sat_cnf(const LabelCoverInstance& lc, const Rational& eps,
                                    std::size_t cap_states = std::size_t(1) << 20) {
    lc.validate();
    if (lc.k < 1 || lc.m < 1) throw input_error("export_e3sat_cnf: degenerate label sets");
    detail::E3SatVarLayout layout{lc.k, lc.m, lc.u_count, lc.v_count};
    auto u_adj = lc.u_adjacency();
    CnfInstance cnf;
    cnf.var_count = layout.var_count();
    std::uint32_t all_k = (std::uint32_t(1) << lc.k) - 1;
    std::uint32_t all_m = (std::uint32_t(1) << lc.m) - 1;
    for (int u = 0; u < lc.u_count; ++u) {
        Rational edge_weight = Rational(1, lc.u_count) / static_cast<int>(u_adj[u].size());
        for (int e : u_adj[u]) {
            const auto& edge = lc.edges[e];
            E3SatJoint joint(edge.pi, lc.k, eps);
            for (const auto& [state, w] : joint.enumerate(cap_states).entries) {
                TripleQuery q = joint.unpack(state);
                bool ax = q.x & 1;
                bool ay = q.y & 1;
                bool ayp = q.yp & 1;
                CnfInstance::WeightedClause clause;
                clause.weight = edge_weight * w;
                clause.literals = {
                    detail::E3SatVarLayout::reject_literal(layout.u_var(u, ax ? q.x ^ all_k : q.x),
                                                           ax),
                    detail::E3SatVarLayout::reject_literal(
                        layout.v_var(edge.v, ay ? q.y ^ all_m : q.y), ay),
                    detail::E3SatVarLayout::reject_literal(
                        layout.v_var(edge.v, ayp ? q.yp ^ all_m : q.yp), ayp)};
                cnf.clauses.push_back(std::move(clause));
                if (cnf.clauses.size() > cap_states)
                    throw size_error("export_e3sat_cnf: clause count exceeds cap");
            }
        }
    }
    return cnf;
}

// Assignment whose satisfied weight equals the verifier's acceptance of
// the given folded proofs.
inline std::vector<char> assignment_from_proofs(const LabelCoverInstance& lc,
                                                const ProofAssignment& proofs) {
    detail::E3SatVarLayout layout{lc.k, lc.m, lc.u_count, lc.v_count};
    std::vector<char> assignment(layout.var_count());
    for (int u = 0; u < lc.u_count; ++u)
        for (std::uint32_t p = 0; p < (std::uint32_t(1) << lc.k); p += 2)
            assignment[layout.u_var(u, p)] = proofs.left[u](p) == 1;
    for (int v = 0; v < lc.v_count; ++v)
        for (std::uint32_t p = 0; p < (std::uint32_t(1) << lc.m); p += 2)
            assignment[layout.v_var(v, p)] = proofs.right[v](p) == 1;
    return assignment;
}

// -------------------------------------------------------------------------
// 4-Set-Splitting verifier evaluation and export.
// -------------------------------------------------------------------------

// Exact rejection probability: Pr[all four queried values are 1],
// averaged over the verifier's (u, v, w) choice.
inline Rational fourss_rejection_exact(const LabelCoverInstance& lc, const ProofAssignment& proofs,
                                       const Rational& eps) {
    if (static_cast<int>(proofs.right.size()) != lc.v_count)
        throw input_error("proof bundle does not match instance");
    for (const auto& t : proofs.right)
        if (t.dim != lc.m || t.mode != BooleanTable::Mode::pm1)
            throw input_error("4ss proofs must be pm1 tables of dim m");
    HypergraphInstance topology = build_hypergraph(lc);
    std::vector<FourierSpectrum> shifted;
    for (const auto& t : proofs.right) shifted.push_back(detail::shifted_spectrum(t));
    Rational total = 0;
    for (const auto& t : topology.triples) {
        FourSSJoint joint(lc.edges[t.ev].pi, lc.edges[t.ew].pi, lc.k, eps);
        const auto& sa = shifted[lc.edges[t.ev].v];
        const auto& sb = shifted[lc.edges[t.ew].v];
        Rational sum = 0;
        for (std::uint32_t a = 0; a < sa.coeffs.size(); ++a) {
            if (sa.coeffs[a] == 0) continue;
            for (std::uint32_t b = 0; b < sb.coeffs.size(); ++b) {
                if (sb.coeffs[b] == 0) continue;
                Rational ev = joint.char_expectation(a, a, b, b);
                if (ev != 0) sum += sa.coeffs[a] * sa.coeffs[a] * sb.coeffs[b] * sb.coeffs[b] * ev;
            }
        }
        total += t.weight * sum;
    }
    return total / 16;
}

inline MonteCarloEstimate fourss_rejection_sampled(const LabelCoverInstance& lc,
                                                   const ProofAssignment& proofs,
                                                   const Rational& eps, std::int64_t samples,
                                                   std::uint64_t seed) {
    auto u_adj = lc.u_adjacency();
    std::int64_t rejected = 0;
    for (std::int64_t s = 0; s < samples; ++s) {
        CounterRng rng = CounterRng(seed, /*stream=*/13).fork(static_cast<std::uint64_t>(s));
        int u = static_cast<int>(rng.uniform(lc.u_count));
        const auto& ev = lc.edges[u_adj[u][rng.uniform(u_adj[u].size())]];
        const auto& ew = lc.edges[u_adj[u][rng.uniform(u_adj[u].size())]];
        FourSSJoint joint(ev.pi, ew.pi, lc.k, eps);
        QuadQuery q = joint.sample(rng.fork(1ULL << 32));
        const auto& av = proofs.right[ev.v];
        const auto& aw = proofs.right[ew.v];
        if (av(q.x) == 1 && av(q.xp) == 1 && aw(q.y) == 1 && aw(q.yp) == 1) ++rejected;
    }
    MonteCarloEstimate est;
    est.mean = Rational(rejected, samples);
    double p = to_double(est.mean);
    est.standard_error = std::sqrt(std::max(p * (1 - p), 0.0) / double(samples));
    est.samples = samples;
    return est;
}

// Weighted 4-set system over ground set {(v, z)}. Degenerate 4-sets
// (repeated positions at tiny m) are kept with their multiplicity.
struct SetSplitInstance {
    std::int64_t element_count = 0;
    struct WeightedSet {
        Rational weight;
        std::array<std::int64_t, 4> elements;
    };
    std::vector<WeightedSet> sets;

    // Weight of sets meeting both sides of the partition.
    Rational split_weight(const std::vector<char>& side) const {
        if (side.size() != static_cast<std::size_t>(element_count))
            throw input_error("partition size mismatch");
        Rational sum = 0;
        for (const auto& s : sets) {
            char first = side[s.elements[0]];
            bool mono = true;
            for (auto e : s.elements) mono = mono && side[e] == first;
            if (!mono) sum += s.weight;
        }
        return sum;
    }
};

inline SetSplitInstance export_4ss_instance(const LabelCoverInstance& lc, const Rational& eps,
                                            std::size_t cap_states = std::size_t(1) << 20) {
    lc.validate();
    HypergraphInstance topology = build_hypergraph(lc);
    SetSplitInstance inst;
    inst.element_count = topology.vertex_count();
    for (const auto& t : topology.triples) {
        FourSSJoint joint(lc.edges[t.ev].pi, lc.edges[t.ew].pi, lc.k, eps);
        int v = lc.edges[t.ev].v, w = lc.edges[t.ew].v;
        for (const auto& [state, weight] : joint.enumerate(cap_states).entries) {
            QuadQuery q = joint.unpack(state);
            inst.sets.push_back({t.weight * weight,
                                 {topology.vertex_id(v, q.x), topology.vertex_id(v, q.xp),
                                  topology.vertex_id(w, q.y), topology.vertex_id(w, q.yp)}});
            if (inst.sets.size() > cap_states)
                throw size_error("export_4ss_instance: set count exceeds cap");
        }
    }
    return inst;
}

// Partition from a perfect labeling: side of (v, z) is the sign of z at
// the planted coordinate.
inline std::vector<char> partition_from_labeling(const LabelCoverInstance& lc,
                                                 const Labeling& labeling) {
    return yes_two_coloring(lc, labeling);
}

// -------------------------------------------------------------------------
// Brute-force optima on desk-size instances.
// -------------------------------------------------------------------------

inline std::pair<Rational, std::vector<char>> max_satisfied_bruteforce(
    const CnfInstance& cnf, std::int64_t cap = std::int64_t(1) << 24) {
    if (cnf.var_count >= 63 || (std::int64_t(1) << cnf.var_count) > cap)
        throw size_error("max_satisfied_bruteforce: assignment space exceeds cap");
    Rational best = -1;
    std::vector<char> witness;
    for (std::int64_t a = 0; a < (std::int64_t(1) << cnf.var_count); ++a) {
        std::vector<char> assignment(cnf.var_count);
        for (int i = 0; i < cnf.var_count; ++i) assignment[i] = (a >> i) & 1;
        Rational w = cnf.satisfied_weight(assignment);
        if (w > best) {
            best = w;
            witness = std::move(assignment);
        }
    }
    return {best, witness};
}

inline std::pair<Rational, std::vector<char>> max_split_bruteforce(
    const SetSplitInstance& inst, std::int64_t cap = std::int64_t(1) << 24) {
    if (inst.element_count >= 63 || (std::int64_t(1) << inst.element_count) > cap)
        throw size_error("max_split_bruteforce: partition space exceeds cap");
    Rational best = -1;
    std::vector<char> witness;
    for (std::int64_t a = 0; a < (std::int64_t(1) << inst.element_count); ++a) {
        std::vector<char> side(inst.element_count);
        for (int i = 0; i < inst.element_count; ++i) side[i] = (a >> i) & 1;
        Rational w = inst.split_weight(side);
        if (w > best) {
            best = w;
            witness = std::move(side);
        }
    }
    return {best, witness};
}

// Maximum relative size of an independent set in the enumerated
// hypergraph (zero-weight edges ignored).
inline std::pair<Rational, std::vector<char>> max_independent_set_bruteforce(
    const HypergraphInstance& h, std::int64_t cap = std::int64_t(1) << 24) {
    std::int64_t n = h.vertex_count();
    if (n >= 63 || (std::int64_t(1) << n) > cap)
        throw size_error("max_independent_set_bruteforce: subset space exceeds cap");
    auto edges = enumerate_hyperedges(h);
    std::int64_t best = -1;
    std::vector<char> witness;
    for (std::int64_t a = 0; a < (std::int64_t(1) << n); ++a) {
        bool independent = true;
        for (const auto& e : edges) {
            if (e.weight == 0) continue;
            bool inside = true;
            for (auto vid : e.vertices) inside = inside && ((a >> vid) & 1);
            if (inside) {
                independent = false;
                break;
            }
        }
        if (!independent) continue;
        std::int64_t size = __builtin_popcountll(static_cast<unsigned long long>(a));
        if (size > best) {
            best = size;
            witness.assign(n, 0);
            for (int i = 0; i < n; ++i) witness[i] = (a >> i) & 1;
        }
    }
    return {Rational(best, n), witness};
}

}  // namespace pcpforge
