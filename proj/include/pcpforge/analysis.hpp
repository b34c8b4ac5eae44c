#pragma once

#include <cstdint>
#include <vector>

#include "boolean_fourier.hpp"
#include "distributions.hpp"
#include "label_cover.hpp"
#include "rational.hpp"
#include "reductions.hpp"
#include "rng.hpp"

namespace pcpforge {

// Image pi(alpha) as a mask over [k].
inline std::uint32_t pi_image(const std::vector<int>& pi, std::uint32_t alpha) {
    if (alpha >> pi.size()) throw input_error("pi_image: mask exceeds [m]");
    std::uint32_t image = 0;
    for (int j = 0; j < static_cast<int>(pi.size()); ++j)
        if ((alpha >> j) & 1) image |= std::uint32_t(1) << pi[j];
    return image;
}

// Coordinates i whose preimage block meets alpha in odd size.
inline std::uint32_t pi_odd(const std::vector<int>& pi, std::uint32_t alpha) {
    if (alpha >> pi.size()) throw input_error("pi_odd: mask exceeds [m]");
    std::uint32_t odd = 0;
    for (int j = 0; j < static_cast<int>(pi.size()); ++j)
        if ((alpha >> j) & 1) odd ^= std::uint32_t(1) << pi[j];
    return odd;
}

// Gamma_alpha = E[chi_alpha(x x')] under the hypergraph pair marginal:
// closed form (-1)^{|pi_odd(alpha)|} / 2^{|pi(alpha)|} next to a brute
// recomputation through the blockwise character expectation.
struct GammaReport {
    std::uint32_t alpha = 0;
    std::uint32_t image = 0;
    std::uint32_t odd = 0;
    Rational closed_form;
    Rational brute_force;
};

inline GammaReport gamma(const std::vector<int>& pi, std::uint32_t alpha, int k) {
    GammaReport rep;
    rep.alpha = alpha;
    rep.image = pi_image(pi, alpha);
    rep.odd = pi_odd(pi, alpha);
    int sign = (__builtin_popcount(rep.odd) & 1) ? -1 : 1;
    rep.closed_form =
        Rational(sign, std::int64_t(1) << __builtin_popcount(rep.image));
    rep.brute_force = HypergraphJoint(pi, pi, k).char_expectation(alpha, alpha, 0, 0);
    return rep;
}

// Sum over alpha of A_hat_alpha^2 Gamma_alpha; equals E[A(x)A(x')]
// under the pair marginal.
inline Rational self_correlation(const BooleanTable& A, const std::vector<int>& pi, int k) {
    if (A.dim != static_cast<int>(pi.size()))
        throw input_error("self_correlation: table dim does not match projection");
    FourierSpectrum spec = wht(A);
    Rational sum = 0;
    for (std::uint32_t alpha = 0; alpha < spec.coeffs.size(); ++alpha) {
        if (spec.coeffs[alpha] == 0) continue;
        sum += spec.coeffs[alpha] * spec.coeffs[alpha] * gamma(pi, alpha, k).closed_form;
    }
    return sum;
}

// Reverse-hypercontractive mixing bound: Pr[X in A, Y in B] against
// delta^{(2 - sqrt(rho)) / (1 - sqrt(rho))} with delta = min marginal.
struct MixingReport {
    Rational lhs;
    Rational delta;
    BigFloat rhs;
    bool pass = false;
};

inline MixingReport mixing_bound_check(const RhoCorrelated& space, const std::vector<char>& in_a,
                                       const std::vector<char>& in_b) {
    if (space.rho() >= 1) throw precondition_error("mixing bound requires rho < 1");
    Rational mu_a = 0, mu_b = 0;
    for (std::size_t s = 0; s < space.state_count(); ++s) {
        if (in_a[s]) mu_a += space.mu(s);
        if (in_b[s]) mu_b += space.mu(s);
    }
    if (mu_a == 0 || mu_b == 0) throw precondition_error("mixing bound requires nonempty sets");
    MixingReport rep;
    rep.lhs = space.pr_in(in_a, in_b);
    rep.delta = mu_a < mu_b ? mu_a : mu_b;
    BigFloat sr = sqrt(to_bigfloat(space.rho()));
    BigFloat exponent = (2 - sr) / (1 - sr);
    rep.rhs = pow(to_bigfloat(rep.delta), exponent);
    rep.pass = to_bigfloat(rep.lhs) >= rep.rhs - numeric_slack();
    return rep;
}

// p_beta(alpha) = (eps/2)^{r'} (1 - eps/2)^{r - r'} with r = |pi(beta)|
// and r' = |alpha symmetric-difference pi_odd(beta)|; a probability
// measure over alpha inside pi(beta).
inline Rational p_measure(const std::vector<int>& pi, std::uint32_t beta, std::uint32_t alpha,
                          const Rational& eps) {
    if (beta == 0) throw precondition_error("p_measure: beta must be nonempty");
    std::uint32_t image = pi_image(pi, beta);
    if (alpha & ~image) throw input_error("p_measure: alpha must lie inside pi(beta)");
    int r = __builtin_popcount(image);
    int rp = __builtin_popcount(alpha ^ pi_odd(pi, beta));
    return rational_pow(eps / 2, rp) * rational_pow(1 - eps / 2, r - rp);
}

struct BoundReport {
    Rational lhs;
    Rational bound;
    bool pass = false;
};

// |E[B(y)B(y')]| <= eps/2 for folded B under the 2-query pair marginal
// of the three-query test.
inline BoundReport lemma_bb1_check(const BooleanTable& B, const std::vector<int>& pi, int k,
                                   const Rational& eps) {
    if (!B.is_folded()) throw precondition_error("lemma_bb1_check: table must be folded");
    E3SatJoint joint(pi, k, eps);
    FourierSpectrum spec = wht(B);
    Rational value = 0;
    for (std::uint32_t beta = 0; beta < spec.coeffs.size(); ++beta) {
        if (spec.coeffs[beta] == 0) continue;
        value += spec.coeffs[beta] * spec.coeffs[beta] * joint.char_expectation(0, beta, beta);
    }
    BoundReport rep;
    rep.lhs = value;
    rep.bound = eps / 2;
    rep.pass = (value < 0 ? -value : value) <= rep.bound;
    return rep;
}

struct RtReport {
    Rational lhs;                // |E[A(x)B(y)B(y')]|
    Rational low_degree_mass;    // under the square root
    Rational spread_mass;        // second term
    BigFloat rhs;
    bool pass = false;
};

// Three-term soundness bound: |E[A(x)B(y)B(y')]| <=
// sqrt(low-degree cross mass) + spread mass + (1 - eps/2)^{T/2}.
inline RtReport lemma_rt_bound(const BooleanTable& A, const BooleanTable& B,
                               const std::vector<int>& pi, const Rational& eps, int R, int T) {
    if (T > R || T < 1) throw precondition_error("lemma_rt_bound: requires R >= T >= 1");
    if (!A.is_folded() || !B.is_folded())
        throw precondition_error("lemma_rt_bound: tables must be folded");
    int k = A.dim;
    if (B.dim != static_cast<int>(pi.size()))
        throw input_error("lemma_rt_bound: B dim does not match projection");
    E3SatJoint joint(pi, k, eps);
    FourierSpectrum sa = wht(A), sb = wht(B);
    RtReport rep;
    Rational lhs = 0;
    rep.low_degree_mass = 0;
    rep.spread_mass = 0;
    for (std::uint32_t beta = 0; beta < sb.coeffs.size(); ++beta) {
        if (sb.coeffs[beta] == 0) continue;
        Rational b2 = sb.coeffs[beta] * sb.coeffs[beta];
        std::uint32_t image = pi_image(pi, beta);
        int size = __builtin_popcount(beta);
        if (size >= R && __builtin_popcount(image) < T) rep.spread_mass += b2;
        for (std::uint32_t alpha = 0; alpha < sa.coeffs.size(); ++alpha) {
            if (sa.coeffs[alpha] == 0) continue;
            Rational ev = joint.char_expectation(alpha, beta, beta);
            if (ev != 0) lhs += sa.coeffs[alpha] * b2 * ev;
            bool odd = (__builtin_popcount(alpha) & 1) && (size & 1);
            if (odd && size < R && (alpha & ~image) == 0)
                rep.low_degree_mass += sa.coeffs[alpha] * sa.coeffs[alpha] * b2;
        }
    }
    rep.lhs = lhs < 0 ? -lhs : lhs;
    rep.rhs = sqrt(to_bigfloat(rep.low_degree_mass)) + to_bigfloat(rep.spread_mass) +
              pow(to_bigfloat(1 - eps / 2), BigFloat(T) / 2);
    rep.pass = to_bigfloat(rep.lhs) <= rep.rhs + numeric_slack();
    return rep;
}

// Sum of A_hat_alpha^2 B_hat_beta^2 over mask pairs of size < R whose
// projected images intersect.
inline Rational cross_weight(const FourierSpectrum& spec_a, const FourierSpectrum& spec_b,
                             const std::vector<int>& pi_vu, const std::vector<int>& pi_wu, int R) {
    Rational sum = 0;
    for (std::uint32_t alpha = 0; alpha < spec_a.coeffs.size(); ++alpha) {
        if (spec_a.coeffs[alpha] == 0 || __builtin_popcount(alpha) >= R) continue;
        std::uint32_t ia = pi_image(pi_vu, alpha);
        for (std::uint32_t beta = 0; beta < spec_b.coeffs.size(); ++beta) {
            if (spec_b.coeffs[beta] == 0 || __builtin_popcount(beta) >= R) continue;
            if ((ia & pi_image(pi_wu, beta)) == 0) continue;
            sum += spec_a.coeffs[alpha] * spec_a.coeffs[alpha] * spec_b.coeffs[beta] *
                   spec_b.coeffs[beta];
        }
    }
    return sum;
}

// -------------------------------------------------------------------------
// Fourier decoding of proofs into labelings.
// -------------------------------------------------------------------------

struct DecodingOutcome {
    Labeling labeling;  // abstained entries hold label 0, flagged below
    std::vector<char> abstain_left, abstain_right;
    Rational satisfied_fraction;
    Rational expected_value;  // over decode randomness
};

namespace detail {

// Draws a mask with probability coeff^2; the residual mass (at most
// 1 - sum of squares, plus the empty mask) abstains.
inline bool draw_mask(const FourierSpectrum& spec, CounterRng& rng, std::uint32_t& out) {
    std::uint64_t scale = std::uint64_t(1) << (2 * spec.dim);
    std::uint64_t draw = rng.uniform(scale);
    std::uint64_t acc = 0;
    for (std::uint32_t mask = 0; mask < spec.coeffs.size(); ++mask) {
        Rational numer = spec.coeffs[mask] * spec.coeffs[mask] * scale;
        acc += static_cast<std::uint64_t>(numerator(numer));
        if (draw < acc) {
            if (mask == 0) return false;
            out = mask;
            return true;
        }
    }
    return false;
}

inline int draw_label(std::uint32_t mask, CounterRng& rng) {
    int n = __builtin_popcount(mask);
    std::uint64_t idx = rng.uniform(static_cast<std::uint64_t>(n));
    for (int j = 0;; ++j)
        if ((mask >> j) & 1)
            if (idx-- == 0) return j;
}

// Pr over one mask draw and one uniform in-mask label that the label
// lands in `targets`-style predicates is assembled by the callers from
// these per-mask weights.
inline std::vector<std::pair<std::uint32_t, Rational>> nonzero_masks(const FourierSpectrum& s) {
    std::vector<std::pair<std::uint32_t, Rational>> out;
    for (std::uint32_t mask = 1; mask < s.coeffs.size(); ++mask)
        if (s.coeffs[mask] != 0) out.emplace_back(mask, s.coeffs[mask] * s.coeffs[mask]);
    return out;
}

}  // namespace detail

// Decodes every proof table to a label (or abstain) and assembles a
// labeling. Right vertices draw a mask from the squared spectrum and a
// uniform label inside it; left vertices use their own spectrum for the
// three-query variant and a random neighbor's projected label otherwise.
// expected_value is the exact mean of satisfied_fraction over the
// decode randomness (abstentions never satisfy an edge).
inline DecodingOutcome decode_labeling(const LabelCoverInstance& lc, const ProofAssignment& proofs,
                                       std::uint64_t seed, ReductionKind variant) {
    lc.validate();
    if (static_cast<int>(proofs.right.size()) != lc.v_count)
        throw input_error("decode_labeling: missing right proof tables");
    if (variant == ReductionKind::e3sat && static_cast<int>(proofs.left.size()) != lc.u_count)
        throw input_error("decode_labeling: missing left proof tables");

    std::vector<FourierSpectrum> sb;
    for (const auto& t : proofs.right) sb.push_back(wht(t));

    DecodingOutcome out;
    out.labeling.left.assign(lc.u_count, 0);
    out.labeling.right.assign(lc.v_count, 0);
    out.abstain_left.assign(lc.u_count, 0);
    out.abstain_right.assign(lc.v_count, 0);

    for (int v = 0; v < lc.v_count; ++v) {
        CounterRng rng = CounterRng(seed, /*stream=*/21).fork(static_cast<std::uint64_t>(v));
        std::uint32_t mask = 0;
        if (detail::draw_mask(sb[v], rng, mask))
            out.labeling.right[v] = detail::draw_label(mask, rng);
        else
            out.abstain_right[v] = 1;
    }

    auto u_adj = lc.u_adjacency();
    std::vector<int> chosen_edge(lc.u_count, -1);
    for (int u = 0; u < lc.u_count; ++u) {
        CounterRng rng = CounterRng(seed, /*stream=*/22).fork(static_cast<std::uint64_t>(u));
        if (variant == ReductionKind::e3sat) {
            FourierSpectrum sa = wht(proofs.left[u]);
            std::uint32_t mask = 0;
            if (detail::draw_mask(sa, rng, mask))
                out.labeling.left[u] = detail::draw_label(mask, rng);
            else
                out.abstain_left[u] = 1;
        } else {
            int e = u_adj[u][rng.uniform(u_adj[u].size())];
            chosen_edge[u] = e;
            int v = lc.edges[e].v;
            if (out.abstain_right[v])
                out.abstain_left[u] = 1;
            else
                out.labeling.left[u] = lc.edges[e].pi[out.labeling.right[v]];
        }
    }

    std::int64_t satisfied = 0;
    for (const auto& e : lc.edges)
        if (!out.abstain_left[e.u] && !out.abstain_right[e.v] &&
            e.pi[out.labeling.right[e.v]] == out.labeling.left[e.u])
            ++satisfied;
    out.satisfied_fraction = Rational(satisfied, static_cast<std::int64_t>(lc.edges.size()));

    // Exact expectation, edge by edge.
    std::vector<std::vector<std::pair<std::uint32_t, Rational>>> masses;
    for (const auto& s : sb) masses.push_back(detail::nonzero_masks(s));
    Rational expected = 0;
    for (const auto& e : lc.edges) {
        Rational pr = 0;
        if (variant == ReductionKind::e3sat) {
            auto left_masses = detail::nonzero_masks(wht(proofs.left[e.u]));
            for (const auto& [beta, wb] : masses[e.v]) {
                int nb = __builtin_popcount(beta);
                for (const auto& [alpha, wa] : left_masses) {
                    int matches = 0;
                    for (int j = 0; j < lc.m; ++j)
                        if (((beta >> j) & 1) && ((alpha >> e.pi[j]) & 1)) ++matches;
                    if (matches)
                        pr += wa * wb * Rational(matches, std::int64_t(nb) *
                                                              __builtin_popcount(alpha));
                }
            }
        } else {
            // l_u comes from a uniformly random incident edge e'.
            const auto& adj = u_adj[e.u];
            Rational per_choice = Rational(1, static_cast<std::int64_t>(adj.size()));
            for (int ep : adj) {
                const auto& other = lc.edges[ep];
                if (other.v == e.v) {
                    // shared decode: one label drives both sides
                    for (const auto& [beta, wb] : masses[e.v]) {
                        int hits = 0;
                        for (int j = 0; j < lc.m; ++j)
                            if (((beta >> j) & 1) && e.pi[j] == other.pi[j]) ++hits;
                        if (hits) pr += per_choice * wb * Rational(hits, __builtin_popcount(beta));
                    }
                } else {
                    for (const auto& [beta, wb] : masses[e.v]) {
                        int nb = __builtin_popcount(beta);
                        for (const auto& [betap, wbp] : masses[other.v]) {
                            int nbp = __builtin_popcount(betap);
                            int hits = 0;
                            for (int j = 0; j < lc.m; ++j) {
                                if (!((beta >> j) & 1)) continue;
                                for (int jp = 0; jp < lc.m; ++jp)
                                    if (((betap >> jp) & 1) && e.pi[j] == other.pi[jp]) ++hits;
                            }
                            if (hits)
                                pr += per_choice * wb * wbp *
                                      Rational(hits, std::int64_t(nb) * nbp);
                        }
                    }
                }
            }
        }
        expected += pr;
    }
    out.expected_value = expected / static_cast<std::int64_t>(lc.edges.size());
    return out;
}

// Diagnostic: fraction of right vertices whose Long Code copy meets a
// vertex subset in at least (delta/2) 2^m points.
inline Rational good_vertex_fraction(const LabelCoverInstance& lc, const std::vector<char>& subset,
                                     const Rational& delta) {
    if (subset.size() != (std::size_t(lc.v_count) << lc.m))
        throw input_error("good_vertex_fraction: subset size mismatch");
    Rational threshold = delta / 2 * (std::int64_t(1) << lc.m);
    int good = 0;
    for (int v = 0; v < lc.v_count; ++v) {
        std::int64_t count = 0;
        for (std::uint32_t p = 0; p < (std::uint32_t(1) << lc.m); ++p)
            count += subset[(std::size_t(v) << lc.m) + p];
        if (Rational(count) >= threshold) ++good;
    }
    return Rational(good, lc.v_count);
}

// -------------------------------------------------------------------------
// Parameter schedules (natural logarithms, rounded up).
// -------------------------------------------------------------------------

struct ParameterSchedule {
    std::int64_t R = 0;
    std::int64_t T = 0;
    Rational eps;
};

namespace detail {

inline std::int64_t ceil_to_int(const BigFloat& x) {
    BigFloat c = ceil(x);
    return static_cast<std::int64_t>(c);
}

}  // namespace detail

// Degree/image thresholds for each verifier, from the closed-form
// schedules: R = (4/eps ln(1/eps))^{1/c0} (three-query),
// R = 8 / (delta/2)^{c'/c0} (hypergraph), R = (2/eps ln(1/eps))^{1/c0}
// (set splitting, with eps = delta); T = R^{c0} throughout.
inline ParameterSchedule parameter_schedule(ReductionKind variant, const Rational& param,
                                            const Rational& c0, const Rational& cprime) {
    bool upper_ok = variant == ReductionKind::hypergraph ? param <= 1 : param < 1;
    if (param <= 0 || !upper_ok)
        throw config_error("parameter_schedule: eps/delta out of range");
    if (c0 <= 0 || cprime <= 0) throw config_error("parameter_schedule: c0, c' must be positive");
    ParameterSchedule sched;
    BigFloat c0f = to_bigfloat(c0);
    BigFloat log_inv = log(1 / to_bigfloat(param));
    switch (variant) {
        case ReductionKind::e3sat:
            sched.eps = param;
            sched.R = detail::ceil_to_int(pow(4 / to_bigfloat(param) * log_inv, 1 / c0f));
            break;
        case ReductionKind::hypergraph:
            sched.eps = param;  // the test has no eps knob; delta is echoed
            sched.R = detail::ceil_to_int(8 / pow(to_bigfloat(param) / 2,
                                                  to_bigfloat(cprime) / c0f));
            break;
        case ReductionKind::fourss:
            sched.eps = param;  // eps = delta
            sched.R = detail::ceil_to_int(pow(2 / to_bigfloat(param) * log_inv, 1 / c0f));
            break;
    }
    sched.T = detail::ceil_to_int(pow(BigFloat(sched.R), c0f));
    return sched;
}

}  // namespace pcpforge
