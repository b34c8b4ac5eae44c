#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "boolean_fourier.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace pcpforge {

// Coordinate blocks pi^{-1}(i) as bitmasks over [m].
inline std::vector<std::uint32_t> preimage_masks(const std::vector<int>& pi, int k) {
    std::vector<std::uint32_t> blocks(k, 0);
    for (int j = 0; j < static_cast<int>(pi.size()); ++j) {
        if (pi[j] < 0 || pi[j] >= k) throw input_error("projection value out of range");
        blocks[pi[j]] |= std::uint32_t(1) << j;
    }
    return blocks;
}

struct QuadQuery {
    std::uint32_t x = 0, xp = 0, y = 0, yp = 0;
};

struct TripleQuery {
    std::uint32_t x = 0, y = 0, yp = 0;
};

// Sparse exact distribution over packed query states. Entries are
// sorted by state and their weights sum to exactly 1.
struct SupportDistribution {
    std::vector<std::pair<std::uint64_t, Rational>> entries;

    Rational total() const {
        Rational sum = 0;
        for (const auto& [state, w] : entries) sum += w;
        return sum;
    }
};

namespace detail {

// All subsets of `mask`, including 0 and mask itself.
template <typename Fn>
void for_each_submask(std::uint32_t mask, Fn&& fn) {
    std::uint32_t sub = mask;
    while (true) {
        fn(sub);
        if (sub == 0) break;
        sub = (sub - 1) & mask;
    }
}

inline int parity_sign(std::uint32_t mask) { return __builtin_popcount(mask) & 1 ? -1 : 1; }

using LocalOutcomes = std::map<std::uint64_t, Rational>;

// Extends every partial state by one block's local outcomes.
inline void compose_block(std::vector<std::pair<std::uint64_t, Rational>>& states,
                          const LocalOutcomes& local, std::size_t cap_states) {
    std::vector<std::pair<std::uint64_t, Rational>> next;
    if (states.size() * local.size() > cap_states)
        throw size_error("distribution support exceeds cap");
    next.reserve(states.size() * local.size());
    for (const auto& [state, w] : states)
        for (const auto& [lstate, lw] : local) next.emplace_back(state | lstate, w * lw);
    states = std::move(next);
}

inline Rational dyadic(int bits) { return Rational(1, std::int64_t(1) << bits); }

}  // namespace detail

// -------------------------------------------------------------------------
// Hypergraph verifier joint over (x, x', y, y').
// Per block i, with probability 1/2 each:
//   branch a: x uniform on the v-block, x' = -x there; y, y' independent.
//   branch b: roles of (x,x') and (y,y') swapped.
// -------------------------------------------------------------------------
class HypergraphJoint {
  public:
    HypergraphJoint(std::vector<int> pi_vu, std::vector<int> pi_wu, int k)
        : k_(k),
          m_v_(static_cast<int>(pi_vu.size())),
          m_w_(static_cast<int>(pi_wu.size())),
          blocks_v_(preimage_masks(pi_vu, k)),
          blocks_w_(preimage_masks(pi_wu, k)),
          pi_vu_(std::move(pi_vu)),
          pi_wu_(std::move(pi_wu)) {
        if (k <= 0) throw input_error("hypergraph joint: k must be positive");
    }

    int k() const { return k_; }
    int m_v() const { return m_v_; }
    int m_w() const { return m_w_; }
    const std::vector<int>& pi_vu() const { return pi_vu_; }
    const std::vector<int>& pi_wu() const { return pi_wu_; }

    // E over one block of chi_a(x) chi_a'(x') chi_b(y) chi_b'(y'),
    // computed from the branch structure.
    Rational block_value(int i, std::uint32_t a, std::uint32_t ap, std::uint32_t b,
                         std::uint32_t bp) const {
        using detail::parity_sign;
        Rational branch_a = (a == ap && b == 0 && bp == 0) ? Rational(parity_sign(a)) : Rational(0);
        Rational branch_b = (b == bp && a == 0 && ap == 0) ? Rational(parity_sign(b)) : Rational(0);
        (void)i;
        return (branch_a + branch_b) / 2;
    }

    // E[chi_alpha(x) chi_alpha'(x') chi_beta(y) chi_beta'(y')] as a
    // product over blocks.
    Rational char_expectation(std::uint32_t alpha, std::uint32_t alphap, std::uint32_t beta,
                              std::uint32_t betap) const {
        check_masks({alpha, alphap}, m_v_);
        check_masks({beta, betap}, m_w_);
        Rational product = 1;
        for (int i = 0; i < k_ && product != 0; ++i)
            product *= block_value(i, alpha & blocks_v_[i], alphap & blocks_v_[i],
                                   beta & blocks_w_[i], betap & blocks_w_[i]);
        return product;
    }

    QuadQuery sample(const CounterRng& base) const {
        QuadQuery q;
        for (int i = 0; i < k_; ++i) {
            CounterRng rng = base.fork(i);
            std::uint32_t bv = blocks_v_[i], bw = blocks_w_[i];
            bool branch_a = (rng.next_u64() & 1) == 0;
            std::uint32_t rx = static_cast<std::uint32_t>(rng.next_u64());
            std::uint32_t rx2 = static_cast<std::uint32_t>(rng.next_u64());
            std::uint32_t ry = static_cast<std::uint32_t>(rng.next_u64());
            std::uint32_t ry2 = static_cast<std::uint32_t>(rng.next_u64());
            if (branch_a) {
                q.x |= rx & bv;
                q.xp |= (rx & bv) ^ bv;
                q.y |= ry & bw;
                q.yp |= ry2 & bw;
            } else {
                q.y |= ry & bw;
                q.yp |= (ry & bw) ^ bw;
                q.x |= rx & bv;
                q.xp |= rx2 & bv;
            }
        }
        return q;
    }

    std::uint64_t pack(const QuadQuery& q) const {
        return std::uint64_t(q.x) | std::uint64_t(q.xp) << m_v_ |
               std::uint64_t(q.y) << (2 * m_v_) | std::uint64_t(q.yp) << (2 * m_v_ + m_w_);
    }

    QuadQuery unpack(std::uint64_t state) const {
        std::uint32_t maskv = (std::uint32_t(1) << m_v_) - 1;
        std::uint32_t maskw = (std::uint32_t(1) << m_w_) - 1;
        QuadQuery q;
        q.x = static_cast<std::uint32_t>(state) & maskv;
        q.xp = static_cast<std::uint32_t>(state >> m_v_) & maskv;
        q.y = static_cast<std::uint32_t>(state >> (2 * m_v_)) & maskw;
        q.yp = static_cast<std::uint32_t>(state >> (2 * m_v_ + m_w_)) & maskw;
        return q;
    }

    SupportDistribution enumerate(std::size_t cap_states = std::size_t(1) << 16) const {
        std::vector<std::pair<std::uint64_t, Rational>> states{{0, Rational(1)}};
        for (int i = 0; i < k_; ++i) {
            detail::LocalOutcomes local;
            std::uint32_t bv = blocks_v_[i], bw = blocks_w_[i];
            int nv = __builtin_popcount(bv), nw = __builtin_popcount(bw);
            Rational wa = Rational(1, 2) * detail::dyadic(nv + 2 * nw);
            detail::for_each_submask(bv, [&](std::uint32_t sx) {
                detail::for_each_submask(bw, [&](std::uint32_t sy) {
                    detail::for_each_submask(bw, [&](std::uint32_t syp) {
                        local[pack({sx, sx ^ bv, sy, syp})] += wa;
                    });
                });
            });
            Rational wb = Rational(1, 2) * detail::dyadic(nw + 2 * nv);
            detail::for_each_submask(bw, [&](std::uint32_t sy) {
                detail::for_each_submask(bv, [&](std::uint32_t sx) {
                    detail::for_each_submask(bv, [&](std::uint32_t sxp) {
                        local[pack({sx, sxp, sy, sy ^ bw})] += wb;
                    });
                });
            });
            detail::compose_block(states, local, cap_states);
        }
        std::map<std::uint64_t, Rational> merged;
        for (auto& [state, w] : states) merged[state] += w;
        SupportDistribution dist;
        dist.entries.assign(merged.begin(), merged.end());
        return dist;
    }

  private:
    static void check_masks(std::initializer_list<std::uint32_t> masks, int m) {
        for (std::uint32_t mask : masks)
            if (mask >> m) throw input_error("character mask exceeds [m]");
    }

    int k_, m_v_, m_w_;
    std::vector<std::uint32_t> blocks_v_, blocks_w_;
    std::vector<int> pi_vu_, pi_wu_;
};

// -------------------------------------------------------------------------
// E3SAT verifier joint over (x, y, y') with x in {-1,1}^k.
// Per block i: x_i uniform; if x_i = 1 the y-block is uniform and
// y' = -y there; if x_i = -1 then y' = y with probability 1 - eps, else
// y' is resampled uniformly on the block.
// -------------------------------------------------------------------------
class E3SatJoint {
  public:
    E3SatJoint(std::vector<int> pi_vu, int k, Rational eps)
        : k_(k),
          m_(static_cast<int>(pi_vu.size())),
          eps_(std::move(eps)),
          blocks_(preimage_masks(pi_vu, k)),
          pi_vu_(std::move(pi_vu)) {
        if (k <= 0) throw input_error("e3sat joint: k must be positive");
        if (eps_ <= 0 || eps_ >= 1) throw input_error("e3sat joint: eps must lie in (0,1)");
    }

    int k() const { return k_; }
    int m() const { return m_; }
    const Rational& eps() const { return eps_; }
    const std::vector<int>& pi_vu() const { return pi_vu_; }
    const std::vector<std::uint32_t>& blocks() const { return blocks_; }

    // E over one block of x_i^a chi_b(y) chi_b'(y').
    Rational block_value(bool a, std::uint32_t b, std::uint32_t bp) const {
        using detail::parity_sign;
        Rational pos = (b == bp) ? Rational(parity_sign(b)) : Rational(0);
        Rational neg = (1 - eps_) * Rational(b == bp ? 1 : 0) +
                       eps_ * Rational((b == 0 && bp == 0) ? 1 : 0);
        if (a) neg = -neg;
        return (pos + neg) / 2;
    }

    // E[chi_alpha(x) chi_beta(y) chi_beta'(y')], alpha over [k].
    Rational char_expectation(std::uint32_t alpha, std::uint32_t beta, std::uint32_t betap) const {
        if (alpha >> k_) throw input_error("alpha mask exceeds [k]");
        if ((beta >> m_) || (betap >> m_)) throw input_error("beta mask exceeds [m]");
        Rational product = 1;
        for (int i = 0; i < k_ && product != 0; ++i)
            product *= block_value((alpha >> i) & 1, beta & blocks_[i], betap & blocks_[i]);
        return product;
    }

    TripleQuery sample(const CounterRng& base) const {
        TripleQuery q;
        for (int i = 0; i < k_; ++i) {
            CounterRng rng = base.fork(i);
            std::uint32_t block = blocks_[i];
            bool x_negative = (rng.next_u64() & 1) != 0;
            std::uint32_t ry = static_cast<std::uint32_t>(rng.next_u64());
            if (x_negative) q.x |= std::uint32_t(1) << i;
            q.y |= ry & block;
            if (!x_negative) {
                q.yp |= (ry & block) ^ block;
            } else if (rng.bernoulli(1 - eps_)) {
                q.yp |= ry & block;
            } else {
                q.yp |= static_cast<std::uint32_t>(rng.next_u64()) & block;
            }
        }
        return q;
    }

    std::uint64_t pack(const TripleQuery& q) const {
        return std::uint64_t(q.x) | std::uint64_t(q.y) << k_ | std::uint64_t(q.yp) << (k_ + m_);
    }

    TripleQuery unpack(std::uint64_t state) const {
        TripleQuery q;
        q.x = static_cast<std::uint32_t>(state) & ((std::uint32_t(1) << k_) - 1);
        q.y = static_cast<std::uint32_t>(state >> k_) & ((std::uint32_t(1) << m_) - 1);
        q.yp = static_cast<std::uint32_t>(state >> (k_ + m_)) & ((std::uint32_t(1) << m_) - 1);
        return q;
    }

    SupportDistribution enumerate(std::size_t cap_states = std::size_t(1) << 16) const {
        std::vector<std::pair<std::uint64_t, Rational>> states{{0, Rational(1)}};
        for (int i = 0; i < k_; ++i) {
            detail::LocalOutcomes local;
            std::uint32_t block = blocks_[i];
            int nb = __builtin_popcount(block);
            Rational base = Rational(1, 2) * detail::dyadic(nb);
            detail::for_each_submask(block, [&](std::uint32_t sy) {
                local[pack({0, sy, sy ^ block})] += base;
                std::uint32_t xbit = std::uint32_t(1) << i;
                local[pack({xbit, sy, sy})] += base * (1 - eps_);
                Rational resample = base * eps_ * detail::dyadic(nb);
                detail::for_each_submask(block, [&](std::uint32_t syp) {
                    local[pack({xbit, sy, syp})] += resample;
                });
            });
            detail::compose_block(states, local, cap_states);
        }
        std::map<std::uint64_t, Rational> merged;
        for (auto& [state, w] : states) merged[state] += w;
        SupportDistribution dist;
        dist.entries.assign(merged.begin(), merged.end());
        return dist;
    }

  private:
    int k_, m_;
    Rational eps_;
    std::vector<std::uint32_t> blocks_;
    std::vector<int> pi_vu_;
};

// -------------------------------------------------------------------------
// 4-Set-Splitting verifier joint over (x, x', y, y'). x and y are
// uniform; per block i, with probability 1/2 each:
//   branch a: x' = -x on the v-block; y' = y there with probability
//             1 - eps, else resampled.
//   branch b: symmetric with the roles swapped.
// -------------------------------------------------------------------------
class FourSSJoint {
  public:
    FourSSJoint(std::vector<int> pi_vu, std::vector<int> pi_wu, int k, Rational eps)
        : k_(k),
          m_v_(static_cast<int>(pi_vu.size())),
          m_w_(static_cast<int>(pi_wu.size())),
          eps_(std::move(eps)),
          blocks_v_(preimage_masks(pi_vu, k)),
          blocks_w_(preimage_masks(pi_wu, k)),
          pi_vu_(std::move(pi_vu)),
          pi_wu_(std::move(pi_wu)) {
        if (k <= 0) throw input_error("4ss joint: k must be positive");
        if (eps_ <= 0 || eps_ >= 1) throw input_error("4ss joint: eps must lie in (0,1)");
    }

    int k() const { return k_; }
    int m_v() const { return m_v_; }
    int m_w() const { return m_w_; }
    const Rational& eps() const { return eps_; }
    const std::vector<int>& pi_vu() const { return pi_vu_; }
    const std::vector<int>& pi_wu() const { return pi_wu_; }

    Rational block_value(int i, std::uint32_t a, std::uint32_t ap, std::uint32_t b,
                         std::uint32_t bp) const {
        using detail::parity_sign;
        (void)i;
        Rational branch_a =
            (a == ap ? Rational(parity_sign(a)) : Rational(0)) *
            ((1 - eps_) * Rational(b == bp ? 1 : 0) + eps_ * Rational(b == 0 && bp == 0 ? 1 : 0));
        Rational branch_b =
            (b == bp ? Rational(parity_sign(b)) : Rational(0)) *
            ((1 - eps_) * Rational(a == ap ? 1 : 0) + eps_ * Rational(a == 0 && ap == 0 ? 1 : 0));
        return (branch_a + branch_b) / 2;
    }

    Rational char_expectation(std::uint32_t alpha, std::uint32_t alphap, std::uint32_t beta,
                              std::uint32_t betap) const {
        if ((alpha >> m_v_) || (alphap >> m_v_)) throw input_error("alpha mask exceeds [m]");
        if ((beta >> m_w_) || (betap >> m_w_)) throw input_error("beta mask exceeds [m]");
        Rational product = 1;
        for (int i = 0; i < k_ && product != 0; ++i)
            product *= block_value(i, alpha & blocks_v_[i], alphap & blocks_v_[i],
                                   beta & blocks_w_[i], betap & blocks_w_[i]);
        return product;
    }

    QuadQuery sample(const CounterRng& base) const {
        QuadQuery q;
        for (int i = 0; i < k_; ++i) {
            CounterRng rng = base.fork(i);
            std::uint32_t bv = blocks_v_[i], bw = blocks_w_[i];
            bool branch_a = (rng.next_u64() & 1) == 0;
            std::uint32_t rx = static_cast<std::uint32_t>(rng.next_u64());
            std::uint32_t ry = static_cast<std::uint32_t>(rng.next_u64());
            bool keep = rng.bernoulli(1 - eps_);
            std::uint32_t fresh = static_cast<std::uint32_t>(rng.next_u64());
            q.x |= rx & bv;
            q.y |= ry & bw;
            if (branch_a) {
                q.xp |= (rx & bv) ^ bv;
                q.yp |= keep ? (ry & bw) : (fresh & bw);
            } else {
                q.yp |= (ry & bw) ^ bw;
                q.xp |= keep ? (rx & bv) : (fresh & bv);
            }
        }
        return q;
    }

    std::uint64_t pack(const QuadQuery& q) const {
        return std::uint64_t(q.x) | std::uint64_t(q.xp) << m_v_ |
               std::uint64_t(q.y) << (2 * m_v_) | std::uint64_t(q.yp) << (2 * m_v_ + m_w_);
    }

    QuadQuery unpack(std::uint64_t state) const {
        std::uint32_t maskv = (std::uint32_t(1) << m_v_) - 1;
        std::uint32_t maskw = (std::uint32_t(1) << m_w_) - 1;
        QuadQuery q;
        q.x = static_cast<std::uint32_t>(state) & maskv;
        q.xp = static_cast<std::uint32_t>(state >> m_v_) & maskv;
        q.y = static_cast<std::uint32_t>(state >> (2 * m_v_)) & maskw;
        q.yp = static_cast<std::uint32_t>(state >> (2 * m_v_ + m_w_)) & maskw;
        return q;
    }

    SupportDistribution enumerate(std::size_t cap_states = std::size_t(1) << 16) const {
        std::vector<std::pair<std::uint64_t, Rational>> states{{0, Rational(1)}};
        for (int i = 0; i < k_; ++i) {
            detail::LocalOutcomes local;
            std::uint32_t bv = blocks_v_[i], bw = blocks_w_[i];
            int nv = __builtin_popcount(bv), nw = __builtin_popcount(bw);
            Rational base = Rational(1, 2) * detail::dyadic(nv + nw);
            detail::for_each_submask(bv, [&](std::uint32_t sx) {
                detail::for_each_submask(bw, [&](std::uint32_t sy) {
                    // branch a
                    local[pack({sx, sx ^ bv, sy, sy})] += base * (1 - eps_);
                    Rational resample_a = base * eps_ * detail::dyadic(nw);
                    detail::for_each_submask(bw, [&](std::uint32_t syp) {
                        local[pack({sx, sx ^ bv, sy, syp})] += resample_a;
                    });
                    // branch b
                    local[pack({sx, sx, sy, sy ^ bw})] += base * (1 - eps_);
                    Rational resample_b = base * eps_ * detail::dyadic(nv);
                    detail::for_each_submask(bv, [&](std::uint32_t sxp) {
                        local[pack({sx, sxp, sy, sy ^ bw})] += resample_b;
                    });
                });
            });
            detail::compose_block(states, local, cap_states);
        }
        std::map<std::uint64_t, Rational> merged;
        for (auto& [state, w] : states) merged[state] += w;
        SupportDistribution dist;
        dist.entries.assign(merged.begin(), merged.end());
        return dist;
    }

  private:
    int k_, m_v_, m_w_;
    Rational eps_;
    std::vector<std::uint32_t> blocks_v_, blocks_w_;
    std::vector<int> pi_vu_, pi_wu_;
};

// -------------------------------------------------------------------------
// rho-correlated pairs over a finite product space: X ~ mu and, per
// coordinate independently, Y_i = X_i with probability rho, else Y_i is
// resampled from mu_i.
// -------------------------------------------------------------------------
class RhoCorrelated {
  public:
    RhoCorrelated(std::vector<std::vector<Rational>> measures, Rational rho)
        : measures_(std::move(measures)), rho_(std::move(rho)) {
        if (rho_ < 0 || rho_ > 1) throw input_error("rho must lie in [0,1]");
        if (measures_.empty()) throw input_error("empty product space");
        total_states_ = 1;
        for (const auto& mu : measures_) {
            if (mu.empty()) throw input_error("empty coordinate alphabet");
            Rational sum = 0;
            for (const auto& p : mu) {
                if (p <= 0) throw input_error("measure atoms must be strictly positive");
                sum += p;
            }
            if (sum != 1) throw input_error("coordinate measure must sum to 1");
            total_states_ *= mu.size();
        }
    }

    std::size_t state_count() const { return total_states_; }
    int coord_count() const { return static_cast<int>(measures_.size()); }
    const Rational& rho() const { return rho_; }

    std::vector<int> decode(std::size_t state) const {
        std::vector<int> point(measures_.size());
        for (std::size_t i = 0; i < measures_.size(); ++i) {
            point[i] = static_cast<int>(state % measures_[i].size());
            state /= measures_[i].size();
        }
        return point;
    }

    Rational mu(std::size_t state) const {
        Rational w = 1;
        for (std::size_t i = 0; i < measures_.size(); ++i) {
            w *= measures_[i][state % measures_[i].size()];
            state /= measures_[i].size();
        }
        return w;
    }

    // Pr[X = x, Y = y], exact.
    Rational joint_weight(std::size_t x, std::size_t y) const {
        Rational w = 1;
        for (std::size_t i = 0; i < measures_.size(); ++i) {
            std::size_t n = measures_[i].size();
            std::size_t xi = x % n, yi = y % n;
            Rational cond = (1 - rho_) * measures_[i][yi];
            if (xi == yi) cond += rho_;
            w *= measures_[i][xi] * cond;
            x /= n;
            y /= n;
        }
        return w;
    }

    // Pr[X in A, Y in B] for subsets given as membership vectors.
    Rational pr_in(const std::vector<char>& in_a, const std::vector<char>& in_b) const {
        if (in_a.size() != total_states_ || in_b.size() != total_states_)
            throw input_error("subset membership vector has wrong length");
        Rational sum = 0;
        for (std::size_t x = 0; x < total_states_; ++x) {
            if (!in_a[x]) continue;
            for (std::size_t y = 0; y < total_states_; ++y)
                if (in_b[y]) sum += joint_weight(x, y);
        }
        return sum;
    }

    std::pair<std::size_t, std::size_t> sample(const CounterRng& base) const {
        std::size_t x = 0, y = 0, mult = 1;
        for (std::size_t i = 0; i < measures_.size(); ++i) {
            CounterRng rng = base.fork(i);
            std::size_t xi = sample_atom(measures_[i], rng);
            std::size_t yi = rng.bernoulli(rho_) ? xi : sample_atom(measures_[i], rng);
            x += mult * xi;
            y += mult * yi;
            mult *= measures_[i].size();
        }
        return {x, y};
    }

    SupportDistribution enumerate(std::size_t cap_states = std::size_t(1) << 16) const {
        if (total_states_ * total_states_ > cap_states)
            throw size_error("rho-correlated support exceeds cap");
        SupportDistribution dist;
        for (std::size_t x = 0; x < total_states_; ++x)
            for (std::size_t y = 0; y < total_states_; ++y)
                dist.entries.emplace_back(std::uint64_t(x) * total_states_ + y,
                                          joint_weight(x, y));
        return dist;
    }

  private:
    static std::size_t sample_atom(const std::vector<Rational>& mu, CounterRng& rng) {
        // Common-denominator inversion keeps atom probabilities exact.
        BigInt den = 1;
        for (const auto& p : mu) den = lcm(den, denominator(p));
        std::uint64_t total = static_cast<std::uint64_t>(den);
        std::uint64_t draw = rng.uniform(total);
        std::uint64_t acc = 0;
        for (std::size_t a = 0; a < mu.size(); ++a) {
            acc += static_cast<std::uint64_t>(numerator(mu[a]) * (den / denominator(mu[a])));
            if (draw < acc) return a;
        }
        return mu.size() - 1;
    }

    std::vector<std::vector<Rational>> measures_;
    Rational rho_;
    std::size_t total_states_ = 1;
};

}  // namespace pcpforge
