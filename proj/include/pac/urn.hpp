#ifndef PAC_URN_HPP
#define PAC_URN_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "pac/distributions.hpp"
#include "pac/rng.hpp"

namespace pac {

// Ball 2p is the source of pair p, ball 2p+1 its cue. With one edge per
// vertex the pair index equals the step index.
using BallId = std::uint64_t;

constexpr bool is_source(BallId b) { return (b & 1) == 0; }
constexpr bool is_cue(BallId b) { return (b & 1) == 1; }
constexpr std::uint64_t pair_of(BallId b) { return b >> 1; }
constexpr BallId source_ball(std::uint64_t pair) { return 2 * pair; }
constexpr BallId cue_ball(std::uint64_t pair) { return 2 * pair + 1; }

// continuous: fitness ties between different vertices should not happen and
// are only counted. uniform: two-colour urn mode, ties are the norm. In both
// cases the parent is chosen uniformly among the fittest candidate positions.
enum class TieRule { continuous, uniform };

struct SimConfig {
    std::uint64_t n = 1000;
    RDistribution R = RDistribution::deterministic(3);
    FitnessDistribution F = FitnessDistribution::uniform01();
    double alpha = 0.0;
    RDistribution V = RDistribution::deterministic(1);
    std::uint64_t seed = 1;
    bool record_genealogy = false;
    TieRule tie_rule = TieRule::continuous;
};

struct UrnTrace {
    std::uint64_t n = 0;
    double alpha = 0.0;
    bool two_colour = false;  // fitness law was two_point
    // Pairs added at step j are [pair_begin[j], pair_begin[j+1]); step 0 is
    // the initial self-loop (pair 0). Size n+2.
    std::vector<std::uint64_t> pair_begin;
    std::vector<double> fitness;           // per step, F_j of vertex v_j
    std::vector<double> colour;            // per ball
    std::vector<std::uint32_t> vertex_of;  // per ball

    bool genealogy = false;
    // Potential parents of cue c_p are pool[cand_offset[p] .. cand_offset[p+1]).
    // Pair 0 holds R_0 copies of s_0.
    std::vector<std::uint64_t> cand_offset;
    std::vector<BallId> pool;
    std::vector<BallId> parent;  // per pair

    std::uint64_t cross_vertex_ties = 0;

    std::uint64_t pairs() const { return pair_begin.back(); }
    std::uint64_t balls() const { return 2 * pairs(); }
    // Number of balls in the urn after step t.
    std::uint64_t balls_at(std::uint64_t t) const { return 2 * pair_begin[t + 1]; }
    std::span<const BallId> candidates(std::uint64_t pair) const {
        return {pool.data() + cand_offset[pair], pool.data() + cand_offset[pair + 1]};
    }
    bool single_edge() const { return pairs() == n + 1; }
};

// Throws std::invalid_argument on an invalid configuration.
void validate(const SimConfig& config);

UrnTrace run_forward(const SimConfig& config);

// Uniform choice among the candidates of maximal colour. Draws from rng only
// when more than one position attains the maximum.
BallId select_parent(std::span<const BallId> candidates, const std::vector<double>& colour,
                     Engine& rng);

struct GraphView {
    std::uint64_t t = 0;
    std::vector<std::uint64_t> degree;  // per vertex 0..t
    std::span<const double> fitness;
};

GraphView graph_view(const UrnTrace& trace, std::uint64_t t);

}  // namespace pac

#endif  // PAC_URN_HPP
