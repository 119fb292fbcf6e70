#ifndef PAC_GENEALOGY_HPP
#define PAC_GENEALOGY_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "pac/urn.hpp"

namespace pac {

struct FounderIndex {
    std::vector<BallId> founder;  // per ball
    std::vector<std::uint64_t> checkpoints;
    // family_size[i][p] = members of the family of s_p among the balls alive
    // at checkpoints[i]
    std::vector<std::vector<std::uint64_t>> family_size;
};

FounderIndex founders(const UrnTrace& trace, const std::vector<std::uint64_t>& checkpoints);

// Backward dual of the terminal cue c_n. Needs a single-edge trace with
// genealogy. Arrays are indexed by k = 0..n.
//   G[k]  draws (with multiplicity) by member cues c_j, j >= k, of balls born before k.
//         The R_0 draws of s_0 by c_0 count towards G[0].
//   A[k]  draws by member cues c_j, j > k, of s_k or c_k
//   B[k]  R_k if c_k is a member, else 0
//   N[k]  draws by member cues c_j, j > k, of s_k
//   H[k]  distinct balls born at or before k drawn by member cues c_j, j > k
struct BackwardDual {
    std::uint64_t n = 0;
    std::vector<std::uint64_t> H, G, A, B, N;
    std::vector<bool> member;  // per ball id < 2n+2

    // N over k in [lo, hi]
    std::uint64_t N_range(std::uint64_t lo, std::uint64_t hi) const;
};

BackwardDual backward_dual(const UrnTrace& trace, std::uint64_t n);

struct LayerProfile {
    std::vector<std::uint64_t> W;      // distinct balls per generation, W[0] = 1
    std::vector<std::uint64_t> draws;  // raw potential-parent draws producing each generation
    // number of distinct source balls in generations 0..k
    std::vector<std::uint64_t> sources;
    std::optional<std::uint64_t> K;  // first generation with a coalescence
};

// Generations of potential ancestors of the cue of pair n, up to kmax or the
// first empty generation.
LayerProfile generation_layers(const UrnTrace& trace, std::uint64_t n, std::uint64_t kmax);

// Replays colours forward along the recorded parent pointers and compares
// col(c_n) with the largest colour among the source balls of c_n's dual.
bool color_duality_check(const UrnTrace& trace, std::uint64_t n);

}  // namespace pac

#endif  // PAC_GENEALOGY_HPP
