#ifndef PAC_GW_DUAL_HPP
#define PAC_GW_DUAL_HPP

#include <cstdint>
#include <vector>

#include "pac/distributions.hpp"
#include "pac/rng.hpp"

namespace pac {

struct GWCaps {
    std::uint32_t generations = 200;
    std::uint64_t population = 1000000;
};

struct GWOutcome {
    bool survived = false;
    std::uint64_t L = 0;          // leaf count, valid when !survived
    double leaf_color_max = 0.0;  // valid when !survived
};

// Individuals reproduce with M: no children w.p. (1+alpha)/(2+alpha),
// otherwise R children. Under cue_root the root has R children.
GWOutcome sample_tree(const RDistribution& R, double alpha, Rooting rooting,
                      const FitnessDistribution& F, const GWCaps& caps, Engine& rng);

// Generation sizes Z_0 = 1, Z_1, ... up to max_gen or extinction.
std::vector<std::uint64_t> sample_profile(const RDistribution& R, double alpha, Rooting rooting,
                                          std::uint32_t max_gen, Engine& rng);

struct MuEstimate {
    std::vector<double> grid;
    std::vector<double> cdf;     // mu([0,a]), the atom included at a >= 1
    std::vector<double> stderr_;
    double atom1 = 0.0;
    double atom1_stderr = 0.0;
    std::uint64_t reps = 0;  // 0 for the exact evaluator
    GWCaps caps;
    double tail = 0.0;  // exact evaluator: leaf-count mass beyond Lmax
};

// Sample i uses stream (seed, i); counts are merged by summation.
MuEstimate mu_limit(const RDistribution& R, const FitnessDistribution& F, double alpha,
                    Rooting rooting, const std::vector<double>& grid, std::uint64_t reps,
                    const GWCaps& caps, std::uint64_t seed, unsigned threads = 1);

MuEstimate mu_limit_exact(const RDistribution& R, const FitnessDistribution& F, double alpha,
                          Rooting rooting, const std::vector<double>& grid, std::uint32_t lmax);

}  // namespace pac

#endif  // PAC_GW_DUAL_HPP
