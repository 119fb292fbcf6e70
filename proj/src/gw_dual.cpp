#include "pac/gw_dual.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pac/ensemble.hpp"

namespace pac {

namespace {

// libstdc++'s binomial sampler; stable for a given toolchain, which is all
// the determinism contract asks for.
std::uint64_t binomial(Engine& rng, std::uint64_t trials, double p) {
    if (trials == 0 || p <= 0.0) return 0;
    if (p >= 1.0) return trials;
    return std::binomial_distribution<std::uint64_t>(trials, p)(rng);
}

// Total children of m individuals that each have R children.
std::uint64_t r_children(const RDistribution& R, std::uint64_t m, Engine& rng) {
    if (R.is_constant()) return m * R.atoms()[0].value;
    std::uint64_t total = 0;
    double rest = 1.0;
    const auto& atoms = R.atoms();
    for (std::size_t i = 0; i + 1 < atoms.size() && m > 0; ++i) {
        const std::uint64_t k = binomial(rng, m, std::min(1.0, atoms[i].prob / rest));
        total += k * atoms[i].value;
        m -= k;
        rest -= atoms[i].prob;
    }
    return total + m * atoms.back().value;
}

}  // namespace

GWOutcome sample_tree(const RDistribution& R, double alpha, Rooting rooting,
                      const FitnessDistribution& F, const GWCaps& caps, Engine& rng) {
    const double p0 = (1.0 + alpha) / (2.0 + alpha);
    GWOutcome out;
    std::uint64_t z = 1;
    std::uint32_t gen = 0;
    double top = -1.0;
    if (rooting == Rooting::cue_root) {
        z = R.sample(rng);
        gen = 1;
    }
    while (z > 0) {
        if (gen >= caps.generations || z > caps.population) {
            out.survived = true;
            return out;
        }
        const std::uint64_t leaves = binomial(rng, z, p0);
        if (leaves > 0) {
            out.L += leaves;
            top = std::max(top, F.sample_max(rng, leaves));
        }
        z = r_children(R, z - leaves, rng);
        ++gen;
    }
    out.leaf_color_max = top;
    return out;
}

std::vector<std::uint64_t> sample_profile(const RDistribution& R, double alpha, Rooting rooting,
                                          std::uint32_t max_gen, Engine& rng) {
    const double p0 = (1.0 + alpha) / (2.0 + alpha);
    std::vector<std::uint64_t> z{1};
    if (rooting == Rooting::cue_root && max_gen >= 1) z.push_back(R.sample(rng));
    while (z.size() <= max_gen && z.back() > 0) {
        const std::uint64_t leaves = binomial(rng, z.back(), p0);
        z.push_back(r_children(R, z.back() - leaves, rng));
    }
    return z;
}

MuEstimate mu_limit(const RDistribution& R, const FitnessDistribution& F, double alpha,
                    Rooting rooting, const std::vector<double>& grid, std::uint64_t reps,
                    const GWCaps& caps, std::uint64_t seed, unsigned threads) {
    if (reps == 0) throw std::invalid_argument("mu_limit: reps must be positive");
    for (double a : grid)
        if (!(a >= 0.0 && a <= 1.0)) throw std::domain_error("mu_limit: grid outside [0,1]");

    // Surviving trees are stored with colour 2 so that they only enter at a = 1.
    std::vector<double> top(reps);
    constexpr std::uint64_t chunk = 4096;
    const std::uint64_t chunks = (reps + chunk - 1) / chunk;
    parallel_for(chunks, threads, [&](std::size_t c) {
        const std::uint64_t end = std::min<std::uint64_t>(reps, (c + 1) * chunk);
        for (std::uint64_t i = c * chunk; i < end; ++i) {
            Engine rng = make_engine(seed, i);
            const GWOutcome o = sample_tree(R, alpha, rooting, F, caps, rng);
            top[i] = o.survived ? 2.0 : o.leaf_color_max;
        }
    });
    std::sort(top.begin(), top.end());
    const auto survived = static_cast<std::uint64_t>(top.end() - std::lower_bound(top.begin(), top.end(), 2.0));

    MuEstimate est;
    est.grid = grid;
    est.reps = reps;
    est.caps = caps;
    const double nr = double(reps);
    for (double a : grid) {
        double p = 1.0;
        if (a < 1.0) p = double(std::upper_bound(top.begin(), top.end(), a) - top.begin()) / nr;
        est.cdf.push_back(0.5 * F.cdf(a) + 0.5 * p);
        est.stderr_.push_back(0.5 * std::sqrt(p * (1.0 - p) / nr));
    }
    const double ps = double(survived) / nr;
    est.atom1 = 0.5 * ps;
    est.atom1_stderr = 0.5 * std::sqrt(ps * (1.0 - ps) / nr);
    return est;
}

MuEstimate mu_limit_exact(const RDistribution& R, const FitnessDistribution& F, double alpha,
                          Rooting rooting, const std::vector<double>& grid, std::uint32_t lmax) {
    const LeafCountDist leaves = leaf_count_dist(R, alpha, rooting, lmax);
    MuEstimate est;
    est.grid = grid;
    est.tail = leaves.tail;
    for (double a : grid) {
        if (a >= 1.0) {
            est.cdf.push_back(1.0);
        } else {
            const double fa = F.cdf(a);
            double sum = 0.0, power = 1.0;
            for (std::size_t l = 1; l < leaves.prob.size(); ++l) {
                power *= fa;
                sum += leaves.prob[l] * power;
            }
            est.cdf.push_back(0.5 * fa + 0.5 * sum);
        }
        est.stderr_.push_back(0.0);
    }
    est.atom1 = 0.5 * leaves.tail;
    return est;
}

}  // namespace pac
