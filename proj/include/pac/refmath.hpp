#ifndef PAC_REFMATH_HPP
#define PAC_REFMATH_HPP

#include <cstdint>
#include <vector>

#include "pac/distributions.hpp"
#include "pac/rng.hpp"

namespace pac {

// Solution of y' = 2 zeta y (1 - y), y(0) = A; clamped to [0,1].
double ode_y(double t, double A, double zeta);

// log(C / (C - s (C - c))) for 0 <= s <= 1, 0 < c < C.
double t_of_s(double s, double c, double C);

// zeta / (zeta + e^{c/C} (C - s (C - c))^{2 zeta})
double prop_bound(double s, double c, double C, double zeta);

// gamma_j = 0, or scale / j^2.
struct GammaSequence {
    enum class Kind { zero, inverse_square };
    Kind kind = Kind::zero;
    double scale = 1.0;

    double operator()(std::uint64_t j) const;
    // sum over j >= k of |gamma_j|
    double tail_abs(std::uint64_t k) const;
};

struct ProductBracket {
    double product = 1.0;
    double lower = 0.0;
    double upper = 0.0;
    bool asserted = false;  // 2 alpha + 1 < k <= n
    bool ok = false;        // lower <= product <= upper up to 1e-12 relative
};

// prod_{j=k}^n (1 + alpha/j + gamma_j) and the bracket
//   (n/k)^alpha (1 - (alpha + alpha^2)/k) <= . <= (n/k)^alpha (1 + 1/n)^alpha,
// widened by exp(-/+ sum_{j>=k} |gamma_j|) when gamma is not zero.
ProductBracket product_with_bounds(double alpha, const GammaSequence& gamma, std::uint64_t k,
                                   std::uint64_t n);

struct BracketGridResult {
    std::uint64_t checked = 0;
    std::uint64_t failed = 0;
    std::uint64_t lower_failed = 0;
    std::uint64_t upper_failed = 0;
    double worst_margin = 0.0;  // min over the grid of relative slack to the nearer bound
};

// Every (k, n) with ceil(2 alpha + 2) <= k <= kmax, k <= n <= nmax, gamma = 0.
BracketGridResult bracket_grid_check(double alpha, std::uint64_t kmax, std::uint64_t nmax);

// Distinct unmarked boxes occupied by r balls thrown uniformly into a boxes,
// b of which are marked.
std::uint64_t marked_boxes(std::uint32_t r, std::uint32_t a, std::uint32_t b, Engine& rng);

struct MarkedBoxesLaw {
    std::vector<double> pmf;  // index = count, 0..r
    double mean = 0.0;
};

// Enumerates all a^r placements; requires 1 <= b < a, r >= 1, a^r <= 1e7.
MarkedBoxesLaw marked_boxes_exact(std::uint32_t r, std::uint32_t a, std::uint32_t b);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};
// r (1 - b/a - r/a) <= E[B] <= r (1 - b/a)
Interval marked_boxes_bounds(std::uint32_t r, std::uint32_t a, std::uint32_t b);

// g - g/(k+1) + 2 zeta (1 - (1 - 1/(2(k+1)))^g)
double g_mean_step(std::uint64_t g, std::uint64_t k, double zeta);

// One step of the backward fluid chain (y, z) -> (y', z') with
// z' = 1/(1/z - 2).
struct FluidState {
    double y = 0.0;
    double z = 0.0;
};
FluidState markov_step(const FluidState& s, const RDistribution& R, Engine& rng);

}  // namespace pac

#endif  // PAC_REFMATH_HPP
