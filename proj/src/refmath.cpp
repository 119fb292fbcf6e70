#include "pac/refmath.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pac {

double ode_y(double t, double A, double zeta) {
    if (!(A >= 0.0 && A <= 1.0)) throw std::domain_error("ode_y: A outside [0,1]");
    if (A == 0.0) return 0.0;
    const double y = A / (A - (A - 1.0) * std::exp(-2.0 * zeta * t));
    return std::clamp(y, 0.0, 1.0);
}

double t_of_s(double s, double c, double C) {
    if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("t_of_s: s outside [0,1]");
    if (!(c > 0.0 && c < C)) throw std::domain_error("t_of_s: need 0 < c < C");
    return std::log(C / (C - s * (C - c)));
}

double prop_bound(double s, double c, double C, double zeta) {
    if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("prop_bound: s outside [0,1]");
    if (!(c > 0.0 && c < C)) throw std::domain_error("prop_bound: need 0 < c < C");
    const double base = C - s * (C - c);
    return zeta / (zeta + std::exp(c / C) * std::pow(base, 2.0 * zeta));
}

double GammaSequence::operator()(std::uint64_t j) const {
    if (kind == Kind::zero) return 0.0;
    const double x = double(j);
    return scale / (x * x);
}

double GammaSequence::tail_abs(std::uint64_t k) const {
    if (kind == Kind::zero) return 0.0;
    // Direct sum over 1000 terms, then Euler-Maclaurin for sum_{j>=K} j^-2.
    const std::uint64_t K = std::max<std::uint64_t>(k, 1) + 1000;
    long double s = 0.0L;
    for (std::uint64_t j = std::max<std::uint64_t>(k, 1); j < K; ++j) s += 1.0L / ((long double)j * j);
    const long double x = K;
    s += 1.0L / x + 1.0L / (2 * x * x) + 1.0L / (6 * x * x * x) - 1.0L / (30 * x * x * x * x * x);
    return std::fabs(scale) * double(s);
}

namespace {

constexpr double kRelTol = 1e-12;

void fill_bounds(ProductBracket& b, double alpha, double widen, std::uint64_t k, std::uint64_t n) {
    const double ratio = std::pow(double(n) / double(k), alpha);
    b.lower = ratio * (1.0 - (alpha + alpha * alpha) / double(k)) * std::exp(-widen);
    b.upper = ratio * std::pow(1.0 + 1.0 / double(n), alpha) * std::exp(widen);
    b.ok = b.lower <= b.product * (1.0 + kRelTol) && b.product <= b.upper * (1.0 + kRelTol);
}

}  // namespace

ProductBracket product_with_bounds(double alpha, const GammaSequence& gamma, std::uint64_t k,
                                   std::uint64_t n) {
    if (alpha < 0.0) throw std::domain_error("product_with_bounds: alpha < 0");
    if (k < 1) throw std::domain_error("product_with_bounds: k must be >= 1");
    ProductBracket b;
    long double p = 1.0L;
    for (std::uint64_t j = k; j <= n; ++j) p *= 1.0L + (long double)alpha / j + gamma(j);
    b.product = double(p);
    b.asserted = 2.0 * alpha + 1.0 < double(k) && k <= n;
    if (k <= n) fill_bounds(b, alpha, gamma.tail_abs(k), k, n);
    return b;
}

BracketGridResult bracket_grid_check(double alpha, std::uint64_t kmax, std::uint64_t nmax) {
    BracketGridResult res;
    res.worst_margin = INFINITY;
    const auto k0 = static_cast<std::uint64_t>(std::ceil(2.0 * alpha + 2.0));
    for (std::uint64_t k = k0; k <= kmax; ++k) {
        long double p = 1.0L;
        for (std::uint64_t n = k; n <= nmax; ++n) {
            p *= 1.0L + (long double)alpha / n;
            ProductBracket b;
            b.product = double(p);
            fill_bounds(b, alpha, 0.0, k, n);
            ++res.checked;
            if (!b.ok) ++res.failed;
            if (b.lower > b.product * (1.0 + kRelTol)) ++res.lower_failed;
            if (b.product > b.upper * (1.0 + kRelTol)) ++res.upper_failed;
            const double margin = std::min(b.product - b.lower, b.upper - b.product) / b.product;
            res.worst_margin = std::min(res.worst_margin, margin);
        }
    }
    return res;
}

std::uint64_t marked_boxes(std::uint32_t r, std::uint32_t a, std::uint32_t b, Engine& rng) {
    if (a == 0 || b > a) throw std::invalid_argument("marked_boxes: need b <= a, a >= 1");
    std::vector<std::uint64_t> hit;
    hit.reserve(r);
    for (std::uint32_t i = 0; i < r; ++i) {
        const std::uint64_t box = uniform_below(rng, a);
        if (box < b) continue;
        if (std::find(hit.begin(), hit.end(), box) == hit.end()) hit.push_back(box);
    }
    return hit.size();
}

MarkedBoxesLaw marked_boxes_exact(std::uint32_t r, std::uint32_t a, std::uint32_t b) {
    if (r < 1 || b < 1 || b >= a) throw std::invalid_argument("marked_boxes_exact: need r >= 1, 1 <= b < a");
    double total = 1.0;
    for (std::uint32_t i = 0; i < r; ++i) {
        total *= a;
        if (total > 1e7) throw std::length_error("marked_boxes_exact: a^r exceeds 1e7");
    }
    const auto count = static_cast<std::uint64_t>(total);
    std::vector<std::uint64_t> tally(r + 1, 0);
    std::vector<std::uint32_t> digit(r, 0);
    std::vector<bool> seen(a, false);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::uint32_t fresh = 0;
        for (std::uint32_t d : digit)
            if (d >= b && !seen[d]) {
                seen[d] = true;
                ++fresh;
            }
        for (std::uint32_t d : digit) seen[d] = false;
        ++tally[fresh];
        for (std::uint32_t i = 0; i < r && ++digit[i] == a; ++i) digit[i] = 0;
    }
    MarkedBoxesLaw law;
    law.pmf.resize(r + 1);
    for (std::uint32_t m = 0; m <= r; ++m) {
        law.pmf[m] = double(tally[m]) / total;
        law.mean += m * law.pmf[m];
    }
    return law;
}

Interval marked_boxes_bounds(std::uint32_t r, std::uint32_t a, std::uint32_t b) {
    const double q = double(b) / a;
    return {r * (1.0 - q - double(r) / a), r * (1.0 - q)};
}

double g_mean_step(std::uint64_t g, std::uint64_t k, double zeta) {
    const double gd = double(g);
    const double k1 = double(k) + 1.0;
    return gd - gd / k1 + 2.0 * zeta * (1.0 - std::pow(1.0 - 1.0 / (2.0 * k1), gd));
}

FluidState markov_step(const FluidState& s, const RDistribution& R, Engine& rng) {
    if (!(s.z > 0.0 && s.z < 0.5)) throw std::domain_error("markov_step: need 0 < z < 1/2");
    const double zp = 1.0 / (1.0 / s.z - 2.0);
    const double y = s.y;
    const double both = std::max(0.0, (y * y - y * s.z) / (1.0 - s.z));
    const double only = std::max(0.0, y - both);

    // (I0, I1) from one uniform: (1,1), (1,0), (0,1), (0,0).
    const double u = uniform01(rng);
    const bool i0 = u < both + only;
    const bool i1 = u < both || (u >= both + only && u < both + 2.0 * only);

    double next = y * zp / s.z - zp * (i0 ? 1.0 : 0.0);
    if (i1) {
        const std::uint32_t r = R.sample(rng);
        const auto a = static_cast<std::uint32_t>(std::llround(1.0 / zp));
        const auto b = static_cast<std::uint32_t>(std::min<long long>(std::llround(y / s.z), a));
        next += zp * (-1.0 + double(marked_boxes(r, a, b, rng)));
    }
    return {next, zp};
}

}  // namespace pac
