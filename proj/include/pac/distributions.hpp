#ifndef PAC_DISTRIBUTIONS_HPP
#define PAC_DISTRIBUTIONS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pac/rng.hpp"

namespace pac {

// Law of the number of potential parents R (and of the edge count V).
// Finite support on {1,2,...}; probabilities sum to one within 1e-12.
class RDistribution {
public:
    enum class Kind { deterministic, two_point, pmf };

    struct Atom {
        std::uint32_t value;
        double prob;
    };

    static RDistribution deterministic(std::uint32_t r);
    static RDistribution two_point(std::uint32_t a, std::uint32_t b, double prob_a);
    static RDistribution from_pmf(std::vector<Atom> atoms);
    // "v:p,v:p,..."
    static RDistribution parse_pmf(std::string_view text);

    Kind kind() const { return kind_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    std::uint32_t max_value() const { return max_value_; }
    double prob(std::uint32_t r) const;
    double mean() const { return mean_; }
    double second_moment() const { return second_moment_; }
    bool is_constant() const { return atoms_.size() == 1; }

    // Sum_r P[R=r] x^r.
    double pgf(double x) const;
    // d/dx of pgf.
    double pgf_derivative(double x) const;

    // Consumes no randomness when the law is a point mass; otherwise one
    // uniform01 draw through an alias table.
    std::uint32_t sample(Engine& rng) const;

    std::string describe() const;

private:
    RDistribution(Kind kind, std::vector<Atom> atoms);

    Kind kind_;
    std::vector<Atom> atoms_;
    std::vector<double> alias_prob_;
    std::vector<std::uint32_t> alias_index_;
    std::uint32_t max_value_ = 0;
    double mean_ = 0.0;
    double second_moment_ = 0.0;
};

// Fitness (colour) law. uniform01 for graph-mode runs; two_point puts mass
// p1 on colour 1 and 1-p1 on colour 0 and needs the uniform tie rule.
class FitnessDistribution {
public:
    enum class Kind { uniform01, two_point };

    static FitnessDistribution uniform01();
    static FitnessDistribution two_point(double p1);

    Kind kind() const { return kind_; }
    double p1() const { return p1_; }
    double cdf(double a) const;
    double sample(Engine& rng) const;
    // Law of the maximum of m i.i.d. draws, m >= 1; one uniform draw.
    double sample_max(Engine& rng, std::uint64_t m) const;

    std::string describe() const;

private:
    FitnessDistribution(Kind kind, double p1) : kind_(kind), p1_(p1) {}
    Kind kind_;
    double p1_;
};

struct ModelConstants {
    double zeta = 0.0;
    double beta = 0.0;
    double theta = 0.0;
    std::optional<double> xi;  // only when zeta > 1
    double alpha = 0.0;
    bool supercritical = false;  // E[R] > 2 + alpha
};

enum class Rooting { generic_root, cue_root };

Rooting parse_rooting(std::string_view text);
std::string_view to_string(Rooting rooting);

double offspring_pgf(const RDistribution& r, double alpha, double s);
ModelConstants model_constants(const RDistribution& r, double alpha);
double extinction_prob(const RDistribution& r, double alpha, Rooting rooting);

// Unique root in [0,1] of M_R((nu + lambda)/2) - nu.
double two_color_fixed_point(const RDistribution& r, double lambda);

struct LeafCountDist {
    std::vector<double> prob;  // prob[l] = P[L = l], l = 0..lmax (prob[0] = 0)
    double tail = 0.0;         // 1 - sum(prob), includes P[L = infinity]
    double finite_mass() const { return 1.0 - tail; }
};

// Exact law of the leaf count of the dual Galton-Watson tree, truncated at
// lmax.
LeafCountDist leaf_count_dist(const RDistribution& r, double alpha, Rooting rooting,
                              std::uint32_t lmax);

}  // namespace pac

#endif  // PAC_DISTRIBUTIONS_HPP
