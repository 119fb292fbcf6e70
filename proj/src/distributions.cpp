#include "pac/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace pac {

namespace {

constexpr double kSumTolerance = 1e-12;

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

RDistribution::RDistribution(Kind kind, std::vector<Atom> atoms)
    : kind_(kind), atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw std::invalid_argument("R law: empty support");
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& a, const Atom& b) { return a.value < b.value; });
    double total = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        const Atom& a = atoms_[i];
        if (a.value < 1) throw std::invalid_argument("R law: values must be >= 1");
        if (!(a.prob > 0.0 && a.prob <= 1.0))
            throw std::invalid_argument("R law: probabilities must lie in (0,1]");
        if (i > 0 && atoms_[i - 1].value == a.value)
            throw std::invalid_argument("R law: duplicate value " + std::to_string(a.value));
        total += a.prob;
        mean_ += a.prob * a.value;
        second_moment_ += a.prob * double(a.value) * double(a.value);
    }
    if (std::fabs(total - 1.0) > kSumTolerance)
        throw std::invalid_argument("R law: probabilities sum to " + fmt(total));
    max_value_ = atoms_.back().value;

    // Vose's alias table.
    const std::size_t k = atoms_.size();
    alias_prob_.assign(k, 1.0);
    alias_index_.resize(k);
    std::vector<double> scaled(k);
    std::vector<std::uint32_t> small, large;
    for (std::size_t i = 0; i < k; ++i) {
        alias_index_[i] = static_cast<std::uint32_t>(i);
        scaled[i] = atoms_[i].prob / total * double(k);
        (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
    }
    while (!small.empty() && !large.empty()) {
        const std::uint32_t s = small.back();
        small.pop_back();
        const std::uint32_t l = large.back();
        alias_prob_[s] = scaled[s];
        alias_index_[s] = l;
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
}

RDistribution RDistribution::deterministic(std::uint32_t r) {
    return RDistribution(Kind::deterministic, {{r, 1.0}});
}

RDistribution RDistribution::two_point(std::uint32_t a, std::uint32_t b, double prob_a) {
    if (a == b) throw std::invalid_argument("R law: two-point values must differ");
    return RDistribution(Kind::two_point, {{a, prob_a}, {b, 1.0 - prob_a}});
}

RDistribution RDistribution::from_pmf(std::vector<Atom> atoms) {
    return RDistribution(Kind::pmf, std::move(atoms));
}

RDistribution RDistribution::parse_pmf(std::string_view text) {
    std::vector<Atom> atoms;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const std::string_view item = trim(text.substr(0, comma));
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
        const auto colon = item.find(':');
        if (colon == std::string_view::npos)
            throw std::invalid_argument("R pmf: expected v:p, got '" + std::string(item) + "'");
        const std::string v(trim(item.substr(0, colon)));
        const std::string p(trim(item.substr(colon + 1)));
        std::size_t used = 0;
        unsigned long value = 0;
        double prob = 0.0;
        try {
            value = std::stoul(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
            prob = std::stod(p, &used);
            if (used != p.size()) throw std::invalid_argument(p);
        } catch (const std::logic_error&) {
            throw std::invalid_argument("R pmf: cannot parse '" + std::string(item) + "'");
        }
        if (value > 0xffffffffUL) throw std::invalid_argument("R pmf: value too large");
        atoms.push_back({static_cast<std::uint32_t>(value), prob});
    }
    return from_pmf(std::move(atoms));
}

double RDistribution::prob(std::uint32_t r) const {
    for (const Atom& a : atoms_)
        if (a.value == r) return a.prob;
    return 0.0;
}

double RDistribution::pgf(double x) const {
    double sum = 0.0;
    for (const Atom& a : atoms_) sum += a.prob * std::pow(x, double(a.value));
    return sum;
}

double RDistribution::pgf_derivative(double x) const {
    double sum = 0.0;
    for (const Atom& a : atoms_) sum += a.prob * a.value * std::pow(x, double(a.value) - 1.0);
    return sum;
}

std::uint32_t RDistribution::sample(Engine& rng) const {
    if (atoms_.size() == 1) return atoms_[0].value;
    const double x = uniform01(rng) * double(atoms_.size());
    const auto i = std::min(static_cast<std::size_t>(x), atoms_.size() - 1);
    const double frac = x - double(i);
    return atoms_[frac < alias_prob_[i] ? i : alias_index_[i]].value;
}

std::string RDistribution::describe() const {
    if (kind_ == Kind::deterministic) return "deterministic(" + std::to_string(atoms_[0].value) + ")";
    std::string out = kind_ == Kind::two_point ? "two_point(" : "pmf(";
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(atoms_[i].value) + ":" + fmt(atoms_[i].prob);
    }
    return out + ")";
}

FitnessDistribution FitnessDistribution::uniform01() { return {Kind::uniform01, 0.0}; }

FitnessDistribution FitnessDistribution::two_point(double p1) {
    if (!(p1 > 0.0 && p1 < 1.0)) throw std::invalid_argument("F two_point: p1 must lie in (0,1)");
    return {Kind::two_point, p1};
}

double FitnessDistribution::cdf(double a) const {
    if (kind_ == Kind::uniform01) return std::clamp(a, 0.0, 1.0);
    if (a < 0.0) return 0.0;
    return a < 1.0 ? 1.0 - p1_ : 1.0;
}

double FitnessDistribution::sample(Engine& rng) const {
    const double u = pac::uniform01(rng);
    if (kind_ == Kind::uniform01) return u;
    return u < p1_ ? 1.0 : 0.0;
}

double FitnessDistribution::sample_max(Engine& rng, std::uint64_t m) const {
    const double u = pac::uniform01(rng);
    if (kind_ == Kind::uniform01) return m == 1 ? u : std::pow(u, 1.0 / double(m));
    // P[max = 0] = (1-p1)^m
    return u < std::pow(1.0 - p1_, double(m)) ? 0.0 : 1.0;
}

std::string FitnessDistribution::describe() const {
    return kind_ == Kind::uniform01 ? "uniform01" : "two_point(" + fmt(p1_) + ")";
}

Rooting parse_rooting(std::string_view text) {
    if (text == "cue_root") return Rooting::cue_root;
    if (text == "generic_root") return Rooting::generic_root;
    throw std::invalid_argument("unknown rooting '" + std::string(text) + "'");
}

std::string_view to_string(Rooting rooting) {
    return rooting == Rooting::cue_root ? "cue_root" : "generic_root";
}

double offspring_pgf(const RDistribution& r, double alpha, double s) {
    if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("offspring_pgf: s outside [0,1]");
    if (alpha < 0.0) throw std::domain_error("offspring_pgf: alpha < 0");
    return (1.0 + alpha) / (2.0 + alpha) + r.pgf(s) / (2.0 + alpha);
}

ModelConstants model_constants(const RDistribution& r, double alpha) {
    ModelConstants c;
    c.alpha = alpha;
    c.zeta = r.mean() / 2.0;
    c.beta = (c.zeta - 1.0) / c.zeta;
    c.theta = (r.second_moment() + 2.0) / 2.0;
    if (c.zeta > 1.0) c.xi = r.second_moment() + 2.0 * c.zeta * c.theta / (c.zeta - 1.0);
    c.supercritical = r.mean() > 2.0 + alpha;
    return c;
}

double extinction_prob(const RDistribution& r, double alpha, Rooting rooting) {
    double q = 1.0;
    if (r.mean() > 2.0 + alpha + 1e-12) {
        double lo = 0.0;
        for (int i = 0; i < 200; ++i) lo = offspring_pgf(r, alpha, lo);
        // f(s) - s is >= 0 on [0,q] and < 0 on (q,1).
        double hi = 1.0;
        while (hi - lo > 1e-14) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (offspring_pgf(r, alpha, mid) - mid < 0.0)
                hi = mid;
            else
                lo = mid;
        }
        q = 0.5 * (lo + hi);
    }
    return rooting == Rooting::cue_root ? r.pgf(q) : q;
}

double two_color_fixed_point(const RDistribution& r, double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::domain_error("two_color_fixed_point: lambda outside (0,1)");
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (r.pgf(0.5 * (mid + lambda)) - mid > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

LeafCountDist leaf_count_dist(const RDistribution& r, double alpha, Rooting rooting,
                              std::uint32_t lmax) {
    if (lmax < 1) throw std::invalid_argument("leaf_count_dist: lmax must be >= 1");
    const std::uint32_t rmax = r.max_value();
    const double p0 = (1.0 + alpha) / (2.0 + alpha);
    const double p1 = r.prob(1) / (2.0 + alpha);

    // pow[m][l] = P[sum of m independent leaf counts = l]; pow[1] is the law
    // itself. Since a_0 = 0, pow[m][l] for m >= 2 only needs a_1..a_{l-1},
    // so a_l follows from a_l = p0 [l=1] + p1 a_l + sum_{m>=2} p_m pow[m][l].
    std::vector<std::vector<double>> pow(rmax + 1, std::vector<double>(lmax + 1, 0.0));
    for (std::uint32_t l = 1; l <= lmax; ++l) {
        for (std::uint32_t m = 2; m <= rmax; ++m) {
            double acc = 0.0;
            const auto& prev = pow[m - 1];
            const auto& a = pow[1];
            for (std::uint32_t i = 1; i < l; ++i) acc += a[i] * prev[l - i];
            pow[m][l] = acc;
        }
        double rhs = l == 1 ? p0 : 0.0;
        for (const auto& atom : r.atoms())
            if (atom.value >= 2) rhs += atom.prob / (2.0 + alpha) * pow[atom.value][l];
        pow[1][l] = rhs / (1.0 - p1);
    }

    LeafCountDist out;
    out.prob.assign(lmax + 1, 0.0);
    if (rooting == Rooting::generic_root) {
        out.prob = pow[1];
    } else {
        for (const auto& atom : r.atoms())
            for (std::uint32_t l = 1; l <= lmax; ++l) out.prob[l] += atom.prob * pow[atom.value][l];
    }
    double total = 0.0;
    for (double p : out.prob) total += p;
    out.tail = std::max(0.0, 1.0 - total);
    return out;
}

}  // namespace pac
