#include "pac/urn.hpp"

#include <cmath>
#include <stdexcept>

namespace pac {

namespace {

// Index into `cand` of the chosen parent. Sets *cross_tie when the maximal
// colour is shared by candidates of different vertices.
std::size_t choose(std::span<const BallId> cand, const std::vector<double>& colour,
                   const std::vector<std::uint32_t>* vertex_of, Engine& rng, bool* cross_tie) {
    std::size_t best = 0;
    std::size_t count = 1;
    double top = colour[cand[0]];
    for (std::size_t i = 1; i < cand.size(); ++i) {
        const double c = colour[cand[i]];
        if (c > top) {
            top = c;
            best = i;
            count = 1;
        } else if (c == top) {
            ++count;
        }
    }
    if (count == 1) return best;

    if (cross_tie && vertex_of) {
        const std::uint32_t v = (*vertex_of)[cand[best]];
        for (std::size_t i = best + 1; i < cand.size(); ++i)
            if (colour[cand[i]] == top && (*vertex_of)[cand[i]] != v) *cross_tie = true;
    }
    std::uint64_t pick = uniform_below(rng, count);
    for (std::size_t i = best; i < cand.size(); ++i)
        if (colour[cand[i]] == top && pick-- == 0) return i;
    return best;
}

}  // namespace

void validate(const SimConfig& config) {
    if (config.n < 1) throw std::invalid_argument("n must be >= 1");
    if (!(config.alpha >= 0.0) || !std::isfinite(config.alpha))
        throw std::invalid_argument("alpha must be a finite number >= 0");
    if (config.F.kind() == FitnessDistribution::Kind::two_point &&
        config.tie_rule != TieRule::uniform)
        throw std::invalid_argument("two_point fitness requires the uniform tie rule");
    const double max_pairs = 1.0 + double(config.n) * double(config.V.max_value());
    if (max_pairs >= double(1ULL << 31))
        throw std::invalid_argument("run too large: more than 2^31 pairs");
}

BallId select_parent(std::span<const BallId> candidates, const std::vector<double>& colour,
                     Engine& rng) {
    if (candidates.empty()) throw std::invalid_argument("select_parent: no candidates");
    return candidates[choose(candidates, colour, nullptr, rng, nullptr)];
}

UrnTrace run_forward(const SimConfig& config) {
    validate(config);
    Engine rng(config.seed);
    const bool gen = config.record_genealogy;

    UrnTrace tr;
    tr.n = config.n;
    tr.alpha = config.alpha;
    tr.two_colour = config.F.kind() == FitnessDistribution::Kind::two_point;
    tr.genealogy = gen;

    const std::uint64_t expect_pairs =
        1 + static_cast<std::uint64_t>(std::ceil(double(config.n) * config.V.mean()));
    tr.pair_begin.reserve(config.n + 2);
    tr.fitness.reserve(config.n + 1);
    tr.colour.reserve(2 * expect_pairs);
    tr.vertex_of.reserve(2 * expect_pairs);
    if (gen) {
        tr.cand_offset.reserve(expect_pairs + 1);
        tr.parent.reserve(expect_pairs);
        tr.pool.reserve(static_cast<std::size_t>(double(expect_pairs) * config.R.mean() * 1.01) + 64);
    }

    const double f0 = config.F.sample(rng);
    const std::uint32_t r0 = config.R.sample(rng);
    tr.pair_begin = {0, 1};
    tr.fitness.push_back(f0);
    tr.colour = {f0, f0};
    tr.vertex_of = {0, 0};
    if (gen) {
        tr.cand_offset = {0, r0};
        tr.pool.assign(r0, source_ball(0));
        tr.parent.push_back(source_ball(0));
    }

    const bool plain = config.alpha == 0.0;
    const double p_source = (1.0 + config.alpha) / (2.0 + config.alpha);
    std::vector<BallId> cand;
    cand.reserve(config.R.max_value());

    for (std::uint64_t j = 1; j <= config.n; ++j) {
        const std::uint64_t existing = tr.pairs();
        const std::uint32_t v = config.V.sample(rng);
        const auto vertex = static_cast<std::uint32_t>(j);
        for (std::uint32_t e = 0; e < v; ++e) {
            const std::uint32_t r = config.R.sample(rng);
            cand.clear();
            for (std::uint32_t i = 0; i < r; ++i) {
                if (plain) {
                    cand.push_back(uniform_below(rng, 2 * existing));
                } else {
                    const bool src = uniform01(rng) < p_source;
                    const std::uint64_t p = uniform_below(rng, existing);
                    cand.push_back(src ? source_ball(p) : cue_ball(p));
                }
            }
            bool cross = false;
            const BallId par = cand[choose(cand, tr.colour, &tr.vertex_of, rng, &cross)];
            if (cross) ++tr.cross_vertex_ties;

            // Source colour is filled in once F_j is drawn.
            tr.colour.push_back(0.0);
            tr.colour.push_back(tr.colour[par]);
            tr.vertex_of.push_back(vertex);
            tr.vertex_of.push_back(tr.vertex_of[par]);
            if (gen) {
                tr.pool.insert(tr.pool.end(), cand.begin(), cand.end());
                tr.cand_offset.push_back(tr.pool.size());
                tr.parent.push_back(par);
            }
        }
        const double f = config.F.sample(rng);
        tr.fitness.push_back(f);
        for (std::uint64_t p = existing; p < existing + v; ++p) tr.colour[source_ball(p)] = f;
        tr.pair_begin.push_back(existing + v);
    }
    return tr;
}

GraphView graph_view(const UrnTrace& trace, std::uint64_t t) {
    if (t > trace.n) throw std::out_of_range("graph_view: t beyond the run");
    GraphView g;
    g.t = t;
    g.degree.assign(t + 1, 0);
    const std::uint64_t balls = trace.balls_at(t);
    for (std::uint64_t b = 0; b < balls; ++b) ++g.degree[trace.vertex_of[b]];
    g.fitness = std::span<const double>(trace.fitness.data(), t + 1);
    return g;
}

}  // namespace pac
