#include "pac/genealogy.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pac {

namespace {

void require_genealogy(const UrnTrace& trace, const char* who) {
    if (!trace.genealogy)
        throw std::invalid_argument(std::string(who) + ": trace has no genealogy");
}

// Member flags of c_n's dual over balls 0..2n+1, by one backward sweep over pairs.
std::vector<bool> dual_members(const UrnTrace& trace, std::uint64_t n) {
    std::vector<bool> member(2 * n + 2, false);
    member[cue_ball(n)] = true;
    for (std::uint64_t p = n + 1; p-- > 0;) {
        if (!member[cue_ball(p)]) continue;
        for (BallId b : trace.candidates(p)) member[b] = true;
    }
    return member;
}

}  // namespace

FounderIndex founders(const UrnTrace& trace, const std::vector<std::uint64_t>& checkpoints) {
    require_genealogy(trace, "founders");
    FounderIndex fi;
    fi.checkpoints = checkpoints;
    std::sort(fi.checkpoints.begin(), fi.checkpoints.end());
    if (!fi.checkpoints.empty() && fi.checkpoints.back() > trace.n)
        throw std::out_of_range("founders: checkpoint beyond the run");

    const std::uint64_t balls = trace.balls();
    fi.founder.resize(balls);
    for (std::uint64_t p = 0; p < trace.pairs(); ++p) {
        fi.founder[source_ball(p)] = source_ball(p);
        fi.founder[cue_ball(p)] = fi.founder[trace.parent[p]];
    }

    std::vector<std::uint64_t> size(trace.pairs(), 0);
    std::uint64_t done = 0;
    for (std::uint64_t t : fi.checkpoints) {
        const std::uint64_t upto = trace.balls_at(t);
        for (; done < upto; ++done) ++size[pair_of(fi.founder[done])];
        fi.family_size.emplace_back(size.begin(), size.begin() + trace.pair_begin[t + 1]);
    }
    return fi;
}

std::uint64_t BackwardDual::N_range(std::uint64_t lo, std::uint64_t hi) const {
    std::uint64_t s = 0;
    for (std::uint64_t k = lo; k <= std::min(hi, n); ++k) s += N[k];
    return s;
}

BackwardDual backward_dual(const UrnTrace& trace, std::uint64_t n) {
    require_genealogy(trace, "backward_dual");
    if (!trace.single_edge())
        throw std::invalid_argument("backward_dual: needs one edge per vertex");
    if (n > trace.n) throw std::out_of_range("backward_dual: n beyond the run");

    BackwardDual d;
    d.n = n;
    d.H.assign(n + 1, 0);
    d.G.assign(n + 1, 0);
    d.A.assign(n + 1, 0);
    d.B.assign(n + 1, 0);
    d.N.assign(n + 1, 0);
    d.member.assign(2 * n + 2, false);
    d.member[cue_ball(n)] = true;

    // A draw by c_j of a ball born at i < j is counted by G[k] for i < k <= j.
    std::vector<std::int64_t> diff(n + 2, 0);
    // Members other than c_n that are born at or before the current k.
    std::uint64_t alive = 0;

    for (std::uint64_t k = n + 1; k-- > 0;) {
        if (k < n) {
            alive -= d.member[source_ball(k + 1)];
            alive -= d.member[cue_ball(k + 1)] && k + 1 != n;
        }
        d.H[k] = alive;
        if (!d.member[cue_ball(k)]) continue;

        const auto cand = trace.candidates(k);
        d.B[k] = cand.size();
        if (k == 0) {
            d.G[0] += cand.size();
            for (BallId b : cand) d.member[b] = true;
            continue;
        }
        for (BallId b : cand) {
            const std::uint64_t i = pair_of(b);
            ++diff[i + 1];
            --diff[k + 1];
            ++d.A[i];
            if (is_source(b)) ++d.N[i];
            if (!d.member[b]) {
                d.member[b] = true;
                ++alive;
            }
        }
    }

    std::int64_t run = 0;
    for (std::uint64_t k = 0; k <= n; ++k) {
        run += diff[k];
        d.G[k] += static_cast<std::uint64_t>(run);
    }
    return d;
}

LayerProfile generation_layers(const UrnTrace& trace, std::uint64_t n, std::uint64_t kmax) {
    require_genealogy(trace, "generation_layers");
    if (n >= trace.pairs()) throw std::out_of_range("generation_layers: n beyond the run");
    if (kmax < 1) throw std::invalid_argument("generation_layers: kmax must be >= 1");

    const std::uint64_t balls = 2 * n + 2;
    constexpr std::uint32_t none = 0xffffffffu;
    std::vector<std::uint32_t> stamp(balls, none);  // last generation a ball was placed in
    std::vector<bool> drawn(balls, false);
    std::vector<bool> counted_source(balls, false);

    LayerProfile lp;
    std::vector<BallId> layer{cue_ball(n)}, next;
    stamp[cue_ball(n)] = 0;
    lp.W.push_back(1);
    lp.draws.push_back(0);
    lp.sources.push_back(0);
    std::uint64_t sources = 0;

    for (std::uint64_t k = 1; k <= kmax; ++k) {
        next.clear();
        std::uint64_t draws = 0;
        for (BallId b : layer) {
            if (is_source(b)) continue;
            // c_0 counts once as a child of s_0, not once per pseudo-draw.
            const auto cand = pair_of(b) == 0 ? trace.candidates(0).first(1)
                                              : trace.candidates(pair_of(b));
            for (BallId p : cand) {
                ++draws;
                if (drawn[p]) {
                    if (!lp.K) lp.K = k;
                } else {
                    drawn[p] = true;
                }
                if (stamp[p] != k) {
                    stamp[p] = static_cast<std::uint32_t>(k);
                    next.push_back(p);
                    if (is_source(p) && !counted_source[p]) {
                        counted_source[p] = true;
                        ++sources;
                    }
                }
            }
        }
        if (next.empty()) break;
        lp.W.push_back(next.size());
        lp.draws.push_back(draws);
        lp.sources.push_back(sources);
        layer.swap(next);
    }
    return lp;
}

bool color_duality_check(const UrnTrace& trace, std::uint64_t n) {
    require_genealogy(trace, "color_duality_check");
    if (n >= trace.pairs()) throw std::out_of_range("color_duality_check: n beyond the run");

    std::vector<double> col(2 * n + 2);
    for (std::uint64_t p = 0; p <= n; ++p) {
        col[source_ball(p)] = trace.colour[source_ball(p)];
        col[cue_ball(p)] = col[trace.parent[p]];
    }
    const std::vector<bool> member = dual_members(trace, n);
    double best = -1.0;
    for (std::uint64_t p = 0; p <= n; ++p)
        if (member[source_ball(p)]) best = std::max(best, col[source_ball(p)]);
    return col[cue_ball(n)] == best;
}

}  // namespace pac
