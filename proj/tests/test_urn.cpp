#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "pac/urn.hpp"

using namespace pac;

namespace {

SimConfig base(std::uint64_t n, std::uint64_t seed) {
    SimConfig c;
    c.n = n;
    c.seed = seed;
    c.record_genealogy = true;
    return c;
}

bool within(double observed, double p, std::uint64_t trials, double sigmas = 5.0) {
    return std::fabs(observed - p) <= sigmas * std::sqrt(p * (1 - p) / double(trials));
}

}  // namespace

TEST_CASE("ball id helpers") {
    CHECK(is_source(0));
    CHECK(is_cue(7));
    CHECK(pair_of(7) == 3);
    CHECK(source_ball(3) == 6);
    CHECK(cue_ball(3) == 7);
}

TEST_CASE("single step run") {
    const auto tr = run_forward(base(1, 9));
    CHECK(tr.pairs() == 2);
    CHECK(tr.balls() == 4);
    CHECK(tr.single_edge());
    CHECK(tr.colour[0] == tr.colour[1]);
    CHECK(tr.colour[0] == tr.fitness[0]);
    CHECK(tr.colour[2] == tr.fitness[1]);
    CHECK(tr.colour[3] == tr.fitness[0]);
    CHECK(tr.vertex_of[2] == 1);
    CHECK(tr.vertex_of[3] == 0);
    REQUIRE(tr.candidates(0).size() == 3);
    for (BallId b : tr.candidates(0)) CHECK(b == 0);
    CHECK(tr.parent[0] == 0);
    CHECK(tr.candidates(1).size() == 3);
    for (BallId b : tr.candidates(1)) CHECK(b < 2);
}

TEST_CASE("cue copies the colour of its fittest candidate") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto cfg = base(3000, seed);
        cfg.R = RDistribution::parse_pmf("1:0.3,2:0.3,5:0.4");
        const auto tr = run_forward(cfg);
        for (std::uint64_t p = 1; p < tr.pairs(); ++p) {
            const auto cand = tr.candidates(p);
            REQUIRE((cand.size() == 1 || cand.size() == 2 || cand.size() == 5));
            double top = 0;
            for (BallId b : cand) {
                CHECK(b < 2 * p);
                top = std::max(top, tr.colour[b]);
            }
            const BallId par = tr.parent[p];
            CHECK(std::find(cand.begin(), cand.end(), par) != cand.end());
            CHECK(tr.colour[par] == top);
            CHECK(tr.colour[cue_ball(p)] == top);
            CHECK(tr.vertex_of[cue_ball(p)] == tr.vertex_of[par]);
            CHECK(tr.colour[source_ball(p)] == tr.fitness[p]);
        }
        CHECK(tr.cross_vertex_ties == 0);
    }
}

TEST_CASE("degrees sum to the ball count") {
    const auto tr = run_forward(base(2000, 4));
    for (std::uint64_t t : {0u, 1u, 10u, 777u, 2000u}) {
        const auto g = graph_view(tr, t);
        std::uint64_t sum = 0;
        for (auto d : g.degree) {
            CHECK(d >= 1);
            sum += d;
        }
        CHECK(sum == 2 * t + 2);
        CHECK(g.fitness.size() == t + 1);
    }
    CHECK_THROWS_AS(graph_view(tr, 2001), std::out_of_range);
}

TEST_CASE("several edges per step") {
    auto cfg = base(500, 2);
    cfg.V = RDistribution::deterministic(2);
    const auto tr = run_forward(cfg);
    CHECK(tr.pairs() == 1 + 2 * 500);
    CHECK_FALSE(tr.single_edge());
    CHECK(tr.balls_at(3) == 2 * 7);
    for (std::uint64_t j = 1; j <= 500; ++j)
        for (std::uint64_t p = tr.pair_begin[j]; p < tr.pair_begin[j + 1]; ++p) {
            CHECK(tr.vertex_of[source_ball(p)] == j);
            for (BallId b : tr.candidates(p)) CHECK(pair_of(b) < tr.pair_begin[j]);
        }
    const auto g = graph_view(tr, 500);
    std::uint64_t sum = 0;
    for (auto d : g.degree) sum += d;
    CHECK(sum == tr.balls());
}

TEST_CASE("candidates are uniform over existing balls") {
    // Each draw by the cue of step j hits a fixed ball with probability 1/(2j).
    const std::uint64_t n = 20;
    std::vector<std::uint64_t> hits(2 * n, 0);
    std::uint64_t draws = 0;
    for (std::uint64_t seed = 0; seed < 3000; ++seed) {
        const auto tr = run_forward(base(n, stream_seed(77, seed)));
        for (BallId b : tr.candidates(n)) {
            ++hits[b];
            ++draws;
        }
    }
    for (auto h : hits) CHECK(within(h / double(draws), 1.0 / (2 * n), draws));
}

TEST_CASE("source fraction of candidates") {
    for (double alpha : {0.0, 1.0, 3.0}) {
        std::uint64_t src = 0, total = 0;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            auto cfg = base(2000, stream_seed(5, seed));
            cfg.alpha = alpha;
            const auto tr = run_forward(cfg);
            for (std::uint64_t p = 1; p < tr.pairs(); ++p)
                for (BallId b : tr.candidates(p)) {
                    src += is_source(b);
                    ++total;
                }
        }
        CHECK(within(src / double(total), (1 + alpha) / (2 + alpha), total));
    }
}

TEST_CASE("parent selection among tied candidates") {
    std::vector<double> colour = {0.2, 0.9, 0.9, 0.5, 0.9, 0.1};
    Engine a(1), b(1);
    const std::vector<BallId> unique = {0, 3, 5};
    CHECK(select_parent(unique, colour, a) == 3);
    CHECK(a() == b());  // no draw without a tie

    const std::vector<BallId> tie = {1, 0, 2};
    const std::vector<BallId> repeated = {1, 1, 4};
    Engine rng(3);
    const int trials = 60000;
    int first = 0, rep = 0;
    for (int i = 0; i < trials; ++i) {
        first += select_parent(tie, colour, rng) == 1;
        rep += select_parent(repeated, colour, rng) == 1;
    }
    CHECK(within(first / double(trials), 0.5, trials));
    // positions, not distinct balls, are weighted
    CHECK(within(rep / double(trials), 2.0 / 3, trials));
    CHECK_THROWS_AS(select_parent({}, colour, rng), std::invalid_argument);
}

TEST_CASE("two-colour urn") {
    auto cfg = base(3000, 8);
    cfg.F = FitnessDistribution::two_point(0.5);
    CHECK_THROWS_AS(run_forward(cfg), std::invalid_argument);
    cfg.tie_rule = TieRule::uniform;
    const auto tr = run_forward(cfg);
    CHECK(tr.two_colour);
    for (double c : tr.colour) CHECK((c == 0.0 || c == 1.0));
    // a colour-0 cue needs every candidate at colour 0
    for (std::uint64_t p = 1; p < tr.pairs(); ++p)
        if (tr.colour[cue_ball(p)] == 0.0)
            for (BallId b : tr.candidates(p)) CHECK(tr.colour[b] == 0.0);
}

TEST_CASE("runs are reproducible") {
    auto cfg = base(5000, 123);
    cfg.alpha = 0.5;
    cfg.R = RDistribution::parse_pmf("2:0.5,4:0.5");
    const auto x = run_forward(cfg);
    const auto y = run_forward(cfg);
    CHECK(x.colour == y.colour);
    CHECK(x.pool == y.pool);
    CHECK(x.parent == y.parent);
    cfg.seed = 124;
    CHECK(run_forward(cfg).pool != x.pool);

    cfg.record_genealogy = false;
    const auto z = run_forward(cfg);
    CHECK(z.pool.empty());
    cfg.record_genealogy = true;
    CHECK(run_forward(cfg).colour == z.colour);
}

TEST_CASE("invalid configurations") {
    auto cfg = base(0, 1);
    CHECK_THROWS_AS(run_forward(cfg), std::invalid_argument);
    cfg.n = 10;
    cfg.alpha = -1;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg.alpha = 0;
    cfg.n = 1ULL << 31;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
}
