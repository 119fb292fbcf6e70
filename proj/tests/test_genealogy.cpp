#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "pac/genealogy.hpp"
#include "pac/refmath.hpp"

using namespace pac;

namespace {

UrnTrace make_trace(std::uint64_t n, std::uint64_t seed, double alpha = 0.0,
                    const char* R = "3:1") {
    SimConfig c;
    c.n = n;
    c.seed = seed;
    c.alpha = alpha;
    c.R = RDistribution::parse_pmf(R);
    c.record_genealogy = true;
    return run_forward(c);
}

// Definitions evaluated directly, quadratic in n.
struct BruteDual {
    std::set<BallId> members;
    std::vector<std::uint64_t> H, G, A, B, N;
};

BruteDual brute_dual(const UrnTrace& tr, std::uint64_t n) {
    BruteDual d;
    std::vector<BallId> stack{cue_ball(n)};
    d.members.insert(cue_ball(n));
    while (!stack.empty()) {
        const BallId b = stack.back();
        stack.pop_back();
        if (is_source(b)) continue;
        for (BallId p : tr.candidates(pair_of(b)))
            if (d.members.insert(p).second) stack.push_back(p);
    }
    auto member_cue = [&](std::uint64_t j) { return d.members.count(cue_ball(j)) > 0; };
    d.H.assign(n + 1, 0);
    d.G.assign(n + 1, 0);
    d.A.assign(n + 1, 0);
    d.B.assign(n + 1, 0);
    d.N.assign(n + 1, 0);
    for (std::uint64_t k = 0; k <= n; ++k) {
        if (member_cue(k)) d.B[k] = tr.candidates(k).size();
        std::set<BallId> distinct;
        for (std::uint64_t j = k; j <= n; ++j) {
            if (!member_cue(j)) continue;
            for (BallId b : tr.candidates(j)) {
                if (j == 0 || pair_of(b) < k) ++d.G[k];
                if (j > k && pair_of(b) == k) ++d.A[k];
                if (j > k && b == source_ball(k)) ++d.N[k];
                if (j > k && pair_of(b) <= k) distinct.insert(b);
            }
        }
        d.H[k] = distinct.size();
    }
    return d;
}

}  // namespace

TEST_CASE("backward dual agrees with the definitions") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const double alpha = seed % 3 == 0 ? 0.7 : 0.0;
        const char* R = seed % 2 ? "3:1" : "1:0.3,2:0.2,6:0.5";
        const auto tr = make_trace(300, seed, alpha, R);
        for (std::uint64_t n : {std::uint64_t{0}, std::uint64_t{1}, std::uint64_t{57},
                                std::uint64_t{300}}) {
            const auto d = backward_dual(tr, n);
            const auto b = brute_dual(tr, n);
            CHECK(d.G == b.G);
            CHECK(d.A == b.A);
            CHECK(d.B == b.B);
            CHECK(d.N == b.N);
            CHECK(d.H == b.H);
            for (BallId x = 0; x < 2 * n + 2; ++x) CHECK(d.member[x] == (b.members.count(x) > 0));
        }
    }
}

TEST_CASE("multiplicity recursion and ordering") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto tr = make_trace(20000, seed);
        const auto d = backward_dual(tr, 20000);
        for (std::uint64_t k = 0; k < d.n; ++k) {
            CHECK(d.G[k] == d.G[k + 1] - d.A[k] + d.B[k]);
            CHECK(d.H[k] <= d.G[k + 1]);
            CHECK(d.N[k] <= d.A[k]);
        }
        CHECK(d.G[d.n] == 3);
        CHECK(d.H[d.n] == 0);

        // every source draw by a member cue c_j, j >= 1, is counted once
        std::uint64_t source_draws = 0;
        for (std::uint64_t j = 1; j <= d.n; ++j)
            if (d.member[cue_ball(j)])
                for (BallId b : tr.candidates(j)) source_draws += is_source(b);
        CHECK(d.N_range(0, d.n) == source_draws);
        CHECK(d.N_range(5, 2 * d.n) == d.N_range(5, d.n));
    }
}

TEST_CASE("multiplicity count follows its conditional mean") {
    // G[k] - g_mean_step(G[k+1], k) has conditional mean zero given the
    // future, so the normalised sum is approximately standard normal.
    double sum = 0.0, sq = 0.0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto tr = make_trace(5000, stream_seed(31, seed));
        const auto d = backward_dual(tr, 5000);
        for (std::uint64_t k = 20; k < d.n; ++k) {
            const double r = double(d.G[k]) - g_mean_step(d.G[k + 1], k, 1.5);
            sum += r;
            sq += r * r;
        }
    }
    REQUIRE(sq > 0);
    CHECK(std::fabs(sum / std::sqrt(sq)) < 5.0);
}

TEST_CASE("colour duality") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto tr = make_trace(3000, seed, seed % 2 ? 0.0 : 1.0, "2:0.5,4:0.5");
        for (std::uint64_t n : {0u, 1u, 100u, 2999u, 3000u}) CHECK(color_duality_check(tr, n));
    }

    // Re-pointing c_n at a strictly less fit candidate breaks the identity.
    auto tr = make_trace(2000, 4);
    bool mutated = false;
    for (std::uint64_t n = 2000; n > 0 && !mutated; --n) {
        const auto cand = tr.candidates(n);
        for (BallId b : cand)
            if (tr.colour[b] < tr.colour[tr.parent[n]]) {
                tr.parent[n] = b;
                CHECK_FALSE(color_duality_check(tr, n));
                mutated = true;
                break;
            }
    }
    CHECK(mutated);
}

TEST_CASE("generation layers") {
    const auto tr = make_trace(10000, 6);
    const auto lp = generation_layers(tr, 10000, 50);
    REQUIRE(lp.W.size() >= 2);
    CHECK(lp.W[0] == 1);
    const auto cand = tr.candidates(10000);
    const std::set<BallId> distinct(cand.begin(), cand.end());
    CHECK(lp.W[1] == distinct.size());
    CHECK(lp.draws[1] == 3);
    for (std::size_t k = 1; k < lp.sources.size(); ++k) CHECK(lp.sources[k] >= lp.sources[k - 1]);
    if (lp.K) CHECK(*lp.K >= 1);

    // pair 0 contributes a single edge to s_0
    const auto small = make_trace(1, 3);
    const auto l0 = generation_layers(small, 0, 5);
    CHECK(l0.W == std::vector<std::uint64_t>{1, 1});
    CHECK(l0.sources.back() == 1);
    CHECK_FALSE(l0.K);

    CHECK_THROWS_AS(generation_layers(tr, 10001, 3), std::out_of_range);
}

TEST_CASE("second generation size") {
    // Three first-generation balls, each a cue with probability 1/2 drawing
    // three more: E[W_2] is 4.5 up to coalescence.
    const int runs = 400;
    double sum = 0, sq = 0;
    for (int i = 0; i < runs; ++i) {
        const auto tr = make_trace(10000, stream_seed(9, i));
        const auto lp = generation_layers(tr, 10000, 2);
        const double w = lp.W.size() > 2 ? double(lp.W[2]) : 0.0;
        sum += w;
        sq += w * w;
    }
    const double mean = sum / runs;
    const double sd = std::sqrt((sq / runs - mean * mean) / runs);
    CHECK(std::fabs(mean - 4.5) < 5 * sd);
}

TEST_CASE("founders and family sizes") {
    const auto tr = make_trace(5000, 12, 0.5);
    const auto fi = founders(tr, {5000, 0, 10, 999});
    CHECK(fi.checkpoints == std::vector<std::uint64_t>{0, 10, 999, 5000});
    for (std::size_t i = 0; i < fi.checkpoints.size(); ++i) {
        const auto t = fi.checkpoints[i];
        CHECK(fi.family_size[i].size() == t + 1);
        std::uint64_t total = 0;
        for (auto s : fi.family_size[i]) total += s;
        CHECK(total == 2 * t + 2);
    }
    for (std::uint64_t p = 0; p < tr.pairs(); ++p) {
        CHECK(fi.founder[source_ball(p)] == source_ball(p));
        CHECK(is_source(fi.founder[cue_ball(p)]));
        CHECK(pair_of(fi.founder[cue_ball(p)]) <= p);
        CHECK(tr.colour[cue_ball(p)] == tr.colour[fi.founder[cue_ball(p)]]);
    }
    CHECK_THROWS_AS(founders(tr, {6000}), std::out_of_range);
}

TEST_CASE("genealogy is required") {
    SimConfig c;
    c.n = 10;
    const auto tr = run_forward(c);
    CHECK_THROWS_AS(backward_dual(tr, 10), std::invalid_argument);
    c.record_genealogy = true;
    c.V = RDistribution::deterministic(2);
    CHECK_THROWS_AS(backward_dual(run_forward(c), 10), std::invalid_argument);
}
