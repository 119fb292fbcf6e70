#include "pac/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pac/refmath.hpp"

namespace pac {

std::vector<double> default_grid() {
    std::vector<double> g(101);
    for (int i = 0; i <= 100; ++i) g[i] = i / 100.0;
    return g;
}

std::vector<double> default_eps() { return {0.1, 0.05, 0.02, 0.01}; }

MeasureSnapshot snapshot(const UrnTrace& trace, std::uint64_t t, const std::vector<double>& grid,
                         const std::vector<double>& eps) {
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw std::invalid_argument("snapshot: grid must be sorted");
    const GraphView g = graph_view(trace, t);
    const std::uint64_t balls = trace.balls_at(t);
    const double total = double(balls);

    MeasureSnapshot snap;
    snap.t = t;
    snap.grid = grid;
    snap.eps = eps;

    // bucket[i] = balls whose colour lies in (grid[i-1], grid[i]]
    std::vector<std::uint64_t> bucket(grid.size() + 1, 0);
    for (std::uint64_t b = 0; b < balls; ++b) {
        const double c = trace.colour[b];
        ++bucket[std::lower_bound(grid.begin(), grid.end(), c) - grid.begin()];
    }
    std::uint64_t run = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        run += bucket[i];
        snap.mu_cdf.push_back(double(run) / total);
    }

    snap.eps_mass.assign(eps.size(), 0.0);
    std::vector<std::uint64_t> best(eps.size(), 0);
    std::uint64_t hub_deg = 0;
    for (std::uint64_t v = 0; v <= t; ++v) {
        const std::uint64_t d = g.degree[v];
        const double f = g.fitness[v];
        for (std::size_t e = 0; e < eps.size(); ++e) {
            if (f >= 1.0 - eps[e]) {
                snap.eps_mass[e] += double(d);
                best[e] = std::max(best[e], d);
            }
        }
        if (d > hub_deg) {
            hub_deg = d;
            snap.hub.vertex = static_cast<std::uint32_t>(v);
        }
    }
    for (std::size_t e = 0; e < eps.size(); ++e) {
        snap.eps_mass[e] /= total;
        snap.ell.push_back(double(best[e]) / total);
    }
    snap.hub.birth = snap.hub.vertex;
    snap.hub.share = double(hub_deg) / total;

    if (trace.two_colour) {
        std::uint64_t zero = 0;
        const std::uint64_t pairs = trace.pair_begin[t + 1];
        for (std::uint64_t p = 0; p < pairs; ++p) zero += trace.colour[cue_ball(p)] == 0.0;
        snap.nu = double(zero) / double(pairs);
    }
    return snap;
}

std::vector<std::pair<std::uint64_t, double>> two_color_trajectory(
    const UrnTrace& trace, const std::vector<std::uint64_t>& checkpoints) {
    if (!trace.two_colour)
        throw std::invalid_argument("two_color_trajectory: fitness is not two-point");
    std::vector<std::uint64_t> sorted = checkpoints;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<std::uint64_t, double>> out;
    std::uint64_t zero = 0, done = 0;
    for (std::uint64_t t : sorted) {
        if (t > trace.n) throw std::out_of_range("two_color_trajectory: t beyond the run");
        const std::uint64_t pairs = trace.pair_begin[t + 1];
        for (; done < pairs; ++done) zero += trace.colour[cue_ball(done)] == 0.0;
        out.emplace_back(t, double(zero) / double(pairs));
    }
    return out;
}

EarlyFamily early_fittest_family(const UrnTrace& trace, double C, double beta) {
    if (!(beta > 0.0)) throw std::domain_error("early_fittest_family: needs beta > 0");
    if (!(C > 0.0)) throw std::domain_error("early_fittest_family: needs C > 0");
    const double w = std::ceil(C * std::pow(double(trace.n), beta));
    EarlyFamily ef;
    ef.window = static_cast<std::uint64_t>(std::min(w, double(trace.n)));
    for (std::uint64_t j = 0; j <= ef.window; ++j) {
        if (j == 0 || trace.fitness[j] > ef.fitness) {
            ef.k = j;
            ef.fitness = trace.fitness[j];
        }
    }
    for (std::uint64_t b = 0; b < trace.balls(); ++b) ef.S += trace.vertex_of[b] == ef.k;
    ef.share = double(ef.S) / double(trace.balls());
    return ef;
}

std::vector<HubRow> hub_track(const UrnTrace& trace, const std::vector<std::uint64_t>& checkpoints) {
    std::vector<std::uint64_t> sorted = checkpoints;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::uint64_t> degree(trace.n + 1, 0);
    std::uint32_t best = 0;
    std::uint64_t best_deg = 0, switches = 0, done = 0;
    std::optional<std::uint32_t> last;
    std::vector<HubRow> rows;
    for (std::uint64_t t : sorted) {
        if (t > trace.n) throw std::out_of_range("hub_track: t beyond the run");
        const std::uint64_t upto = trace.balls_at(t);
        for (; done < upto; ++done) {
            const std::uint32_t v = trace.vertex_of[done];
            const std::uint64_t d = ++degree[v];
            if (d > best_deg || (d == best_deg && v < best)) {
                best = v;
                best_deg = d;
            }
        }
        if (last && *last != best) ++switches;
        last = best;
        HubRow row;
        row.t = t;
        row.hub.vertex = best;
        row.hub.birth = best;
        row.hub.share = double(best_deg) / double(upto);
        row.switches = switches;
        rows.push_back(row);
    }
    return rows;
}

std::vector<FluidRow> fluid_table(const BackwardDual& dual, double c, double C, double zeta,
                                  double beta, std::uint32_t points) {
    if (!(beta > 0.0)) throw std::domain_error("fluid_table: needs beta > 0");
    if (!(c > 0.0 && c < C)) throw std::domain_error("fluid_table: needs 0 < c < C");
    if (points < 2) throw std::invalid_argument("fluid_table: needs at least two points");
    const double nb = std::pow(double(dual.n), beta);
    const double K = std::ceil(C * nb);
    const double k0 = std::ceil(c * nb);
    if (k0 < 1.0) throw std::domain_error("fluid_table: c n^beta < 1");
    if (K > double(dual.n)) throw std::domain_error("fluid_table: C n^beta exceeds n");

    std::vector<FluidRow> rows;
    double A = 0.0;
    for (std::uint32_t i = 0; i < points; ++i) {
        FluidRow r;
        r.s = double(i) / double(points - 1);
        r.k = static_cast<std::uint64_t>(std::llround(K - r.s * (K - k0)));
        r.Yn = double(dual.H[r.k]) / double(2 * r.k + 2);
        if (i == 0) A = r.Yn;
        r.t = t_of_s(r.s, c, C);
        r.y_ref = ode_y(r.t, A, zeta);
        r.lower_bound = prop_bound(r.s, c, C, zeta);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace pac
