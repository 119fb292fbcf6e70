#ifndef PAC_ANALYTICS_HPP
#define PAC_ANALYTICS_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pac/genealogy.hpp"
#include "pac/urn.hpp"

namespace pac {

std::vector<double> default_grid();  // 0, 0.01, ..., 1
std::vector<double> default_eps();   // 0.1, 0.05, 0.02, 0.01

struct Hub {
    std::uint32_t vertex = 0;
    std::uint64_t birth = 0;
    double share = 0.0;  // degree / (number of balls)
};

struct MeasureSnapshot {
    std::uint64_t t = 0;
    std::vector<double> grid;
    std::vector<double> mu_cdf;  // fraction of balls with colour <= a
    std::vector<double> eps;
    std::vector<double> eps_mass;  // fraction of balls with colour >= 1 - eps
    std::vector<double> ell;       // largest vertex share among vertices with fitness >= 1 - eps
    Hub hub;
    std::optional<double> nu;  // two-point fitness only
};

MeasureSnapshot snapshot(const UrnTrace& trace, std::uint64_t t, const std::vector<double>& grid,
                         const std::vector<double>& eps);

// nu_t = fraction of colour-0 cue balls among those alive at t.
std::vector<std::pair<std::uint64_t, double>> two_color_trajectory(
    const UrnTrace& trace, const std::vector<std::uint64_t>& checkpoints);

struct EarlyFamily {
    std::uint64_t window = 0;  // sources s_0..s_window are searched
    std::uint64_t k = 0;
    double fitness = 0.0;
    std::uint64_t S = 0;  // family size of s_k at time n
    double share = 0.0;   // S / (number of balls at n)
};

// Fittest among the first ceil(C n^beta) + 1 sources and the size of its family.
EarlyFamily early_fittest_family(const UrnTrace& trace, double C, double beta);

struct HubRow {
    std::uint64_t t = 0;
    Hub hub;
    std::uint64_t switches = 0;  // hub changes up to and including t
};

// Max-degree vertex at each checkpoint, smallest index on ties.
std::vector<HubRow> hub_track(const UrnTrace& trace, const std::vector<std::uint64_t>& checkpoints);

struct FluidRow {
    double s = 0.0;
    std::uint64_t k = 0;
    double Yn = 0.0;
    double t = 0.0;
    double y_ref = 0.0;
    double lower_bound = 0.0;
};

// Rows for s = 0, 1/(points-1), ..., 1 with k(s) = round(K - s (K - k0)),
// K = ceil(C n^beta), k0 = ceil(c n^beta).
std::vector<FluidRow> fluid_table(const BackwardDual& dual, double c, double C, double zeta,
                                  double beta, std::uint32_t points = 21);

}  // namespace pac

#endif  // PAC_ANALYTICS_HPP
