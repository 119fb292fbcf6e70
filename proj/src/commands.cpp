#include "pac/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "pac/analytics.hpp"
#include "pac/distributions.hpp"
#include "pac/ensemble.hpp"
#include "pac/genealogy.hpp"
#include "pac/gw_dual.hpp"
#include "pac/refmath.hpp"

namespace pac {

std::string format_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

namespace {

namespace fs = std::filesystem;

// One CSV line built from heterogeneous fields.
class Row {
public:
    Row& operator<<(double x) { return add(format_real(x)); }
    Row& operator<<(std::uint64_t x) { return add(std::to_string(x)); }
    Row& operator<<(std::uint32_t x) { return add(std::to_string(x)); }
    Row& operator<<(const std::string& s) { return add(s); }
    Row& operator<<(const char* s) { return add(s); }
    std::string str() const { return line_ + "\n"; }

private:
    Row& add(const std::string& field) {
        if (!first_) line_ += ',';
        line_ += field;
        first_ = false;
        return *this;
    }
    std::string line_;
    bool first_ = true;
};

fs::path prepare_out_dir(const RunConfig& cfg) {
    const fs::path dir = cfg.get("out.dir");
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw IoError("cannot create output directory '" + dir.string() + "'");
    return dir;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

unsigned threads_of(const RunConfig& cfg) {
    const std::uint64_t t = cfg.get_u64("run.threads");
    if (t < 1 || t > 1024) throw ConfigError("run.threads must lie in [1, 1024]");
    return static_cast<unsigned>(t);
}

std::uint64_t replicates_of(const RunConfig& cfg) {
    const std::uint64_t r = cfg.get_u64("run.replicates");
    if (r < 1) throw ConfigError("run.replicates must be >= 1");
    return r;
}

// Runs body(replicate, seed, outputs) for every replicate in parallel and
// concatenates the per-replicate outputs in replicate order.
template <class Body>
std::vector<std::string> per_replicate(const RunConfig& cfg, std::size_t files, Body&& body) {
    const std::uint64_t reps = replicates_of(cfg);
    const std::uint64_t master = cfg.get_u64("run.seed");
    std::vector<std::vector<std::string>> parts(reps, std::vector<std::string>(files));
    parallel_for(reps, threads_of(cfg), [&](std::size_t r) {
        body(replicate_seed(master, r), parts[r]);
    });
    std::vector<std::string> merged(files);
    for (const auto& p : parts)
        for (std::size_t f = 0; f < files; ++f) merged[f] += p[f];
    return merged;
}

void check_window(const RunConfig& cfg) {
    const double c = cfg.get_double("window.c");
    const double C = cfg.get_double("window.C");
    if (!(c > 0.0 && c < C)) throw ConfigError("window: need 0 < window.c < window.C");
}

}  // namespace

void cmd_simulate(const RunConfig& cfg) {
    const SimConfig base = cfg.sim_config(0, false);
    const auto grid = cfg.grid();
    const auto eps = cfg.get_double_list("eps.list");
    const auto cps = cfg.checkpoints(base.n);
    const double C = cfg.get_double("window.C");
    if (!(C > 0.0)) throw ConfigError("window.C must be positive");
    const ModelConstants mc = model_constants(base.R, base.alpha);
    const fs::path dir = prepare_out_dir(cfg);

    auto out = per_replicate(cfg, 4, [&](std::uint64_t seed, std::vector<std::string>& files) {
        SimConfig sc = base;
        sc.seed = seed;
        const UrnTrace trace = run_forward(sc);
        for (std::uint64_t t : cps) {
            const MeasureSnapshot snap = snapshot(trace, t, grid, eps);
            for (std::size_t i = 0; i < grid.size(); ++i)
                files[0] += (Row() << seed << t << grid[i] << snap.mu_cdf[i]).str();
            for (std::size_t e = 0; e < eps.size(); ++e)
                files[1] += (Row() << seed << t << eps[e] << snap.eps_mass[e] << snap.ell[e]).str();
        }
        for (const HubRow& h : hub_track(trace, cps))
            files[2] += (Row() << seed << h.t << h.hub.vertex << h.hub.birth << h.hub.share
                               << h.switches).str();
        if (mc.beta > 0.0) {
            const EarlyFamily ef = early_fittest_family(trace, C, mc.beta);
            files[3] += (Row() << seed << trace.n << C << ef.k << ef.fitness << ef.S << ef.share).str();
        }
    });

    write_file(dir / "measures.csv", "seed,t,a,mu_cdf\n" + out[0]);
    write_file(dir / "condensation.csv", "seed,t,eps,eps_mass,ell\n" + out[1]);
    write_file(dir / "hub.csv", "seed,t,hub_vertex,hub_birth,degree_share,switches_so_far\n" + out[2]);
    write_file(dir / "family.csv", "seed,n,C,k_n,fitness_kn,S_n,share\n" + out[3]);
    write_file(dir / "manifest.txt", cfg.manifest("simulate"));
}

void cmd_backward(const RunConfig& cfg) {
    const SimConfig base = cfg.sim_config(0, true);
    if (!base.V.is_constant() || base.V.atoms()[0].value != 1)
        throw ConfigError("backward needs one edge per vertex (model.V deterministic 1)");
    std::vector<std::uint64_t> ns = cfg.get_u64_list("backward.n_list");
    if (ns.empty()) ns.push_back(base.n);
    for (std::uint64_t n : ns)
        if (n < 1 || n > base.n) throw ConfigError("backward.n_list entries must lie in [1, model.n]");
    const std::uint64_t stride = cfg.get_u64("backward.k_stride");
    if (stride < 1) throw ConfigError("backward.k_stride must be >= 1");
    check_window(cfg);
    const double c = cfg.get_double("window.c");
    const double C = cfg.get_double("window.C");
    const std::uint64_t points = cfg.get_u64("fluid.points");
    if (points < 2 || points > 100000) throw ConfigError("fluid.points must lie in [2, 100000]");
    const ModelConstants mc = model_constants(base.R, base.alpha);
    const fs::path dir = prepare_out_dir(cfg);

    auto out = per_replicate(cfg, 2, [&](std::uint64_t seed, std::vector<std::string>& files) {
        SimConfig sc = base;
        sc.seed = seed;
        const UrnTrace trace = run_forward(sc);
        for (std::uint64_t n : ns) {
            const BackwardDual d = backward_dual(trace, n);
            for (std::uint64_t k = 0; k <= n; ++k) {
                if (k % stride != 0 && k != n) continue;
                files[0] += (Row() << seed << n << k << d.H[k] << d.G[k] << d.A[k] << d.B[k]
                                   << d.N[k]).str();
            }
            if (mc.beta <= 0.0) continue;
            std::vector<FluidRow> rows;
            try {
                rows = fluid_table(d, c, C, mc.zeta, mc.beta, static_cast<std::uint32_t>(points));
            } catch (const std::domain_error&) {
                continue;  // window does not fit at this n
            }
            for (const FluidRow& r : rows)
                files[1] += (Row() << seed << n << c << C << r.s << r.k << r.Yn << r.t << r.y_ref
                                   << r.lower_bound).str();
        }
    });

    write_file(dir / "backward.csv", "seed,n,k,H,G,A,B,N\n" + out[0]);
    write_file(dir / "fluid.csv", "seed,n,c,C,s,k,Yn,t_of_s,y_ref,lower_bound\n" + out[1]);
    write_file(dir / "manifest.txt", cfg.manifest("backward"));
}

void cmd_gw(const RunConfig& cfg) {
    const RDistribution R = cfg.R();
    const FitnessDistribution F = cfg.F();
    const double alpha = cfg.get_double("model.alpha");
    if (!(alpha >= 0.0)) throw ConfigError("model.alpha must be >= 0");
    const std::uint64_t reps = cfg.get_u64("gw.reps");
    if (reps < 1) throw ConfigError("gw.reps must be >= 1");
    const auto grid = cfg.grid();
    const fs::path dir = prepare_out_dir(cfg);

    const MuEstimate est = mu_limit(R, F, alpha, cfg.rooting(), grid, reps, cfg.caps(),
                                    cfg.get_u64("run.seed"), threads_of(cfg));
    std::string csv = "a,mu_cdf,stderr\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        csv += (Row() << grid[i] << est.cdf[i] << est.stderr_[i]).str();
    csv += (Row() << "ATOM1" << est.atom1 << est.atom1_stderr).str();
    write_file(dir / "gw_mu.csv", csv);
    write_file(dir / "manifest.txt", cfg.manifest("gw"));
}

void cmd_twocolor(const RunConfig& cfg) {
    const SimConfig base = cfg.sim_config(0, false);
    if (base.F.kind() != FitnessDistribution::Kind::two_point)
        throw ConfigError("twocolor needs model.F.kind=two_point and model.tie_rule=uniform");
    const auto cps = cfg.checkpoints(base.n);
    const fs::path dir = prepare_out_dir(cfg);

    auto out = per_replicate(cfg, 1, [&](std::uint64_t seed, std::vector<std::string>& files) {
        SimConfig sc = base;
        sc.seed = seed;
        const UrnTrace trace = run_forward(sc);
        for (const auto& [t, nu] : two_color_trajectory(trace, cps))
            files[0] += (Row() << seed << t << nu).str();
    });
    write_file(dir / "twocolor.csv", "seed,t,nu\n" + out[0]);
    write_file(dir / "manifest.txt", cfg.manifest("twocolor"));
}

void cmd_theory(const RunConfig& cfg, std::ostream& out) {
    const RDistribution R = cfg.R();
    const double alpha = cfg.get_double("model.alpha");
    if (!(alpha >= 0.0)) throw ConfigError("model.alpha must be >= 0");
    check_window(cfg);
    const double c = cfg.get_double("window.c");
    const double C = cfg.get_double("window.C");
    const ModelConstants mc = model_constants(R, alpha);

    std::string csv = "quantity,x,value\n";
    auto scalar = [&](const char* name, double v) { csv += (Row() << name << "" << v).str(); };
    scalar("zeta", mc.zeta);
    scalar("beta", mc.beta);
    scalar("theta", mc.theta);
    if (mc.xi)
        scalar("xi", *mc.xi);
    else
        csv += "xi,,NA\n";
    scalar("q", extinction_prob(R, alpha, Rooting::generic_root));
    scalar("q_cue", extinction_prob(R, alpha, Rooting::cue_root));
    for (int i = 1; i < 20; ++i) {
        const double lambda = i / 20.0;
        csv += (Row() << "nu_star" << lambda << two_color_fixed_point(R, lambda)).str();
    }
    const std::uint64_t points = std::max<std::uint64_t>(2, cfg.get_u64("fluid.points"));
    const double A = mc.zeta / (4.0 * std::pow(C, mc.zeta));
    for (std::uint64_t i = 0; i < points; ++i) {
        const double s = double(i) / double(points - 1);
        csv += (Row() << "prop_bound" << s << prop_bound(s, c, C, mc.zeta)).str();
    }
    for (std::uint64_t i = 0; i < points; ++i) {
        const double s = double(i) / double(points - 1);
        csv += (Row() << "ode_y" << s << ode_y(t_of_s(s, c, C), A, mc.zeta)).str();
    }
    out << csv;
}

bool cmd_check(const RunConfig& cfg, std::ostream& out) {
    bool all = true;
    auto report = [&](bool ok, const std::string& name, const std::string& detail) {
        out << (ok ? "PASS " : "FAIL ") << name << " " << detail << "\n";
        all = all && ok;
    };

    for (double alpha : {0.5, 1.0, 2.0}) {
        const BracketGridResult g = bracket_grid_check(alpha, 100, 10000);
        report(g.failed == 0, "product_bracket",
               "alpha=" + format_real(alpha) + " checked=" + std::to_string(g.checked) +
                   " failed=" + std::to_string(g.failed) + " (lower " + std::to_string(g.lower_failed) +
                   ", upper " + std::to_string(g.upper_failed) + ")");
    }

    std::uint64_t cases = 0, bad = 0;
    for (std::uint32_t r = 1; r <= 4; ++r)
        for (std::uint32_t a = 2; a <= 6; ++a)
            for (std::uint32_t b = 1; b < a; ++b) {
                const MarkedBoxesLaw law = marked_boxes_exact(r, a, b);
                // Each unmarked box is hit with probability 1 - (1 - 1/a)^r.
                const double mean = (a - b) * (1.0 - std::pow(1.0 - 1.0 / a, r));
                const Interval iv = marked_boxes_bounds(r, a, b);
                ++cases;
                if (std::fabs(law.mean - mean) > 1e-12 || law.mean < iv.lo - 1e-12 ||
                    law.mean > iv.hi + 1e-12)
                    ++bad;
            }
    report(bad == 0, "marked_boxes", "cases=" + std::to_string(cases) + " failed=" + std::to_string(bad));

    // Over the times the fluid table visits, t in [0, log(C/c)].
    const double tmax = t_of_s(1.0, 0.5, 13.0);
    double worst = 0.0;
    for (double A : {0.01, 0.1, 0.5, 0.9})
        for (int i = 1; i <= 1000; ++i) {
            const double zeta = 1.5, t = tmax * i / 1000.0, h = 1e-5;
            const double deriv = (ode_y(t + h, A, zeta) - ode_y(t - h, A, zeta)) / (2 * h);
            const double y = ode_y(t, A, zeta);
            const double rhs = 2 * zeta * y * (1 - y);
            worst = std::max(worst, std::fabs(deriv - rhs) / rhs);
        }
    report(worst < 1e-6, "ode_residual", "max_rel=" + format_real(worst));

    SimConfig sc = cfg.sim_config(0, true);
    sc.n = std::min<std::uint64_t>(sc.n, 2000);
    sc.V = RDistribution::deterministic(1);
    std::uint64_t traces = 0, failures = 0;
    for (std::uint64_t i = 0; i < 5; ++i) {
        sc.seed = replicate_seed(cfg.get_u64("run.seed"), i);
        const UrnTrace trace = run_forward(sc);
        const BackwardDual d = backward_dual(trace, sc.n);
        bool ok = color_duality_check(trace, sc.n);
        for (std::uint64_t k = 0; k < sc.n; ++k)
            ok = ok && d.G[k] + d.A[k] == d.G[k + 1] + d.B[k] && d.H[k] <= d.G[k + 1];
        ++traces;
        failures += !ok;
    }
    report(failures == 0, "duality_replay",
           "traces=" + std::to_string(traces) + " failed=" + std::to_string(failures));
    return all;
}

int run_command(std::string_view name, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (name == "simulate") {
            cmd_simulate(cfg);
        } else if (name == "backward") {
            cmd_backward(cfg);
        } else if (name == "gw") {
            cmd_gw(cfg);
        } else if (name == "twocolor") {
            cmd_twocolor(cfg);
        } else if (name == "theory") {
            cmd_theory(cfg, out);
        } else if (name == "check") {
            return cmd_check(cfg, out) ? exit_ok : exit_failed;
        } else {
            err << "unknown command '" << name << "'\n";
            return exit_config;
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return exit_io;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::domain_error& e) {
        err << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_failed;
    }
    return exit_ok;
}

}  // namespace pac
