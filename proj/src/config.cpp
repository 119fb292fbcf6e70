#include "pac/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pac {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto t = trim(item);
        if (!t.empty()) out.emplace_back(t);
    }
    return out;
}

double to_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size() && std::isfinite(v)) return v;
    } catch (const std::logic_error&) {
    }
    throw ConfigError(key + ": not a number: '" + text + "'");
}

std::uint64_t to_u64(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        if (!text.empty() && text[0] != '-') {
            const unsigned long long v = std::stoull(text, &used, 10);
            if (used == text.size()) return v;
        }
    } catch (const std::logic_error&) {
    }
    throw ConfigError(key + ": not a nonnegative integer: '" + text + "'");
}

RDistribution integer_law(const RunConfig& cfg, const std::string& prefix) {
    const std::string& kind = cfg.get(prefix + ".kind");
    try {
        if (kind == "deterministic") {
            const std::uint64_t v = cfg.get_u64(prefix + ".value");
            if (v < 1 || v > 0xffffffffULL) throw ConfigError(prefix + ".value must be >= 1");
            return RDistribution::deterministic(static_cast<std::uint32_t>(v));
        }
        if (kind == "pmf" || kind == "two_point") {
            RDistribution law = RDistribution::parse_pmf(cfg.get(prefix + ".pmf"));
            if (kind == "two_point") {
                if (law.atoms().size() != 2)
                    throw ConfigError(prefix + ".pmf must list two values for two_point");
                const auto& a = law.atoms();
                return RDistribution::two_point(a[0].value, a[1].value, a[0].prob);
            }
            return law;
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(prefix + ": " + e.what());
    }
    throw ConfigError(prefix + ".kind: unknown kind '" + kind + "'");
}

}  // namespace

RunConfig::RunConfig() {
    values_ = {
        {"model.n", "10000"},
        {"model.R.kind", "deterministic"},
        {"model.R.value", "3"},
        {"model.R.pmf", ""},
        {"model.F.kind", "uniform01"},
        {"model.F.p1", "0.5"},
        {"model.alpha", "0"},
        {"model.V.kind", "deterministic"},
        {"model.V.value", "1"},
        {"model.V.pmf", ""},
        {"model.tie_rule", "continuous"},
        {"run.seed", "1"},
        {"run.replicates", "1"},
        {"run.threads", "1"},
        {"run.checkpoints", ""},
        {"out.dir", "out"},
        {"grid.points", "101"},
        {"eps.list", "0.1,0.05,0.02,0.01"},
        {"window.c", "0.5"},
        {"window.C", "13"},
        {"gw.reps", "100000"},
        {"gw.gen_cap", "200"},
        {"gw.pop_cap", "1000000"},
        {"gw.rooting", "cue_root"},
        {"backward.n_list", ""},
        {"backward.k_stride", "1"},
        {"fluid.points", "21"},
    };
}

void RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    load_text(ss.str(), path);
}

void RunConfig::load_text(std::string_view text, const std::string& origin) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const std::string_view line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        try {
            assign(line);
        } catch (const ConfigError& e) {
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void RunConfig::set(const std::string& key, const std::string& value) {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown key '" + key + "'");
    it->second = value;
}

void RunConfig::assign(std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError("expected key=value, got '" + std::string(assignment) + "'");
    set(std::string(trim(assignment.substr(0, eq))), std::string(trim(assignment.substr(eq + 1))));
}

const std::string& RunConfig::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown key '" + key + "'");
    return it->second;
}

double RunConfig::get_double(const std::string& key) const { return to_double(key, get(key)); }

std::uint64_t RunConfig::get_u64(const std::string& key) const { return to_u64(key, get(key)); }

std::vector<double> RunConfig::get_double_list(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : split_list(get(key))) out.push_back(to_double(key, item));
    return out;
}

std::vector<std::uint64_t> RunConfig::get_u64_list(const std::string& key) const {
    std::vector<std::uint64_t> out;
    for (const auto& item : split_list(get(key))) out.push_back(to_u64(key, item));
    return out;
}

RDistribution RunConfig::R() const { return integer_law(*this, "model.R"); }

RDistribution RunConfig::V() const { return integer_law(*this, "model.V"); }

FitnessDistribution RunConfig::F() const {
    const std::string& kind = get("model.F.kind");
    if (kind == "uniform01") return FitnessDistribution::uniform01();
    if (kind == "two_point") {
        try {
            return FitnessDistribution::two_point(get_double("model.F.p1"));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("model.F.p1: ") + e.what());
        }
    }
    throw ConfigError("model.F.kind: unknown kind '" + kind + "'");
}

TieRule RunConfig::tie_rule() const {
    const std::string& v = get("model.tie_rule");
    if (v == "continuous") return TieRule::continuous;
    if (v == "uniform") return TieRule::uniform;
    throw ConfigError("model.tie_rule: expected continuous or uniform, got '" + v + "'");
}

Rooting RunConfig::rooting() const {
    try {
        return parse_rooting(get("gw.rooting"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("gw.rooting: ") + e.what());
    }
}

GWCaps RunConfig::caps() const {
    GWCaps c;
    const std::uint64_t gens = get_u64("gw.gen_cap");
    if (gens < 1 || gens > 0xffffffffULL) throw ConfigError("gw.gen_cap out of range");
    c.generations = static_cast<std::uint32_t>(gens);
    c.population = get_u64("gw.pop_cap");
    if (c.population < 1) throw ConfigError("gw.pop_cap must be positive");
    return c;
}

std::vector<double> RunConfig::grid() const {
    const std::uint64_t points = get_u64("grid.points");
    if (points < 2) throw ConfigError("grid.points must be >= 2");
    std::vector<double> g(points);
    for (std::uint64_t i = 0; i < points; ++i) g[i] = double(i) / double(points - 1);
    return g;
}

std::vector<std::uint64_t> RunConfig::checkpoints(std::uint64_t n) const {
    std::vector<std::uint64_t> cps = get_u64_list("run.checkpoints");
    if (cps.empty()) {
        for (std::uint64_t p = 10; p < n; p *= 10) cps.push_back(p);
        cps.push_back(n);
    }
    std::sort(cps.begin(), cps.end());
    cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
    if (cps.front() < 1 || cps.back() > n)
        throw ConfigError("run.checkpoints must lie in [1, model.n]");
    return cps;
}

SimConfig RunConfig::sim_config(std::uint64_t replicate_seed, bool genealogy) const {
    SimConfig sc;
    sc.n = get_u64("model.n");
    sc.R = R();
    sc.F = F();
    sc.alpha = get_double("model.alpha");
    sc.V = V();
    sc.seed = replicate_seed;
    sc.record_genealogy = genealogy;
    sc.tie_rule = tie_rule();
    try {
        validate(sc);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return sc;
}

std::string RunConfig::manifest(std::string_view command) const {
    std::string out = "# " + std::string(kFormatVersion) + "\n# command: " + std::string(command) + "\n";
    for (const auto& [k, v] : values_) out += k + "=" + v + "\n";
    return out;
}

std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t replicate) {
    return stream_seed(master, replicate);
}

}  // namespace pac
