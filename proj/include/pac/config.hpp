#ifndef PAC_CONFIG_HPP
#define PAC_CONFIG_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pac/distributions.hpp"
#include "pac/gw_dual.hpp"
#include "pac/urn.hpp"

namespace pac {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kFormatVersion = "pacsim-manifest-1";

// Flat key=value configuration. Every key has a default; unknown keys are
// rejected. Lines starting with '#' are comments.
class RunConfig {
public:
    RunConfig();

    void load_file(const std::string& path);
    void load_text(std::string_view text, const std::string& origin = "<text>");
    void set(const std::string& key, const std::string& value);
    // "key=value"
    void assign(std::string_view assignment);

    const std::string& get(const std::string& key) const;
    double get_double(const std::string& key) const;
    std::uint64_t get_u64(const std::string& key) const;
    std::vector<double> get_double_list(const std::string& key) const;
    std::vector<std::uint64_t> get_u64_list(const std::string& key) const;

    RDistribution R() const;
    RDistribution V() const;
    FitnessDistribution F() const;
    TieRule tie_rule() const;
    Rooting rooting() const;
    GWCaps caps() const;
    // grid.points equally spaced values in [0,1]
    std::vector<double> grid() const;
    // run.checkpoints, or powers of ten below n followed by n
    std::vector<std::uint64_t> checkpoints(std::uint64_t n) const;
    SimConfig sim_config(std::uint64_t replicate_seed, bool genealogy) const;

    // Replayable: feeding the manifest back as a config gives the same run.
    std::string manifest(std::string_view command) const;

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

// Seed of replicate i, also written to the CSV seed columns.
std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t replicate);

}  // namespace pac

#endif  // PAC_CONFIG_HPP
