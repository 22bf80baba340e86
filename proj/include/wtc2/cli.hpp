#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wtc2/dmc_sim.hpp"
#include "wtc2/gaussian_model.hpp"
#include "wtc2/key_agreement.hpp"

namespace wtc2 {

enum class RegionMode { cj, kx, kg, all };

struct KeyrateConfig {
    std::optional<double> rho1n;  ///< defaults to rho1 (full jamming)
    std::optional<double> rho2n;
    Chain chain = Chain::A;
    std::optional<double> rp_max;  ///< defaults to the curve's saturation point
    int rp_points = 101;
};

struct SimConfig {
    std::string dmc_path;
    RateSpec rates;
    std::vector<int> n_list{2, 3, 4, 5, 6};
    int codes_per_n = 20;
    std::vector<double> pc1;  ///< empty means uniform over the prefix inputs
    std::vector<double> pc2;
    bool error = true;
    std::uint64_t mc_trials = 20000;
};

struct RunConfig {
    ChannelParams channel;
    int grid = 200;
    RegionMode mode = RegionMode::all;
    std::uint64_t seed = 0;
    std::string out;  ///< output directory; empty sends keyrate/sim output to stdout
    int test_channels = kTestChannelCount;
    int exchange_steps = 1;
    KeyrateConfig keyrate;
    SimConfig sim;

    /// Throws ConfigError.
    void validate() const;
};

/// fig4, fig5 or fig6 channel parameters. Throws ConfigError for other names.
ChannelParams preset(const std::string& name);

/// Strict reader: unknown fields throw ConfigError.
RunConfig parse_run_config(const nlohmann::json& j);

/// Writes cj.csv, kx.csv, kg.csv (as selected by the mode) and sweep.csv into
/// cfg.out. Notes about empty regions go to `log`.
void run_regions(const RunConfig& cfg, std::ostream& log);

/// "rp,rk" samples of the key-rate curve for cfg.keyrate.
void run_keyrate(const RunConfig& cfg, std::ostream& out);

/// Threshold experiment on the channel file in cfg.sim, as JSON.
void run_sim(const RunConfig& cfg, std::ostream& out);

/// Entry point of the wtc2 tool. Returns 0 on success, 1 on usage or config
/// errors, 2 on runtime errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wtc2
