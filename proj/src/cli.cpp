#include "wtc2/cli.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "wtc2/csv.hpp"
#include "wtc2/dmc_io.hpp"
#include "wtc2/errors.hpp"
#include "wtc2/regions.hpp"

namespace wtc2 {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where)
{
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) throw ConfigError("unknown field \"" + key + "\" in " + where);
    }
}

template <typename T>
T get_as(const json& obj, const char* key, const std::string& where)
{
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("field \"") + key + "\" in " + where + " has the wrong type");
    }
}

template <typename T>
void read_if(const json& obj, const char* key, T& dst, const std::string& where)
{
    if (obj.contains(key)) dst = get_as<T>(obj, key, where);
}

RegionMode parse_mode(const std::string& s)
{
    if (s == "cj") return RegionMode::cj;
    if (s == "kx") return RegionMode::kx;
    if (s == "kg") return RegionMode::kg;
    if (s == "all") return RegionMode::all;
    throw ConfigError("mode must be one of cj, kx, kg, all");
}

Chain parse_chain(const std::string& s)
{
    if (s == "A" || s == "a") return Chain::A;
    if (s == "B" || s == "b") return Chain::B;
    throw ConfigError("chain must be A or B");
}

std::filesystem::path out_dir(const RunConfig& cfg)
{
    if (cfg.out.empty()) throw ConfigError("regions needs an output directory (--out)");
    std::filesystem::path dir(cfg.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
    return dir;
}

void write_file(const std::filesystem::path& p, const std::string& text)
{
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << text;
}

std::vector<double> uniform(int k)
{
    return std::vector<double>(static_cast<std::size_t>(k), 1.0 / k);
}

}  // namespace

void RunConfig::validate() const
{
    try {
        channel.validate();
    } catch (const ParameterError& e) {
        throw ConfigError(e.what());
    }
    if (grid < 2) throw ConfigError("grid must be >= 2");
    if (test_channels < 1) throw ConfigError("test_channels must be >= 1");
    if (exchange_steps < 1) throw ConfigError("exchange_steps must be >= 1");
    if (keyrate.rp_points < 2) throw ConfigError("keyrate.rp_points must be >= 2");
    if (keyrate.rp_max && !(*keyrate.rp_max > 0.0)) throw ConfigError("keyrate.rp_max must be > 0");
    if (sim.codes_per_n < 1) throw ConfigError("sim.codes_per_n must be >= 1");
    for (int n : sim.n_list) {
        if (n < 1 || n > kMaxBlockLength) throw ConfigError("sim.n_list entries must lie in [1, 8]");
    }
    for (double r : {sim.rates.r1, sim.rates.r2, sim.rates.r1p, sim.rates.r2p}) {
        if (!(r >= 0.0)) throw ConfigError("sim rates must be >= 0");
    }
}

ChannelParams preset(const std::string& name)
{
    ChannelParams p;
    if (name == "fig4") {
        p.rho1 = 1.0;
        p.rho2 = 100.0;
        p.h1 = 1.0;
        p.h2 = 0.1;
    } else if (name == "fig5") {
        p.rho1 = p.rho2 = 1.0;
        p.h1 = p.h2 = 1.5;
    } else if (name == "fig6") {
        p.rho1 = p.rho2 = 0.9;
        p.h1 = p.h2 = 10.0;
    } else {
        throw ConfigError("unknown preset \"" + name + "\" (expected fig4, fig5 or fig6)");
    }
    p.g1 = p.g2 = 1.0;
    return p;
}

RunConfig parse_run_config(const json& j)
{
    reject_unknown(j, {"preset", "channel", "grid", "mode", "seed", "out", "test_channels", "exchange_steps",
                       "keyrate", "sim"},
                   "config");
    RunConfig c;
    if (j.contains("preset")) c.channel = preset(get_as<std::string>(j, "preset", "config"));
    if (j.contains("channel")) {
        const json& ch = j.at("channel");
        reject_unknown(ch, {"g1", "g2", "h1", "h2", "rho1", "rho2"}, "channel");
        read_if(ch, "g1", c.channel.g1, "channel");
        read_if(ch, "g2", c.channel.g2, "channel");
        read_if(ch, "h1", c.channel.h1, "channel");
        read_if(ch, "h2", c.channel.h2, "channel");
        read_if(ch, "rho1", c.channel.rho1, "channel");
        read_if(ch, "rho2", c.channel.rho2, "channel");
    }
    read_if(j, "grid", c.grid, "config");
    if (j.contains("mode")) c.mode = parse_mode(get_as<std::string>(j, "mode", "config"));
    read_if(j, "seed", c.seed, "config");
    read_if(j, "out", c.out, "config");
    read_if(j, "test_channels", c.test_channels, "config");
    read_if(j, "exchange_steps", c.exchange_steps, "config");

    if (j.contains("keyrate")) {
        const json& k = j.at("keyrate");
        reject_unknown(k, {"rho1n", "rho2n", "chain", "rp_max", "rp_points"}, "keyrate");
        if (k.contains("rho1n")) c.keyrate.rho1n = get_as<double>(k, "rho1n", "keyrate");
        if (k.contains("rho2n")) c.keyrate.rho2n = get_as<double>(k, "rho2n", "keyrate");
        if (k.contains("chain")) c.keyrate.chain = parse_chain(get_as<std::string>(k, "chain", "keyrate"));
        if (k.contains("rp_max")) c.keyrate.rp_max = get_as<double>(k, "rp_max", "keyrate");
        read_if(k, "rp_points", c.keyrate.rp_points, "keyrate");
    }
    if (j.contains("sim")) {
        const json& s = j.at("sim");
        reject_unknown(s, {"dmc", "rates", "n_list", "codes_per_n", "pc1", "pc2", "error", "mc_trials"}, "sim");
        read_if(s, "dmc", c.sim.dmc_path, "sim");
        if (s.contains("rates")) {
            const json& r = s.at("rates");
            reject_unknown(r, {"r1", "r2", "r1p", "r2p"}, "sim.rates");
            read_if(r, "r1", c.sim.rates.r1, "sim.rates");
            read_if(r, "r2", c.sim.rates.r2, "sim.rates");
            read_if(r, "r1p", c.sim.rates.r1p, "sim.rates");
            read_if(r, "r2p", c.sim.rates.r2p, "sim.rates");
        }
        read_if(s, "n_list", c.sim.n_list, "sim");
        read_if(s, "codes_per_n", c.sim.codes_per_n, "sim");
        read_if(s, "pc1", c.sim.pc1, "sim");
        read_if(s, "pc2", c.sim.pc2, "sim");
        read_if(s, "error", c.sim.error, "sim");
        read_if(s, "mc_trials", c.sim.mc_trials, "sim");
    }
    c.validate();
    return c;
}

void run_regions(const RunConfig& cfg, std::ostream& log)
{
    cfg.validate();
    const auto dir = out_dir(cfg);
    SweepOptions opts;
    opts.grid = cfg.grid;
    opts.want_cj = cfg.mode == RegionMode::cj || cfg.mode == RegionMode::all;
    opts.want_kx = cfg.mode == RegionMode::kx || cfg.mode == RegionMode::all;
    opts.want_kg = cfg.mode == RegionMode::kg || cfg.mode == RegionMode::all;
    opts.test_channels = cfg.test_channels;
    opts.exchange_steps = cfg.exchange_steps;
    const RegionSet rs = sweep_regions(cfg.channel, opts);

    auto emit = [&](bool want, const char* name, const Polygon2& poly) {
        if (!want) return;
        std::ostringstream os;
        if (trivial_region(poly)) {
            os << "R1,R2\n";
            log << "note: " << name << " region is empty (no positive rate pair)\n";
        } else {
            write_polygon_csv(os, poly);
        }
        write_file(dir / (std::string(name) + ".csv"), os.str());
    };
    emit(opts.want_cj, "cj", rs.cj);
    emit(opts.want_kx, "kx", rs.kx);
    emit(opts.want_kg, "kg", rs.kg);

    std::ostringstream sweep;
    write_sweep_csv(sweep, rs.cells);
    write_file(dir / "sweep.csv", sweep.str());
}

void run_keyrate(const RunConfig& cfg, std::ostream& out)
{
    cfg.validate();
    const PowerSplit split{cfg.keyrate.rho1n.value_or(cfg.channel.rho1), cfg.keyrate.rho2n.value_or(cfg.channel.rho2)};
    try {
        split.validate(cfg.channel);
    } catch (const ParameterError& e) {
        throw ConfigError(e.what());
    }
    const ScalarDegradedSource src = reduce_dms(induced_dms_cov(cfg.channel, split), cfg.keyrate.chain);
    const KeyRateCurve curve = key_rate_curve(src, cfg.test_channels);
    const double rp_max = cfg.keyrate.rp_max.value_or(std::max(curve.breakpoints().back().rp, 1e-12));
    std::vector<double> grid(static_cast<std::size_t>(cfg.keyrate.rp_points));
    for (int i = 0; i < cfg.keyrate.rp_points; ++i) {
        grid[i] = i == cfg.keyrate.rp_points - 1 ? rp_max : rp_max * i / (cfg.keyrate.rp_points - 1);
    }
    const auto pts = sample_curve(curve, grid);

    std::ostringstream os;
    write_keyrate_csv(os, pts);
    if (cfg.out.empty()) {
        out << os.str();
    } else {
        std::filesystem::create_directories(cfg.out);
        write_file(std::filesystem::path(cfg.out) / "keyrate.csv", os.str());
    }
}

void run_sim(const RunConfig& cfg, std::ostream& out)
{
    cfg.validate();
    if (cfg.sim.dmc_path.empty()) throw ConfigError("sim needs a channel file (--dmc or sim.dmc)");
    const DmcDocument doc = load_dmc_file(cfg.sim.dmc_path);
    const auto pc1 = cfg.sim.pc1.empty() ? uniform(doc.prefix.nc1()) : cfg.sim.pc1;
    const auto pc2 = cfg.sim.pc2.empty() ? uniform(doc.prefix.nc2()) : cfg.sim.pc2;

    ThresholdOptions opts;
    opts.n_list = cfg.sim.n_list;
    opts.codes_per_n = cfg.sim.codes_per_n;
    opts.seed = cfg.seed;
    opts.compute_error = cfg.sim.error;
    opts.mc_trials = cfg.sim.mc_trials;
    const ThresholdTable table = threshold_experiment(doc.dmc, doc.prefix, pc1, pc2, cfg.sim.rates, opts);
    const std::string text = threshold_to_json(table, cfg.seed).dump(2) + "\n";
    if (cfg.out.empty()) {
        out << text;
    } else {
        std::filesystem::create_directories(cfg.out);
        write_file(std::filesystem::path(cfg.out) / "sim.json", text);
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Rate regions, key-rate curves and finite-length secrecy simulations for the two-way wiretap channel",
                 "wtc2"};
    app.require_subcommand(1);

    struct Common {
        std::string config;
        std::string preset;
        int grid = 0;
        std::string mode;
        std::uint64_t seed = 0;
        std::string out;
    };
    Common common;
    struct Flags {
        double rho1n = 0, rho2n = 0, rp_max = 0;
        int rp_points = 0;
        std::string chain, dmc;
        std::vector<int> n_list;
        int codes = 0;
        double r1 = 0, r2 = 0, r1p = 0, r2p = 0;
    } f;

    const char* preset_help =
        "Channel preset: fig4 (rho1=1, rho2=100, h1=1, h2=0.1, g=1; pass a config for h1=10), fig5 (rho=1, h=1.5, g=1), fig6 (rho=0.9, h=10, g=1)";

    auto* regions = app.add_subcommand("regions", "Sweep jamming powers and write the cj/kx/kg hulls as CSV");
    auto* keyrate = app.add_subcommand("keyrate", "Key rate versus public-discussion rate as CSV");
    auto* sim = app.add_subcommand("sim", "Exact leakage and ML error of random codes on a discrete channel, as JSON");
    for (auto* s : {regions, keyrate, sim}) {
        s->add_option("--config", common.config, "JSON run configuration");
        s->add_option("--preset", common.preset, preset_help)->check(CLI::IsMember({"fig4", "fig5", "fig6"}));
        s->add_option("--seed", common.seed, "Seed (unsigned 64-bit)");
        s->add_option("--out", common.out, "Output directory");
    }
    for (auto* s : {regions, keyrate}) {
        s->add_option("--grid", common.grid, "Grid points per jamming-power axis (>= 2)");
    }
    regions->add_option("--mode", common.mode, "Regions to emit")->check(CLI::IsMember({"cj", "kx", "kg", "all"}));
    keyrate->add_option("--rho1n", f.rho1n, "User 1 jamming power (default: rho1)");
    keyrate->add_option("--rho2n", f.rho2n, "User 2 jamming power (default: rho2)");
    keyrate->add_option("--chain", f.chain, "Degraded source: A (user 1 noise) or B (user 2 noise)")
        ->check(CLI::IsMember({"A", "B", "a", "b"}));
    keyrate->add_option("--rp-max", f.rp_max, "Largest public rate sampled");
    keyrate->add_option("--rp-points", f.rp_points, "Number of public rates sampled");
    sim->add_option("--dmc", f.dmc, "Channel description (JSON)");
    sim->add_option("--n", f.n_list, "Block lengths")->delimiter(',');
    sim->add_option("--codes", f.codes, "Random codes per block length");
    sim->add_option("--r1", f.r1, "Secret rate of user 1");
    sim->add_option("--r2", f.r2, "Secret rate of user 2");
    sim->add_option("--r1p", f.r1p, "Auxiliary rate of user 1");
    sim->add_option("--r2p", f.r2p, "Auxiliary rate of user 2");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    auto* active = app.get_subcommands().front();
    auto given = [&](const char* name) { return active->count(name) > 0; };
    RunConfig cfg;
    try {
        if (given("--config")) {
            std::ifstream in(common.config);
            if (!in) throw ConfigError("cannot open config " + common.config);
            json j;
            try {
                in >> j;
            } catch (const json::parse_error& e) {
                throw ConfigError(common.config + ": " + e.what());
            }
            cfg = parse_run_config(j);
        }
        if (given("--preset")) cfg.channel = preset(common.preset);
        if (active != sim && given("--grid")) cfg.grid = common.grid;
        if (active == regions && given("--mode")) cfg.mode = parse_mode(common.mode);
        if (given("--seed")) cfg.seed = common.seed;
        if (given("--out")) cfg.out = common.out;
        if (active == keyrate) {
            if (given("--rho1n")) cfg.keyrate.rho1n = f.rho1n;
            if (given("--rho2n")) cfg.keyrate.rho2n = f.rho2n;
            if (given("--chain")) cfg.keyrate.chain = parse_chain(f.chain);
            if (given("--rp-max")) cfg.keyrate.rp_max = f.rp_max;
            if (given("--rp-points")) cfg.keyrate.rp_points = f.rp_points;
        }
        if (active == sim) {
            if (given("--dmc")) cfg.sim.dmc_path = f.dmc;
            if (given("--n")) cfg.sim.n_list = f.n_list;
            if (given("--codes")) cfg.sim.codes_per_n = f.codes;
            if (given("--r1")) cfg.sim.rates.r1 = f.r1;
            if (given("--r2")) cfg.sim.rates.r2 = f.r2;
            if (given("--r1p")) cfg.sim.rates.r1p = f.r1p;
            if (given("--r2p")) cfg.sim.rates.r2p = f.r2p;
        }
        cfg.validate();
    } catch (const ConfigError& e) {
        err << "wtc2: " << e.what() << '\n';
        return 1;
    }

    try {
        if (active == regions) {
            run_regions(cfg, err);
        } else if (active == keyrate) {
            run_keyrate(cfg, out);
        } else {
            run_sim(cfg, out);
        }
    } catch (const ConfigError& e) {
        err << "wtc2: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "wtc2: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace wtc2
