#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ofdmsim/errors.hpp"
#include "ofdmsim/plot.hpp"
#include "ofdmsim/record_io.hpp"
#include "ofdmsim/validation.hpp"

namespace ofdmsim::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kConfigKeys{
    "fft_sizes",   "cp_fractions",       "ebno_db", "ebno_range",        "modulation_order", "channel",
    "tdl_taps",    "tdl_len",            "tdl_decay_db", "account_cp_overhead", "seed", "max_bits_per_cell",
    "target_errors", "bit_budget",       "equalizer",
};

template <typename T>
T get_as(const json& config, const char* key) {
    try {
        return config.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

std::vector<double> ebno_range(const json& range) {
    const double start = get_as<double>(range, "start");
    const double stop = get_as<double>(range, "stop");
    const double step = get_as<double>(range, "step");
    if (!(step > 0.0) || stop < start) throw ConfigError("ebno_range needs step > 0 and stop >= start");
    std::vector<double> points;
    const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9));
    for (long long i = 0; i <= count; ++i) points.push_back(start + static_cast<double>(i) * step);
    return points;
}

ChannelSpec channel_from_json(const json& config) {
    const std::string kind = config.contains("channel") ? get_as<std::string>(config, "channel") : "tdl";
    ChannelSpec spec;
    spec.kind = parse_channel_kind(kind);
    spec.account_cp_overhead =
        config.contains("account_cp_overhead") ? get_as<bool>(config, "account_cp_overhead") : false;
    if (spec.kind != ChannelKind::tdl) return spec;

    if (config.contains("tdl_taps")) {
        if (config.contains("tdl_len") || config.contains("tdl_decay_db")) {
            throw ConfigError("give either tdl_taps or tdl_len/tdl_decay_db, not both");
        }
        auto taps = get_as<std::vector<double>>(config, "tdl_taps");
        for (double p : taps) {
            if (!(p >= 0.0) || !std::isfinite(p)) throw ConfigError("tdl_taps must be finite and non-negative");
        }
        const double sum = std::accumulate(taps.begin(), taps.end(), 0.0);
        if (taps.empty() || !(sum > 0.0)) throw ConfigError("tdl_taps must contain positive power");
        for (auto& p : taps) p /= sum;
        spec.tap_powers = std::move(taps);
    } else {
        const auto len = config.contains("tdl_len") ? get_as<std::size_t>(config, "tdl_len") : kDefaultTdlLength;
        const double decay = config.contains("tdl_decay_db") ? get_as<double>(config, "tdl_decay_db") : kDefaultTdlDecayDb;
        spec.tap_powers = exponential_pdp(len, decay);
    }
    spec.validate();
    return spec;
}

}  // namespace

SweepGrid grid_from_json(const json& config) {
    if (!config.is_object()) throw ConfigError("grid config must be a JSON object");
    for (const auto& [key, value] : config.items()) {
        if (!kConfigKeys.contains(key)) throw ConfigError("unknown config key '" + key + "'");
    }
    SweepGrid grid;
    if (config.contains("fft_sizes")) grid.fft_sizes = get_as<std::vector<std::size_t>>(config, "fft_sizes");
    if (config.contains("cp_fractions")) {
        grid.cp_fractions.clear();
        for (const auto& s : get_as<std::vector<std::string>>(config, "cp_fractions")) {
            grid.cp_fractions.push_back(CpFraction::parse(s));
        }
    }
    if (config.contains("ebno_db") && config.contains("ebno_range")) {
        throw ConfigError("give either ebno_db or ebno_range, not both");
    }
    if (config.contains("ebno_db")) grid.ebno_points_db = get_as<std::vector<double>>(config, "ebno_db");
    if (config.contains("ebno_range")) grid.ebno_points_db = ebno_range(config.at("ebno_range"));
    if (config.contains("modulation_order")) grid.modulation_order = get_as<unsigned>(config, "modulation_order");
    grid.channel = channel_from_json(config);
    if (config.contains("seed")) grid.master_seed = get_as<std::uint64_t>(config, "seed");
    if (config.contains("max_bits_per_cell")) grid.max_bits_per_cell = get_as<std::uint64_t>(config, "max_bits_per_cell");
    if (config.contains("target_errors")) grid.target_errors = get_as<std::uint64_t>(config, "target_errors");
    if (config.contains("bit_budget")) grid.bit_budget = get_as<std::size_t>(config, "bit_budget");
    if (config.contains("equalizer")) grid.equalizer = get_as<bool>(config, "equalizer");

    if (grid.fft_sizes.empty() || grid.cp_fractions.empty() || grid.ebno_points_db.empty()) {
        throw ConfigError("fft_sizes, cp_fractions and ebno points must be non-empty");
    }
    for (std::size_t n : grid.fft_sizes) {
        if (!is_power_of_two(n)) throw ConfigError("fft size " + std::to_string(n) + " is not a power of two");
    }
    (void)Constellation(grid.modulation_order);
    if (grid.bit_budget == 0) throw ConfigError("bit_budget must be positive");
    if (grid.max_bits_per_cell == 0) throw ConfigError("max_bits_per_cell must be positive");
    return grid;
}

json grid_to_json(const SweepGrid& grid) {
    json j;
    j["fft_sizes"] = grid.fft_sizes;
    std::vector<std::string> fractions;
    for (const auto& g : grid.cp_fractions) fractions.push_back(g.to_string());
    j["cp_fractions"] = fractions;
    j["ebno_db"] = grid.ebno_points_db;
    j["modulation_order"] = grid.modulation_order;
    j["channel"] = std::string(to_string(grid.channel.kind));
    if (grid.channel.kind == ChannelKind::tdl) j["tdl_taps"] = grid.channel.tap_powers;
    j["account_cp_overhead"] = grid.channel.account_cp_overhead;
    j["seed"] = grid.master_seed;
    j["max_bits_per_cell"] = grid.max_bits_per_cell;
    j["target_errors"] = grid.target_errors;
    j["bit_budget"] = grid.bit_budget;
    j["equalizer"] = grid.equalizer;
    return j;
}

json load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("config file '" + path.string() + "' is not valid JSON: " + e.what());
    }
}

namespace {

// Flags shared by `sweep` and `single`; each maps onto a config key.
struct GridFlags {
    std::string config_path;
    std::vector<std::size_t> fft;
    std::vector<std::string> cp;
    std::vector<double> ebno;
    std::string channel;
    std::vector<double> tdl_taps;
    std::size_t tdl_len = 0;
    double tdl_decay_db = 0.0;
    bool account_cp_overhead = false;
    unsigned modulation_order = 0;
    std::uint64_t seed = 0;
    std::uint64_t max_bits = 0;
    std::uint64_t target_errors = 0;
    std::size_t bit_budget = 0;
    bool no_equalizer = false;

    CLI::Option* fft_opt = nullptr;
    CLI::Option* cp_opt = nullptr;
    CLI::Option* ebno_opt = nullptr;
    CLI::Option* channel_opt = nullptr;
    CLI::Option* taps_opt = nullptr;
    CLI::Option* len_opt = nullptr;
    CLI::Option* decay_opt = nullptr;
    CLI::Option* overhead_opt = nullptr;
    CLI::Option* order_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* max_bits_opt = nullptr;
    CLI::Option* target_opt = nullptr;
    CLI::Option* budget_opt = nullptr;
    CLI::Option* no_eq_opt = nullptr;

    void add_to(CLI::App& app, bool single) {
        if (!single) app.add_option("--config", config_path, "Grid config JSON file");
        if (single) {
            fft.resize(1);
            cp.resize(1);
            ebno.resize(1);
            fft_opt = app.add_option("--fft", fft[0], "FFT size")->required();
            cp_opt = app.add_option("--cp", cp[0], "Cyclic prefix fraction, e.g. 1/4")->required();
            ebno_opt = app.add_option("--ebno", ebno[0], "Eb/No in dB")->required();
        } else {
            fft_opt = app.add_option("--fft", fft, "FFT sizes");
            cp_opt = app.add_option("--cp", cp, "Cyclic prefix fractions, e.g. 1/4 1/16");
            ebno_opt = app.add_option("--ebno", ebno, "Eb/No points in dB");
        }
        channel_opt = app.add_option("--channel", channel, "Channel model: awgn, flat or tdl")
                          ->check(CLI::IsMember({"awgn", "flat", "tdl"}));
        taps_opt = app.add_option("--tdl-taps", tdl_taps, "Explicit tdl tap powers (normalized to unit sum)");
        len_opt = app.add_option("--tdl-len", tdl_len, "Exponential tdl profile length in taps");
        decay_opt = app.add_option("--tdl-decay-db", tdl_decay_db, "Exponential tdl decay per tap in dB");
        overhead_opt = app.add_flag("--account-cp-overhead", account_cp_overhead,
                                    "Charge the cyclic prefix energy to Eb");
        order_opt = app.add_option("--modulation-order", modulation_order, "PSK order M");
        seed_opt = app.add_option("--seed", seed, "Master seed (default 0x0FDA0FDA0FDA0FDA)");
        max_bits_opt = app.add_option("--max-bits", max_bits, "Bit cap per cell");
        target_opt = app.add_option("--target-errors", target_errors, "Stop a cell after this many errors");
        budget_opt = app.add_option("--bit-budget", bit_budget, "Information bits per Monte Carlo repetition");
        no_eq_opt = app.add_flag("--no-equalizer", no_equalizer, "Skip zero-forcing equalization");
    }

    json effective_config() const {
        json config = config_path.empty() ? json::object() : load_config_file(config_path);
        if (!config.is_object()) throw ConfigError("grid config must be a JSON object");
        if (fft_opt->count()) config["fft_sizes"] = fft;
        if (cp_opt->count()) config["cp_fractions"] = cp;
        if (ebno_opt->count()) {
            config.erase("ebno_range");
            config["ebno_db"] = ebno;
        }
        if (channel_opt->count()) config["channel"] = channel;
        if (taps_opt->count() || len_opt->count() || decay_opt->count()) {
            config.erase("tdl_taps");
            config.erase("tdl_len");
            config.erase("tdl_decay_db");
        }
        if (taps_opt->count()) config["tdl_taps"] = tdl_taps;
        if (len_opt->count()) config["tdl_len"] = tdl_len;
        if (decay_opt->count()) config["tdl_decay_db"] = tdl_decay_db;
        if (overhead_opt->count()) config["account_cp_overhead"] = account_cp_overhead;
        if (order_opt->count()) config["modulation_order"] = modulation_order;
        if (seed_opt->count()) config["seed"] = seed;
        if (max_bits_opt->count()) config["max_bits_per_cell"] = max_bits;
        if (target_opt->count()) config["target_errors"] = target_errors;
        if (budget_opt->count()) config["bit_budget"] = bit_budget;
        if (no_eq_opt->count()) config["equalizer"] = false;
        return config;
    }
};

void echo_config(const SweepGrid& grid, std::ostream& err) {
    err << "effective config: " << grid_to_json(grid).dump() << "\n";
}

int cmd_sweep(const GridFlags& flags, const std::string& out_path, const std::string& format,
              const std::string& plots_dir, std::ostream& out, std::ostream& err) {
    const SweepGrid grid = grid_from_json(flags.effective_config());
    echo_config(grid, err);
    const unsigned workers = default_worker_count();
    const SweepResult result = run_grid(grid, workers);

    const RecordFormat fmt = format.empty() ? format_for_path(out_path)
                                            : (format == "json" ? RecordFormat::json : RecordFormat::csv);
    write_records(result.records, out_path, fmt);
    out << "wrote " << result.records.size() << " records to " << out_path << "\n";
    if (!plots_dir.empty() && !result.records.empty()) {
        for (const auto& p : emit_plot(result.records, plots_dir)) out << "wrote " << p.string() << "\n";
    }
    if (!result.failures.empty()) {
        err << result.failures.size() << " of " << grid.cell_count() << " cells failed:\n";
        for (const auto& f : result.failures) err << "  cell " << f.cell_id << ": " << f.message << "\n";
        return kExitBadConfig;
    }
    return kExitOk;
}

int cmd_single(const GridFlags& flags, std::uint64_t cell_id, std::ostream& out, std::ostream& err) {
    const SweepGrid grid = grid_from_json(flags.effective_config());
    echo_config(grid, err);
    const auto cell = grid.cell(0);
    cell.config.validate();
    const BerRecord record =
        run_cell(cell.config, grid.channel, cell.ebno_db, grid.master_seed, cell_id, grid.run_options());
    out << format_record_json(record, true) << "\n";
    return kExitOk;
}

int cmd_validate(std::uint64_t seed, double noise_scale, std::ostream& out) {
    ValidationOptions options;
    options.seed = seed;
    options.noise_scale = noise_scale;
    const auto rows = run_validation(options);
    out << format_validation_table(rows);
    bool all = true;
    for (const auto& r : rows) all = all && r.pass;
    out << (all ? "validation PASSED" : "validation FAILED") << "\n";
    return all ? kExitOk : kExitValidationFailed;
}

int cmd_plot(const std::string& in_path, const std::string& plots_dir, std::ostream& out) {
    const auto records = read_records(in_path);
    for (const auto& p : emit_plot(records, plots_dir)) out << "wrote " << p.string() << "\n";
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"OFDM cyclic-prefix BER simulator"};
    app.require_subcommand(1);

    auto* sweep = app.add_subcommand("sweep", "Run the FFT size x CP fraction x Eb/No grid");
    GridFlags sweep_flags;
    sweep_flags.add_to(*sweep, false);
    std::string out_path = "results.csv";
    std::string format;
    std::string plots_dir;
    sweep->add_option("--out", out_path, "Record output file (.csv or .json)");
    sweep->add_option("--format", format, "Force record format")->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--plots", plots_dir, "Directory for SVG plots");

    auto* single = app.add_subcommand("single", "Run one cell and print its record as JSON");
    GridFlags single_flags;
    single_flags.add_to(*single, true);
    std::uint64_t cell_id = 0;
    single->add_option("--cell-id", cell_id, "Substream id for this cell");

    auto* validate = app.add_subcommand("validate", "Check the AWGN chain against closed-form BER");
    std::uint64_t validate_seed = kDefaultSeed;
    double noise_scale = 1.0;
    validate->add_option("--seed", validate_seed, "Master seed");
    validate->add_option("--noise-scale", noise_scale, "Scale the calibrated noise variance (negative control)")
        ->check(CLI::PositiveNumber);

    auto* plot = app.add_subcommand("plot", "Render SVG plots from a record file");
    std::string in_path;
    std::string plot_dir = "plots";
    plot->add_option("--in", in_path, "Record file (.csv or .json)")->required();
    plot->add_option("--plots", plot_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitBadConfig;
    }

    try {
        if (*sweep) return cmd_sweep(sweep_flags, out_path, format, plots_dir, out, err);
        if (*single) return cmd_single(single_flags, cell_id, out, err);
        if (*validate) return cmd_validate(validate_seed, noise_scale, out);
        if (*plot) return cmd_plot(in_path, plot_dir, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIoFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitBadConfig;
    }
    return kExitBadConfig;
}

}  // namespace ofdmsim::cli
