#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "ofdmsim/errors.hpp"

using namespace ofdmsim;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "ofdmsim");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "ofdmsim_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("single prints one JSON record") {
    const auto r = invoke({"single", "--fft", "512", "--cp", "1/4", "--channel", "awgn", "--ebno", "10", "--seed",
                           "7", "--max-bits", "20000"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["fft_size"] == 512);
    CHECK(j["cp_fraction"] == "1/4");
    CHECK(j["channel"] == "awgn");
    CHECK(j["seed"] == 7);
    CHECK(j["equalizer"] == true);
    CHECK(r.err.find("effective config") != std::string::npos);
}

TEST_CASE("single rejects a non-integer prefix and echoes --no-equalizer") {
    CHECK(invoke({"single", "--fft", "64", "--cp", "1/3", "--ebno", "5"}).code == cli::kExitBadConfig);

    const auto r = invoke({"single", "--fft", "64", "--cp", "1/4", "--ebno", "20", "--channel", "flat",
                           "--no-equalizer", "--max-bits", "3000"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["equalizer"] == false);
}

TEST_CASE("unknown flags and bad values are hard errors") {
    CHECK(invoke({"single", "--fft", "64", "--cp", "1/4", "--ebno", "5", "--bogus"}).code == cli::kExitBadConfig);
    CHECK(invoke({"sweep", "--channel", "rician"}).code == cli::kExitBadConfig);
    CHECK(invoke({}).code == cli::kExitBadConfig);
    CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("help lists every sweep flag") {
    const auto r = invoke({"sweep", "--help"});
    CHECK(r.code == 0);
    for (const char* flag : {"--config", "--out", "--plots", "--seed", "--fft", "--cp", "--ebno", "--channel",
                             "--tdl-taps", "--tdl-len", "--tdl-decay-db", "--account-cp-overhead",
                             "--modulation-order", "--max-bits", "--target-errors", "--bit-budget", "--no-equalizer",
                             "--format"}) {
        CHECK_MESSAGE(r.out.find(flag) != std::string::npos, flag);
    }
}

TEST_CASE("sweep writes records and plots; flags override the config file") {
    const auto config = scratch("grid.json");
    std::ofstream(config) << R"({"fft_sizes": [64, 128], "cp_fractions": ["1/4"], "ebno_db": [0, 4],
                                 "channel": "awgn", "max_bits_per_cell": 5000, "seed": 1})";
    const auto out = scratch("out.csv");
    const auto plots = scratch("plots");
    std::filesystem::remove_all(plots);

    const auto r = invoke({"sweep", "--config", config.string(), "--out", out.string(), "--plots", plots.string(),
                           "--seed", "42", "--cp", "1/4", "1/16"});
    REQUIRE(r.code == 0);
    const std::string csv = slurp(out);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 2 * 2);
    CHECK(csv.find(",42,") != std::string::npos);
    CHECK(csv.find("1/16") != std::string::npos);
    CHECK(std::filesystem::exists(plots / "ber_fft64.svg"));
    CHECK(std::filesystem::exists(plots / "ber_fft128.svg"));

    // Same invocation twice gives identical bytes.
    const auto again = scratch("again.csv");
    invoke({"sweep", "--config", config.string(), "--out", again.string(), "--seed", "42", "--cp", "1/4", "1/16"});
    CHECK(slurp(again) == csv);

    const auto json_out = scratch("out.json");
    CHECK(invoke({"sweep", "--config", config.string(), "--out", json_out.string()}).code == 0);
    CHECK(json::parse(slurp(json_out)).size() == 4);
}

TEST_CASE("sweep exit codes") {
    const auto missing = invoke({"sweep", "--config", "/no/such/grid.json"});
    CHECK(missing.code == cli::kExitBadConfig);
    CHECK(missing.err.find("/no/such/grid.json") != std::string::npos);

    const auto config = scratch("tiny.json");
    std::ofstream(config) << R"({"fft_sizes": [64], "cp_fractions": ["1/4"], "ebno_db": [0],
                                 "channel": "awgn", "max_bits_per_cell": 1000})";
    CHECK(invoke({"sweep", "--config", config.string(), "--out", "/no/such/dir/out.csv"}).code ==
          cli::kExitIoFailure);

    const auto bad = scratch("bad.json");
    std::ofstream(bad) << R"({"fft_sizes": [64], "unknown_key": 1})";
    CHECK(invoke({"sweep", "--config", bad.string()}).code == cli::kExitBadConfig);

    const auto partial = scratch("partial.json");
    std::ofstream(partial) << R"({"fft_sizes": [64, 96], "cp_fractions": ["1/4"], "ebno_db": [0],
                                  "channel": "awgn", "max_bits_per_cell": 1000})";
    CHECK(invoke({"sweep", "--config", partial.string(), "--out", scratch("partial.csv").string()}).code ==
          cli::kExitBadConfig);
}

TEST_CASE("plot re-renders a saved record file") {
    const auto config = scratch("plotgrid.json");
    std::ofstream(config) << R"({"fft_sizes": [256], "cp_fractions": ["1/2", "1/32"], "ebno_db": [0, 20],
                                 "channel": "awgn", "max_bits_per_cell": 3000})";
    const auto csv = scratch("plot.csv");
    REQUIRE(invoke({"sweep", "--config", config.string(), "--out", csv.string()}).code == 0);
    const auto dir = scratch("replot");
    std::filesystem::remove_all(dir);
    CHECK(invoke({"plot", "--in", csv.string(), "--plots", dir.string()}).code == 0);
    CHECK(std::filesystem::exists(dir / "ber_fft256.svg"));
    CHECK(invoke({"plot", "--in", "/no/such.csv"}).code == cli::kExitIoFailure);
}

TEST_CASE("grid config parsing") {
    const auto g = cli::grid_from_json(json::parse(R"({"ebno_range": {"start": 0, "stop": 20, "step": 2},
                                                        "tdl_taps": [2, 1, 1], "cp_fractions": ["0", "1/8"]})"));
    CHECK(g.ebno_points_db.size() == 11);
    CHECK(g.ebno_points_db.back() == 20.0);
    CHECK(g.channel.kind == ChannelKind::tdl);
    CHECK(g.channel.tap_powers == std::vector<double>{0.5, 0.25, 0.25});
    CHECK(g.cp_fractions[0] == CpFraction(0, 1));

    const auto d = cli::grid_from_json(json::object());
    CHECK(d.master_seed == kDefaultSeed);
    CHECK(d.channel.tap_powers.size() == kDefaultTdlLength);
    CHECK(d.fft_sizes == std::vector<std::size_t>{64, 128, 256, 512});

    CHECK_THROWS_AS(cli::grid_from_json(json::parse(R"({"fft_sizes": [100]})")), ConfigError);
    CHECK_THROWS_AS(cli::grid_from_json(json::parse(R"({"tdl_taps": [1], "tdl_len": 3})")), ConfigError);
    CHECK_THROWS_AS(cli::grid_from_json(json::parse(R"({"modulation_order": 6})")), OrderError);
    CHECK_THROWS_AS(cli::grid_from_json(json::parse(R"({"cp_fractions": [0.25]})")), ConfigError);
}
