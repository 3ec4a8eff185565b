#pragma once

#include <filesystem>
#include <iosfwd>

#include <json.hpp>

#include "ofdmsim/sweep_runner.hpp"

namespace ofdmsim::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitValidationFailed = 1,
    kExitBadConfig = 2,
    kExitIoFailure = 3,
};

/// Grid config file schema (all keys optional):
///   fft_sizes            [int]
///   cp_fractions         [string]  e.g. ["1/2", "1/4"]
///   ebno_db              [number]  or ebno_range {start, stop, step}
///   modulation_order     int
///   channel              "awgn" | "flat" | "tdl"
///   tdl_taps             [number]  explicit powers, normalized to unit sum
///   tdl_len, tdl_decay_db          exponential profile when tdl_taps is absent
///   account_cp_overhead  bool
///   seed                 uint64
///   max_bits_per_cell, target_errors, bit_budget   int
///   equalizer            bool
/// Unknown keys are rejected with ConfigError.
SweepGrid grid_from_json(const nlohmann::json& config);
nlohmann::json grid_to_json(const SweepGrid& grid);

/// Reads a grid config file. Missing or malformed files raise ConfigError.
nlohmann::json load_config_file(const std::filesystem::path& path);

/// Entry point behind the ofdmsim binary; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ofdmsim::cli
