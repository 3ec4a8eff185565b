#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ofdmsim/bitsource.hpp"
#include "ofdmsim/metrics.hpp"

namespace ofdmsim {

/// Stopping rule for the raw (no OFDM) modem loop: stop once both minimums
/// are met, or at max_bits.
struct RawModemBudget {
    std::uint64_t min_bits = 1'000'000;
    std::uint64_t target_errors = 1000;
    std::uint64_t max_bits = 100'000'000;
};

/// Gray M-PSK straight over AWGN, no framing. Same noise calibration as the
/// OFDM chain.
ErrorCount run_raw_modem(unsigned order, double ebno_db, std::uint64_t seed, std::uint64_t cell_id,
                         const RawModemBudget& budget = {}, double noise_scale = 1.0);

struct ValidationOptions {
    std::uint64_t seed = kDefaultSeed;
    double noise_scale = 1.0;
    /// Relative tolerance between simulated and theoretical BER.
    double relative_tolerance = 0.10;
};

struct ValidationRow {
    std::string check;  // "theory", "ofdm", "noiseless"
    unsigned order = 8;
    double ebno_db = 0.0;
    std::string detail;
    std::uint64_t bits = 0;
    std::uint64_t errors = 0;
    double simulated = 0.0;
    double reference = 0.0;
    Interval interval;
    bool pass = false;
};

/// AWGN self-check: raw modem against the closed form, the OFDM chain against
/// the raw modem, and noiseless identity over the full framing grid.
std::vector<ValidationRow> run_validation(const ValidationOptions& options = {});

std::string format_validation_table(const std::vector<ValidationRow>& rows);

}  // namespace ofdmsim
