#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ofdmsim/bitsource.hpp"
#include "ofdmsim/channel_models.hpp"
#include "ofdmsim/metrics.hpp"
#include "ofdmsim/ofdm_framing.hpp"

namespace ofdmsim {

inline constexpr std::uint64_t kDefaultTargetErrors = 100;
inline constexpr std::uint64_t kDefaultMaxBitsPerCell = 2'000'000;

/// Knobs that shape a cell's Monte Carlo loop without changing its physics.
struct RunOptions {
    std::uint64_t target_errors = kDefaultTargetErrors;
    std::uint64_t max_bits = kDefaultMaxBitsPerCell;
    bool equalizer = true;
    /// Multiplies the calibrated noise variance. Only for negative-control tests.
    double noise_scale = 1.0;
};

/// Runs one cell of the experiment: bits -> PSK -> S/P -> IDFT -> +CP -> P/S ->
/// channel -> frame split -> -CP -> DFT -> ZF -> demap, repeated until
/// target_errors are seen or max_bits are sent. Channel realizations are
/// redrawn every repetition: once per OFDM symbol for flat fading, once per
/// burst for tdl. Throws the config's validation errors.
BerRecord run_cell(const OfdmConfig& config, const ChannelSpec& channel, double ebno_db, std::uint64_t seed,
                   std::uint64_t cell_id, const RunOptions& options = {});

struct SweepGrid {
    std::vector<std::size_t> fft_sizes{64, 128, 256, 512};
    std::vector<CpFraction> cp_fractions{{1, 2}, {1, 4}, {1, 16}, {1, 32}};
    std::vector<double> ebno_points_db{0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
    ChannelSpec channel = ChannelSpec::awgn();
    unsigned modulation_order = kDefaultModulationOrder;
    std::size_t bit_budget = kDefaultBitBudget;
    std::uint64_t master_seed = kDefaultSeed;
    std::uint64_t max_bits_per_cell = kDefaultMaxBitsPerCell;
    std::uint64_t target_errors = kDefaultTargetErrors;
    bool equalizer = true;
    double noise_scale = 1.0;

    std::size_t cell_count() const noexcept;

    struct Cell {
        OfdmConfig config;
        double ebno_db = 0.0;
        std::uint64_t cell_id = 0;
    };
    /// Cell ids enumerate (fft_size, cp_fraction, ebno) lexicographically.
    Cell cell(std::uint64_t cell_id) const;

    RunOptions run_options() const;
};

struct CellFailure {
    std::uint64_t cell_id = 0;
    std::string message;
};

struct SweepResult {
    std::vector<BerRecord> records;   // sorted by cell_id
    std::vector<CellFailure> failures;  // sorted by cell_id
};

/// Worker count from OFDMSIM_WORKERS, else hardware concurrency.
unsigned default_worker_count();

/// Runs every cell on `workers` threads. Output never depends on the worker count.
SweepResult run_grid(const SweepGrid& grid, unsigned workers = default_worker_count());

}  // namespace ofdmsim
