#include "ofdmsim/sweep_runner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "ofdmsim/equalizer.hpp"
#include "ofdmsim/errors.hpp"
#include "ofdmsim/psk_modem.hpp"
#include "ofdmsim/spectral_transform.hpp"

namespace ofdmsim {

namespace {

struct BurstResult {
    ErrorCount count;
    std::uint64_t clamps = 0;
};

// One Monte Carlo repetition over a fresh bit batch and channel draw.
BurstResult run_burst(const OfdmConfig& config, std::size_t cp_len, const Constellation& constellation,
                      const ChannelSpec& channel, double noise_variance, bool equalize, RngStream& stream) {
    const std::size_t n = config.fft_size;
    const FftPlan& plan = fft_plan(n);

    const BitBlock tx_bits = draw_bits(stream, config.bits_per_repetition());
    const std::vector<Complex> symbols = map_psk(tx_bits, constellation);
    SubcarrierMatrix grid = serial_to_parallel(symbols, n);

    std::vector<OfdmFrame> frames;
    frames.reserve(grid.rows);
    for (std::size_t r = 0; r < grid.rows; ++r) {
        std::vector<Complex> time(grid.row(r).begin(), grid.row(r).end());
        plan.inverse(time);
        frames.push_back(make_frame(time, cp_len));
    }
    const std::vector<Complex> tx = parallel_to_serial(frames);

    std::vector<Complex> rx;
    std::vector<ChannelRealization> per_frame;
    if (channel.kind == ChannelKind::flat) {
        // Block fading: an independent gain for every OFDM symbol.
        const std::size_t frame_len = n + cp_len;
        rx.reserve(tx.size());
        for (std::size_t f = 0; f < frames.size(); ++f) {
            per_frame.push_back(realize_channel(channel, noise_variance, stream));
            const std::span<const Complex> slice(tx.data() + f * frame_len, frame_len);
            const auto y = apply_channel(slice, per_frame.back(), stream);
            rx.insert(rx.end(), y.begin(), y.end());
        }
    } else {
        per_frame.push_back(realize_channel(channel, noise_variance, stream));
        rx = apply_channel(tx, per_frame.back(), stream);
    }

    BurstResult result;
    std::vector<Complex> decided;
    decided.reserve(grid.used);
    const auto rx_frames = split_frames(rx, n, cp_len);
    FreqResponse response;
    for (std::size_t f = 0; f < rx_frames.size(); ++f) {
        std::vector<Complex> freq = remove_cyclic_prefix(rx_frames[f], n, cp_len);
        plan.forward(freq);
        const std::size_t take = std::min(n, grid.used - f * n);
        if (equalize) {
            if (f == 0 || per_frame.size() > 1) {
                response = channel_freq_response(per_frame[per_frame.size() > 1 ? f : 0], n);
            }
            Equalized eq = zero_forcing(freq, response);
            // Clamps on pad subcarriers carry no data and are not counted.
            for (std::size_t k = 0; k < take; ++k) {
                if (std::abs(response.values[k]) < kZfClampThreshold) ++result.clamps;
            }
            decided.insert(decided.end(), eq.symbols.begin(), eq.symbols.begin() + static_cast<std::ptrdiff_t>(take));
        } else {
            decided.insert(decided.end(), freq.begin(), freq.begin() + static_cast<std::ptrdiff_t>(take));
        }
    }

    const BitBlock rx_bits = demap_psk(decided, constellation);
    result.count = count_bit_errors(tx_bits, rx_bits);
    return result;
}

}  // namespace

BerRecord run_cell(const OfdmConfig& config, const ChannelSpec& channel, double ebno_db, std::uint64_t seed,
                   std::uint64_t cell_id, const RunOptions& options) {
    config.validate();
    channel.validate();
    const std::size_t cp_len = config.cp_len();
    const Constellation constellation(config.modulation_order);
    const double noise_variance =
        options.noise_scale * ebno_to_noise_variance(ebno_db, config.modulation_order, config.fft_size, cp_len,
                                                     channel.account_cp_overhead);

    RngStream stream = make_stream(seed, cell_id);
    BerRecord record;
    record.config = config;
    record.channel = channel.kind;
    record.ebno_db = ebno_db;
    record.seed = seed;
    record.cell_id = cell_id;
    record.equalizer = options.equalizer;

    while (record.bit_errors < options.target_errors && record.bits_sent < options.max_bits) {
        const BurstResult burst =
            run_burst(config, cp_len, constellation, channel, noise_variance, options.equalizer, stream);
        record.bits_sent += burst.count.total;
        record.bit_errors += burst.count.errors;
        record.zf_clamps += burst.clamps;
    }
    return finalize_record(record);
}

std::size_t SweepGrid::cell_count() const noexcept {
    return fft_sizes.size() * cp_fractions.size() * ebno_points_db.size();
}

SweepGrid::Cell SweepGrid::cell(std::uint64_t cell_id) const {
    if (cell_id >= cell_count()) throw ConfigError("cell id " + std::to_string(cell_id) + " out of range");
    const std::size_t n_ebno = ebno_points_db.size();
    const std::size_t n_cp = cp_fractions.size();
    Cell c;
    c.cell_id = cell_id;
    c.ebno_db = ebno_points_db[cell_id % n_ebno];
    c.config.cp_fraction = cp_fractions[(cell_id / n_ebno) % n_cp];
    c.config.fft_size = fft_sizes[cell_id / (n_ebno * n_cp)];
    c.config.modulation_order = modulation_order;
    c.config.bit_budget = bit_budget;
    return c;
}

RunOptions SweepGrid::run_options() const {
    RunOptions o;
    o.target_errors = target_errors;
    o.max_bits = max_bits_per_cell;
    o.equalizer = equalizer;
    o.noise_scale = noise_scale;
    return o;
}

unsigned default_worker_count() {
    if (const char* env = std::getenv("OFDMSIM_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1U : hw;
}

SweepResult run_grid(const SweepGrid& grid, unsigned workers) {
    const std::size_t cells = grid.cell_count();
    const RunOptions options = grid.run_options();

    std::vector<BerRecord> slots(cells);
    std::vector<std::string> errors(cells);
    std::vector<char> ok(cells, 0);
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        for (std::size_t id = next.fetch_add(1); id < cells; id = next.fetch_add(1)) {
            try {
                const auto c = grid.cell(id);
                slots[id] = run_cell(c.config, grid.channel, c.ebno_db, grid.master_seed, id, options);
                ok[id] = 1;
            } catch (const std::exception& e) {
                errors[id] = e.what();
            }
        }
    };

    workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(cells, 1))));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    SweepResult result;
    for (std::size_t id = 0; id < cells; ++id) {
        if (ok[id]) {
            result.records.push_back(std::move(slots[id]));
        } else {
            result.failures.push_back({id, std::move(errors[id])});
        }
    }
    return result;
}

}  // namespace ofdmsim
