#include "ofdmsim/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "ofdmsim/channel_models.hpp"
#include "ofdmsim/psk_modem.hpp"
#include "ofdmsim/sweep_runner.hpp"

namespace ofdmsim {

ErrorCount run_raw_modem(unsigned order, double ebno_db, std::uint64_t seed, std::uint64_t cell_id,
                         const RawModemBudget& budget, double noise_scale) {
    const Constellation constellation(order);
    const double variance = noise_scale * ebno_to_noise_variance(ebno_db, order, 1, 0, false);
    constexpr std::size_t kSymbolsPerBatch = 1U << 14;
    const std::size_t batch_bits = kSymbolsPerBatch * constellation.bits_per_symbol();

    RngStream stream = make_stream(seed, cell_id);
    ErrorCount total;
    while ((total.total < budget.min_bits || total.errors < budget.target_errors) && total.total < budget.max_bits) {
        const BitBlock tx = draw_bits(stream, batch_bits);
        std::vector<Complex> symbols = map_psk(tx, constellation);
        if (variance > 0.0) {
            for (auto& s : symbols) s += draw_complex_gaussian(stream, variance);
        }
        const ErrorCount c = count_bit_errors(tx, demap_psk(symbols, constellation));
        total.errors += c.errors;
        total.total += c.total;
    }
    return total;
}

namespace {

constexpr double kNoiselessEbnoDb = 300.0;

ValidationRow finish(ValidationRow row) {
    row.simulated = row.bits ? static_cast<double>(row.errors) / static_cast<double>(row.bits) : 0.0;
    row.interval = wilson_interval(row.errors, row.bits);
    return row;
}

}  // namespace

std::vector<ValidationRow> run_validation(const ValidationOptions& options) {
    std::vector<ValidationRow> rows;
    std::uint64_t cell = 0;

    // Raw modem against the closed-form reference.
    const std::map<unsigned, std::vector<double>> points{{2, {0, 4, 8}}, {4, {0, 4, 8}}, {8, {4, 8, 12}}};
    std::map<std::pair<unsigned, double>, ValidationRow> raw;
    for (const auto& [order, ebnos] : points) {
        for (double ebno : ebnos) {
            const ErrorCount c = run_raw_modem(order, ebno, options.seed, cell++, {}, options.noise_scale);
            ValidationRow row;
            row.check = "theory";
            row.order = order;
            row.ebno_db = ebno;
            row.detail = "raw modem vs closed form";
            row.bits = c.total;
            row.errors = c.errors;
            row.reference = theoretical_mpsk_ber(ebno, order);
            row = finish(row);
            row.pass = std::abs(row.simulated - row.reference) <= options.relative_tolerance * row.reference &&
                       row.interval.contains(row.reference);
            raw[{order, ebno}] = row;
            rows.push_back(row);
        }
    }

    // OFDM over AWGN must be BER-neutral relative to the raw modem.
    for (std::size_t n : {std::size_t{64}, std::size_t{512}}) {
        for (double ebno : points.at(8)) {
            OfdmConfig config;
            config.fft_size = n;
            config.cp_fraction = CpFraction(1, 4);
            config.modulation_order = 8;
            config.bit_budget = 12 * n;
            RunOptions run;
            run.target_errors = 1000;
            run.max_bits = 100'000'000;
            run.noise_scale = options.noise_scale;
            const BerRecord rec = run_cell(config, ChannelSpec::awgn(), ebno, options.seed, cell++, run);
            const ValidationRow& ref = raw.at({8, ebno});
            ValidationRow row;
            row.check = "ofdm";
            row.order = 8;
            row.ebno_db = ebno;
            row.detail = "N=" + std::to_string(n) + " CP 1/4 vs raw modem";
            row.bits = rec.bits_sent;
            row.errors = rec.bit_errors;
            row.reference = ref.simulated;
            row = finish(row);
            row.pass = row.interval.overlaps(ref.interval);
            rows.push_back(row);
        }
    }

    // Noiseless runs over every framing cell and channel kind.
    const std::vector<CpFraction> fractions{{1, 2}, {1, 4}, {1, 8}, {1, 16}, {1, 32}};
    for (ChannelKind kind : {ChannelKind::awgn, ChannelKind::flat, ChannelKind::tdl}) {
        ValidationRow row;
        row.check = "noiseless";
        row.order = 8;
        row.ebno_db = kNoiselessEbnoDb;
        row.detail = std::string(to_string(kind)) + ", 4 FFT sizes x 5 CP fractions";
        for (std::size_t n : {64U, 128U, 256U, 512U}) {
            for (const auto& g : fractions) {
                OfdmConfig config;
                config.fft_size = n;
                config.cp_fraction = g;
                config.bit_budget = 6 * n;
                ChannelSpec spec;
                spec.kind = kind;
                if (kind == ChannelKind::tdl) {
                    spec.tap_powers = exponential_pdp(std::min<std::size_t>(config.cp_len(), 8) + 1, 1.0);
                }
                RunOptions run;
                run.target_errors = 1;
                run.max_bits = 20 * config.bits_per_repetition();
                run.noise_scale = options.noise_scale;
                const BerRecord rec = run_cell(config, spec, kNoiselessEbnoDb, options.seed, cell++, run);
                row.bits += rec.bits_sent;
                row.errors += rec.bit_errors;
            }
        }
        row = finish(row);
        row.pass = row.errors == 0;
        rows.push_back(row);
    }
    return rows;
}

std::string format_validation_table(const std::vector<ValidationRow>& rows) {
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%-10s %2s %7s %-36s %12s %10s %12s %12s %25s  %s\n", "check", "M", "Eb/No",
                  "detail", "bits", "errors", "simulated", "reference", "z=3 interval", "result");
    out += buf;
    for (const auto& r : rows) {
        char iv[64];
        std::snprintf(iv, sizeof(iv), "[%.4e, %.4e]", r.interval.low, r.interval.high);
        std::snprintf(buf, sizeof(buf), "%-10s %2u %7.1f %-36s %12llu %10llu %12.4e %12.4e %25s  %s\n",
                      r.check.c_str(), r.order, r.ebno_db, r.detail.c_str(), static_cast<unsigned long long>(r.bits),
                      static_cast<unsigned long long>(r.errors), r.simulated, r.reference, iv,
                      r.pass ? "PASS" : "FAIL");
        out += buf;
    }
    return out;
}

}  // namespace ofdmsim
