// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ofdmsim/bitsource.hpp"
#include "ofdmsim/channel_models.hpp"
#include "ofdmsim/metrics.hpp"
#include "ofdmsim/ofdm_framing.hpp"
#include "ofdmsim/psk_modem.hpp"
#include "ofdmsim/record_io.hpp"
#include "ofdmsim/spectral_transform.hpp"
#include "ofdmsim/sweep_runner.hpp"
#include "ofdmsim/validation.hpp"

using namespace ofdmsim;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), f, args...);
    return buf;
}

constexpr std::uint64_t kSeed = kDefaultSeed;
const std::vector<double> kTheoryPoints{4.0, 8.0, 12.0};

// A1 results feed A2.
std::map<double, Interval> raw_intervals;

Outcome a1_awgn_theory() {
    Outcome o;
    std::uint64_t cell = 100;
    for (double ebno : kTheoryPoints) {
        const auto t0 = Clock::now();
        RawModemBudget budget;  // >= 1e6 bits and >= 1000 errors
        const ErrorCount c = run_raw_modem(8, ebno, kSeed, cell++, budget);
        const double secs = seconds_since(t0);
        const double sim = static_cast<double>(c.errors) / static_cast<double>(c.total);
        const double theory = theoretical_mpsk_ber(ebno, 8);
        const Interval iv = wilson_interval(c.errors, c.total);
        raw_intervals[ebno] = iv;
        const double rel = std::abs(sim - theory) / theory;
        const bool ok = c.total >= 1'000'000 && rel <= 0.10 && iv.contains(theory) && secs < 30.0;
        o.pass = o.pass && ok;
        o.detail += fmt(" [%.0f dB: sim %.4e theory %.4e rel %.3f, %llu bits, %.2fs%s]", ebno, sim, theory, rel,
                        static_cast<unsigned long long>(c.total), secs, ok ? "" : " FAIL");
    }
    return o;
}

Outcome a2_ofdm_transparency() {
    Outcome o;
    std::uint64_t cell = 200;
    for (std::size_t n : {std::size_t{64}, std::size_t{512}}) {
        for (double ebno : kTheoryPoints) {
            OfdmConfig config;
            config.fft_size = n;
            config.cp_fraction = CpFraction(1, 4);
            config.bit_budget = 12 * n;
            RunOptions run;
            run.target_errors = 1000;
            run.max_bits = 100'000'000;
            ChannelSpec awgn = ChannelSpec::awgn();
            awgn.account_cp_overhead = false;
            const BerRecord r = run_cell(config, awgn, ebno, kSeed, cell++, run);
            const bool ok = r.interval().overlaps(raw_intervals.at(ebno));
            o.pass = o.pass && ok;
            o.detail += fmt(" [N=%zu %.0f dB: %.4e in [%.4e, %.4e]%s]", n, ebno, r.ber, r.ci_low, r.ci_high,
                            ok ? "" : " FAIL");
        }
    }
    return o;
}

Outcome a3_noiseless_identity() {
    Outcome o;
    const auto t0 = Clock::now();
    std::uint64_t cells = 0, errors = 0, bits = 0, cell = 300;
    for (std::size_t n : {64U, 128U, 256U, 512U}) {
        for (auto g : {CpFraction(1, 2), CpFraction(1, 4), CpFraction(1, 8), CpFraction(1, 16), CpFraction(1, 32)}) {
            for (auto kind : {ChannelKind::awgn, ChannelKind::flat, ChannelKind::tdl}) {
                OfdmConfig config;
                config.fft_size = n;
                config.cp_fraction = g;
                config.bit_budget = 6 * n;
                ChannelSpec spec;
                spec.kind = kind;
                if (kind == ChannelKind::tdl) spec.tap_powers = exponential_pdp(std::min<std::size_t>(config.cp_len(), 8) + 1, 0.0);
                RunOptions run;
                run.target_errors = 1;
                run.max_bits = 10 * config.bits_per_repetition();
                const BerRecord r = run_cell(config, spec, 300.0, kSeed, cell++, run);
                ++cells;
                errors += r.bit_errors;
                bits += r.bits_sent;
            }
        }
    }
    const double secs = seconds_since(t0);
    o.pass = cells == 60 && errors == 0 && secs < 10.0;
    o.detail = fmt(" %llu cells, %llu bits, %llu errors, %.2fs", static_cast<unsigned long long>(cells),
                   static_cast<unsigned long long>(bits), static_cast<unsigned long long>(errors), secs);
    return o;
}

// Worst |Y[k] - H[k] X[k]| over three back-to-back frames through a noiseless tdl.
double circular_deviation(std::size_t n, std::size_t l, const std::vector<Complex>& taps, RngStream& s) {
    const Constellation c(8);
    std::vector<OfdmFrame> frames;
    std::vector<std::vector<Complex>> sent;
    for (int f = 0; f < 3; ++f) {
        sent.push_back(map_psk(draw_bits(s, 3 * n), c));
        frames.push_back(make_frame(idft(sent.back()), l));
    }
    ChannelRealization ch;
    ch.kind = ChannelKind::tdl;
    ch.taps = taps;
    const auto rx = split_frames(apply_channel(parallel_to_serial(frames), ch, s), n, l);
    double worst = 0;
    for (std::size_t f = 0; f < rx.size(); ++f) {
        const auto y = dft(remove_cyclic_prefix(rx[f], n, l));
        for (std::size_t k = 0; k < n; ++k) {
            Complex h{};
            for (std::size_t t = 0; t < taps.size(); ++t) {
                h += taps[t] * std::exp(Complex{0.0, -kTwoPi * static_cast<double>(k * t) / static_cast<double>(n)});
            }
            worst = std::max(worst, std::abs(y[k] - h * sent[f][k]));
        }
    }
    return worst;
}

Outcome a4_circular_convolution() {
    Outcome o;
    RngStream s = make_stream(kSeed, 400);
    const ChannelSpec spec = ChannelSpec::tdl(exponential_pdp(9, 0.0));  // memory 8
    double worst_sufficient = 0, best_insufficient = 1e300;
    int sufficient = 0, insufficient = 0;
    for (std::size_t n : {64U, 128U, 256U, 512U}) {
        for (auto g : {CpFraction(0, 1), CpFraction(1, 32), CpFraction(1, 16), CpFraction(1, 8), CpFraction(1, 4),
                       CpFraction(1, 2)}) {
            const std::size_t l = g.length_for(n);
            const auto taps = realize_channel(spec, 0.0, s).taps;
            const double dev = circular_deviation(n, l, taps, s);
            if (l >= spec.memory()) {
                worst_sufficient = std::max(worst_sufficient, dev);
                ++sufficient;
            } else {
                best_insufficient = std::min(best_insufficient, dev);
                ++insufficient;
            }
        }
    }
    o.pass = worst_sufficient < 1e-9 && best_insufficient > 1e-3 && sufficient > 0 && insufficient > 0;
    o.detail = fmt(" L>=8: %d cases, max dev %.2e (< 1e-9); L<8: %d cases, min dev %.2e (> 1e-3)", sufficient,
                   worst_sufficient, insufficient, best_insufficient);
    return o;
}

RunOptions floor_budget() {
    RunOptions run;
    run.target_errors = 1000;
    run.max_bits = 20'000'000;
    return run;
}

Outcome a5_error_floor_ordering() {
    Outcome o;
    std::uint64_t cell = 500;
    for (std::size_t n : {64U, 128U, 256U, 512U}) {
        // Equal-power profile with memory N/4: L(1/32) = N/32 < N/4 <= L(1/4) = N/4.
        const std::size_t memory = n / 4;
        const ChannelSpec spec = ChannelSpec::tdl(exponential_pdp(memory + 1, 0.0));
        std::map<std::string, BerRecord> r;
        for (auto g : {CpFraction(1, 32), CpFraction(1, 4), CpFraction(1, 2)}) {
            OfdmConfig config;
            config.fft_size = n;
            config.cp_fraction = g;
            r[g.to_string()] = run_cell(config, spec, 20.0, kSeed, cell++, floor_budget());
        }
        const bool floor_ok = r["1/32"].ber > 10.0 * r["1/4"].ber;
        const bool equal_ok = r["1/4"].interval().overlaps(r["1/2"].interval());
        o.pass = o.pass && floor_ok && equal_ok;
        o.detail += fmt(" [N=%zu mem %zu: 1/32 %.3e, 1/4 %.3e, 1/2 %.3e, ratio %.1f%s]", n, memory, r["1/32"].ber,
                        r["1/4"].ber, r["1/2"].ber, r["1/32"].ber / r["1/4"].ber,
                        floor_ok && equal_ok ? "" : " FAIL");
    }
    return o;
}

Outcome a6_fft_size_ordering() {
    // Fixed 9-tap channel, G = 1/32: L = 2 at N = 64 but 16 at N = 512.
    const ChannelSpec spec = ChannelSpec::tdl(exponential_pdp(9, 0.0));
    std::map<std::size_t, BerRecord> r;
    std::uint64_t cell = 600;
    for (std::size_t n : {64U, 512U}) {
        OfdmConfig config;
        config.fft_size = n;
        config.cp_fraction = CpFraction(1, 32);
        r[n] = run_cell(config, spec, 20.0, kSeed, cell++, floor_budget());
    }
    Outcome o;
    o.pass = r[512].ber < r[64].ber && !r[512].interval().overlaps(r[64].interval());
    o.detail = fmt(" N=64: %.3e [%.3e, %.3e]; N=512: %.3e [%.3e, %.3e]", r[64].ber, r[64].ci_low, r[64].ci_high,
                   r[512].ber, r[512].ci_low, r[512].ci_high);
    return o;
}

Outcome a7_transform_oracle() {
    RngStream s = make_stream(kSeed, 700);
    double oracle = 0, round_trip = 0, parseval = 0;
    for (std::size_t n : {64U, 128U, 256U, 512U}) {
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<Complex> x(n);
            for (auto& v : x) v = draw_complex_gaussian(s, 1.0);
            const SpectralBlock freq{x, Domain::frequency};
            const SpectralBlock time{x, Domain::time};
            const auto fast_inv = idft(freq);
            const auto slow_inv = dft_direct(freq, Direction::inverse);
            const auto fast_fwd = dft(time);
            const auto slow_fwd = dft_direct(time, Direction::forward);
            const auto back = dft(fast_inv);
            double ex = 0, et = 0;
            for (std::size_t i = 0; i < n; ++i) {
                oracle = std::max({oracle, std::abs(fast_inv.samples[i] - slow_inv.samples[i]),
                                   std::abs(fast_fwd.samples[i] - slow_fwd.samples[i])});
                round_trip = std::max(round_trip, std::abs(back.samples[i] - x[i]));
                ex += std::norm(x[i]);
                et += std::norm(fast_inv.samples[i]);
            }
            parseval = std::max(parseval, std::abs(et - ex) / ex);
        }
    }
    Outcome o;
    o.pass = oracle < 1e-10 && round_trip < 1e-12 && parseval < 1e-10;
    o.detail = fmt(" oracle %.2e (< 1e-10), round trip %.2e (< 1e-12), Parseval %.2e (< 1e-10)", oracle, round_trip,
                   parseval);
    return o;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome a8_determinism() {
    SweepGrid grid;
    grid.fft_sizes = {64, 128, 256, 512};
    grid.cp_fractions = {{1, 2}, {1, 4}, {1, 16}, {1, 32}};
    grid.ebno_points_db = {0, 10, 20};
    grid.channel = ChannelSpec::tdl(exponential_pdp(kDefaultTdlLength, kDefaultTdlDecayDb));
    grid.max_bits_per_cell = 30'000;
    grid.master_seed = 42;
    const auto dir = std::filesystem::temp_directory_path() / "ofdmsim_acceptance";
    std::filesystem::create_directories(dir);
    const auto one = dir / "workers1.csv";
    const auto many = dir / "workers8.csv";
    write_records(run_grid(grid, 1).records, one, RecordFormat::csv);
    write_records(run_grid(grid, 8).records, many, RecordFormat::csv);
    const std::string a = slurp(one), b = slurp(many);
    Outcome o;
    o.pass = !a.empty() && a == b;
    o.detail = fmt(" %zu cells, %zu CSV bytes, 1 vs 8 workers %s", grid.cell_count(), a.size(),
                   a == b ? "identical" : "DIFFER");
    return o;
}

Outcome a9_noise_calibration() {
    Outcome o;
    std::uint64_t cell = 900;
    for (double ebno : {0.0, 10.0, 20.0}) {
        RngStream s = make_stream(kSeed, cell++);
        constexpr std::size_t kSamples = 1'000'000;
        const auto x = map_psk(draw_bits(s, 3 * kSamples), 8);
        ChannelRealization ch;
        ch.noise_variance = ebno_to_noise_variance(ebno, 8, 64, 0, false);
        const auto y = apply_channel(x, ch, s);
        double ps = 0, pn = 0;
        for (std::size_t i = 0; i < kSamples; ++i) {
            ps += std::norm(x[i]);
            pn += std::norm(y[i] - x[i]);
        }
        const double measured = 10.0 * std::log10(ps / pn);
        const double configured = ebno + 10.0 * std::log10(3.0);
        const bool ok = std::abs(measured - configured) < 0.1;
        o.pass = o.pass && ok;
        o.detail += fmt(" [Eb/No %.0f dB: SNR %.3f vs %.3f dB%s]", ebno, measured, configured, ok ? "" : " FAIL");
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"A1 AWGN theory match (raw 8-PSK, +-10%, z=3)", a1_awgn_theory},
        {"A2 OFDM transparency on AWGN", a2_ofdm_transparency},
        {"A3 noiseless identity over the grid", a3_noiseless_identity},
        {"A4 circular convolution iff L >= memory", a4_circular_convolution},
        {"A5 CP error-floor ordering at 20 dB", a5_error_floor_ordering},
        {"A6 FFT-size ordering at 20 dB", a6_fft_size_ordering},
        {"A7 transform oracle", a7_transform_oracle},
        {"A8 determinism across worker counts", a8_determinism},
        {"A9 noise calibration within 0.1 dB", a9_noise_calibration},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string(" exception: ") + e.what()};
        }
        std::printf("%s  %s (%.1fs):%s\n", o.pass ? "PASS" : "FAIL", name, seconds_since(t0), o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
