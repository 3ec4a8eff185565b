#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ofdmsim/bitsource.hpp"
#include "ofdmsim/types.hpp"

namespace ofdmsim {

enum class ChannelKind { awgn, flat, tdl };

// Default multipath profile: 9 taps (memory 8) with exponential decay.
inline constexpr std::size_t kDefaultTdlLength = 9;
inline constexpr double kDefaultTdlDecayDb = 1.0;

std::string_view to_string(ChannelKind kind) noexcept;
/// "awgn" | "flat" | "tdl"; throws ConfigError otherwise.
ChannelKind parse_channel_kind(std::string_view text);

struct ChannelSpec {
    ChannelKind kind = ChannelKind::awgn;
    /// Power-delay profile for tdl; ignored otherwise. Sums to 1.
    std::vector<double> tap_powers;
    /// Scale noise by (N + L) / N so Eb counts the prefix energy.
    bool account_cp_overhead = false;

    static ChannelSpec awgn();
    static ChannelSpec flat();
    static ChannelSpec tdl(std::vector<double> tap_powers);

    /// Channel memory in samples (taps - 1); 0 for non-tdl kinds.
    std::size_t memory() const noexcept;

    /// Throws ConfigError for an empty, negative or unnormalized profile.
    void validate() const;

    friend bool operator==(const ChannelSpec&, const ChannelSpec&) = default;
};

struct ChannelRealization {
    ChannelKind kind = ChannelKind::awgn;
    Complex flat_gain{1.0, 0.0};
    std::vector<Complex> taps;
    double noise_variance = 0.0;
};

/// Total complex noise variance per sample for unit-energy symbols:
/// 1 / (log2(M) * 10^(ebno_db/10)), times (N + L)/N when the overhead is counted.
double ebno_to_noise_variance(double ebno_db, unsigned order, std::size_t fft_size, std::size_t cp_len,
                              bool account_cp_overhead);

/// Draws one block-fading realization. Flat gains and tdl taps are complex
/// Gaussian with E|h|^2 = 1 and E|h_l|^2 = p_l respectively.
ChannelRealization realize_channel(const ChannelSpec& spec, double noise_variance, RngStream& stream);

/// y = h*x + n for flat, (h conv x) truncated to len(x) + n for tdl, x + n for awgn.
std::vector<Complex> apply_channel(std::span<const Complex> signal, const ChannelRealization& channel,
                                   RngStream& stream);

/// p_l proportional to 10^(-l * decay_db / 10), normalized to unit sum.
/// Throws ConfigError for length 0.
std::vector<double> exponential_pdp(std::size_t length, double decay_db_per_tap);

}  // namespace ofdmsim
