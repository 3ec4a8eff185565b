#include "ofdmsim/channel_models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ofdmsim/errors.hpp"

namespace ofdmsim {

std::string_view to_string(ChannelKind kind) noexcept {
    switch (kind) {
        case ChannelKind::awgn: return "awgn";
        case ChannelKind::flat: return "flat";
        case ChannelKind::tdl: return "tdl";
    }
    return "awgn";
}

ChannelKind parse_channel_kind(std::string_view text) {
    if (text == "awgn") return ChannelKind::awgn;
    if (text == "flat") return ChannelKind::flat;
    if (text == "tdl") return ChannelKind::tdl;
    throw ConfigError("unknown channel '" + std::string(text) + "' (expected awgn, flat or tdl)");
}

ChannelSpec ChannelSpec::awgn() { return {}; }

ChannelSpec ChannelSpec::flat() {
    ChannelSpec s;
    s.kind = ChannelKind::flat;
    return s;
}

ChannelSpec ChannelSpec::tdl(std::vector<double> tap_powers) {
    ChannelSpec s;
    s.kind = ChannelKind::tdl;
    s.tap_powers = std::move(tap_powers);
    return s;
}

std::size_t ChannelSpec::memory() const noexcept {
    if (kind != ChannelKind::tdl || tap_powers.empty()) return 0;
    return tap_powers.size() - 1;
}

void ChannelSpec::validate() const {
    if (kind != ChannelKind::tdl) return;
    if (tap_powers.empty()) throw ConfigError("tdl channel needs at least one tap");
    for (double p : tap_powers) {
        if (!(p >= 0.0) || !std::isfinite(p)) throw ConfigError("tdl tap powers must be finite and non-negative");
    }
    const double sum = std::accumulate(tap_powers.begin(), tap_powers.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-12) {
        throw ConfigError("tdl tap powers sum to " + std::to_string(sum) + ", expected 1");
    }
}

double ebno_to_noise_variance(double ebno_db, unsigned order, std::size_t fft_size, std::size_t cp_len,
                              bool account_cp_overhead) {
    const double bits_per_symbol = log2_exact(order);
    double variance = 1.0 / (bits_per_symbol * std::pow(10.0, ebno_db / 10.0));
    if (account_cp_overhead) {
        variance *= static_cast<double>(fft_size + cp_len) / static_cast<double>(fft_size);
    }
    return variance;
}

ChannelRealization realize_channel(const ChannelSpec& spec, double noise_variance, RngStream& stream) {
    ChannelRealization r;
    r.kind = spec.kind;
    r.noise_variance = noise_variance;
    switch (spec.kind) {
        case ChannelKind::awgn:
            break;
        case ChannelKind::flat:
            r.flat_gain = draw_complex_gaussian(stream, 1.0);
            break;
        case ChannelKind::tdl:
            r.taps.reserve(spec.tap_powers.size());
            for (double p : spec.tap_powers) r.taps.push_back(draw_complex_gaussian(stream, p));
            break;
    }
    return r;
}

std::vector<Complex> apply_channel(std::span<const Complex> signal, const ChannelRealization& channel,
                                   RngStream& stream) {
    std::vector<Complex> out(signal.size());
    switch (channel.kind) {
        case ChannelKind::awgn:
            std::copy(signal.begin(), signal.end(), out.begin());
            break;
        case ChannelKind::flat:
            for (std::size_t i = 0; i < signal.size(); ++i) out[i] = channel.flat_gain * signal[i];
            break;
        case ChannelKind::tdl:
            for (std::size_t i = 0; i < signal.size(); ++i) {
                Complex acc{};
                const std::size_t taps = std::min(channel.taps.size(), i + 1);
                for (std::size_t l = 0; l < taps; ++l) acc += channel.taps[l] * signal[i - l];
                out[i] = acc;
            }
            break;
    }
    if (channel.noise_variance > 0.0) {
        for (auto& y : out) y += draw_complex_gaussian(stream, channel.noise_variance);
    }
    return out;
}

std::vector<double> exponential_pdp(std::size_t length, double decay_db_per_tap) {
    if (length == 0) throw ConfigError("power-delay profile needs at least one tap");
    std::vector<double> p(length);
    for (std::size_t l = 0; l < length; ++l) p[l] = std::pow(10.0, -static_cast<double>(l) * decay_db_per_tap / 10.0);
    const double sum = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto& v : p) v /= sum;
    return p;
}

}  // namespace ofdmsim
