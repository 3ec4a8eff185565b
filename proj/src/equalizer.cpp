#include "ofdmsim/equalizer.hpp"

#include <cmath>
#include <string>

#include "ofdmsim/errors.hpp"

namespace ofdmsim {

FreqResponse channel_freq_response(const ChannelRealization& channel, std::size_t fft_size) {
    FreqResponse h;
    switch (channel.kind) {
        case ChannelKind::awgn:
            h.values.assign(fft_size, Complex{1.0, 0.0});
            break;
        case ChannelKind::flat:
            h.values.assign(fft_size, channel.flat_gain);
            break;
        case ChannelKind::tdl:
            h.values.assign(fft_size, Complex{});
            for (std::size_t k = 0; k < fft_size; ++k) {
                Complex acc{};
                for (std::size_t l = 0; l < channel.taps.size(); ++l) {
                    const std::size_t idx = (k * l) % fft_size;
                    acc += channel.taps[l] *
                           std::polar(1.0, -kTwoPi * static_cast<double>(idx) / static_cast<double>(fft_size));
                }
                h.values[k] = acc;
            }
            break;
    }
    return h;
}

Equalized zero_forcing(std::span<const Complex> rx_freq, const FreqResponse& response) {
    if (rx_freq.size() != response.size()) {
        throw SizeError("equalizer got " + std::to_string(rx_freq.size()) + " subcarriers for a response of " +
                        std::to_string(response.size()));
    }
    Equalized out;
    out.symbols.resize(rx_freq.size());
    for (std::size_t k = 0; k < rx_freq.size(); ++k) {
        const Complex h = response.values[k];
        if (std::abs(h) < kZfClampThreshold) {
            out.symbols[k] = Complex{};
            ++out.clamps;
        } else {
            out.symbols[k] = rx_freq[k] / h;
        }
    }
    return out;
}

}  // namespace ofdmsim
