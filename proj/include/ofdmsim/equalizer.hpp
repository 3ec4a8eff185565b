#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ofdmsim/channel_models.hpp"
#include "ofdmsim/types.hpp"

namespace ofdmsim {

/// Per-subcarrier channel response H[k], k < N.
struct FreqResponse {
    std::vector<Complex> values;

    std::size_t size() const noexcept { return values.size(); }
};

/// Subcarriers with |H[k]| below this are zeroed instead of divided.
inline constexpr double kZfClampThreshold = 1e-12;

/// H[k] = sum_l h_l exp(-i 2 pi k l / N). Unlike the unitary dft this carries no
/// 1/sqrt(N) factor, since H multiplies the unitary spectrum directly.
/// Flat fading gives H[k] = h; awgn gives all ones.
FreqResponse channel_freq_response(const ChannelRealization& channel, std::size_t fft_size);

struct Equalized {
    std::vector<Complex> symbols;
    std::size_t clamps = 0;
};

/// One-tap zero forcing: rx[k] / H[k]. Throws SizeError on a length mismatch.
Equalized zero_forcing(std::span<const Complex> rx_freq, const FreqResponse& response);

}  // namespace ofdmsim
