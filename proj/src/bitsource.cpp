#include "ofdmsim/bitsource.hpp"

#include <bit>
#include <cmath>

namespace ofdmsim {

std::uint64_t derive_stream_seed(std::uint64_t origin_seed, std::uint64_t cell_id) noexcept {
    return splitmix64_finalize(origin_seed ^ std::rotl(cell_id, 32));
}

RngStream::RngStream(std::uint64_t origin_seed, std::uint64_t cell_id) noexcept
    : origin_seed_(origin_seed), cell_id_(cell_id) {
    std::uint64_t x = derive_stream_seed(origin_seed, cell_id);
    for (auto& word : s_) {
        x += 0x9E3779B97F4A7C15ULL;
        word = splitmix64_finalize(x);
    }
}

std::uint64_t RngStream::next() noexcept {
    const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

double RngStream::uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

RngStream make_stream(std::uint64_t origin_seed, std::uint64_t cell_id) noexcept {
    return RngStream(origin_seed, cell_id);
}

BitBlock draw_bits(RngStream& stream, std::size_t count) {
    BitBlock bits(count);
    std::size_t i = 0;
    while (i < count) {
        std::uint64_t word = stream.next();
        for (int k = 0; k < 64 && i < count; ++k, ++i) {
            bits[i] = static_cast<std::uint8_t>(word & 1U);
            word >>= 1;
        }
    }
    return bits;
}

std::pair<double, double> draw_gaussian_pair(RngStream& stream) noexcept {
    // u1 in (0, 1] keeps log() finite.
    const double u1 = static_cast<double>((stream.next() >> 11) + 1) * 0x1.0p-53;
    const double u2 = stream.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = kTwoPi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

Complex draw_complex_gaussian(RngStream& stream, double variance) noexcept {
    const auto [g1, g2] = draw_gaussian_pair(stream);
    const double scale = std::sqrt(variance / 2.0);
    return {g1 * scale, g2 * scale};
}

}  // namespace ofdmsim
