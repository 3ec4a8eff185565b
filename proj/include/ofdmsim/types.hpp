#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

namespace ofdmsim {

using Complex = std::complex<double>;

// Information bits, one element per bit, each exactly 0 or 1.
using BitBlock = std::vector<std::uint8_t>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

constexpr unsigned log2_exact(std::size_t n) noexcept {
    unsigned b = 0;
    while ((std::size_t{1} << b) < n) ++b;
    return b;
}

}  // namespace ofdmsim
