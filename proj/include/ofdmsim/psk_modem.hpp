#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ofdmsim/types.hpp"

namespace ofdmsim {

inline constexpr unsigned kDefaultModulationOrder = 8;

constexpr unsigned gray_encode(unsigned g) noexcept { return g ^ (g >> 1); }

constexpr unsigned gray_decode(unsigned p) noexcept {
    unsigned g = p;
    for (unsigned shift = p >> 1; shift != 0; shift >>= 1) g ^= shift;
    return g;
}

/// Unit-circle M-PSK constellation with Gray labeling.
///
/// Point k sits at phase 2*pi*k/M and carries the bit label gray_encode(k), so
/// angularly adjacent points differ in exactly one bit. Label 0 is at phase 0.
/// Bits within a label are read most significant first.
class Constellation {
public:
    /// Throws OrderError unless `order` is a power of two >= 2.
    explicit Constellation(unsigned order);

    unsigned order() const noexcept { return order_; }
    unsigned bits_per_symbol() const noexcept { return bits_per_symbol_; }

    std::span<const Complex> points() const noexcept { return points_; }

    /// Constellation point carrying `label` (0 <= label < M).
    Complex point_for_label(unsigned label) const noexcept { return points_[position_of_label_[label]]; }

    /// Bit label of constellation position `position`.
    unsigned label_at(unsigned position) const noexcept { return gray_encode(position); }

    /// Nearest constellation position by phase. Exact sector-boundary ties go to
    /// the lower position index.
    unsigned nearest_position(Complex symbol) const noexcept;

private:
    unsigned order_;
    unsigned bits_per_symbol_;
    std::vector<Complex> points_;
    std::vector<unsigned> position_of_label_;
};

/// Symbols whose magnitude falls below this are undecidable; they decode as label 0.
inline constexpr double kZeroSymbolMagnitude = 1e-300;

/// Maps bits onto M-PSK symbols, log2(M) bits per symbol, MSB first.
/// Throws LengthError if bits.size() is not a multiple of log2(M).
std::vector<Complex> map_psk(std::span<const std::uint8_t> bits, const Constellation& constellation);
std::vector<Complex> map_psk(std::span<const std::uint8_t> bits, unsigned order);

/// Hard-decision demapping. If `zero_symbols` is non-null it receives the
/// number of symbols too small to carry a phase.
BitBlock demap_psk(std::span<const Complex> symbols, const Constellation& constellation,
                   std::size_t* zero_symbols = nullptr);
BitBlock demap_psk(std::span<const Complex> symbols, unsigned order, std::size_t* zero_symbols = nullptr);

}  // namespace ofdmsim
