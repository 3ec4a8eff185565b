#include "ofdmsim/psk_modem.hpp"

#include <cmath>
#include <string>

#include "ofdmsim/errors.hpp"

namespace ofdmsim {

Constellation::Constellation(unsigned order) : order_(order) {
    if (order < 2 || !is_power_of_two(order)) {
        throw OrderError("modulation order must be a power of two >= 2, got " + std::to_string(order));
    }
    bits_per_symbol_ = log2_exact(order);
    points_.resize(order);
    position_of_label_.resize(order);
    for (unsigned k = 0; k < order; ++k) {
        points_[k] = (k == 0) ? Complex{1.0, 0.0} : std::polar(1.0, kTwoPi * k / order);
        position_of_label_[gray_encode(k)] = k;
    }
}

unsigned Constellation::nearest_position(Complex symbol) const noexcept {
    const double spacing = kTwoPi / order_;
    const double u = std::atan2(symbol.imag(), symbol.real()) / spacing;
    const double lower = std::floor(u);
    const double frac = u - lower;
    const auto wrap = [this](double k) {
        const auto m = static_cast<long long>(order_);
        return static_cast<unsigned>(((static_cast<long long>(k) % m) + m) % m);
    };
    const unsigned a = wrap(lower);
    const unsigned b = wrap(lower + 1.0);
    if (frac < 0.5) return a;
    if (frac > 0.5) return b;
    return a < b ? a : b;
}

std::vector<Complex> map_psk(std::span<const std::uint8_t> bits, const Constellation& constellation) {
    const unsigned b = constellation.bits_per_symbol();
    if (bits.size() % b != 0) {
        throw LengthError("bit count " + std::to_string(bits.size()) + " is not a multiple of " +
                          std::to_string(b) + " bits per symbol");
    }
    std::vector<Complex> symbols(bits.size() / b);
    for (std::size_t s = 0; s < symbols.size(); ++s) {
        unsigned label = 0;
        for (unsigned j = 0; j < b; ++j) label = (label << 1) | (bits[s * b + j] & 1U);
        symbols[s] = constellation.point_for_label(label);
    }
    return symbols;
}

std::vector<Complex> map_psk(std::span<const std::uint8_t> bits, unsigned order) {
    return map_psk(bits, Constellation(order));
}

BitBlock demap_psk(std::span<const Complex> symbols, const Constellation& constellation,
                   std::size_t* zero_symbols) {
    const unsigned b = constellation.bits_per_symbol();
    BitBlock bits(symbols.size() * b);
    std::size_t zeros = 0;
    for (std::size_t s = 0; s < symbols.size(); ++s) {
        unsigned label = 0;
        if (std::abs(symbols[s]) < kZeroSymbolMagnitude) {
            ++zeros;
        } else {
            label = constellation.label_at(constellation.nearest_position(symbols[s]));
        }
        for (unsigned j = 0; j < b; ++j) bits[s * b + j] = static_cast<std::uint8_t>((label >> (b - 1 - j)) & 1U);
    }
    if (zero_symbols != nullptr) *zero_symbols = zeros;
    return bits;
}

BitBlock demap_psk(std::span<const Complex> symbols, unsigned order, std::size_t* zero_symbols) {
    return demap_psk(symbols, Constellation(order), zero_symbols);
}

}  // namespace ofdmsim
