#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ofdmsim/psk_modem.hpp"
#include "ofdmsim/types.hpp"

namespace ofdmsim {

/// Cyclic prefix length as an exact fraction of the FFT size, kept in lowest terms.
class CpFraction {
public:
    constexpr CpFraction() = default;
    /// Throws ConfigError for a zero denominator or a negative value.
    CpFraction(std::int64_t numerator, std::int64_t denominator);

    /// Accepts "p/q" or a plain integer such as "0". Throws ConfigError otherwise.
    static CpFraction parse(std::string_view text);

    std::int64_t numerator() const noexcept { return num_; }
    std::int64_t denominator() const noexcept { return den_; }
    double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// "1/4", or "0" for no prefix.
    std::string to_string() const;

    /// Prefix length G*N. Throws CpLengthError when it is not an integer.
    std::size_t length_for(std::size_t fft_size) const;

    friend bool operator==(const CpFraction&, const CpFraction&) = default;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline constexpr std::size_t kDefaultBitBudget = 1000;

struct OfdmConfig {
    std::size_t fft_size = 64;
    CpFraction cp_fraction{1, 4};
    unsigned modulation_order = kDefaultModulationOrder;
    /// Information bits generated per Monte Carlo repetition.
    std::size_t bit_budget = kDefaultBitBudget;

    /// Throws CpLengthError for non-integer or oversized prefixes.
    std::size_t cp_len() const;

    /// Checks every field; throws SizeError, CpLengthError, OrderError or ConfigError.
    void validate() const;

    /// Bits actually drawn per repetition: bit_budget rounded up to whole PSK symbols.
    std::size_t bits_per_repetition() const;

    friend bool operator==(const OfdmConfig&, const OfdmConfig&) = default;
};

/// Rows of N subcarrier values. The last row is zero padded past `used`.
struct SubcarrierMatrix {
    std::size_t subcarriers = 0;
    std::size_t rows = 0;
    std::size_t used = 0;  // count of data-carrying slots, row major
    std::vector<Complex> data;

    std::span<const Complex> row(std::size_t r) const { return {data.data() + r * subcarriers, subcarriers}; }
    std::span<Complex> row(std::size_t r) { return {data.data() + r * subcarriers, subcarriers}; }
    std::size_t pad_slots() const noexcept { return rows * subcarriers - used; }
};

struct OfdmFrame {
    std::vector<Complex> payload;  // N time samples
    std::vector<Complex> prefix;   // last L samples of payload

    std::size_t size() const noexcept { return payload.size() + prefix.size(); }
};

SubcarrierMatrix serial_to_parallel(std::span<const Complex> symbols, std::size_t fft_size);

/// Concatenates the last `cp_len` samples in front of the symbol.
/// Throws CpLengthError if cp_len exceeds the symbol length.
std::vector<Complex> add_cyclic_prefix(std::span<const Complex> time_symbol, std::size_t cp_len);

/// Keeps samples [cp_len, cp_len + fft_size). Throws SizeError on a length mismatch.
std::vector<Complex> remove_cyclic_prefix(std::span<const Complex> rx, std::size_t fft_size, std::size_t cp_len);

OfdmFrame make_frame(std::span<const Complex> time_symbol, std::size_t cp_len);

/// Serial stream of prefix || payload per frame. Throws SizeError if frame shapes differ.
std::vector<Complex> parallel_to_serial(std::span<const OfdmFrame> frames);

/// Receiver-side inverse of parallel_to_serial: cuts the stream into frames of
/// N + L samples. Throws SizeError if the stream is not a whole number of frames.
std::vector<std::vector<Complex>> split_frames(std::span<const Complex> serial, std::size_t fft_size,
                                               std::size_t cp_len);

}  // namespace ofdmsim
