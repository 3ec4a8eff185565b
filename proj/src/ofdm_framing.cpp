#include "ofdmsim/ofdm_framing.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "ofdmsim/errors.hpp"

namespace ofdmsim {

CpFraction::CpFraction(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) throw ConfigError("cp fraction has zero denominator");
    if (denominator < 0) {
        numerator = -numerator;
        denominator = -denominator;
    }
    if (numerator < 0) throw ConfigError("cp fraction must be non-negative");
    const std::int64_t g = std::gcd(numerator, denominator);
    num_ = numerator / g;
    den_ = denominator / g;
}

CpFraction CpFraction::parse(std::string_view text) {
    const auto parse_int = [text](std::string_view part) {
        std::int64_t v = 0;
        const auto* end = part.data() + part.size();
        const auto [ptr, ec] = std::from_chars(part.data(), end, v);
        if (part.empty() || ec != std::errc{} || ptr != end) {
            throw ConfigError("invalid cp fraction '" + std::string(text) + "' (expected e.g. \"1/4\")");
        }
        return v;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return CpFraction(parse_int(text), 1);
    return CpFraction(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string CpFraction::to_string() const {
    if (num_ == 0) return "0";
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::size_t CpFraction::length_for(std::size_t fft_size) const {
    const auto n = static_cast<std::int64_t>(fft_size);
    if ((num_ * n) % den_ != 0) {
        throw CpLengthError("cp fraction " + to_string() + " of fft size " + std::to_string(fft_size) +
                            " is not an integer sample count");
    }
    return static_cast<std::size_t>(num_ * n / den_);
}

std::size_t OfdmConfig::cp_len() const {
    const std::size_t len = cp_fraction.length_for(fft_size);
    if (len > fft_size) {
        throw CpLengthError("cp length " + std::to_string(len) + " exceeds fft size " + std::to_string(fft_size));
    }
    return len;
}

void OfdmConfig::validate() const {
    if (!is_power_of_two(fft_size)) throw SizeError("fft size " + std::to_string(fft_size) + " is not a power of two");
    (void)cp_len();
    (void)Constellation(modulation_order);
    if (bit_budget == 0) throw ConfigError("bit budget must be positive");
}

std::size_t OfdmConfig::bits_per_repetition() const {
    const std::size_t b = log2_exact(modulation_order);
    return (bit_budget + b - 1) / b * b;
}

SubcarrierMatrix serial_to_parallel(std::span<const Complex> symbols, std::size_t fft_size) {
    if (fft_size == 0) throw SizeError("fft size must be positive");
    SubcarrierMatrix m;
    m.subcarriers = fft_size;
    m.rows = (symbols.size() + fft_size - 1) / fft_size;
    m.used = symbols.size();
    m.data.assign(m.rows * fft_size, Complex{});
    std::copy(symbols.begin(), symbols.end(), m.data.begin());
    return m;
}

std::vector<Complex> add_cyclic_prefix(std::span<const Complex> time_symbol, std::size_t cp_len) {
    if (cp_len > time_symbol.size()) {
        throw CpLengthError("cp length " + std::to_string(cp_len) + " exceeds symbol length " +
                            std::to_string(time_symbol.size()));
    }
    std::vector<Complex> out;
    out.reserve(time_symbol.size() + cp_len);
    out.insert(out.end(), time_symbol.end() - static_cast<std::ptrdiff_t>(cp_len), time_symbol.end());
    out.insert(out.end(), time_symbol.begin(), time_symbol.end());
    return out;
}

std::vector<Complex> remove_cyclic_prefix(std::span<const Complex> rx, std::size_t fft_size, std::size_t cp_len) {
    if (rx.size() != fft_size + cp_len) {
        throw SizeError("received " + std::to_string(rx.size()) + " samples, expected " +
                        std::to_string(fft_size + cp_len));
    }
    return {rx.begin() + static_cast<std::ptrdiff_t>(cp_len), rx.end()};
}

OfdmFrame make_frame(std::span<const Complex> time_symbol, std::size_t cp_len) {
    if (cp_len > time_symbol.size()) {
        throw CpLengthError("cp length " + std::to_string(cp_len) + " exceeds symbol length " +
                            std::to_string(time_symbol.size()));
    }
    OfdmFrame frame;
    frame.payload.assign(time_symbol.begin(), time_symbol.end());
    frame.prefix.assign(time_symbol.end() - static_cast<std::ptrdiff_t>(cp_len), time_symbol.end());
    return frame;
}

std::vector<Complex> parallel_to_serial(std::span<const OfdmFrame> frames) {
    std::vector<Complex> out;
    if (frames.empty()) return out;
    const std::size_t n = frames.front().payload.size();
    const std::size_t l = frames.front().prefix.size();
    out.reserve(frames.size() * (n + l));
    for (const auto& f : frames) {
        if (f.payload.size() != n || f.prefix.size() != l) throw SizeError("frames differ in (N, L) shape");
        out.insert(out.end(), f.prefix.begin(), f.prefix.end());
        out.insert(out.end(), f.payload.begin(), f.payload.end());
    }
    return out;
}

std::vector<std::vector<Complex>> split_frames(std::span<const Complex> serial, std::size_t fft_size,
                                               std::size_t cp_len) {
    const std::size_t frame_len = fft_size + cp_len;
    if (frame_len == 0 || serial.size() % frame_len != 0) {
        throw SizeError("stream of " + std::to_string(serial.size()) + " samples is not a whole number of " +
                        std::to_string(frame_len) + "-sample frames");
    }
    std::vector<std::vector<Complex>> frames(serial.size() / frame_len);
    for (std::size_t i = 0; i < frames.size(); ++i) {
        const auto first = serial.begin() + static_cast<std::ptrdiff_t>(i * frame_len);
        frames[i].assign(first, first + static_cast<std::ptrdiff_t>(frame_len));
    }
    return frames;
}

}  // namespace ofdmsim
