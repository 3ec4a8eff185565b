#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "ofdmsim/channel_models.hpp"
#include "ofdmsim/ofdm_framing.hpp"

namespace ofdmsim {

struct ErrorCount {
    std::uint64_t errors = 0;
    std::uint64_t total = 0;
};

/// Hamming distance between equal-length blocks. Throws LengthError otherwise.
ErrorCount count_bit_errors(std::span<const std::uint8_t> tx, std::span<const std::uint8_t> rx);

/// Gaussian tail probability Q(x) = erfc(x / sqrt 2) / 2.
double q_function(double x) noexcept;

/// Reference BER for Gray-labeled M-PSK on AWGN. Exact Q(sqrt(2 Eb/No)) for
/// M = 2 and 4; nearest-neighbour 2 Q(sqrt(2 b Eb/No) sin(pi/M)) / b otherwise.
/// Accepts +-infinity. Throws OrderError for invalid M.
double theoretical_mpsk_ber(double ebno_db, unsigned order);

struct Interval {
    double low = 0.0;
    double high = 1.0;

    bool contains(double v) const noexcept { return low <= v && v <= high; }
    bool overlaps(const Interval& o) const noexcept { return low <= o.high && o.low <= high; }
};

inline constexpr double kDefaultIntervalZ = 3.0;

/// Wilson score interval for errors/total at z standard deviations. total >= 1.
Interval wilson_interval(std::uint64_t errors, std::uint64_t total, double z = kDefaultIntervalZ);

struct BerRecord {
    OfdmConfig config;
    ChannelKind channel = ChannelKind::awgn;
    double ebno_db = 0.0;
    std::uint64_t bits_sent = 0;
    std::uint64_t bit_errors = 0;
    double ber = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    std::uint64_t zf_clamps = 0;
    std::uint64_t seed = 0;
    std::uint64_t cell_id = 0;
    bool equalizer = true;

    Interval interval() const noexcept { return {ci_low, ci_high}; }

    friend bool operator==(const BerRecord&, const BerRecord&) = default;
};

/// Fills ber and the z = 3 Wilson bounds from the counts.
BerRecord finalize_record(BerRecord record);

}  // namespace ofdmsim
