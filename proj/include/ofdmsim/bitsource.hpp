#pragma once

// Deterministic random sources for the simulator.
//
// Every sweep cell owns one RngStream derived from (origin_seed, cell_id):
//
//   mixed = splitmix64_finalize(origin_seed ^ rotl(cell_id, 32))
//
// The four 64-bit words of xoshiro256** state are then the first four outputs
// of a SplitMix64 sequence started at `mixed`. Outputs are reproducible within
// this implementation only; no cross-language bit compatibility is promised.

#include <cstdint>
#include <limits>
#include <utility>

#include "ofdmsim/types.hpp"

namespace ofdmsim {

inline constexpr std::uint64_t kDefaultSeed = 0x0FDA0FDA0FDA0FDAULL;

// SplitMix64 output finalizer (Stafford variant 13).
constexpr std::uint64_t splitmix64_finalize(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_stream_seed(std::uint64_t origin_seed, std::uint64_t cell_id) noexcept;

// xoshiro256** generator bound to one sweep cell. Single owner; not thread safe.
// Satisfies std::uniform_random_bit_generator.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t origin_seed, std::uint64_t cell_id) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept { return next(); }
    std::uint64_t next() noexcept;

    // Uniform on [0, 1) with 53 bits of resolution.
    double uniform() noexcept;

    std::uint64_t origin_seed() const noexcept { return origin_seed_; }
    std::uint64_t cell_id() const noexcept { return cell_id_; }

private:
    std::uint64_t s_[4];
    std::uint64_t origin_seed_;
    std::uint64_t cell_id_;
};

RngStream make_stream(std::uint64_t origin_seed, std::uint64_t cell_id) noexcept;

BitBlock draw_bits(RngStream& stream, std::size_t count);

// Two independent N(0, 1) variates via the Box-Muller transform.
std::pair<double, double> draw_gaussian_pair(RngStream& stream) noexcept;

// Circularly symmetric complex Gaussian with E|z|^2 = variance.
Complex draw_complex_gaussian(RngStream& stream, double variance) noexcept;

}  // namespace ofdmsim
