#pragma once

// Unitary DFT pair:
//   forward  X[k] = 1/sqrt(N) * sum_n x[n] exp(-i 2 pi k n / N)
//   inverse  x[n] = 1/sqrt(N) * sum_k X[k] exp(+i 2 pi k n / N)
// The fast path is an iterative radix-2 decimation-in-time FFT; dft_direct is
// the O(N^2) reference evaluation of the same formulas.

#include <cstddef>
#include <span>
#include <vector>

#include "ofdmsim/types.hpp"

namespace ofdmsim {

enum class Domain { time, frequency };
enum class Direction { forward, inverse };

struct SpectralBlock {
    std::vector<Complex> samples;
    Domain domain = Domain::time;

    std::size_t size() const noexcept { return samples.size(); }
};

// Precomputed tables for one power-of-two size. Immutable after construction,
// so one plan may be shared across threads.
class FftPlan {
public:
    /// Throws SizeError unless n is a power of two.
    explicit FftPlan(std::size_t n);

    std::size_t size() const noexcept { return n_; }

    void forward(std::span<Complex> data) const;
    void inverse(std::span<Complex> data) const;

private:
    void transform(std::span<Complex> data, bool inverse) const;

    std::size_t n_;
    double scale_;
    std::vector<std::size_t> bit_reverse_;
    std::vector<Complex> twiddles_;  // exp(-i 2 pi k / n), k < n/2
};

/// Shared plan for size n, built on first use. Throws SizeError for non powers of two.
const FftPlan& fft_plan(std::size_t n);

/// Frequency -> time. Throws SizeError for non power-of-two sizes and
/// std::invalid_argument if the block is not tagged frequency.
SpectralBlock idft(const SpectralBlock& freq);
/// Time -> frequency.
SpectralBlock dft(const SpectralBlock& time);

std::vector<Complex> idft(std::span<const Complex> freq);
std::vector<Complex> dft(std::span<const Complex> time);

/// Literal O(N^2) evaluation for any N >= 1. The output carries the domain the
/// direction produces; the input tag is not checked.
SpectralBlock dft_direct(const SpectralBlock& block, Direction direction);

}  // namespace ofdmsim
