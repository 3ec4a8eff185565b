#include "ofdmsim/spectral_transform.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

#include "ofdmsim/errors.hpp"

namespace ofdmsim {

namespace {

void require_power_of_two(std::size_t n) {
    if (!is_power_of_two(n)) throw SizeError("transform size " + std::to_string(n) + " is not a power of two");
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n) {
    require_power_of_two(n);
    scale_ = 1.0 / std::sqrt(static_cast<double>(n));

    const unsigned bits = log2_exact(n);
    bit_reverse_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (unsigned b = 0; b < bits; ++b) r |= ((i >> b) & 1U) << (bits - 1 - b);
        bit_reverse_[i] = r;
    }

    twiddles_.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        twiddles_[k] = std::polar(1.0, -kTwoPi * static_cast<double>(k) / static_cast<double>(n));
    }
}

void FftPlan::forward(std::span<Complex> data) const { transform(data, false); }
void FftPlan::inverse(std::span<Complex> data) const { transform(data, true); }

void FftPlan::transform(std::span<Complex> data, bool inverse) const {
    if (data.size() != n_) {
        throw SizeError("plan size " + std::to_string(n_) + " applied to " + std::to_string(data.size()) + " samples");
    }
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t j = bit_reverse_[i];
        if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= n_; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n_ / len;
        for (std::size_t start = 0; start < n_; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                Complex w = twiddles_[k * stride];
                if (inverse) w = std::conj(w);
                const Complex t = w * data[start + k + half];
                data[start + k + half] = data[start + k] - t;
                data[start + k] += t;
            }
        }
    }
    for (auto& v : data) v *= scale_;
}

const FftPlan& fft_plan(std::size_t n) {
    require_power_of_two(n);
    constexpr std::size_t kMaxLog2 = 40;
    static std::array<std::once_flag, kMaxLog2> once;
    static std::array<std::unique_ptr<FftPlan>, kMaxLog2> plans;
    const unsigned b = log2_exact(n);
    if (b >= kMaxLog2) throw SizeError("transform size " + std::to_string(n) + " too large");
    std::call_once(once[b], [&] { plans[b] = std::make_unique<FftPlan>(n); });
    return *plans[b];
}

std::vector<Complex> idft(std::span<const Complex> freq) {
    std::vector<Complex> out(freq.begin(), freq.end());
    fft_plan(out.size()).inverse(out);
    return out;
}

std::vector<Complex> dft(std::span<const Complex> time) {
    std::vector<Complex> out(time.begin(), time.end());
    fft_plan(out.size()).forward(out);
    return out;
}

SpectralBlock idft(const SpectralBlock& freq) {
    if (freq.domain != Domain::frequency) throw std::invalid_argument("idft expects a frequency-domain block");
    return {idft(std::span<const Complex>(freq.samples)), Domain::time};
}

SpectralBlock dft(const SpectralBlock& time) {
    if (time.domain != Domain::time) throw std::invalid_argument("dft expects a time-domain block");
    return {dft(std::span<const Complex>(time.samples)), Domain::frequency};
}

SpectralBlock dft_direct(const SpectralBlock& block, Direction direction) {
    const std::size_t n = block.size();
    SpectralBlock out{std::vector<Complex>(n),
                      direction == Direction::forward ? Domain::frequency : Domain::time};
    if (n == 0) return out;
    const double sign = direction == Direction::forward ? -1.0 : 1.0;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc{0.0, 0.0};
        for (std::size_t m = 0; m < n; ++m) {
            // Reduce k*m mod n before forming the angle to keep it accurate.
            const std::size_t idx = (k * m) % n;
            acc += block.samples[m] * std::polar(1.0, sign * kTwoPi * static_cast<double>(idx) / static_cast<double>(n));
        }
        out.samples[k] = acc * scale;
    }
    return out;
}

}  // namespace ofdmsim
