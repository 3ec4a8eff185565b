#include "ofdmsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ofdmsim/errors.hpp"
#include "ofdmsim/psk_modem.hpp"

namespace ofdmsim {

ErrorCount count_bit_errors(std::span<const std::uint8_t> tx, std::span<const std::uint8_t> rx) {
    if (tx.size() != rx.size()) {
        throw LengthError("cannot compare " + std::to_string(tx.size()) + " sent bits with " +
                          std::to_string(rx.size()) + " received bits");
    }
    ErrorCount c;
    c.total = tx.size();
    for (std::size_t i = 0; i < tx.size(); ++i) c.errors += (tx[i] != rx[i]) ? 1U : 0U;
    return c;
}

double q_function(double x) noexcept { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double theoretical_mpsk_ber(double ebno_db, unsigned order) {
    const Constellation constellation(order);  // validates M
    const double b = constellation.bits_per_symbol();
    const double gamma_b = std::pow(10.0, ebno_db / 10.0);
    if (order <= 4) return q_function(std::sqrt(2.0 * gamma_b));
    const double ser = 2.0 * q_function(std::sqrt(2.0 * b * gamma_b) * std::sin(std::numbers::pi / order));
    return ser / b;
}

Interval wilson_interval(std::uint64_t errors, std::uint64_t total, double z) {
    if (total == 0) return {0.0, 1.0};
    const double n = static_cast<double>(total);
    const double p = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double radius = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    Interval iv{std::max(0.0, center - radius), std::min(1.0, center + radius)};
    // Pin the exact boundaries; rounding can otherwise leave 1e-17 residue.
    if (errors == 0) iv.low = 0.0;
    if (errors == total) iv.high = 1.0;
    iv.low = std::min(iv.low, p);
    iv.high = std::max(iv.high, p);
    return iv;
}

BerRecord finalize_record(BerRecord record) {
    record.ber = record.bits_sent == 0 ? 0.0
                                       : static_cast<double>(record.bit_errors) / static_cast<double>(record.bits_sent);
    const Interval iv = wilson_interval(record.bit_errors, record.bits_sent);
    record.ci_low = iv.low;
    record.ci_high = iv.high;
    return record;
}

}  // namespace ofdmsim
