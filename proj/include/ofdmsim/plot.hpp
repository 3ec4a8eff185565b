#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ofdmsim/metrics.hpp"

namespace ofdmsim {

/// Zero-error cells are drawn at this BER with a hollow marker.
inline constexpr double kPlotBerFloor = 1e-7;

/// SVG waterfall chart for one FFT size: Eb/No on a linear x axis, BER on a
/// log y axis, one polyline per cp fraction. Records of other sizes are ignored.
std::string render_ber_svg(const std::vector<BerRecord>& records, std::size_t fft_size);

/// Writes ber_fft<N>.svg into `directory` for every FFT size present and
/// returns the paths in ascending N. Throws ConfigError for no records,
/// IoError on write failure.
std::vector<std::filesystem::path> emit_plot(const std::vector<BerRecord>& records,
                                             const std::filesystem::path& directory);

}  // namespace ofdmsim
