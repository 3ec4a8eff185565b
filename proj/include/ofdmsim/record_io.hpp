#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ofdmsim/metrics.hpp"

namespace ofdmsim {

enum class RecordFormat { csv, json };

/// Column order of the CSV header and key order of the JSON objects.
inline constexpr std::string_view kRecordColumns[] = {
    "fft_size", "cp_fraction", "channel", "ebno_db", "bits_sent", "bit_errors",
    "ber",      "ci_low",      "ci_high", "zf_clamps", "seed",     "cell_id",
};

/// .json -> json, anything else -> csv.
RecordFormat format_for_path(const std::filesystem::path& path);

std::string format_records_csv(const std::vector<BerRecord>& records);
std::string format_records_json(const std::vector<BerRecord>& records);

/// One record as a JSON object. With `details` the object also carries
/// modulation_order, bit_budget and equalizer.
std::string format_record_json(const BerRecord& record, bool details = false);

/// Throws IoError naming the path on failure.
void write_records(const std::vector<BerRecord>& records, const std::filesystem::path& path, RecordFormat format);

/// Parses records written by write_records. Fields not present in the file
/// (modulation order, bit budget) keep their defaults. Throws IoError.
std::vector<BerRecord> read_records(const std::filesystem::path& path);
std::vector<BerRecord> parse_records_csv(std::string_view text);
std::vector<BerRecord> parse_records_json(std::string_view text);

}  // namespace ofdmsim
