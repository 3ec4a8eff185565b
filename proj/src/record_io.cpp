#include "ofdmsim/record_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ofdmsim/errors.hpp"

namespace ofdmsim {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> record_fields(const BerRecord& r) {
    return {
        std::to_string(r.config.fft_size),
        r.config.cp_fraction.to_string(),
        std::string(to_string(r.channel)),
        fmt_double(r.ebno_db),
        std::to_string(r.bits_sent),
        std::to_string(r.bit_errors),
        fmt_double(r.ber),
        fmt_double(r.ci_low),
        fmt_double(r.ci_high),
        std::to_string(r.zf_clamps),
        std::to_string(r.seed),
        std::to_string(r.cell_id),
    };
}

template <typename T>
T parse_number(std::string_view s, std::string_view column) {
    T v{};
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc{} || ptr != end) {
        throw IoError("bad value '" + std::string(s) + "' in column " + std::string(column));
    }
    return v;
}

BerRecord record_from_fields(const std::vector<std::string>& f) {
    BerRecord r;
    try {
        r.config.fft_size = parse_number<std::size_t>(f[0], kRecordColumns[0]);
        r.config.cp_fraction = CpFraction::parse(f[1]);
        r.channel = parse_channel_kind(f[2]);
    } catch (const ConfigError& e) {
        throw IoError(e.what());
    }
    r.ebno_db = parse_number<double>(f[3], kRecordColumns[3]);
    r.bits_sent = parse_number<std::uint64_t>(f[4], kRecordColumns[4]);
    r.bit_errors = parse_number<std::uint64_t>(f[5], kRecordColumns[5]);
    r.ber = parse_number<double>(f[6], kRecordColumns[6]);
    r.ci_low = parse_number<double>(f[7], kRecordColumns[7]);
    r.ci_high = parse_number<double>(f[8], kRecordColumns[8]);
    r.zf_clamps = parse_number<std::uint64_t>(f[9], kRecordColumns[9]);
    r.seed = parse_number<std::uint64_t>(f[10], kRecordColumns[10]);
    r.cell_id = parse_number<std::uint64_t>(f[11], kRecordColumns[11]);
    return r;
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.emplace_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace

RecordFormat format_for_path(const std::filesystem::path& path) {
    return path.extension() == ".json" ? RecordFormat::json : RecordFormat::csv;
}

std::string format_records_csv(const std::vector<BerRecord>& records) {
    std::string out;
    for (std::size_t i = 0; i < std::size(kRecordColumns); ++i) {
        if (i) out += ',';
        out += kRecordColumns[i];
    }
    out += '\n';
    for (const auto& r : records) {
        const auto fields = record_fields(r);
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out += ',';
            out += fields[i];
        }
        out += '\n';
    }
    return out;
}

std::string format_record_json(const BerRecord& r, bool details) {
    const auto fields = record_fields(r);
    std::string out = "{";
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ", ";
        out += '"';
        out += kRecordColumns[i];
        out += "\": ";
        // fft_size and the counters are numbers; cp_fraction and channel are strings.
        if (i == 1 || i == 2) {
            out += '"' + fields[i] + '"';
        } else {
            out += fields[i];
        }
    }
    if (details) {
        out += ", \"modulation_order\": " + std::to_string(r.config.modulation_order);
        out += ", \"bit_budget\": " + std::to_string(r.config.bit_budget);
        out += std::string(", \"equalizer\": ") + (r.equalizer ? "true" : "false");
    }
    out += "}";
    return out;
}

std::string format_records_json(const std::vector<BerRecord>& records) {
    if (records.empty()) return "[]\n";
    std::string out = "[\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        out += "  " + format_record_json(records[i]);
        out += (i + 1 < records.size()) ? ",\n" : "\n";
    }
    out += "]\n";
    return out;
}

void write_records(const std::vector<BerRecord>& records, const std::filesystem::path& path, RecordFormat format) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << (format == RecordFormat::json ? format_records_json(records) : format_records_csv(records));
    out.flush();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::vector<BerRecord> parse_records_csv(std::string_view text) {
    std::vector<BerRecord> records;
    bool header = true;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != std::size(kRecordColumns)) {
            throw IoError("expected " + std::to_string(std::size(kRecordColumns)) + " columns, got " +
                          std::to_string(fields.size()));
        }
        if (header) {
            for (std::size_t i = 0; i < fields.size(); ++i) {
                if (fields[i] != kRecordColumns[i]) throw IoError("unexpected CSV header column '" + fields[i] + "'");
            }
            header = false;
            continue;
        }
        records.push_back(record_from_fields(fields));
    }
    if (header) throw IoError("missing CSV header");
    return records;
}

std::vector<BerRecord> parse_records_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed record JSON: ") + e.what());
    }
    if (!doc.is_array()) throw IoError("record JSON must be an array");
    std::vector<BerRecord> records;
    for (const auto& obj : doc) {
        std::vector<std::string> fields;
        for (const auto column : kRecordColumns) {
            const auto it = obj.find(std::string(column));
            if (it == obj.end()) throw IoError("record missing key '" + std::string(column) + "'");
            if (it->is_string()) {
                fields.push_back(it->get<std::string>());
            } else if (it->is_number_float()) {
                fields.push_back(fmt_double(it->get<double>()));
            } else {
                fields.push_back(it->dump());
            }
        }
        records.push_back(record_from_fields(fields));
    }
    return records;
}

std::vector<BerRecord> read_records(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    try {
        return format_for_path(path) == RecordFormat::json ? parse_records_json(text) : parse_records_csv(text);
    } catch (const IoError& e) {
        throw IoError("'" + path.string() + "': " + e.what());
    }
}

}  // namespace ofdmsim
