#include "ofdmsim/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "ofdmsim/errors.hpp"

namespace ofdmsim {

namespace {

constexpr double kWidth = 720, kHeight = 520;
constexpr double kLeft = 80, kRight = 170, kTop = 50, kBottom = 60;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Keyed by the fraction value so the legend runs from longest to shortest prefix.
struct FractionOrder {
    bool operator()(const CpFraction& a, const CpFraction& b) const {
        return a.numerator() * b.denominator() > b.numerator() * a.denominator();
    }
};

}  // namespace

std::string render_ber_svg(const std::vector<BerRecord>& records, std::size_t fft_size) {
    std::map<CpFraction, std::vector<const BerRecord*>, FractionOrder> series;
    double x_min = 0, x_max = 0;
    bool first = true;
    for (const auto& r : records) {
        if (r.config.fft_size != fft_size) continue;
        series[r.config.cp_fraction].push_back(&r);
        x_min = first ? r.ebno_db : std::min(x_min, r.ebno_db);
        x_max = first ? r.ebno_db : std::max(x_max, r.ebno_db);
        first = false;
    }
    if (x_max <= x_min) {
        x_min -= 1.0;
        x_max += 1.0;
    }
    const int decade_min = static_cast<int>(std::log10(kPlotBerFloor));
    const int decade_max = 0;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    const auto py = [&](double ber) {
        const double l = std::log10(std::max(ber, kPlotBerFloor));
        return kTop + (decade_max - l) / (decade_max - decade_min) * plot_h;
    };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
           "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) + "\" fill=\"white\"/>\n";
    svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" " +
           "font-size=\"16\">BER vs Eb/No, FFT size " + std::to_string(fft_size) + "</text>\n";

    // Grid and tick labels.
    svg += "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
    for (int d = decade_min; d <= decade_max; ++d) {
        const double y = py(std::pow(10.0, d));
        svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft + plot_w) + "\" y2=\"" +
               num(y) + "\"/>\n";
    }
    const double span = x_max - x_min;
    const double x_step = span <= 10 ? 1.0 : (span <= 24 ? 2.0 : 5.0);
    std::vector<double> x_ticks;
    for (double x = std::ceil(x_min / x_step) * x_step; x <= x_max + 1e-9; x += x_step) x_ticks.push_back(x);
    for (double x : x_ticks) {
        svg += "<line x1=\"" + num(px(x)) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(px(x)) + "\" y2=\"" +
               num(kTop + plot_h) + "\"/>\n";
    }
    svg += "</g>\n";
    svg += "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
    for (int d = decade_min; d <= decade_max; ++d) {
        svg += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(py(std::pow(10.0, d)) + 4) +
               "\" text-anchor=\"end\">1e" + std::to_string(d) + "</text>\n";
    }
    for (double x : x_ticks) {
        char label[16];
        std::snprintf(label, sizeof(label), "%g", x);
        svg += "<text x=\"" + num(px(x)) + "\" y=\"" + num(kTop + plot_h + 18) + "\" text-anchor=\"middle\">" +
               label + "</text>\n";
    }
    svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(kHeight - 15) +
           "\" text-anchor=\"middle\" font-size=\"14\">Eb/No (dB)</text>\n";
    svg += "<text x=\"20\" y=\"" + num(kTop + plot_h / 2) + "\" text-anchor=\"middle\" font-size=\"14\" " +
           "transform=\"rotate(-90 20 " + num(kTop + plot_h / 2) + ")\">Bit error rate</text>\n";
    svg += "</g>\n";
    svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(plot_w) + "\" height=\"" +
           num(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";

    std::size_t index = 0;
    for (auto& [fraction, points] : series) {
        std::sort(points.begin(), points.end(), [](const BerRecord* a, const BerRecord* b) {
            return a->ebno_db < b->ebno_db;
        });
        const std::string color = kPalette[index % std::size(kPalette)];
        std::string coords;
        for (const auto* p : points) {
            if (!coords.empty()) coords += ' ';
            coords += num(px(p->ebno_db)) + "," + num(py(p->ber));
        }
        svg += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\" points=\"" + coords + "\"/>\n";
        for (const auto* p : points) {
            if (p->bit_errors == 0) {
                // Zero errors: hollow square sitting on the floor.
                svg += "<rect x=\"" + num(px(p->ebno_db) - 4) + "\" y=\"" + num(py(kPlotBerFloor) - 4) +
                       "\" width=\"8\" height=\"8\" fill=\"white\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
            } else {
                svg += "<circle cx=\"" + num(px(p->ebno_db)) + "\" cy=\"" + num(py(p->ber)) + "\" r=\"3\" fill=\"" +
                       color + "\"/>\n";
            }
        }
        const double ly = kTop + 16 + 22.0 * static_cast<double>(index);
        const double lx = kLeft + plot_w + 16;
        svg += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 24) + "\" y2=\"" + num(ly) +
               "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + num(lx + 30) + "\" y=\"" + num(ly + 4) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + xml_escape("CP " + fraction.to_string()) +
               "</text>\n";
        ++index;
    }
    const double ly = kTop + 16 + 22.0 * static_cast<double>(index);
    svg += "<rect x=\"" + num(kLeft + plot_w + 24) + "\" y=\"" + num(ly - 4) +
           "\" width=\"8\" height=\"8\" fill=\"white\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(kLeft + plot_w + 46) + "\" y=\"" + num(ly + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + xml_escape("0 errors (< 1e-7)") + "</text>\n";
    svg += "</svg>\n";
    return svg;
}

std::vector<std::filesystem::path> emit_plot(const std::vector<BerRecord>& records,
                                             const std::filesystem::path& directory) {
    if (records.empty()) throw ConfigError("no records to plot");
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) throw IoError("cannot create plot directory '" + directory.string() + "': " + ec.message());

    std::set<std::size_t> sizes;
    for (const auto& r : records) sizes.insert(r.config.fft_size);

    std::vector<std::filesystem::path> written;
    for (std::size_t n : sizes) {
        const auto path = directory / ("ber_fft" + std::to_string(n) + ".svg");
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
        out << render_ber_svg(records, n);
        if (!out) throw IoError("write to '" + path.string() + "' failed");
        written.push_back(path);
    }
    return written;
}

}  // namespace ofdmsim
