#include "svw/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>

#include <fmt/format.h>

#include "svw/errors.hpp"

namespace svw::output {

std::string format_number(double value) {
    if (value == 0.0) {
        // Drop the sign of negative zero so identical data gives identical bytes.
        value = 0.0;
    }
    return fmt::format("{:.15g}", value);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> fields) {
    if (fields.size() != header_.size()) {
        throw std::invalid_argument("CsvTable: row width does not match header");
    }
    rows_.push_back(std::move(fields));
}

void CsvTable::add_numeric_row(const std::vector<double>& values) {
    std::vector<std::string> fields;
    fields.reserve(values.size());
    for (double v : values) {
        fields.push_back(format_number(v));
    }
    add_row(std::move(fields));
}

std::string CsvTable::str() const {
    std::string out;
    auto append = [&out](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i != 0) {
                out += ',';
            }
            out += fields[i];
        }
        out += '\n';
    };
    append(header_);
    for (const auto& row : rows_) {
        append(row);
    }
    return out;
}

void write_text(const std::filesystem::path& path, std::string_view content) {
    write_text(path, content, std::cout);
}

void write_text(const std::filesystem::path& path, std::string_view content, std::ostream& stdout_sink) {
    if (path == "-") {
        stdout_sink << content;
        stdout_sink.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    file.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!file) {
        throw IoError("failed writing " + path.string());
    }
}

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string escape_xml(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string coord(double v) { return fmt::format("{:.2f}", v); }

} // namespace

SvgLinePlot::SvgLinePlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void SvgLinePlot::add_series(Series series) {
    if (series.x.size() != series.y.size()) {
        throw std::invalid_argument("SvgLinePlot: x and y lengths differ");
    }
    series_.push_back(std::move(series));
}

void SvgLinePlot::set_y_range(double lo, double hi) {
    fixed_y_ = true;
    y_lo_ = lo;
    y_hi_ = hi;
}

std::string SvgLinePlot::render() const {
    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -x_lo;
    double y_lo = fixed_y_ ? y_lo_ : x_lo;
    double y_hi = fixed_y_ ? y_hi_ : -x_lo;
    for (const auto& s : series_) {
        for (double x : s.x) {
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
        }
        if (!fixed_y_) {
            for (double y : s.y) {
                y_lo = std::min(y_lo, y);
                y_hi = std::max(y_hi, y);
            }
        }
    }
    if (!std::isfinite(x_lo)) {
        x_lo = 0.0;
        x_hi = 1.0;
    }
    if (!std::isfinite(y_lo)) {
        y_lo = 0.0;
        y_hi = 1.0;
    }
    if (x_hi == x_lo) {
        x_hi = x_lo + 1.0;
    }
    if (y_hi == y_lo) {
        y_hi = y_lo + 1.0;
    }

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    auto py = [&](double y) { return kTop + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
                       "viewBox=\"0 0 {} {}\">\n",
                       kWidth, kHeight, kWidth, kHeight);
    out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kWidth, kHeight);
    out += fmt::format("<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" "
                       "text-anchor=\"middle\">{}</text>\n",
                       coord(kLeft + plot_w / 2), escape_xml(title_));
    out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
                       coord(kLeft), coord(kTop), coord(plot_w), coord(plot_h));

    constexpr int kTicks = 5;
    for (int i = 0; i <= kTicks; ++i) {
        const double xv = x_lo + (x_hi - x_lo) * i / kTicks;
        const double yv = y_lo + (y_hi - y_lo) * i / kTicks;
        out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n",
                           coord(px(xv)), coord(kTop + plot_h), coord(kTop + plot_h + 5));
        out += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" "
                           "text-anchor=\"middle\">{:.3g}</text>\n",
                           coord(px(xv)), coord(kTop + plot_h + 18), xv);
        out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n",
                           coord(kLeft - 5), coord(py(yv)), coord(kLeft));
        out += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" "
                           "text-anchor=\"end\">{:.3g}</text>\n",
                           coord(kLeft - 8), coord(py(yv) + 4), yv);
    }
    out += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\" "
                       "text-anchor=\"middle\">{}</text>\n",
                       coord(kLeft + plot_w / 2), coord(kHeight - 15), escape_xml(x_label_));
    out += fmt::format("<text x=\"18\" y=\"{0}\" font-family=\"sans-serif\" font-size=\"13\" "
                       "text-anchor=\"middle\" transform=\"rotate(-90 18 {0})\">{1}</text>\n",
                       coord(kTop + plot_h / 2), escape_xml(y_label_));

    for (std::size_t k = 0; k < series_.size(); ++k) {
        const auto& s = series_[k];
        const char* color = kPalette[k % std::size(kPalette)];
        std::string points;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i != 0) {
                points += ' ';
            }
            points += coord(px(s.x[i]));
            points += ',';
            points += coord(py(s.y[i]));
        }
        out += fmt::format("<polyline data-label=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" "
                           "points=\"{}\"/>\n",
                           escape_xml(s.label), color, points);
        const double ly = kTop + 14.0 * static_cast<double>(k) + 8.0;
        const double lx = kWidth - kRight + 12.0;
        out += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"2\"/>\n",
                           coord(lx), coord(ly), coord(lx + 18), coord(ly), color);
        out += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
                           coord(lx + 24), coord(ly + 4), escape_xml(s.label));
    }
    out += "</svg>\n";
    return out;
}

} // namespace svw::output
