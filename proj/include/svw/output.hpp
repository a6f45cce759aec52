#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace svw::output {

/// Shortest round-trip-free rendering used in every data file: 15 significant digits.
std::string format_number(double value);

/// Comma-separated, LF-terminated, header row first.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(std::vector<std::string> fields);
    void add_numeric_row(const std::vector<double>& values);

    std::size_t row_count() const noexcept { return rows_.size(); }
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Writes `content` to `path`; "-" means `stdout_sink` (std::cout by default).
/// Throws IoError on failure.
void write_text(const std::filesystem::path& path, std::string_view content);
void write_text(const std::filesystem::path& path, std::string_view content, std::ostream& stdout_sink);

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Self-contained SVG line chart: frame, ticks, one polyline per series, legend.
class SvgLinePlot {
public:
    SvgLinePlot(std::string title, std::string x_label, std::string y_label);

    void add_series(Series series);
    void set_y_range(double lo, double hi);

    const std::vector<Series>& series() const noexcept { return series_; }
    std::string render() const;

private:
    std::string title_;
    std::string x_label_;
    std::string y_label_;
    std::vector<Series> series_;
    bool fixed_y_ = false;
    double y_lo_ = 0.0;
    double y_hi_ = 1.0;
};

} // namespace svw::output
