#include "petra/io.hpp"

#include "petra/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>

namespace petra::io {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

/// Line reader tracking line numbers, stripping CR and a leading BOM.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            ++number_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (number_ == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
            if (number_ > 1 && trim(line).empty()) continue;
            return true;
        }
        return false;
    }

    std::size_t line() const { return number_; }

private:
    std::istream& in_;
    std::size_t number_ = 0;
};

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

void expect_header(LineReader& reader, std::string& line, std::initializer_list<std::string_view> accepted) {
    if (!reader.next(line)) throw ParseError(0, "empty file");
    const auto got = trim(line);
    for (auto h : accepted) {
        if (got == h) return;
    }
    throw ParseError(reader.line(), fmt::format("unexpected header '{}', expected '{}'", got, *accepted.begin()));
}

std::vector<double> parse_row(std::string_view line, std::size_t columns, std::size_t number) {
    const auto fields = split(line);
    if (fields.size() != columns) {
        throw ParseError(number, fmt::format("expected {} columns, found {}", columns, fields.size()));
    }
    std::vector<double> values;
    values.reserve(columns);
    for (auto f : fields) values.push_back(parse_number(f, number));
    return values;
}

}  // namespace

double parse_number(std::string_view text, std::size_t line) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw ParseError(line, fmt::format("'{}' is not a number", text));
    }
    return value;
}

double parse_quantity(std::string_view text, std::string_view unit) {
    const auto original = text;
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || !std::isfinite(value)) {
        throw ParseError(0, fmt::format("'{}' is not a quantity", original));
    }
    std::string_view suffix = trim(std::string_view(ptr, static_cast<std::size_t>(text.data() + text.size() - ptr)));
    if (suffix.ends_with(unit)) {
        suffix.remove_suffix(unit.size());
    } else if (unit == "ohm" && suffix.ends_with("Ω")) {
        suffix.remove_suffix(std::string_view("Ω").size());
    }
    if (suffix.empty()) return value;

    static const std::map<std::string_view, double> prefixes{
        {"f", 1e-15}, {"p", 1e-12}, {"n", 1e-9}, {"u", 1e-6}, {"µ", 1e-6}, {"μ", 1e-6},
        {"m", 1e-3},  {"k", 1e3},   {"M", 1e6},  {"G", 1e9}};
    const auto it = prefixes.find(suffix);
    if (it == prefixes.end()) {
        throw ParseError(0, fmt::format("'{}': unknown unit suffix, expected {}", original, unit));
    }
    return value * it->second;
}

std::string format_number(double v) { return fmt::format("{}", v); }

ImpedanceSpectrum read_impedance_csv(std::istream& in) {
    LineReader reader(in);
    std::string line;
    expect_header(reader, line, {kImpedanceHeader});
    std::vector<ImpedancePoint> pts;
    while (reader.next(line)) {
        const auto v = parse_row(line, 3, reader.line());
        if (!pts.empty() && v[0] <= pts.back().frequency) {
            throw ParseError(reader.line(), "frequencies must be strictly increasing");
        }
        if (!(v[0] > 0.0)) throw ParseError(reader.line(), "frequency must be positive");
        pts.push_back({v[0], v[1], v[2]});
    }
    return ImpedanceSpectrum(std::move(pts));
}

void write_impedance_csv(std::ostream& out, const ImpedanceSpectrum& spectrum) {
    out << kImpedanceHeader << '\n';
    for (const auto& p : spectrum.points()) {
        out << format_number(p.frequency) << ',' << format_number(p.resistance) << ',' << format_number(p.reactance)
            << '\n';
    }
}

TimeSeries read_waveform_csv(std::istream& in) {
    LineReader reader(in);
    std::string line;
    expect_header(reader, line, {kVoltageHeader, kCurrentHeader});
    const Unit unit = trim(line) == kVoltageHeader ? Unit::Volts : Unit::Amperes;

    std::vector<double> t;
    std::vector<double> x;
    std::vector<std::size_t> lines;
    while (reader.next(line)) {
        const auto v = parse_row(line, 2, reader.line());
        t.push_back(v[0]);
        x.push_back(v[1]);
        lines.push_back(reader.line());
    }
    if (t.size() < 2) throw ParseError(reader.line(), "waveform needs at least 2 samples");

    const double step = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    if (!(step > 0.0)) throw ParseError(lines.back(), "time must increase");
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (std::abs((t[i] - t[i - 1]) - step) > 1e-6 * step) {
            throw ParseError(lines[i], "non-uniform time step (tolerance 1 ppm)");
        }
    }
    return TimeSeries(std::move(x), 1.0 / step, unit);
}

void write_waveform_csv(std::ostream& out, const TimeSeries& series) {
    switch (series.unit()) {
        case Unit::Volts: out << kVoltageHeader << '\n'; break;
        case Unit::Amperes: out << kCurrentHeader << '\n'; break;
        default: throw DomainError("waveform CSV holds voltage or current records only");
    }
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << format_number(series.time_at(i)) << ',' << format_number(series[i]) << '\n';
    }
}

void write_loop_csv(std::ostream& out, const PELoop& loop) {
    loop.validate();
    out << kLoopHeader << '\n';
    for (std::size_t i = 0; i < loop.field.size(); ++i) {
        out << format_number(loop.field[i]) << ',' << format_number(loop.polarization[i]) << '\n';
    }
}

void write_metrics_csv(std::ostream& out, const LoopMetrics& m) {
    auto row = [&](std::string_view name, const std::optional<double>& v, std::string_view unit) {
        out << name << ',' << (v ? format_number(*v) : std::string("undefined")) << ',' << unit << '\n';
    };
    out << kMetricsHeader << '\n';
    row("remnant_polarization", m.remnant_polarization, "C/m^2");
    row("coercive_field", m.coercive_field, "V/m");
    row("saturation_polarization", m.saturation_polarization, "C/m^2");
    row("hysteresis_width", m.hysteresis_width, "V/m");
    row("loop_area", m.loop_area, "J/m^3");
}

void write_report_csv(std::ostream& out, const std::vector<CharacterizationPoint>& points) {
    out << kReportHeader << '\n';
    for (const auto& p : points) {
        out << p.gain_index << ',' << format_number(p.current) << ',' << format_number(p.drive_frequency) << ','
            << format_number(p.snr_db) << ',' << (p.saturated ? 1 : 0) << '\n';
    }
}

std::vector<CharacterizationPoint> read_report_csv(std::istream& in) {
    LineReader reader(in);
    std::string line;
    expect_header(reader, line, {kReportHeader});
    std::vector<CharacterizationPoint> points;
    while (reader.next(line)) {
        const auto v = parse_row(line, 5, reader.line());
        if (v[0] != std::round(v[0]) || v[0] < 1 || v[0] > 5) throw ParseError(reader.line(), "gain index must be 1..5");
        if (v[4] != 0.0 && v[4] != 1.0) throw ParseError(reader.line(), "saturated must be 0 or 1");
        points.push_back({static_cast<int>(v[0]), v[1], v[2], v[3], v[4] == 1.0});
    }
    return points;
}

void write_range_csv(std::ostream& out, const std::vector<OperationalRange>& ranges) {
    out << kRangeHeader << '\n';
    for (const auto& r : ranges) {
        const std::string i_min = (r.i_min_below_grid ? "<" : "") + format_number(r.i_min);
        const std::string decades = (r.i_min_below_grid ? ">" : "") + format_number(r.decades());
        out << r.gain_index << ',' << i_min << ',' << format_number(r.i_max) << ',' << format_number(r.band_low) << ','
            << format_number(r.band_high) << ',' << decades << '\n';
    }
}

void write_regression_csv(std::ostream& out, const std::vector<OperationalRange>& ranges,
                          const std::vector<CharacterizationPoint>& points) {
    out << kRegressionHeader << '\n';
    for (const auto& r : ranges) {
        const auto used = std::count_if(points.begin(), points.end(), [&](const auto& p) {
            return p.gain_index == r.gain_index && !p.saturated;
        });
        out << r.gain_index << ',' << format_number(r.fit.a) << ',' << format_number(r.fit.b) << ','
            << format_number(r.fit.r_squared) << ',' << used << '\n';
    }
}

void write_plot_csv(std::ostream& out, const std::vector<OperationalRange>& ranges,
                    const std::vector<CharacterizationPoint>& points) {
    out << kPlotHeader << '\n';
    for (const auto& p : points) {
        const double x = std::log10(p.current);
        std::string fitted;
        for (const auto& r : ranges) {
            if (r.gain_index == p.gain_index) fitted = format_number(10.0 * std::log10(r.fit(x)));
        }
        out << p.gain_index << ',' << format_number(x) << ',' << format_number(p.snr_db) << ',' << fitted << '\n';
    }
}

}  // namespace petra::io
