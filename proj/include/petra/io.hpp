#pragma once

#include "petra/characterization.hpp"
#include "petra/pe_loop.hpp"
#include "petra/time_series.hpp"
#include "petra/transducer.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace petra::io {

// All readers accept LF or CRLF line endings and an optional UTF-8 BOM, and
// raise ParseError carrying the 1-based line number. Numbers are written in
// shortest round-trip form, so emit -> ingest reproduces every double exactly.

inline constexpr std::string_view kImpedanceHeader = "frequency_hz,resistance_ohm,reactance_ohm";
inline constexpr std::string_view kVoltageHeader = "time_s,voltage_v";
inline constexpr std::string_view kCurrentHeader = "time_s,current_a";
inline constexpr std::string_view kLoopHeader = "field_v_per_m,polarization_c_per_m2";
inline constexpr std::string_view kMetricsHeader = "metric,value,unit";
inline constexpr std::string_view kReportHeader = "gain_index,current_a,frequency_hz,snr_db,saturated";
inline constexpr std::string_view kRangeHeader = "gain_index,i_min_a,i_max_a,band_low_hz,band_high_hz,decades";
inline constexpr std::string_view kRegressionHeader = "gain_index,a,b,r_squared,points";
inline constexpr std::string_view kPlotHeader = "gain_index,log10_current_a,snr_db,fit_snr_db";

/// Parses a decimal number (no thousands separators); throws ParseError on junk.
double parse_number(std::string_view text, std::size_t line);

/// Parses a value with an optional SI prefix and unit, e.g. "100pA", "2.5 mV",
/// "1Hz", "3e-12". `unit` is the expected base unit ("A", "V", "Hz", "ohm", "F");
/// a bare number is taken in that unit. Prefixes f p n u µ m k M G are accepted.
double parse_quantity(std::string_view text, std::string_view unit);

/// Shortest round-trip decimal representation.
std::string format_number(double v);

/// An empty file is a ParseError; a header-only file gives an empty spectrum,
/// which the fit rejects as insufficient data.
ImpedanceSpectrum read_impedance_csv(std::istream& in);
void write_impedance_csv(std::ostream& out, const ImpedanceSpectrum& spectrum);

/// Waveform CSV: `time_s,voltage_v` (Unit::Volts) or `time_s,current_a`
/// (Unit::Amperes). Time steps must be uniform to 1 ppm.
TimeSeries read_waveform_csv(std::istream& in);
void write_waveform_csv(std::ostream& out, const TimeSeries& series);

void write_loop_csv(std::ostream& out, const PELoop& loop);
/// `metric,value,unit` rows; undefined crossing metrics are written as "undefined".
void write_metrics_csv(std::ostream& out, const LoopMetrics& metrics);

void write_report_csv(std::ostream& out, const std::vector<CharacterizationPoint>& points);
std::vector<CharacterizationPoint> read_report_csv(std::istream& in);
/// A range whose crossing lies below the current grid is written as
/// "<grid_min" for i_min and ">decades" for the span.
void write_range_csv(std::ostream& out, const std::vector<OperationalRange>& ranges);
void write_regression_csv(std::ostream& out, const std::vector<OperationalRange>& ranges,
                          const std::vector<CharacterizationPoint>& points);
/// SNR against log-current per gain together with the regression curve, for external plotting.
void write_plot_csv(std::ostream& out, const std::vector<OperationalRange>& ranges,
                    const std::vector<CharacterizationPoint>& points);

}  // namespace petra::io
