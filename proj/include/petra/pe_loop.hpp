#pragma once

#include "petra/time_series.hpp"

#include <optional>
#include <vector>

namespace petra {

struct SampleGeometry {
    double electrode_area = 0.0;  ///< m^2
    double film_thickness = 0.0;  ///< m

    void validate() const;
};

/// Paired field / polarization samples over one or more drive cycles.
struct PELoop {
    std::vector<double> field;         ///< V/m
    std::vector<double> polarization;  ///< C/m^2
    int cycles = 1;

    /// Throws DomainError unless both vectors have the same length >= 8 and cycles >= 1.
    void validate() const;
};

/// Distance between the first and last (E, P) points relative to the bounding-box
/// diagonal of the loop.
double closure_error(const PELoop& loop);

/// Loops whose closure_error exceeds this are rejected by loop_metrics.
inline constexpr double kClosureTolerance = 0.1;

/// Crossing-based metrics are std::nullopt when the loop never reaches the
/// corresponding axis on some branch (e.g. no P = 0 crossing on a minor loop).
struct LoopMetrics {
    std::optional<double> remnant_polarization;  ///< C/m^2
    std::optional<double> coercive_field;        ///< V/m
    double saturation_polarization = 0.0;        ///< C/m^2
    std::optional<double> hysteresis_width;      ///< V/m, 2 * coercive_field
    double loop_area = 0.0;                      ///< J/m^3 per cycle
};

/// Number of whole drive cycles in a record, taken from its dominant DFT bin.
/// Throws DomainError when the record has no AC content.
int count_cycles(const TimeSeries& drive);

/// Converts drive voltage and sensed current into a PE loop.
///
/// E = V / d. P is the detrended cumulative charge divided by A, with the mean of
/// P removed cycle by cycle so that each cycle is centred. Throws AlignmentError
/// when the two records differ in length or sample rate.
PELoop trace_pe_loop(const TimeSeries& drive, const TimeSeries& current, const SampleGeometry& geometry);

/// Extracts remnant polarization, coercive field, saturation polarization,
/// hysteresis width and enclosed area.
///
/// Every cycle is split at its E extrema (earliest index on ties) into a
/// descending branch (max -> min) and an ascending branch (min -> max), walked
/// circularly within the cycle. On each branch the first E = 0 and P = 0
/// crossings are located by linear interpolation. Magnitudes are averaged over
/// branches and cycles; the area is the mean shoelace area per cycle.
LoopMetrics loop_metrics(const PELoop& loop);

/// Hysteretic fixture with tanh-shaped branches.
struct FerroelectricParams {
    double remnant_polarization = 0.0;    ///< Pr, C/m^2
    double saturation_polarization = 0.0; ///< Ps, C/m^2
    double coercive_field = 0.0;          ///< Ec, V/m
    double linear_capacitance = 0.0;      ///< F, lossless parallel capacitance

    /// Throws DomainError unless 0 < Pr < Ps, Ec > 0 and C_lin >= 0.
    void validate() const;
};

enum class Branch { Ascending, Descending };

/// P(E) = Ps tanh((E -/+ Ec) / (2 delta)) with delta = Ec / ln((1 + Pr/Ps) / (1 - Pr/Ps)),
/// so that the ascending branch passes through (0, -Pr) and (Ec, 0).
double ferroelectric_polarization(const FerroelectricParams& params, double field, Branch branch);

/// Current drawn by the fixture under a drive voltage:
/// I = A dP/dt + C_lin dV/dt, derivatives by centred differences (one-sided at
/// the record ends). A sample follows the ascending branch while the drive is
/// rising and the descending one while it is falling; on a flat step it keeps
/// the previous branch.
TimeSeries synthetic_ferroelectric(const FerroelectricParams& params, const SampleGeometry& geometry,
                                   const TimeSeries& drive);

}  // namespace petra
