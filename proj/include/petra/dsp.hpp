#pragma once

#include "petra/time_series.hpp"

#include <array>
#include <vector>

namespace petra {

// ---------------------------------------------------------------------------
// Notch filter
// ---------------------------------------------------------------------------

inline constexpr double kNotchQuality = 35.0;

/// Normalized biquad, a0 = 1.
struct Biquad {
    std::array<double, 3> b{};
    std::array<double, 3> a{};
};

/// Second-order IIR notch (RBJ cookbook form) at `notch_frequency` with quality Q.
/// Throws DomainError unless 0 < notch_frequency < sample_rate / 2.
Biquad design_notch(double notch_frequency, double sample_rate, double quality = kNotchQuality);

/// How the record is extended past its ends before forward-backward filtering.
enum class EdgeMode {
    Reflect,   ///< odd reflection about the end samples (general records)
    Periodic,  ///< wrap-around; exact for records holding whole cycles
};

/// Zero-phase notch: the biquad is run forward then backward over the padded
/// record, with steady-state initial conditions, so the net response is |H|^2
/// and the phase is zero. Padding spans ten envelope time constants of the
/// notch (Q / (pi f0)), capped at the record length.
TimeSeries notch_filter(const TimeSeries& input, double notch_frequency,
                        EdgeMode edges = EdgeMode::Reflect, double quality = kNotchQuality);

// ---------------------------------------------------------------------------
// SNR estimation
// ---------------------------------------------------------------------------

inline constexpr double kKaiserBeta = 38.0;
inline constexpr int kSnrHarmonics = 6;
/// Largest reportable SNR; the noise floor is clamped to signal * 10^-30.
inline constexpr double kSnrCeilingDb = 300.0;

/// Symmetric Kaiser window of length n.
std::vector<double> kaiser_window(std::size_t n, double beta);

/// Half-width in bins of the region excluded around each spectral peak:
/// ceil(beta / pi + 1).
int main_lobe_half_width(double beta = kKaiserBeta);

struct SnrBreakdown {
    double snr_db = 0.0;
    double signal_power = 0.0;
    double noise_power = 0.0;
    double fundamental_frequency = 0.0;
    std::size_t fundamental_bin = 0;
};

/// Periodogram SNR of a single-tone record.
///
/// One-sided PSD of the Kaiser-windowed (beta = 38) record; the DC main lobe is
/// set aside, the fundamental is the largest remaining bin and its main lobe
/// carries the signal power. Main lobes of harmonics 2..6 are excluded too. The
/// median density of the remaining bins stands in for the excluded ones (never
/// exceeding the original value there) and the noise power is the integral of
/// that floor across the whole band.
///
/// Requires >= 64 samples and a fundamental that clears the DC main lobe
/// (InsufficientRecordError); an all-zero record raises UndefinedSnrError.
SnrBreakdown analyze_snr(const TimeSeries& input);
double estimate_snr(const TimeSeries& input);

// ---------------------------------------------------------------------------
// Exponential regression
// ---------------------------------------------------------------------------

struct SamplePoint {
    double x;
    double y;
};

struct ExpFit {
    double a = 0.0;
    double b = 0.0;
    double r_squared = 0.0;  ///< in log space

    double operator()(double x) const;
    /// x such that a * exp(b x) = y. Requires y > 0, a > 0 and b != 0.
    double solve(double y) const;
};

/// Fits y = a * exp(b x) by least squares on ln y = ln a + b x.
/// Throws InsufficientDataError for < 3 points, DomainError for any y <= 0,
/// FitDegenerateError when all x coincide.
ExpFit exp_regression(const std::vector<SamplePoint>& points);

// ---------------------------------------------------------------------------
// Integration
// ---------------------------------------------------------------------------

/// Cumulative trapezoidal charge from a current record; Q[0] = 0. With
/// `detrend` the mean current is removed first, cancelling linear charge drift.
TimeSeries integrate_current(const TimeSeries& current, bool detrend);

}  // namespace petra
