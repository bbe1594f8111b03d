#pragma once

#include "petra/dsp.hpp"
#include "petra/tia.hpp"
#include "petra/transducer.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace petra {

/// Bench current source: a function generator behind a series resistor, optionally
/// with a transducer load in series. The generator amplitude is chosen so the
/// injected current amplitude equals the requested value at the drive frequency.
struct Injection {
    double source_resistance = 1e6;  ///< ohms
    std::optional<TransducerModel> load;

    std::complex<double> impedance(double frequency) const;
    std::complex<double> admittance(double frequency) const;
};

/// Record layout of one simulated acquisition. Whole cycles keep the record
/// periodic; 40 cycles put the fundamental well clear of the SNR estimator's DC lobe.
struct Acquisition {
    int cycles = 40;
    int samples_per_cycle = 256;
    double notch_frequency = 50.0;
};

struct CharacterizationPoint {
    int gain_index = 0;
    double current = 0.0;          ///< injected current amplitude, A
    double drive_frequency = 0.0;  ///< Hz
    double snr_db = 0.0;
    bool saturated = false;
};

/// 3 Hz for the highest gain and 100 Hz for the others, the two bench anchors.
double default_characterization_frequency(const GainSetting& setting);
std::map<int, double> default_frequencies(const std::vector<GainSetting>& settings);

/// `points` log-spaced currents from i_max / 10^5 to i_max.
std::vector<double> default_current_grid(const GainSetting& setting, int points = 8);

/// Simulates, notch-filters and scores one injected current.
/// A zero current raises UndefinedSnrError.
CharacterizationPoint measure_point(const GainSetting& setting, double current, double frequency,
                                    const NoiseConfig& noise, const Injection& injection = {},
                                    const Acquisition& acquisition = {});

/// Runs every (setting, current) pair. An empty `currents` list selects the
/// default grid per setting. Point i (in setting-major order) draws its noise
/// from seed noise.seed ^ i, so the report is reproducible and points are independent.
std::vector<CharacterizationPoint> run_characterization(const std::vector<GainSetting>& settings,
                                                        const std::vector<double>& currents,
                                                        const std::map<int, double>& frequency_per_setting,
                                                        const NoiseConfig& noise,
                                                        const Injection& injection = {},
                                                        const Acquisition& acquisition = {});

/// Solves for the white-noise level at which the given point scores
/// `target_snr_db` (log-space bisection, at most 60 steps, within 0.25 dB).
/// Other noise fields and the seed are taken from `base`.
/// Throws CalibrationError for a zero current, a saturated point or an unreachable target.
NoiseConfig calibrate_noise(double target_current, double target_snr_db, const GainSetting& setting,
                            double frequency, const NoiseConfig& base = {}, const Injection& injection = {},
                            const Acquisition& acquisition = {});

inline constexpr double kSensitivityThresholdDb = 6.0;
/// A 6 dB crossing further than this below the smallest measured current is not
/// trusted; the range then reports "below grid minimum".
inline constexpr double kMaxExtrapolationDecades = 1.0;

struct OperationalRange {
    int gain_index = 0;
    double i_min = 0.0;  ///< A; grid minimum when i_min_below_grid
    double i_max = 0.0;  ///< A
    double band_low = 0.0;
    double band_high = 0.0;
    bool i_min_below_grid = false;
    ExpFit fit;

    double decades() const;
};

/// Per setting: exponential regression of the linear SNR power ratio against
/// x = log10(current) over the non-saturated points, i_min at the threshold
/// crossing, i_max = ceiling / R_f. Input order does not matter.
/// Throws InsufficientDataError (< 3 usable points) or NoCrossingError.
std::vector<OperationalRange> derive_ranges(const std::vector<CharacterizationPoint>& points,
                                            const std::vector<GainSetting>& settings,
                                            double threshold_db = kSensitivityThresholdDb);

/// log10(max i_max / min i_min) over all ranges.
double total_span_decades(const std::vector<OperationalRange>& ranges);

// ---------------------------------------------------------------------------
// Impedance sweep
// ---------------------------------------------------------------------------

struct SweepCell {
    double resistance_factor = 1.0;
    double capacitance_factor = 1.0;
    int gain_index = 0;
    bool pass = false;
    std::string detail;
};

struct SweepCheckResult {
    bool pass = false;
    std::string detail;
};

/// Check applied to one (transducer variant, setting) cell at the given drive frequency.
using SweepCriterion =
    std::function<SweepCheckResult(const TransducerModel& variant, const GainSetting& setting, double frequency)>;

/// Drives the variant so its current amplitude is i_max / 2; passes when the
/// output does not saturate and doubling the drive doubles the output to 1%.
SweepCheckResult default_sweep_check(const TransducerModel& variant, const GainSetting& setting, double frequency);

struct SweepReport {
    std::vector<SweepCell> cells;
    bool all_pass() const;
};

/// Evaluates every (R factor, C factor) pair drawn from `factors` against each setting.
SweepReport sweep_impedance(const TransducerModel& model, const std::vector<double>& factors,
                            const std::vector<GainSetting>& settings,
                            const SweepCriterion& criterion = default_sweep_check,
                            const std::map<int, double>& frequency_per_setting = {});

}  // namespace petra
