#pragma once

#include "petra/time_series.hpp"
#include "petra/transducer.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>

namespace petra {

/// Maximum TIA output swing on the +/-2.5 V rails.
inline constexpr double kOutputCeiling = 2.41;
inline constexpr double kSupplyRail = 2.5;
/// Input bias current of the electrometer-grade op-amp.
inline constexpr double kBiasCurrent = 3e-15;
inline constexpr int kGainCount = 5;

/// C_f = 1 / (2 pi f_cutoff R_f). Throws DomainError on non-positive arguments.
double feedback_capacitor(double feedback_resistance, double cutoff_frequency);

/// One position of the gain switch. Index k in 1..5 selects R_f = 10^(2+k) ohms;
/// the feedback capacitor places the pole at 500 Hz for k <= 4 and 5 Hz for k = 5.
class GainSetting {
public:
    /// Throws DomainError for an index outside 1..5.
    static GainSetting from_index(int index);
    static std::vector<GainSetting> all();

    int index() const noexcept { return index_; }
    double feedback_resistance() const noexcept { return feedback_resistance_; }
    double feedback_capacitance() const noexcept { return feedback_capacitance_; }
    double cutoff_frequency() const noexcept { return cutoff_frequency_; }
    double output_ceiling() const noexcept { return kOutputCeiling; }
    /// Usable drive band: 0.1 Hz up to 200 Hz (k <= 4) or 5 Hz (k = 5).
    double band_low() const noexcept { return 0.1; }
    double band_high() const noexcept { return index_ == 5 ? 5.0 : 200.0; }

    friend bool operator==(const GainSetting&, const GainSetting&) = default;

private:
    GainSetting(int index, double rf, double cf, double fc)
        : index_(index), feedback_resistance_(rf), feedback_capacitance_(cf), cutoff_frequency_(fc) {}

    int index_;
    double feedback_resistance_;
    double feedback_capacitance_;
    double cutoff_frequency_;
};

/// Output-referred noise sources of an acquisition.
struct NoiseConfig {
    double white_noise_rms = 0.0;   ///< volts
    double line_amplitude = 0.0;    ///< volts, mains pickup
    double line_frequency = 50.0;   ///< Hz
    double bias_current = kBiasCurrent;  ///< amperes, appears as a DC offset bias * R_f
    std::uint64_t seed = 0;

    void validate() const;
    /// Everything zeroed (including the bias offset), seed kept.
    NoiseConfig silenced() const;
};

/// Single-pole inverting response H(f) = -R_f / (1 + j 2 pi f R_f C_f), in V/A.
std::complex<double> tia_transfer(const GainSetting& setting, double frequency);

/// Largest current amplitude that stays under the output ceiling at DC: ceiling / R_f.
double current_range(const GainSetting& setting);

struct Measurement {
    TimeSeries output;  ///< volts at the TIA output
    bool saturated = false;
};

/// Admittance seen by the drive source, Y(f) in siemens, for f >= 0.
using Admittance = std::function<std::complex<double>(double frequency)>;

/// Simulates one acquisition: drive voltage through the transducer into the
/// virtual-ground input, amplified by the feedback network.
///
/// The record is treated as one period of a periodic signal. Each DFT bin of
/// the drive is multiplied by Y(f_k) H(f_k) and transformed back, so the result
/// is the exact periodic steady state. When `fundamental` is given the record
/// must span a whole number (>= 1) of its cycles; otherwise the drive's dominant
/// bin is used and a record dominated by its DC term (less than one cycle) is
/// rejected. Both failures raise InsufficientRecordError.
///
/// Noise is added at the output: bias * R_f offset, a mains sinusoid and white
/// Gaussian noise from a 64-bit Mersenne Twister seeded with noise.seed. Samples
/// beyond +/-ceiling are clipped and flag the result as saturated.
Measurement simulate_measurement(const TransducerModel& model, const GainSetting& setting,
                                 const TimeSeries& drive, const NoiseConfig& noise,
                                 std::optional<double> fundamental = std::nullopt);

/// Same engine with an arbitrary source admittance (e.g. a bench resistor).
Measurement simulate_with_admittance(const Admittance& admittance, const GainSetting& setting,
                                     const TimeSeries& drive, const NoiseConfig& noise,
                                     std::optional<double> fundamental = std::nullopt);

}  // namespace petra
