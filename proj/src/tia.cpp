#include "petra/tia.hpp"

#include "petra/error.hpp"
#include "petra/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace petra {

double feedback_capacitor(double feedback_resistance, double cutoff_frequency) {
    if (!(feedback_resistance > 0.0) || !(cutoff_frequency > 0.0)) {
        throw DomainError("feedback resistance and cutoff frequency must be positive");
    }
    return 1.0 / (2.0 * std::numbers::pi * cutoff_frequency * feedback_resistance);
}

GainSetting GainSetting::from_index(int index) {
    if (index < 1 || index > kGainCount) throw DomainError("gain index must be in 1..5");
    const double rf = std::pow(10.0, 2 + index);
    const double fc = index == 5 ? 5.0 : 500.0;
    return GainSetting(index, rf, feedback_capacitor(rf, fc), fc);
}

std::vector<GainSetting> GainSetting::all() {
    std::vector<GainSetting> out;
    for (int k = 1; k <= kGainCount; ++k) out.push_back(from_index(k));
    return out;
}

void NoiseConfig::validate() const {
    if (!(white_noise_rms >= 0.0) || !(line_amplitude >= 0.0) || !(bias_current >= 0.0)) {
        throw DomainError("noise amplitudes must be non-negative");
    }
    if (!(line_frequency > 0.0)) throw DomainError("line frequency must be positive");
}

NoiseConfig NoiseConfig::silenced() const {
    NoiseConfig quiet = *this;
    quiet.white_noise_rms = 0.0;
    quiet.line_amplitude = 0.0;
    quiet.bias_current = 0.0;
    return quiet;
}

std::complex<double> tia_transfer(const GainSetting& setting, double frequency) {
    if (frequency < 0.0) throw DomainError("transfer frequency must be non-negative");
    const double rf = setting.feedback_resistance();
    const std::complex<double> den{1.0, 2.0 * std::numbers::pi * frequency * rf * setting.feedback_capacitance()};
    return -rf / den;
}

double current_range(const GainSetting& setting) {
    return setting.output_ceiling() / setting.feedback_resistance();
}

namespace {

void check_record(const TimeSeries& drive, std::span<const std::complex<double>> spectrum,
                  std::optional<double> fundamental) {
    if (fundamental) {
        if (!(*fundamental > 0.0)) throw DomainError("fundamental frequency must be positive");
        const double cycles = drive.duration() * *fundamental;
        if (cycles < 1.0 - 1e-9) {
            throw InsufficientRecordError("drive record is shorter than one period of its fundamental");
        }
        if (std::abs(cycles - std::round(cycles)) > 1e-6 * cycles) {
            throw InsufficientRecordError("drive record must hold an integer number of cycles");
        }
        return;
    }
    double peak = 0.0;
    for (std::size_t k = 1; k < spectrum.size(); ++k) peak = std::max(peak, std::abs(spectrum[k]));
    if (peak > 0.0 && std::abs(spectrum[0]) > peak) {
        throw InsufficientRecordError("drive record holds less than one cycle of its fundamental");
    }
}

}  // namespace

Measurement simulate_with_admittance(const Admittance& admittance, const GainSetting& setting,
                                     const TimeSeries& drive, const NoiseConfig& noise,
                                     std::optional<double> fundamental) {
    noise.validate();
    if (drive.unit() != Unit::Volts) throw DomainError("drive must be a voltage record");
    const std::size_t n = drive.size();
    const double fs = drive.sample_rate();

    auto bins = fft::forward(drive.samples());
    check_record(drive, bins, fundamental);

    for (std::size_t k = 0; k < bins.size(); ++k) {
        const double f = static_cast<double>(k) * fs / static_cast<double>(n);
        bins[k] *= admittance(f) * tia_transfer(setting, f);
    }
    std::vector<double> out = fft::inverse(bins, n);

    const double offset = noise.bias_current * setting.feedback_resistance();
    const double w_line = 2.0 * std::numbers::pi * noise.line_frequency;
    std::mt19937_64 rng(noise.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const bool white = noise.white_noise_rms > 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double v = out[i] + offset;
        if (noise.line_amplitude > 0.0) v += noise.line_amplitude * std::sin(w_line * drive.time_at(i));
        if (white) v += noise.white_noise_rms * gauss(rng);
        out[i] = v;
    }

    bool saturated = false;
    const double ceiling = setting.output_ceiling();
    for (double& v : out) {
        if (v > ceiling || v < -ceiling) {
            v = std::clamp(v, -ceiling, ceiling);
            saturated = true;
        }
    }
    return {TimeSeries(std::move(out), fs, Unit::Volts), saturated};
}

Measurement simulate_measurement(const TransducerModel& model, const GainSetting& setting,
                                 const TimeSeries& drive, const NoiseConfig& noise,
                                 std::optional<double> fundamental) {
    model.validate();
    return simulate_with_admittance(
        [&model](double f) { return transducer_admittance(model, f); }, setting, drive, noise, fundamental);
}

}  // namespace petra
