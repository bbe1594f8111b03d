#include "petra/characterization.hpp"

#include "petra/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

namespace petra {

std::complex<double> Injection::impedance(double frequency) const {
    std::complex<double> z{source_resistance, 0.0};
    if (load) z += transducer_impedance(*load, frequency);
    return z;
}

std::complex<double> Injection::admittance(double frequency) const {
    if (load) {
        if (frequency == 0.0) return {0.0, 0.0};
        return 1.0 / impedance(frequency);
    }
    return {1.0 / source_resistance, 0.0};
}

double default_characterization_frequency(const GainSetting& setting) {
    return setting.index() == 5 ? 3.0 : 100.0;
}

std::map<int, double> default_frequencies(const std::vector<GainSetting>& settings) {
    std::map<int, double> out;
    for (const auto& s : settings) out[s.index()] = default_characterization_frequency(s);
    return out;
}

std::vector<double> default_current_grid(const GainSetting& setting, int points) {
    if (points < 2) throw DomainError("current grid needs at least 2 points");
    const double hi = std::log10(current_range(setting));
    const double lo = hi - 5.0;
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        grid[static_cast<std::size_t>(i)] = std::pow(10.0, lo + (hi - lo) * i / (points - 1));
    }
    return grid;
}

CharacterizationPoint measure_point(const GainSetting& setting, double current, double frequency,
                                    const NoiseConfig& noise, const Injection& injection,
                                    const Acquisition& acquisition) {
    if (current == 0.0) throw UndefinedSnrError("zero injected current has no defined SNR");
    if (!(current > 0.0) || !std::isfinite(current)) throw DomainError("injected current must be positive");
    if (frequency < setting.band_low() || frequency > setting.band_high()) {
        throw DomainError(fmt::format("{} Hz is outside the band of gain {}", frequency, setting.index()));
    }
    if (acquisition.cycles < 1 || acquisition.samples_per_cycle < 4) {
        throw DomainError("acquisition needs >= 1 cycle and >= 4 samples per cycle");
    }

    const double fs = frequency * acquisition.samples_per_cycle;
    const auto count = static_cast<std::size_t>(acquisition.cycles) * static_cast<std::size_t>(acquisition.samples_per_cycle);
    const double amplitude = current * std::abs(injection.impedance(frequency));
    const TimeSeries drive = make_sine(amplitude, frequency, fs, count, Unit::Volts);

    const Measurement sim = simulate_with_admittance(
        [&injection](double f) { return injection.admittance(f); }, setting, drive, noise, frequency);

    TimeSeries analysed = sim.output;
    if (acquisition.notch_frequency > 0.0 && acquisition.notch_frequency < fs / 2.0) {
        analysed = notch_filter(sim.output, acquisition.notch_frequency, EdgeMode::Periodic);
    }

    CharacterizationPoint p;
    p.gain_index = setting.index();
    p.current = current;
    p.drive_frequency = frequency;
    p.snr_db = estimate_snr(analysed);
    p.saturated = sim.saturated;
    return p;
}

std::vector<CharacterizationPoint> run_characterization(const std::vector<GainSetting>& settings,
                                                        const std::vector<double>& currents,
                                                        const std::map<int, double>& frequency_per_setting,
                                                        const NoiseConfig& noise, const Injection& injection,
                                                        const Acquisition& acquisition) {
    std::vector<CharacterizationPoint> points;
    std::uint64_t index = 0;
    for (const auto& setting : settings) {
        const auto it = frequency_per_setting.find(setting.index());
        const double f = it != frequency_per_setting.end() ? it->second : default_characterization_frequency(setting);
        const auto grid = currents.empty() ? default_current_grid(setting) : currents;
        for (double i : grid) {
            NoiseConfig point_noise = noise;
            point_noise.seed = noise.seed ^ index++;
            points.push_back(measure_point(setting, i, f, point_noise, injection, acquisition));
        }
    }
    return points;
}

NoiseConfig calibrate_noise(double target_current, double target_snr_db, const GainSetting& setting,
                            double frequency, const NoiseConfig& base, const Injection& injection,
                            const Acquisition& acquisition) {
    if (!(target_current > 0.0)) throw CalibrationError("calibration needs a positive target current");

    auto score = [&](double sigma) {
        NoiseConfig n = base;
        n.white_noise_rms = sigma;
        try {
            return measure_point(setting, target_current, frequency, n, injection, acquisition);
        } catch (const Error& e) {
            throw CalibrationError(std::string("calibration point failed: ") + e.what());
        }
    };

    if (score(0.0).saturated) throw CalibrationError("calibration point saturates the amplifier");

    const double signal_rms = target_current * std::abs(tia_transfer(setting, frequency)) / std::sqrt(2.0);
    const double guess = signal_rms / std::pow(10.0, target_snr_db / 20.0);
    double lo = guess * 1e-3;
    double hi = guess * 1e3;
    if (score(lo).snr_db < target_snr_db || score(hi).snr_db > target_snr_db) {
        throw CalibrationError("target SNR is not reachable by scaling the white noise");
    }

    double sigma = guess;
    double snr = score(sigma).snr_db;
    for (int iter = 0; iter < 60 && std::abs(snr - target_snr_db) > 0.01; ++iter) {
        if (snr > target_snr_db) lo = sigma;
        else hi = sigma;
        sigma = std::sqrt(lo * hi);
        snr = score(sigma).snr_db;
    }
    if (std::abs(snr - target_snr_db) > 0.25) throw CalibrationError("noise calibration did not converge");

    NoiseConfig out = base;
    out.white_noise_rms = sigma;
    return out;
}

double OperationalRange::decades() const { return std::log10(i_max / i_min); }

std::vector<OperationalRange> derive_ranges(const std::vector<CharacterizationPoint>& points,
                                            const std::vector<GainSetting>& settings, double threshold_db) {
    const double threshold = std::pow(10.0, threshold_db / 10.0);
    std::vector<OperationalRange> ranges;
    for (const auto& setting : settings) {
        std::vector<CharacterizationPoint> usable;
        for (const auto& p : points) {
            if (p.gain_index == setting.index() && !p.saturated) usable.push_back(p);
        }
        if (usable.size() < 3) {
            throw InsufficientDataError(
                fmt::format("gain {} has {} non-saturated points; 3 are needed", setting.index(), usable.size()));
        }
        std::sort(usable.begin(), usable.end(), [](const auto& a, const auto& b) {
            return a.current != b.current ? a.current < b.current : a.snr_db < b.snr_db;
        });

        std::vector<SamplePoint> xy;
        bool any_above = false;
        bool any_below = false;
        for (const auto& p : usable) {
            xy.push_back({std::log10(p.current), std::pow(10.0, p.snr_db / 10.0)});
            (p.snr_db >= threshold_db ? any_above : any_below) = true;
        }

        OperationalRange r;
        r.gain_index = setting.index();
        r.i_max = current_range(setting);
        r.band_low = setting.band_low();
        r.band_high = setting.band_high();
        r.fit = exp_regression(xy);
        const double grid_min = usable.front().current;

        if (r.fit.b <= 0.0) {
            if (any_below) {
                throw NoCrossingError(fmt::format("gain {}: SNR does not rise with current", setting.index()));
            }
            r.i_min = grid_min;
            r.i_min_below_grid = true;
        } else {
            const double x = r.fit.solve(threshold);
            r.i_min = std::pow(10.0, x);
            if (x < std::log10(grid_min) - kMaxExtrapolationDecades) {
                r.i_min = grid_min;
                r.i_min_below_grid = true;
            }
        }
        if (!(r.i_min < r.i_max)) {
            throw NoCrossingError(fmt::format("gain {}: 6 dB crossing lies above the output ceiling", setting.index()));
        }
        ranges.push_back(r);
    }
    return ranges;
}

double total_span_decades(const std::vector<OperationalRange>& ranges) {
    if (ranges.empty()) throw InsufficientDataError("no ranges to span");
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& r : ranges) {
        lo = std::min(lo, r.i_min);
        hi = std::max(hi, r.i_max);
    }
    return std::log10(hi / lo);
}

SweepCheckResult default_sweep_check(const TransducerModel& variant, const GainSetting& setting, double frequency) {
    constexpr int kCycles = 4;
    constexpr int kSamplesPerCycle = 256;
    const double target = current_range(setting) / 2.0;
    const double amplitude = target * std::abs(transducer_impedance(variant, frequency));
    const double fs = frequency * kSamplesPerCycle;
    const std::size_t count = kCycles * kSamplesPerCycle;

    const NoiseConfig quiet = NoiseConfig{}.silenced();
    const auto full = simulate_measurement(variant, setting, make_sine(amplitude, frequency, fs, count, Unit::Volts),
                                           quiet, frequency);
    const auto half = simulate_measurement(
        variant, setting, make_sine(amplitude / 2.0, frequency, fs, count, Unit::Volts), quiet, frequency);
    if (full.saturated) return {false, "saturated at i_max/2"};

    double peak = 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        peak = std::max(peak, std::abs(full.output[i]));
        worst = std::max(worst, std::abs(full.output[i] - 2.0 * half.output[i]));
    }
    const double deviation = peak > 0.0 ? worst / peak : 0.0;
    if (deviation > 0.01) return {false, fmt::format("nonlinear: {:.3g} relative deviation", deviation)};
    return {true, fmt::format("peak {:.4g} V, linearity {:.2g}", peak, deviation)};
}

bool SweepReport::all_pass() const {
    return std::all_of(cells.begin(), cells.end(), [](const SweepCell& c) { return c.pass; });
}

SweepReport sweep_impedance(const TransducerModel& model, const std::vector<double>& factors,
                            const std::vector<GainSetting>& settings, const SweepCriterion& criterion,
                            const std::map<int, double>& frequency_per_setting) {
    model.validate();
    for (double f : factors) {
        if (!(f > 0.0)) throw DomainError("sweep factors must be positive");
    }
    SweepReport report;
    for (double rf : factors) {
        for (double cf : factors) {
            TransducerModel variant = model;
            variant.resistance *= rf;
            variant.capacitance *= cf;
            for (const auto& setting : settings) {
                const auto it = frequency_per_setting.find(setting.index());
                const double f =
                    it != frequency_per_setting.end() ? it->second : default_characterization_frequency(setting);
                const auto check = criterion(variant, setting, f);
                report.cells.push_back({rf, cf, setting.index(), check.pass, check.detail});
            }
        }
    }
    return report;
}

}  // namespace petra
