#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace petra {

enum class Unit { Volts, Amperes, Coulombs, Dimensionless };

std::string_view unit_name(Unit unit);

/// Uniformly sampled real waveform.
///
/// Holds at least two finite samples and a finite positive sample rate;
/// the constructor enforces this and throws DomainError otherwise.
class TimeSeries {
public:
    TimeSeries(std::vector<double> samples, double sample_rate, Unit unit);

    std::span<const double> samples() const noexcept { return samples_; }
    const std::vector<double>& values() const noexcept { return samples_; }
    double operator[](std::size_t i) const { return samples_[i]; }

    std::size_t size() const noexcept { return samples_.size(); }
    double sample_rate() const noexcept { return sample_rate_; }
    double time_step() const noexcept { return 1.0 / sample_rate_; }
    /// Record length N / fs, i.e. the period of the record when it is treated as periodic.
    double duration() const noexcept { return static_cast<double>(samples_.size()) / sample_rate_; }
    double time_at(std::size_t i) const noexcept { return static_cast<double>(i) / sample_rate_; }
    Unit unit() const noexcept { return unit_; }

private:
    std::vector<double> samples_;
    double sample_rate_;
    Unit unit_;
};

/// Samples A*sin(2*pi*f*t + phase) at t = n/fs for n in [0, count).
TimeSeries make_sine(double amplitude, double frequency, double sample_rate, std::size_t count,
                     Unit unit, double phase = 0.0);

double rms(std::span<const double> x);
double mean(std::span<const double> x);

}  // namespace petra
