#include "petra/time_series.hpp"

#include "petra/error.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace petra {

std::string_view unit_name(Unit unit) {
    switch (unit) {
        case Unit::Volts: return "V";
        case Unit::Amperes: return "A";
        case Unit::Coulombs: return "C";
        case Unit::Dimensionless: return "1";
    }
    return "?";
}

TimeSeries::TimeSeries(std::vector<double> samples, double sample_rate, Unit unit)
    : samples_(std::move(samples)), sample_rate_(sample_rate), unit_(unit) {
    if (samples_.size() < 2) {
        throw DomainError("time series needs at least 2 samples");
    }
    if (!std::isfinite(sample_rate_) || sample_rate_ <= 0.0) {
        throw DomainError("sample rate must be finite and positive");
    }
    for (double v : samples_) {
        if (!std::isfinite(v)) throw DomainError("time series contains a non-finite sample");
    }
}

TimeSeries make_sine(double amplitude, double frequency, double sample_rate, std::size_t count,
                     Unit unit, double phase) {
    std::vector<double> x(count);
    const double w = 2.0 * std::numbers::pi * frequency / sample_rate;
    for (std::size_t n = 0; n < count; ++n) {
        x[n] = amplitude * std::sin(w * static_cast<double>(n) + phase);
    }
    return TimeSeries(std::move(x), sample_rate, unit);
}

double mean(std::span<const double> x) {
    if (x.empty()) return 0.0;
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double rms(std::span<const double> x) {
    if (x.empty()) return 0.0;
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return std::sqrt(acc / static_cast<double>(x.size()));
}

}  // namespace petra
