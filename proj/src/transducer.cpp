#include "petra/transducer.hpp"

#include "petra/error.hpp"

#include <cmath>
#include <numbers>

namespace petra {

void TransducerModel::validate() const {
    if (!(resistance > 0.0) || !std::isfinite(resistance)) throw DomainError("transducer resistance must be positive");
    if (!(capacitance > 0.0) || !std::isfinite(capacitance)) throw DomainError("transducer capacitance must be positive");
    if (resistance_sigma < 0.0 || capacitance_sigma < 0.0) throw DomainError("uncertainties must be non-negative");
}

ImpedanceSpectrum::ImpedanceSpectrum(std::vector<ImpedancePoint> points) : points_(std::move(points)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (!std::isfinite(p.frequency) || p.frequency <= 0.0) throw DomainError("spectrum frequencies must be positive");
        if (!std::isfinite(p.resistance) || !std::isfinite(p.reactance)) throw DomainError("spectrum contains a non-finite value");
        if (i > 0 && p.frequency <= points_[i - 1].frequency) {
            throw DomainError("spectrum frequencies must be strictly increasing");
        }
    }
}

std::complex<double> transducer_impedance(const TransducerModel& model, double frequency) {
    if (!(frequency > 0.0)) throw DomainError("impedance frequency must be positive");
    const double reactance = -1.0 / (2.0 * std::numbers::pi * frequency * model.capacitance);
    return {model.resistance, reactance};
}

std::complex<double> transducer_admittance(const TransducerModel& model, double frequency) {
    if (frequency < 0.0) throw DomainError("admittance frequency must be non-negative");
    if (frequency == 0.0) return {0.0, 0.0};
    return 1.0 / transducer_impedance(model, frequency);
}

ImpedanceSpectrum sample_spectrum(const TransducerModel& model, const std::vector<double>& frequencies) {
    std::vector<ImpedancePoint> pts;
    pts.reserve(frequencies.size());
    for (double f : frequencies) {
        const auto z = transducer_impedance(model, f);
        pts.push_back({f, z.real(), z.imag()});
    }
    return ImpedanceSpectrum(std::move(pts));
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> r(n);
    if (n == 1) {
        r[0] = lo;
        return r;
    }
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) r[i] = lo + step * static_cast<double>(i);
    r.back() = hi;
    return r;
}

RcFit fit_rc_model(const ImpedanceSpectrum& spectrum) {
    const auto& pts = spectrum.points();
    const std::size_t n = pts.size();
    if (n < 3) throw InsufficientDataError("RC fit needs at least 3 spectrum points");

    // Real channel: R_hat = mean(resistance).
    double sum_r = 0.0;
    for (const auto& p : pts) sum_r += p.resistance;
    const double r_hat = sum_r / static_cast<double>(n);

    // Imaginary channel: X = -s*u with u = 1/(2 pi f), s = 1/C.
    double suu = 0.0;
    double sxu = 0.0;
    for (const auto& p : pts) {
        const double u = 1.0 / (2.0 * std::numbers::pi * p.frequency);
        suu += u * u;
        sxu += p.reactance * u;
    }
    const double elastance = -sxu / suu;
    if (!(elastance > 0.0) || !std::isfinite(elastance)) {
        throw FitDegenerateError("reactance has no capacitive component; capacitance is unidentifiable");
    }

    double ssr = 0.0;
    for (const auto& p : pts) {
        const double u = 1.0 / (2.0 * std::numbers::pi * p.frequency);
        const double dr = p.resistance - r_hat;
        const double dx = p.reactance + elastance * u;
        ssr += dr * dr + dx * dx;
    }
    const double dof = 2.0 * static_cast<double>(n) - 2.0;
    const double variance = ssr / dof;
    const double sigma_elastance = std::sqrt(variance / suu);

    RcFit fit;
    fit.model.resistance = r_hat;
    fit.model.capacitance = 1.0 / elastance;
    fit.model.resistance_sigma = std::sqrt(variance / static_cast<double>(n));
    fit.model.capacitance_sigma = sigma_elastance / (elastance * elastance);
    fit.residual_rms = std::sqrt(ssr / static_cast<double>(n));
    if (!(fit.model.resistance > 0.0)) {
        throw FitDegenerateError("fitted resistance is not positive");
    }
    return fit;
}

}  // namespace petra
