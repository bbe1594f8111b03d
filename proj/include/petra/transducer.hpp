#pragma once

#include <complex>
#include <vector>

namespace petra {

/// Series R-C equivalent of a polymer thin-film transducer, valid well below
/// its mechanical resonance where the motional inductance drops out.
struct TransducerModel {
    double resistance = 0.0;         ///< ohms, > 0
    double capacitance = 0.0;        ///< farads, > 0
    double resistance_sigma = 0.0;   ///< 1-sigma standard error, ohms
    double capacitance_sigma = 0.0;  ///< 1-sigma standard error, farads

    /// Throws DomainError unless R, C > 0 and both sigmas >= 0.
    void validate() const;
};

/// Nominal values of the screen-printed PVDF film on polyimide (LCR fit, 20 Hz - 1 kHz).
inline constexpr TransducerModel kPvdfFilm{131.8e3, 0.707e-9, 11.6e3, 1.52e-12};

struct ImpedancePoint {
    double frequency;   ///< Hz
    double resistance;  ///< ohms, real part
    double reactance;   ///< ohms, imaginary part
};

/// Measured impedance spectrum. Frequencies are strictly increasing and positive.
class ImpedanceSpectrum {
public:
    explicit ImpedanceSpectrum(std::vector<ImpedancePoint> points);

    const std::vector<ImpedancePoint>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }

private:
    std::vector<ImpedancePoint> points_;
};

/// Z = R + 1/(j 2 pi f C). Throws DomainError for f <= 0.
std::complex<double> transducer_impedance(const TransducerModel& model, double frequency);

/// Admittance 1/Z, extended continuously to 0 at DC (the capacitor blocks it).
std::complex<double> transducer_admittance(const TransducerModel& model, double frequency);

/// Samples the model at the given frequencies.
ImpedanceSpectrum sample_spectrum(const TransducerModel& model, const std::vector<double>& frequencies);

/// n linearly spaced points on [lo, hi].
std::vector<double> linspace(double lo, double hi, std::size_t n);

struct RcFit {
    TransducerModel model;
    double residual_rms = 0.0;  ///< sqrt(sum |Z_meas - Z_model|^2 / n), ohms
};

/// Unweighted complex least-squares fit of the series-RC model.
///
/// The model's real part is R and its imaginary part is -(1/C)/(2 pi f), so the
/// complex residual splits into two independent linear problems: R is the mean
/// measured resistance and 1/C the projection of the reactances onto
/// -1/(2 pi f). Standard errors come from the pooled residual variance
/// (2n - 2 degrees of freedom); sigma_C follows from sigma_{1/C} by the delta method.
///
/// Throws InsufficientDataError for fewer than 3 points and FitDegenerateError
/// when the reactances carry no capacitive signature (1/C <= 0).
RcFit fit_rc_model(const ImpedanceSpectrum& spectrum);

}  // namespace petra
