#include "petra/dsp.hpp"

#include "petra/error.hpp"
#include "petra/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace petra {

// ---------------------------------------------------------------------------
// Notch filter
// ---------------------------------------------------------------------------

Biquad design_notch(double notch_frequency, double sample_rate, double quality) {
    if (!(sample_rate > 0.0)) throw DomainError("sample rate must be positive");
    if (!(notch_frequency > 0.0) || notch_frequency >= sample_rate / 2.0) {
        throw DomainError("notch frequency must lie strictly between 0 and Nyquist");
    }
    if (!(quality > 0.0)) throw DomainError("notch quality factor must be positive");
    const double w0 = 2.0 * std::numbers::pi * notch_frequency / sample_rate;
    const double alpha = std::sin(w0) / (2.0 * quality);
    const double c = std::cos(w0);
    const double a0 = 1.0 + alpha;
    Biquad q;
    q.b = {1.0 / a0, -2.0 * c / a0, 1.0 / a0};
    q.a = {1.0, -2.0 * c / a0, (1.0 - alpha) / a0};
    return q;
}

namespace {

// Direct form II transposed, state initialised to the steady state of a step of height x[0].
void run_biquad(const Biquad& q, std::vector<double>& x) {
    const auto& [b0, b1, b2] = q.b;
    const double a1 = q.a[1];
    const double a2 = q.a[2];
    const double dc = (b0 + b1 + b2) / (1.0 + a1 + a2);
    double z2 = (b2 - a2 * dc) * x.front();
    double z1 = (dc - b0) * x.front();
    for (double& v : x) {
        const double in = v;
        const double out = b0 * in + z1;
        z1 = b1 * in - a1 * out + z2;
        z2 = b2 * in - a2 * out;
        v = out;
    }
}

std::vector<double> extend(std::span<const double> x, std::size_t pad, EdgeMode edges) {
    const std::size_t n = x.size();
    std::vector<double> ext(n + 2 * pad);
    if (edges == EdgeMode::Periodic) {
        for (std::size_t i = 0; i < ext.size(); ++i) {
            // (i - pad) mod n, kept non-negative
            const std::size_t shift = (pad / n + 1) * n;
            ext[i] = x[(i + shift - pad) % n];
        }
        return ext;
    }
    const double first = x.front();
    const double last = x.back();
    for (std::size_t i = 0; i < pad; ++i) ext[i] = 2.0 * first - x[pad - i];
    std::copy(x.begin(), x.end(), ext.begin() + static_cast<std::ptrdiff_t>(pad));
    for (std::size_t i = 0; i < pad; ++i) ext[pad + n + i] = 2.0 * last - x[n - 2 - i];
    return ext;
}

}  // namespace

TimeSeries notch_filter(const TimeSeries& input, double notch_frequency, EdgeMode edges, double quality) {
    const double fs = input.sample_rate();
    const Biquad q = design_notch(notch_frequency, fs, quality);
    const std::size_t n = input.size();

    const double time_constant = quality / (std::numbers::pi * notch_frequency);
    auto pad = static_cast<std::size_t>(std::ceil(10.0 * time_constant * fs));
    if (edges == EdgeMode::Reflect) pad = std::min(pad, n - 1);

    std::vector<double> work = extend(input.samples(), pad, edges);
    run_biquad(q, work);
    std::reverse(work.begin(), work.end());
    run_biquad(q, work);
    std::reverse(work.begin(), work.end());

    std::vector<double> out(work.begin() + static_cast<std::ptrdiff_t>(pad),
                            work.begin() + static_cast<std::ptrdiff_t>(pad + n));
    return TimeSeries(std::move(out), fs, input.unit());
}

// ---------------------------------------------------------------------------
// SNR estimation
// ---------------------------------------------------------------------------

namespace {

// Modified Bessel function I0 by its power series; every term is positive, so the
// sum is accurate to rounding and several times faster than std::cyl_bessel_i.
double bessel_i0(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; term > sum * 1e-17; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
    }
    return sum;
}

}  // namespace

std::vector<double> kaiser_window(std::size_t n, double beta) {
    std::vector<double> w(n, 1.0);
    if (n < 2) return w;
    const double norm = bessel_i0(beta);
    const double m = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = 2.0 * static_cast<double>(i) / m - 1.0;
        w[i] = bessel_i0(beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / norm;
    }
    return w;
}

int main_lobe_half_width(double beta) {
    return static_cast<int>(std::ceil(beta / std::numbers::pi + 1.0));
}

namespace {

double median(std::vector<double> v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double upper = v[mid];
    if (v.size() % 2 == 1) return upper;
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

}  // namespace

SnrBreakdown analyze_snr(const TimeSeries& input) {
    constexpr std::size_t kMinSamples = 64;
    const std::size_t n = input.size();
    if (n < kMinSamples) throw InsufficientRecordError("SNR estimate needs at least 64 samples");
    const auto x = input.samples();
    if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) {
        throw UndefinedSnrError("SNR of an all-zero record is undefined");
    }

    // Cycle-count check on the raw spectrum: the wide Kaiser lobe would smear a
    // one-cycle tone away from bin 1 and hide the problem.
    const auto raw = fft::forward(x);
    std::size_t raw_peak = 1;
    for (std::size_t k = 1; k < raw.size(); ++k) {
        if (std::norm(raw[k]) > std::norm(raw[raw_peak])) raw_peak = k;
    }
    if (raw_peak < 2) throw InsufficientRecordError("fundamental falls in the lowest bins; record holds too few cycles");

    const double fs = input.sample_rate();
    // Characterization scores many records of one length; keep the last window.
    thread_local std::vector<double> window;
    if (window.size() != n) window = kaiser_window(n, kKaiserBeta);
    std::vector<double> windowed(n);
    double window_energy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        windowed[i] = window[i] * x[i];
        window_energy += window[i] * window[i];
    }
    const auto spectrum = fft::forward(windowed);
    const std::size_t bins = spectrum.size();
    const double bin_width = fs / static_cast<double>(n);

    // Power per bin (one-sided PSD * bin width).
    std::vector<double> power(bins);
    for (std::size_t k = 0; k < bins; ++k) {
        const bool single = (k == 0) || (n % 2 == 0 && k == n / 2);
        power[k] = std::norm(spectrum[k]) / (fs * window_energy) * (single ? 1.0 : 2.0) * bin_width;
    }

    const auto lobe = static_cast<std::size_t>(main_lobe_half_width());
    auto largest = [&](std::size_t from) {
        std::size_t best = from;
        for (std::size_t k = from; k < bins; ++k) {
            if (power[k] > power[best]) best = k;
        }
        return best;
    };

    std::size_t fundamental = largest(1);
    if (2.0 * power[0] > power[fundamental]) {
        // DC dominates: look for the tone beyond the DC main lobe.
        if (lobe + 1 >= bins) throw InsufficientRecordError("record too short to separate the tone from DC");
        fundamental = largest(lobe + 1);
    } else if (fundamental < 2) {
        throw InsufficientRecordError("fundamental falls in the lowest bins; record holds too few cycles");
    }

    std::vector<bool> excluded(bins, false);
    auto exclude = [&](std::size_t centre) {
        const std::size_t lo = centre > lobe ? centre - lobe : 0;
        const std::size_t hi = std::min(bins - 1, centre + lobe);
        for (std::size_t k = lo; k <= hi; ++k) excluded[k] = true;
    };
    exclude(0);
    exclude(fundamental);
    for (int h = 2; h <= kSnrHarmonics; ++h) {
        const std::size_t centre = fundamental * static_cast<std::size_t>(h);
        if (centre >= bins) break;
        exclude(centre);
    }

    double signal = 0.0;
    {
        const std::size_t lo = fundamental > lobe ? fundamental - lobe : 0;
        const std::size_t hi = std::min(bins - 1, fundamental + lobe);
        for (std::size_t k = lo; k <= hi; ++k) signal += power[k];
    }

    std::vector<double> floor_bins;
    floor_bins.reserve(bins);
    for (std::size_t k = 0; k < bins; ++k) {
        if (!excluded[k]) floor_bins.push_back(power[k]);
    }
    if (floor_bins.empty()) throw InsufficientRecordError("no noise-only bins left after peak exclusion");
    const double floor_level = median(floor_bins);

    double noise = 0.0;
    for (std::size_t k = 0; k < bins; ++k) {
        noise += excluded[k] ? std::min(floor_level, power[k]) : power[k];
    }
    noise = std::max(noise, signal * std::pow(10.0, -kSnrCeilingDb / 10.0));

    SnrBreakdown r;
    r.signal_power = signal;
    r.noise_power = noise;
    r.fundamental_bin = fundamental;
    r.fundamental_frequency = static_cast<double>(fundamental) * bin_width;
    r.snr_db = 10.0 * std::log10(signal / noise);
    return r;
}

double estimate_snr(const TimeSeries& input) { return analyze_snr(input).snr_db; }

// ---------------------------------------------------------------------------
// Exponential regression
// ---------------------------------------------------------------------------

double ExpFit::operator()(double x) const { return a * std::exp(b * x); }

double ExpFit::solve(double y) const {
    if (!(y > 0.0) || !(a > 0.0) || b == 0.0) throw DomainError("exponential model cannot reach the requested value");
    return std::log(y / a) / b;
}

ExpFit exp_regression(const std::vector<SamplePoint>& points) {
    const std::size_t n = points.size();
    if (n < 3) throw InsufficientDataError("exponential regression needs at least 3 points");
    double sx = 0.0;
    double sl = 0.0;
    for (const auto& p : points) {
        if (!(p.y > 0.0)) throw DomainError("exponential regression requires y > 0");
        sx += p.x;
        sl += std::log(p.y);
    }
    const double mx = sx / static_cast<double>(n);
    const double ml = sl / static_cast<double>(n);
    double sxx = 0.0;
    double sxl = 0.0;
    double sll = 0.0;
    for (const auto& p : points) {
        const double dx = p.x - mx;
        const double dl = std::log(p.y) - ml;
        sxx += dx * dx;
        sxl += dx * dl;
        sll += dl * dl;
    }
    if (!(sxx > 0.0)) throw FitDegenerateError("exponential regression needs distinct x values");

    ExpFit fit;
    fit.b = sxl / sxx;
    const double log_a = ml - fit.b * mx;
    fit.a = std::exp(log_a);
    double ssr = 0.0;
    for (const auto& p : points) {
        const double r = std::log(p.y) - (log_a + fit.b * p.x);
        ssr += r * r;
    }
    fit.r_squared = sll > 0.0 ? 1.0 - ssr / sll : 1.0;
    return fit;
}

// ---------------------------------------------------------------------------
// Integration
// ---------------------------------------------------------------------------

TimeSeries integrate_current(const TimeSeries& current, bool detrend) {
    if (current.unit() != Unit::Amperes) throw DomainError("integrate_current expects a current record");
    const auto x = current.samples();
    const double offset = detrend ? mean(x) : 0.0;
    const double half_step = 0.5 * current.time_step();
    std::vector<double> q(x.size());
    q[0] = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        q[i] = q[i - 1] + half_step * ((x[i - 1] - offset) + (x[i] - offset));
    }
    return TimeSeries(std::move(q), current.sample_rate(), Unit::Coulombs);
}

}  // namespace petra
