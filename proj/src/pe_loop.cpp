#include "petra/pe_loop.hpp"

#include "petra/dsp.hpp"
#include "petra/error.hpp"
#include "petra/fft.hpp"

#include <algorithm>
#include <cmath>

namespace petra {

void SampleGeometry::validate() const {
    if (!(electrode_area > 0.0) || !std::isfinite(electrode_area)) throw DomainError("electrode area must be positive");
    if (!(film_thickness > 0.0) || !std::isfinite(film_thickness)) throw DomainError("film thickness must be positive");
}

void PELoop::validate() const {
    if (field.size() != polarization.size()) throw DomainError("PE loop field and polarization differ in length");
    if (field.size() < 8) throw DomainError("PE loop needs at least 8 samples");
    if (cycles < 1) throw DomainError("PE loop must span at least one cycle");
}

namespace {

struct Segment {
    std::size_t begin;
    std::size_t end;
    std::size_t size() const { return end - begin; }
};

std::vector<Segment> split_cycles(std::size_t n, int cycles) {
    std::vector<Segment> segs;
    const double per = static_cast<double>(n) / cycles;
    for (int c = 0; c < cycles; ++c) {
        const auto b = static_cast<std::size_t>(std::llround(per * c));
        const auto e = static_cast<std::size_t>(std::llround(per * (c + 1)));
        segs.push_back({b, std::min(e, n)});
    }
    return segs;
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

struct BranchCrossings {
    std::optional<double> p_at_zero_field;
    std::optional<double> e_at_zero_polarization;
};

// Walks from `from` to `to` circularly inside the segment.
BranchCrossings scan_branch(const PELoop& loop, Segment seg, std::size_t from, std::size_t to) {
    const std::size_t m = seg.size();
    const std::size_t steps = (to + m - from) % m;
    auto at = [&](std::size_t j) { return seg.begin + (from - seg.begin + j) % m; };

    BranchCrossings out;
    const auto& e = loop.field;
    const auto& p = loop.polarization;
    for (std::size_t j = 0; j < steps; ++j) {
        const std::size_t a = at(j);
        const std::size_t b = at(j + 1);
        if (!out.p_at_zero_field && sign(e[a]) != 0 && sign(e[a]) != sign(e[b])) {
            const double t = e[a] / (e[a] - e[b]);
            out.p_at_zero_field = p[a] + t * (p[b] - p[a]);
        }
        if (!out.e_at_zero_polarization && sign(p[a]) != 0 && sign(p[a]) != sign(p[b])) {
            const double t = p[a] / (p[a] - p[b]);
            out.e_at_zero_polarization = e[a] + t * (e[b] - e[a]);
        }
        if (out.p_at_zero_field && out.e_at_zero_polarization) break;
    }
    return out;
}

}  // namespace

double closure_error(const PELoop& loop) {
    loop.validate();
    const auto [emin, emax] = std::minmax_element(loop.field.begin(), loop.field.end());
    const auto [pmin, pmax] = std::minmax_element(loop.polarization.begin(), loop.polarization.end());
    const double de = *emax - *emin;
    const double dp = *pmax - *pmin;
    if (de == 0.0 && dp == 0.0) return 0.0;
    const double ge = de > 0.0 ? (loop.field.back() - loop.field.front()) / de : 0.0;
    const double gp = dp > 0.0 ? (loop.polarization.back() - loop.polarization.front()) / dp : 0.0;
    return std::hypot(ge, gp) / std::sqrt(2.0);
}

int count_cycles(const TimeSeries& drive) {
    const auto bins = fft::forward(drive.samples());
    std::size_t best = 0;
    double peak = 0.0;
    for (std::size_t k = 1; k < bins.size(); ++k) {
        if (std::abs(bins[k]) > peak) {
            peak = std::abs(bins[k]);
            best = k;
        }
    }
    if (best == 0) throw DomainError("drive has no AC content");
    return static_cast<int>(best);
}

PELoop trace_pe_loop(const TimeSeries& drive, const TimeSeries& current, const SampleGeometry& geometry) {
    geometry.validate();
    if (drive.size() != current.size()) throw AlignmentError("drive and current records differ in length");
    if (std::abs(drive.sample_rate() - current.sample_rate()) > 1e-9 * drive.sample_rate()) {
        throw AlignmentError("drive and current records differ in sample rate");
    }
    if (drive.unit() != Unit::Volts) throw DomainError("drive must be a voltage record");

    const int cycles = count_cycles(drive);
    const TimeSeries charge = integrate_current(current, true);

    PELoop loop;
    loop.cycles = cycles;
    loop.field.resize(drive.size());
    loop.polarization.resize(drive.size());
    for (std::size_t i = 0; i < drive.size(); ++i) {
        loop.field[i] = drive[i] / geometry.film_thickness;
        loop.polarization[i] = charge[i] / geometry.electrode_area;
    }
    for (const Segment seg : split_cycles(drive.size(), cycles)) {
        if (seg.size() == 0) continue;
        double acc = 0.0;
        for (std::size_t i = seg.begin; i < seg.end; ++i) acc += loop.polarization[i];
        const double centre = acc / static_cast<double>(seg.size());
        for (std::size_t i = seg.begin; i < seg.end; ++i) loop.polarization[i] -= centre;
    }
    loop.validate();
    return loop;
}

LoopMetrics loop_metrics(const PELoop& loop) {
    loop.validate();
    if (closure_error(loop) > kClosureTolerance) {
        throw DomainError("PE loop is not closed; trace whole drive cycles");
    }

    std::vector<double> remnant;
    std::vector<double> coercive;
    std::vector<double> saturation;
    bool remnant_missing = false;
    bool coercive_missing = false;
    double area_sum = 0.0;

    const auto& e = loop.field;
    const auto& p = loop.polarization;
    const auto segs = split_cycles(e.size(), loop.cycles);
    for (const Segment seg : segs) {
        if (seg.size() < 4) throw DomainError("PE loop cycle has fewer than 4 samples");
        const auto first = e.begin() + static_cast<std::ptrdiff_t>(seg.begin);
        const auto last = e.begin() + static_cast<std::ptrdiff_t>(seg.end);
        const auto imax = static_cast<std::size_t>(std::max_element(first, last) - e.begin());
        const auto imin = static_cast<std::size_t>(std::min_element(first, last) - e.begin());

        for (const auto& br : {scan_branch(loop, seg, imax, imin), scan_branch(loop, seg, imin, imax)}) {
            if (br.p_at_zero_field) remnant.push_back(std::abs(*br.p_at_zero_field));
            else remnant_missing = true;
            if (br.e_at_zero_polarization) coercive.push_back(std::abs(*br.e_at_zero_polarization));
            else coercive_missing = true;
        }
        saturation.push_back(std::abs(p[imax]));
        saturation.push_back(std::abs(p[imin]));

        double twice_area = 0.0;
        for (std::size_t i = seg.begin; i < seg.end; ++i) {
            const std::size_t j = i + 1 < seg.end ? i + 1 : seg.begin;
            twice_area += e[i] * p[j] - e[j] * p[i];
        }
        area_sum += std::abs(0.5 * twice_area);
    }

    auto average = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };

    LoopMetrics m;
    if (!remnant_missing) m.remnant_polarization = average(remnant);
    if (!coercive_missing) {
        m.coercive_field = average(coercive);
        m.hysteresis_width = 2.0 * *m.coercive_field;
    }
    m.saturation_polarization = average(saturation);
    m.loop_area = area_sum / static_cast<double>(segs.size());
    return m;
}

void FerroelectricParams::validate() const {
    if (!(remnant_polarization > 0.0)) throw DomainError("remnant polarization must be positive");
    if (!(remnant_polarization < saturation_polarization)) {
        throw DomainError("remnant polarization must be below saturation polarization");
    }
    if (!(coercive_field > 0.0)) throw DomainError("coercive field must be positive");
    if (!(linear_capacitance >= 0.0)) throw DomainError("linear capacitance must be non-negative");
}

double ferroelectric_polarization(const FerroelectricParams& params, double field, Branch branch) {
    const double ratio = params.remnant_polarization / params.saturation_polarization;
    const double delta = params.coercive_field / std::log((1.0 + ratio) / (1.0 - ratio));
    const double shift = branch == Branch::Ascending ? params.coercive_field : -params.coercive_field;
    return params.saturation_polarization * std::tanh((field - shift) / (2.0 * delta));
}

namespace {

std::vector<double> centred_derivative(std::span<const double> x, double dt) {
    const std::size_t n = x.size();
    std::vector<double> d(n);
    d[0] = (x[1] - x[0]) / dt;
    d[n - 1] = (x[n - 1] - x[n - 2]) / dt;
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (x[i + 1] - x[i - 1]) / (2.0 * dt);
    return d;
}

}  // namespace

TimeSeries synthetic_ferroelectric(const FerroelectricParams& params, const SampleGeometry& geometry,
                                   const TimeSeries& drive) {
    params.validate();
    geometry.validate();
    if (drive.unit() != Unit::Volts) throw DomainError("drive must be a voltage record");

    const auto v = drive.samples();
    const std::size_t n = v.size();
    const double dt = drive.time_step();
    const auto slope = centred_derivative(v, dt);

    std::vector<double> pol(n);
    Branch branch = Branch::Ascending;
    for (std::size_t i = 0; i < n; ++i) {
        if (slope[i] > 0.0) branch = Branch::Ascending;
        else if (slope[i] < 0.0) branch = Branch::Descending;
        pol[i] = ferroelectric_polarization(params, v[i] / geometry.film_thickness, branch);
    }
    const auto dpol = centred_derivative(pol, dt);

    std::vector<double> current(n);
    for (std::size_t i = 0; i < n; ++i) {
        current[i] = geometry.electrode_area * dpol[i] + params.linear_capacitance * slope[i];
    }
    return TimeSeries(std::move(current), drive.sample_rate(), Unit::Amperes);
}

}  // namespace petra
