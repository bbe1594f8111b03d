// Regenerates the sample data shipped in data/.
//
//   petra_fixtures <output-dir>

#include "petra/io.hpp"
#include "petra/pe_loop.hpp"
#include "petra/transducer.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

namespace {

constexpr double kFrequency = 1.0;
constexpr std::size_t kSamplesPerCycle = 1000;
constexpr std::size_t kCycles = 2;
constexpr double kArea = 1e-4;       // 1 cm^2
constexpr double kThickness = 10e-6; // 10 um

template <class Fn>
void write(const std::filesystem::path& path, Fn&& fn) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    fn(out);
    std::cout << "wrote " << path.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    const std::filesystem::path dir = argc > 1 ? argv[1] : "data";
    std::filesystem::create_directories(dir);

    const auto spectrum = petra::sample_spectrum(petra::kPvdfFilm, petra::linspace(20.0, 1000.0, 201));
    write(dir / "pvdf_impedance.csv", [&](std::ostream& o) { petra::io::write_impedance_csv(o, spectrum); });

    const petra::FerroelectricParams ferro{0.06, 0.07, 50e6, 1e-10};
    const double peak_field = 3.0 * ferro.coercive_field;
    const double fs = kFrequency * kSamplesPerCycle;
    const auto drive = petra::make_sine(peak_field * kThickness, kFrequency, fs, kSamplesPerCycle * kCycles,
                                        petra::Unit::Volts);
    const petra::SampleGeometry geometry{kArea, kThickness};
    write(dir / "ferro_drive.csv", [&](std::ostream& o) { petra::io::write_waveform_csv(o, drive); });
    write(dir / "ferro_current.csv", [&](std::ostream& o) {
        petra::io::write_waveform_csv(o, petra::synthetic_ferroelectric(ferro, geometry, drive));
    });

    // Lossless 1 nF capacitor under the same drive: I = C dV/dt.
    std::vector<double> cap(drive.size());
    const double w = 2.0 * std::numbers::pi * kFrequency;
    for (std::size_t i = 0; i < cap.size(); ++i) {
        cap[i] = 1e-9 * peak_field * kThickness * w * std::cos(w * drive.time_at(i));
    }
    write(dir / "capacitor_current.csv", [&](std::ostream& o) {
        petra::io::write_waveform_csv(o, petra::TimeSeries(cap, fs, petra::Unit::Amperes));
    });
    return 0;
}
