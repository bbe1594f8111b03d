#include "cli.hpp"

#include "petra/characterization.hpp"
#include "petra/dsp.hpp"
#include "petra/error.hpp"
#include "petra/io.hpp"
#include "petra/pe_loop.hpp"
#include "petra/tia.hpp"
#include "petra/transducer.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace petra::cli {
namespace {

/// Missing files, bad flag combinations: exit code 2.
class UsageError : public Error {
public:
    using Error::Error;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError(fmt::format("cannot open '{}'", path));
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError(fmt::format("cannot write '{}'", path.string()));
    return out;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("PETRA_SEED")) {
        std::uint64_t seed = 0;
        const std::string_view text(env);
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            throw UsageError(fmt::format("PETRA_SEED='{}' is not an unsigned integer", text));
        }
        return seed;
    }
    return 0;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<GainSetting> parse_gains(const std::string& text) {
    std::vector<GainSetting> out;
    for (const auto& g : split_list(text)) {
        const double v = io::parse_number(g, 0);
        if (v != std::round(v)) throw UsageError(fmt::format("gain '{}' is not an integer", g));
        if (v < 1 || v > kGainCount) throw UsageError(fmt::format("gain '{}' is outside 1..{}", g, kGainCount));
        out.push_back(GainSetting::from_index(static_cast<int>(v)));
    }
    if (out.empty()) throw UsageError("no gain settings selected");
    return out;
}

// --------------------------------------------------------------------------
// fit-rc
// --------------------------------------------------------------------------

struct FitRcOptions {
    std::string input;
    std::string output;
};

int cmd_fit_rc(const FitRcOptions& o, std::ostream& out) {
    auto in = open_input(o.input);
    const auto fit = fit_rc_model(io::read_impedance_csv(in));
    const auto& m = fit.model;

    std::ostringstream report;
    report << "quantity,value\n";
    report << "resistance_ohm," << io::format_number(m.resistance) << '\n';
    report << "resistance_sigma_ohm," << io::format_number(m.resistance_sigma) << '\n';
    report << "capacitance_f," << io::format_number(m.capacitance) << '\n';
    report << "capacitance_sigma_f," << io::format_number(m.capacitance_sigma) << '\n';
    report << "residual_rms_ohm," << io::format_number(fit.residual_rms) << '\n';
    if (!o.output.empty()) {
        open_output(o.output) << report.str();
    }
    out << fmt::format("R = {:.6g} kOhm +/- {:.3g} kOhm (1 sigma)\n", m.resistance / 1e3, m.resistance_sigma / 1e3);
    out << fmt::format("C = {:.6g} nF +/- {:.3g} pF (1 sigma)\n", m.capacitance / 1e-9, m.capacitance_sigma / 1e-12);
    out << fmt::format("residual RMS = {:.4g} Ohm\n", fit.residual_rms);
    if (o.output.empty()) out << report.str();
    return 0;
}

// --------------------------------------------------------------------------
// simulate
// --------------------------------------------------------------------------

struct NoiseOptions {
    std::string white = "0";
    std::string line_amplitude = "0";
    std::string line_frequency = "50Hz";
    std::string bias = "3fA";
    std::optional<std::uint64_t> seed;

    NoiseConfig build() const {
        NoiseConfig n;
        n.white_noise_rms = io::parse_quantity(white, "V");
        n.line_amplitude = io::parse_quantity(line_amplitude, "V");
        n.line_frequency = io::parse_quantity(line_frequency, "Hz");
        n.bias_current = io::parse_quantity(bias, "A");
        n.seed = seed ? *seed : default_seed();
        n.validate();
        return n;
    }
};

void add_noise_options(CLI::App* app, NoiseOptions& o) {
    app->add_option("--white-noise", o.white, "Output-referred white noise RMS (e.g. 6uV)");
    app->add_option("--line-amplitude", o.line_amplitude, "Mains pickup amplitude at the output");
    app->add_option("--line-frequency", o.line_frequency, "Mains frequency");
    app->add_option("--bias-current", o.bias, "Op-amp input bias current");
    app->add_option("--seed", o.seed, "Noise seed (default: $PETRA_SEED or 0)");
}

struct SimulateOptions {
    int gain = 5;
    std::string resistance = "131.8k";
    std::string capacitance = "0.707n";
    std::string drive;
    std::string sine;
    std::string amp_current;
    std::string amp_voltage;
    int cycles = 10;
    int samples_per_cycle = 1000;
    std::string noise = "on";
    NoiseOptions noise_values;
    std::string output;
};

int cmd_simulate(const SimulateOptions& o, std::ostream& out, std::ostream& err) {
    const GainSetting setting = GainSetting::from_index(o.gain);
    TransducerModel model{io::parse_quantity(o.resistance, "ohm"), io::parse_quantity(o.capacitance, "F")};
    model.validate();
    NoiseConfig noise = o.noise_values.build();
    if (o.noise == "off") noise = noise.silenced();
    else if (o.noise != "on") throw UsageError("--noise must be 'on' or 'off'");

    std::optional<TimeSeries> drive;
    std::optional<double> fundamental;
    double expected_peak_current = 0.0;
    if (!o.drive.empty()) {
        if (!o.sine.empty()) throw UsageError("--drive and --sine are mutually exclusive");
        auto in = open_input(o.drive);
        drive = io::read_waveform_csv(in);
        if (drive->unit() != Unit::Volts) throw UsageError("drive CSV must hold voltages (time_s,voltage_v)");
    } else {
        if (o.sine.empty()) throw UsageError("either --drive or --sine is required");
        const double f = io::parse_quantity(o.sine, "Hz");
        if (!(f > 0.0)) throw UsageError("--sine frequency must be positive");
        if (o.cycles < 1 || o.samples_per_cycle < 4) throw UsageError("need >= 1 cycle and >= 4 samples per cycle");
        double amplitude = 1.0;
        if (!o.amp_current.empty() && !o.amp_voltage.empty()) {
            throw UsageError("--amp-current and --amp-voltage are mutually exclusive");
        }
        if (!o.amp_current.empty()) {
            expected_peak_current = io::parse_quantity(o.amp_current, "A");
            amplitude = expected_peak_current * std::abs(transducer_impedance(model, f));
        } else if (!o.amp_voltage.empty()) {
            amplitude = io::parse_quantity(o.amp_voltage, "V");
            expected_peak_current = amplitude * std::abs(transducer_admittance(model, f));
        } else {
            expected_peak_current = std::abs(transducer_admittance(model, f));
        }
        const double fs = f * o.samples_per_cycle;
        const auto count = static_cast<std::size_t>(o.cycles) * static_cast<std::size_t>(o.samples_per_cycle);
        drive = make_sine(amplitude, f, fs, count, Unit::Volts);
        fundamental = f;
    }

    if (expected_peak_current > current_range(setting)) {
        err << fmt::format("warning: drive current {:.4g} A exceeds the gain-{} range of {:.4g} A\n",
                           expected_peak_current, setting.index(), current_range(setting));
    }
    const auto result = simulate_measurement(model, setting, *drive, noise, fundamental);
    if (result.saturated) {
        err << fmt::format("warning: output saturated at +/-{} V\n", setting.output_ceiling());
    }
    auto file = open_output(o.output);
    io::write_waveform_csv(file, result.output);
    out << fmt::format("wrote {} samples at {} Hz to {}\n", result.output.size(), result.output.sample_rate(), o.output);
    return 0;
}

// --------------------------------------------------------------------------
// characterize
// --------------------------------------------------------------------------

struct CharacterizeOptions {
    std::string gains = "1,2,3,4,5";
    std::string currents;
    std::string frequencies;
    std::string noise = "calibrated";
    NoiseOptions noise_values;
    std::string calibration_current = "2pA";
    double calibration_snr = kSensitivityThresholdDb;
    int calibration_gain = 5;
    std::string calibration_frequency = "3Hz";
    int cycles = 40;
    int samples_per_cycle = 256;
    std::string output_dir;
};

std::map<int, double> parse_frequencies(const std::string& text, const std::vector<GainSetting>& settings) {
    auto out = default_frequencies(settings);
    for (const auto& item : split_list(text)) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw UsageError(fmt::format("'{}': expected gain:frequency", item));
        const int gain = static_cast<int>(io::parse_number(item.substr(0, colon), 0));
        out[gain] = io::parse_quantity(item.substr(colon + 1), "Hz");
    }
    return out;
}

int cmd_characterize(const CharacterizeOptions& o, std::ostream& out, std::ostream& err) {
    const auto settings = parse_gains(o.gains);
    const auto frequencies = parse_frequencies(o.frequencies, settings);
    Acquisition acq;
    acq.cycles = o.cycles;
    acq.samples_per_cycle = o.samples_per_cycle;

    NoiseConfig noise = o.noise_values.build();
    if (o.noise == "off") {
        noise = noise.silenced();
    } else if (o.noise == "calibrated") {
        const auto cal_setting = GainSetting::from_index(o.calibration_gain);
        const double cal_current = io::parse_quantity(o.calibration_current, "A");
        const double cal_frequency = io::parse_quantity(o.calibration_frequency, "Hz");
        noise = calibrate_noise(cal_current, o.calibration_snr, cal_setting, cal_frequency, noise, {}, acq);
        out << fmt::format("calibrated white noise: {:.6g} V RMS ({} A, gain {}, {} Hz -> {} dB)\n",
                           noise.white_noise_rms, cal_current, cal_setting.index(), cal_frequency, o.calibration_snr);
    } else if (o.noise != "manual") {
        throw UsageError("--noise must be 'calibrated', 'manual' or 'off'");
    }

    std::vector<double> currents;
    for (const auto& c : split_list(o.currents)) currents.push_back(io::parse_quantity(c, "A"));

    const auto points = run_characterization(settings, currents, frequencies, noise, {}, acq);

    std::vector<OperationalRange> ranges;
    for (const auto& s : settings) {
        try {
            const auto r = derive_ranges(points, {s});
            ranges.insert(ranges.end(), r.begin(), r.end());
        } catch (const InsufficientDataError& e) {
            err << "note: no range for gain " << s.index() << ": " << e.what() << '\n';
        }
    }

    const std::filesystem::path dir(o.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw UsageError(fmt::format("cannot create '{}': {}", dir.string(), ec.message()));
    {
        auto f = open_output(dir / "characterization.csv");
        io::write_report_csv(f, points);
    }
    {
        auto f = open_output(dir / "regression.csv");
        io::write_regression_csv(f, ranges, points);
    }
    {
        auto f = open_output(dir / "ranges.csv");
        io::write_range_csv(f, ranges);
    }
    {
        auto f = open_output(dir / "plot_data.csv");
        io::write_plot_csv(f, ranges, points);
    }
    {
        auto f = open_output(dir / "noise.conf");
        f << "# noise used for this characterization\n";
        f << "white-noise=" << io::format_number(noise.white_noise_rms) << '\n';
        f << "line-amplitude=" << io::format_number(noise.line_amplitude) << '\n';
        f << "line-frequency=" << io::format_number(noise.line_frequency) << '\n';
        f << "bias-current=" << io::format_number(noise.bias_current) << '\n';
        f << "seed=" << noise.seed << '\n';
    }

    out << fmt::format("{} points, {} ranges written to {}\n", points.size(), ranges.size(), dir.string());
    for (const auto& r : ranges) {
        out << fmt::format("  gain {}: i_min {}{:.4g} A, i_max {:.4g} A, {}{:.3f} decades, r^2 {:.4f}\n", r.gain_index,
                           r.i_min_below_grid ? "< " : "", r.i_min, r.i_max, r.i_min_below_grid ? "> " : "",
                           r.decades(), r.fit.r_squared);
    }
    if (ranges.size() > 1) {
        out << fmt::format("  total span: {:.3f} decades\n", total_span_decades(ranges));
    }
    return 0;
}

// --------------------------------------------------------------------------
// range-table
// --------------------------------------------------------------------------

struct RangeTableOptions {
    std::string report;
    std::string gains = "1,2,3,4,5";
    double threshold = kSensitivityThresholdDb;
    std::string output;
};

int cmd_range_table(const RangeTableOptions& o, std::ostream& out) {
    const auto settings = parse_gains(o.gains);
    std::ostringstream table;
    if (o.report.empty()) {
        table << "gain_index,feedback_ohm,feedback_f,cutoff_hz,i_max_a,band_low_hz,band_high_hz\n";
        for (const auto& s : settings) {
            table << s.index() << ',' << io::format_number(s.feedback_resistance()) << ','
                  << io::format_number(s.feedback_capacitance()) << ',' << io::format_number(s.cutoff_frequency())
                  << ',' << io::format_number(current_range(s)) << ',' << io::format_number(s.band_low()) << ','
                  << io::format_number(s.band_high()) << '\n';
        }
    } else {
        auto in = open_input(o.report);
        const auto points = io::read_report_csv(in);
        io::write_range_csv(table, derive_ranges(points, settings, o.threshold));
    }
    if (o.output.empty()) out << table.str();
    else open_output(o.output) << table.str();
    return 0;
}

// --------------------------------------------------------------------------
// pe-loop
// --------------------------------------------------------------------------

struct PeLoopOptions {
    std::string drive;
    std::string current;
    std::string area;
    std::string thickness;
    std::optional<int> gain;
    bool no_notch = false;
    std::string notch_frequency = "50Hz";
    std::string output;
    std::string metrics;
};

int cmd_pe_loop(const PeLoopOptions& o, std::ostream& out, std::ostream& err) {
    SampleGeometry geometry{io::parse_number(o.area, 0), io::parse_quantity(o.thickness, "m")};
    geometry.validate();

    auto drive_in = open_input(o.drive);
    const TimeSeries drive = io::read_waveform_csv(drive_in);
    if (drive.unit() != Unit::Volts) throw UsageError("drive CSV must hold voltages (time_s,voltage_v)");
    auto current_in = open_input(o.current);
    TimeSeries current = io::read_waveform_csv(current_in);
    if (current.unit() == Unit::Volts) {
        // TIA output voltage: undo the inverting DC gain
        if (!o.gain) throw UsageError("current CSV holds TIA output voltage; pass --gain to convert it");
        const double rf = GainSetting::from_index(*o.gain).feedback_resistance();
        std::vector<double> amps(current.values());
        for (double& v : amps) v = -v / rf;
        current = TimeSeries(std::move(amps), current.sample_rate(), Unit::Amperes);
    }
    if (drive.size() != current.size() ||
        std::abs(drive.sample_rate() - current.sample_rate()) > 1e-9 * drive.sample_rate()) {
        throw AlignmentError("drive and current records are not aligned");
    }

    if (!o.no_notch) {
        const double f = io::parse_quantity(o.notch_frequency, "Hz");
        if (f < current.sample_rate() / 2.0) current = notch_filter(current, f);
        else err << "note: notch frequency at or above Nyquist, skipping the notch\n";
    }

    const PELoop loop = trace_pe_loop(drive, current, geometry);
    const LoopMetrics metrics = loop_metrics(loop);

    auto loop_file = open_output(o.output);
    io::write_loop_csv(loop_file, loop);
    const std::string metrics_path = o.metrics.empty()
        ? std::filesystem::path(o.output).replace_extension(".metrics.csv").string()
        : o.metrics;
    auto metrics_file = open_output(metrics_path);
    io::write_metrics_csv(metrics_file, metrics);

    auto show = [](const std::optional<double>& v) { return v ? fmt::format("{:.6g}", *v) : std::string("undefined"); };
    out << fmt::format("cycles: {}\n", loop.cycles);
    out << "remnant polarization: " << show(metrics.remnant_polarization) << " C/m^2\n";
    out << "coercive field: " << show(metrics.coercive_field) << " V/m\n";
    out << fmt::format("saturation polarization: {:.6g} C/m^2\n", metrics.saturation_polarization);
    out << "hysteresis width: " << show(metrics.hysteresis_width) << " V/m\n";
    out << fmt::format("loop area: {:.6g} J/m^3\n", metrics.loop_area);
    if (!metrics.coercive_field) err << "note: loop has no P = 0 crossing on every branch (minor loop)\n";
    return 0;
}

// --------------------------------------------------------------------------

std::vector<std::string> expand_config(const std::vector<std::string>& args,
                                       const std::vector<std::string>& subcommands) {
    std::vector<std::string> rest;
    std::vector<std::string> from_config;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const auto& a = args[i];
        if (a == "--config") {
            if (i + 1 >= args.size()) throw UsageError("--config needs a file");
            from_config = config_arguments(args[++i]);
        } else if (a.starts_with("--config=")) {
            from_config = config_arguments(a.substr(9));
        } else {
            rest.push_back(a);
        }
    }
    if (from_config.empty()) return rest;
    auto sub = std::find_if(rest.begin() + 1, rest.end(), [&](const std::string& a) {
        return std::find(subcommands.begin(), subcommands.end(), a) != subcommands.end();
    });
    if (sub == rest.end()) throw UsageError("--config needs a subcommand");
    rest.insert(sub + 1, from_config.begin(), from_config.end());
    return rest;
}

}  // namespace

std::vector<std::string> config_arguments(const std::string& path) {
    auto in = open_input(path);
    std::vector<std::string> out;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(number, fmt::format("'{}': expected key=value", line));
        auto key = line.substr(0, eq);
        auto value = line.substr(eq + 1);
        key.erase(key.find_last_not_of(" \t") + 1);
        value.erase(0, value.find_first_not_of(" \t"));
        if (key.empty()) throw ParseError(number, "empty key");
        out.push_back("--" + key + "=" + value);
    }
    return out;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Software PE loop tracer: transducer fit, TIA simulation, characterization and PE-loop analysis",
                 "petra"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    std::string unused_config;
    app.add_option("--config", unused_config, "key=value config file; command-line flags take precedence");

    FitRcOptions fit_o;
    auto* fit = app.add_subcommand("fit-rc", "Fit the series-RC transducer model to an impedance CSV");
    fit->add_option("input,--input", fit_o.input, "Impedance CSV (frequency_hz,resistance_ohm,reactance_ohm)")->required();
    fit->add_option("-o,--output", fit_o.output, "Write the fit report CSV here");

    SimulateOptions sim_o;
    auto* sim = app.add_subcommand("simulate", "Simulate the TIA output for a drive waveform");
    sim->add_option("--gain", sim_o.gain, "Gain index 1..5")->check(CLI::Range(1, 5));
    sim->add_option("--resistance", sim_o.resistance, "Transducer series resistance");
    sim->add_option("--capacitance", sim_o.capacitance, "Transducer capacitance");
    sim->add_option("--drive", sim_o.drive, "Drive CSV (time_s,voltage_v), whole cycles");
    sim->add_option("--sine", sim_o.sine, "Generate a sinusoidal drive at this frequency");
    sim->add_option("--amp-current", sim_o.amp_current, "Sine amplitude as transducer current");
    sim->add_option("--amp-voltage", sim_o.amp_voltage, "Sine amplitude as drive voltage (default 1 V)");
    sim->add_option("--cycles", sim_o.cycles, "Cycles of the generated sine");
    sim->add_option("--samples-per-cycle", sim_o.samples_per_cycle, "Samples per cycle of the generated sine");
    sim->add_option("--noise", sim_o.noise, "on|off (off also removes the bias offset)");
    add_noise_options(sim, sim_o.noise_values);
    sim->add_option("-o,--output", sim_o.output, "Output waveform CSV")->required();

    CharacterizeOptions ch_o;
    auto* ch = app.add_subcommand("characterize", "Sweep currents per gain, estimate SNR and derive ranges");
    ch->add_option("--gains", ch_o.gains, "Comma-separated gain indices");
    ch->add_option("--currents", ch_o.currents, "Comma-separated current amplitudes (default: log grid per gain)");
    ch->add_option("--frequencies", ch_o.frequencies, "gain:frequency overrides, e.g. 5:3Hz,1:100Hz");
    ch->add_option("--noise", ch_o.noise, "calibrated|manual|off");
    add_noise_options(ch, ch_o.noise_values);
    ch->add_option("--calibration-current", ch_o.calibration_current, "Current pinned to the calibration SNR");
    ch->add_option("--calibration-snr", ch_o.calibration_snr, "SNR in dB at the calibration current");
    ch->add_option("--calibration-gain", ch_o.calibration_gain, "Gain index of the calibration point");
    ch->add_option("--calibration-frequency", ch_o.calibration_frequency, "Frequency of the calibration point");
    ch->add_option("--cycles", ch_o.cycles, "Cycles per acquisition");
    ch->add_option("--samples-per-cycle", ch_o.samples_per_cycle, "Samples per cycle");
    ch->add_option("-o,--output-dir", ch_o.output_dir, "Directory for the report files")->required();

    RangeTableOptions rt_o;
    auto* rt = app.add_subcommand("range-table", "Operational range table from a characterization report");
    rt->add_option("--report", rt_o.report, "characterization.csv; without it the i_max ladder is printed");
    rt->add_option("--gains", rt_o.gains, "Comma-separated gain indices");
    rt->add_option("--threshold", rt_o.threshold, "SNR threshold in dB");
    rt->add_option("-o,--output", rt_o.output, "Output CSV (default stdout)");

    PeLoopOptions pe_o;
    auto* pe = app.add_subcommand("pe-loop", "Build a PE loop from drive and current records");
    pe->add_option("--drive", pe_o.drive, "Drive CSV (time_s,voltage_v)")->required();
    pe->add_option("--current", pe_o.current, "Current CSV (time_s,current_a) or TIA output with --gain")->required();
    pe->add_option("--area", pe_o.area, "Electrode area in m^2")->required();
    pe->add_option("--thickness", pe_o.thickness, "Film thickness (e.g. 10um)")->required();
    pe->add_option("--gain", pe_o.gain, "Gain index used to convert TIA output voltage to current");
    pe->add_flag("--no-notch", pe_o.no_notch, "Skip the mains notch before integration");
    pe->add_option("--notch-frequency", pe_o.notch_frequency, "Mains frequency to notch");
    pe->add_option("-o,--output", pe_o.output, "Loop CSV")->required();
    pe->add_option("--metrics", pe_o.metrics, "Metrics CSV (default: <output>.metrics.csv)");

    try {
        const auto args = expand_config(raw_args, {"fit-rc", "simulate", "characterize", "range-table", "pe-loop"});
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return 0;
        } catch (const CLI::ParseError& e) {
            err << "error: " << e.what() << '\n';
            return 2;
        }

        if (fit->parsed()) return cmd_fit_rc(fit_o, out);
        if (sim->parsed()) return cmd_simulate(sim_o, out, err);
        if (ch->parsed()) return cmd_characterize(ch_o, out, err);
        if (rt->parsed()) return cmd_range_table(rt_o, out);
        if (pe->parsed()) return cmd_pe_loop(pe_o, out, err);
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const InsufficientDataError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const AlignmentError& e) {
        err << "alignment error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace petra::cli
