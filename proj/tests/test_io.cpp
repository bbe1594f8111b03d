#include <catch_amalgamated.hpp>

#include "petra/error.hpp"
#include "petra/io.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace petra;
using Catch::Approx;

namespace {

std::size_t parse_error_line(const std::string& text) {
    std::istringstream in(text);
    try {
        io::read_impedance_csv(in);
    } catch (const ParseError& e) {
        return e.line();
    }
    FAIL("expected a parse error");
    return 0;
}

}  // namespace

TEST_CASE("quantities with SI prefixes", "[io]") {
    CHECK(io::parse_quantity("100pA", "A") == Approx(100e-12).epsilon(1e-15));
    CHECK(io::parse_quantity("2.5 mV", "V") == Approx(2.5e-3).epsilon(1e-15));
    CHECK(io::parse_quantity("1Hz", "Hz") == 1.0);
    CHECK(io::parse_quantity("3e-12", "A") == 3e-12);
    CHECK(io::parse_quantity("131.8kohm", "ohm") == Approx(131.8e3).epsilon(1e-15));
    CHECK(io::parse_quantity("0.707nF", "F") == Approx(0.707e-9).epsilon(1e-15));
    CHECK(io::parse_quantity("10uA", "A") == Approx(10e-6).epsilon(1e-15));
    CHECK(io::parse_quantity("2MHz", "Hz") == Approx(2e6).epsilon(1e-15));
    CHECK(io::parse_quantity("5f", "A") == Approx(5e-15).epsilon(1e-15));
    CHECK_THROWS_AS(io::parse_quantity("abc", "A"), ParseError);
    CHECK_THROWS_AS(io::parse_quantity("10pV", "A"), ParseError);
    CHECK_THROWS_AS(io::parse_quantity("", "A"), ParseError);
}

TEST_CASE("impedance CSV parsing", "[io]") {
    std::istringstream in("\xEF\xBB\xBF" "frequency_hz,resistance_ohm,reactance_ohm\r\n20,131800,-1.1256e7\r\n\r\n1000,131800,-225120\r\n");
    const auto s = io::read_impedance_csv(in);
    REQUIRE(s.size() == 2);
    CHECK(s.points()[0].frequency == 20.0);
    CHECK(s.points()[1].reactance == -225120.0);

    std::istringstream header_only("frequency_hz,resistance_ohm,reactance_ohm\n");
    CHECK(io::read_impedance_csv(header_only).size() == 0);
}

TEST_CASE("malformed CSV reports the offending line", "[io]") {
    CHECK(parse_error_line("") == 0);
    CHECK(parse_error_line("wrong,header,here\n1,2,3\n") == 1);
    CHECK(parse_error_line("frequency_hz,resistance_ohm,reactance_ohm\n20,1,-1\n30,oops,-1\n") == 3);
    CHECK(parse_error_line("frequency_hz,resistance_ohm,reactance_ohm\n20,1\n") == 2);
    CHECK(parse_error_line("frequency_hz,resistance_ohm,reactance_ohm\n20,1,-1,4\n") == 2);

    std::istringstream bad("frequency_hz,resistance_ohm,reactance_ohm\n20,1,x\n");
    try {
        io::read_impedance_csv(bad);
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("waveform round trip is exact", "[io]") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g(0.0, 1e-9);
    std::vector<double> v(1000);
    for (auto& x : v) x = g(rng);
    const TimeSeries original(v, 1234.5, Unit::Amperes);

    std::stringstream buf;
    io::write_waveform_csv(buf, original);
    CHECK(buf.str().rfind(std::string(io::kCurrentHeader), 0) == 0);
    const auto back = io::read_waveform_csv(buf);
    CHECK(back.unit() == Unit::Amperes);
    CHECK(back.values() == original.values());
    CHECK(back.sample_rate() == Approx(1234.5).epsilon(1e-9));

    const auto volts = make_sine(1.0, 3.0, 300.0, 300, Unit::Volts);
    std::stringstream vbuf;
    io::write_waveform_csv(vbuf, volts);
    CHECK(vbuf.str().rfind(std::string(io::kVoltageHeader), 0) == 0);
    CHECK(io::read_waveform_csv(vbuf).unit() == Unit::Volts);
}

TEST_CASE("waveform CSV rejects uneven sampling", "[io]") {
    std::istringstream in("time_s,voltage_v\n0,1\n0.1,2\n0.25,3\n");
    CHECK_THROWS_AS(io::read_waveform_csv(in), ParseError);
    std::istringstream one("time_s,voltage_v\n0,1\n");
    CHECK_THROWS_AS(io::read_waveform_csv(one), Error);
}

TEST_CASE("impedance round trip", "[io]") {
    const auto s = sample_spectrum(kPvdfFilm, linspace(20.0, 1000.0, 11));
    std::stringstream buf;
    io::write_impedance_csv(buf, s);
    const auto back = io::read_impedance_csv(buf);
    REQUIRE(back.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(back.points()[i].frequency == s.points()[i].frequency);
        CHECK(back.points()[i].resistance == s.points()[i].resistance);
        CHECK(back.points()[i].reactance == s.points()[i].reactance);
    }
}

TEST_CASE("report round trip", "[io]") {
    const std::vector<CharacterizationPoint> pts{{5, 2e-12, 3.0, 6.02, false}, {1, 2.41e-3, 100.0, 91.5, true}};
    std::stringstream buf;
    io::write_report_csv(buf, pts);
    CHECK(buf.str().rfind(std::string(io::kReportHeader), 0) == 0);
    const auto back = io::read_report_csv(buf);
    REQUIRE(back.size() == 2);
    CHECK(back[0].gain_index == 5);
    CHECK(back[0].current == 2e-12);
    CHECK(back[0].snr_db == 6.02);
    CHECK_FALSE(back[0].saturated);
    CHECK(back[1].saturated);
}

TEST_CASE("metrics and range tables", "[io]") {
    LoopMetrics m;
    m.remnant_polarization = 0.06;
    m.saturation_polarization = 0.07;
    m.loop_area = 1.5;
    std::ostringstream metrics;
    io::write_metrics_csv(metrics, m);
    const auto text = metrics.str();
    CHECK(text.rfind(std::string(io::kMetricsHeader), 0) == 0);
    CHECK(text.find("coercive_field,undefined,V/m") != std::string::npos);
    CHECK(text.find("remnant_polarization,0.06,C/m^2") != std::string::npos);

    OperationalRange below;
    below.gain_index = 2;
    below.i_min = 2.41e-10;
    below.i_max = 2.41e-5;
    below.band_low = 0.1;
    below.band_high = 200.0;
    below.i_min_below_grid = true;
    std::ostringstream ranges;
    io::write_range_csv(ranges, {below});
    CHECK(ranges.str().rfind(std::string(io::kRangeHeader), 0) == 0);
    CHECK(ranges.str().find(",<2.41e-10,") != std::string::npos);
    CHECK(ranges.str().find(",>5") != std::string::npos);
}

TEST_CASE("number formatting is shortest round trip", "[io]") {
    for (double v : {0.1, 1.0 / 3.0, 2.41e-3, -1.1256e7, 5e-324}) {
        CHECK(io::parse_number(io::format_number(v), 1) == v);
    }
    CHECK(io::format_number(0.1) == "0.1");
    CHECK_THROWS_AS(io::parse_number("1,0", 4), ParseError);
    CHECK_THROWS_AS(io::parse_number("nan", 4), ParseError);
}
