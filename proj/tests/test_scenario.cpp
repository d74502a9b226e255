#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "spinorbit/io.hpp"
#include "spinorbit/scenario.hpp"

using namespace spinorbit;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::current_path() / "scenario_test_work" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("angle parsing") {
    CHECK(parse_angle("1.25") == 1.25);
    CHECK(parse_angle("90deg") == doctest::Approx(kHalfPi).epsilon(1e-15));
    CHECK(parse_angle("-45 deg") == doctest::Approx(-kPi / 4.0).epsilon(1e-15));
    CHECK(parse_angle("0.5rad") == 0.5);
    CHECK(parse_angle(" 2 rad ") == 2.0);
    CHECK_THROWS_AS(parse_angle("1.0turns"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("deg"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle(""), std::invalid_argument);
}

TEST_CASE("sweep parsing") {
    const SweepSpec s = parse_sweep("beta:0:360deg:16");
    CHECK(s.parameter == SweepSpec::Param::beta);
    CHECK(s.start == 0.0);
    CHECK(s.stop == doctest::Approx(2.0 * kPi).epsilon(1e-15));
    CHECK(s.steps == 16);
    CHECK_THROWS_AS(parse_sweep("beta:0:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_sweep("waist:0:1:4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_sweep("beta:0:1:1"), std::invalid_argument);
}

TEST_CASE("config building") {
    SUBCASE("named scenarios pre-fill their angles") {
        const ScenarioConfig balanced = build_config({{"scenario", "balanced-vector"}});
        CHECK(balanced.angles.theta == doctest::Approx(kHalfPi));
        CHECK(balanced.angles.phi == doctest::Approx(kPi));
        CHECK(balanced.angles.alpha == doctest::Approx(kHalfPi));
        CHECK(balanced.delta == doctest::Approx(kHalfPi));

        const ScenarioConfig lg = build_config({{"scenario", "lg-input"}});
        CHECK(lg.angles.theta == doctest::Approx(kHalfPi));
        CHECK(lg.angles.phi == doctest::Approx(-kHalfPi));
        CHECK(lg.angles.alpha == 0.0);
    }
    SUBCASE("flags override pre-filled values regardless of order") {
        const ScenarioConfig cfg = build_config(
            {{"beta", "90deg"}, {"scenario", "balanced-vector"}, {"grid-size", "65"}});
        CHECK(cfg.angles.beta == doctest::Approx(kHalfPi));
        CHECK(cfg.grid.samples_per_axis == 65);
        CHECK(cfg.angles.phi == doctest::Approx(kPi)); // still pre-filled
    }
    SUBCASE("format list controls emissions") {
        const ScenarioConfig cfg = build_config({{"format", "png,csv"}});
        CHECK_FALSE(cfg.write_pgm);
        CHECK(cfg.write_png);
        CHECK(cfg.write_csv);
    }
    SUBCASE("invalid input is rejected") {
        CHECK_THROWS_AS(build_config({{"scenario", "bogus"}}), std::invalid_argument);
        CHECK_THROWS_AS(build_config({{"frobnicate", "1"}}), std::invalid_argument);
        CHECK_THROWS_AS(build_config({{"port", "x"}}), std::invalid_argument);
        CHECK_THROWS_AS(build_config({{"format", "bmp"}}), std::invalid_argument);
    }
}

TEST_CASE("config file loading") {
    const auto dir = fresh_dir("config");
    const auto path = dir / "run.cfg";
    {
        std::ofstream out(path);
        out << "# demo configuration\n"
            << "scenario = balanced-vector\n"
            << "gamma = 45deg   # analyzer\n"
            << "\n"
            << "grid-size = 33\n";
    }
    const auto kv = load_config_file(path.string());
    const ScenarioConfig cfg = build_config(kv);
    CHECK(cfg.scenario == Scenario::balanced_vector);
    CHECK(cfg.gamma.has_value());
    CHECK(*cfg.gamma == doctest::Approx(kPi / 4.0));
    CHECK(cfg.grid.samples_per_axis == 33);

    CHECK_THROWS_AS(load_config_file((dir / "missing.cfg").string()), std::runtime_error);
    {
        std::ofstream out(dir / "bad.cfg");
        out << "no equals sign here\n";
    }
    CHECK_THROWS_AS(load_config_file((dir / "bad.cfg").string()), std::invalid_argument);
}

TEST_CASE("harmonic fitting recovers a planted phase") {
    std::vector<double> phi(128), power(128);
    for (int k = 0; k < 128; ++k) {
        phi[k] = -kPi + 2.0 * kPi * k / 128.0;
        power[k] = 2.0 + 0.75 * std::sin(2.0 * phi[k] + 1.1);
    }
    const HarmonicFit fit = fit_second_harmonic(phi, power);
    CHECK(fit.mean == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.amplitude == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(fit.phase == doctest::Approx(1.1).epsilon(1e-10));
}

TEST_CASE("modulation depth") {
    CHECK(modulation_depth({1.0, 1.0, 1.0}) == 0.0);
    CHECK(modulation_depth({0.0, 2.0}) == 1.0);
    CHECK(modulation_depth({1.0, 3.0}) == doctest::Approx(0.5));
    CHECK(modulation_depth({}) == 0.0);
}

TEST_CASE("biphoton sweep table") {
    SpinOrbitAmplitudes e00_only;
    e00_only.e00 = 1.0;

    SUBCASE("single-mode law at the marked points") {
        const auto table = run_biphoton_sweep(e00_only, {0.0, kPi / 4.0, kHalfPi});
        CHECK(table[0].coincidence == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(table[1].coincidence == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(table[2].coincidence < 1e-12);
    }
    SUBCASE("coincidence and bunching always sum to one") {
        const SpinOrbitAmplitudes amps =
            product_amplitudes({kHalfPi, kPi, kHalfPi, 0.4}, 1.0);
        for (int i = 0; i < 33; ++i) {
            const double delta = -kPi + 2.0 * kPi * i / 32.0;
            const auto table = run_biphoton_sweep(amps, {delta});
            CHECK(std::abs(table[0].coincidence + table[0].bunching - 1.0) < 1e-12);
        }
    }
    SUBCASE("coincidence is symmetric about delta = 0 and delta = pi") {
        const auto table = run_biphoton_sweep(e00_only, {0.3, -0.3, kPi + 0.3, kPi - 0.3});
        CHECK(std::abs(table[0].coincidence - table[1].coincidence) < 1e-12);
        CHECK(std::abs(table[2].coincidence - table[3].coincidence) < 1e-12);
    }
    SUBCASE("empty grid is rejected") {
        CHECK_THROWS_AS(run_biphoton_sweep(e00_only, {}), std::invalid_argument);
    }
}

TEST_CASE("balanced-vector gamma sweep reproduces the four-lobe cycle") {
    const auto dir = fresh_dir("gamma_sweep");
    ScenarioConfig cfg = build_config({{"scenario", "balanced-vector"},
                                       {"beta", "180deg"},
                                       {"sweep", "gamma:0deg:135deg:4"},
                                       {"grid-size", "65"},
                                       {"out", (dir / "run").string()}});
    const RunReport report = run_scenario(cfg);
    REQUIRE(report.frames.size() == 4);

    // Donut at 0/90 degrees, full-depth lobes at 45/135 degrees.
    CHECK(report.frames[0].modulation < 1e-10);
    CHECK(report.frames[2].modulation < 1e-10);
    CHECK(report.frames[1].modulation > 0.999);
    CHECK(report.frames[3].modulation > 0.999);

    // Lobe orientations: cos^2(pi/4 + phi) at 45 deg peaks at phi = -pi/4;
    // sin^2(pi/4 + phi) at 135 deg peaks at phi = +pi/4.
    auto peak_phi = [&](const FrameMetrics& f) {
        // p ~ mean + amp sin(2 phi + phase): maximum at phi = (pi/2 - phase)/2.
        double phi = (kHalfPi - f.fit_phase) / 2.0;
        while (phi >= kHalfPi) phi -= kPi;
        while (phi < -kHalfPi) phi += kPi;
        return phi;
    };
    CHECK(peak_phi(report.frames[1]) == doctest::Approx(-kPi / 4.0).epsilon(1e-6));
    CHECK(peak_phi(report.frames[3]) == doctest::Approx(kPi / 4.0).epsilon(1e-6));

    // Files exist as reported.
    for (const FrameMetrics& f : report.frames) {
        CHECK(std::filesystem::exists(dir / "run" / f.image_file));
        CHECK(std::filesystem::exists(dir / "run" / f.profile_file));
    }
    CHECK(std::filesystem::exists(dir / "run" / report.report_file));
}

TEST_CASE("beta sweep rotates the analyzed pattern by beta/2") {
    const auto dir = fresh_dir("beta_sweep");
    ScenarioConfig cfg = build_config({{"scenario", "balanced-vector"},
                                       {"gamma", "45deg"},
                                       {"sweep", "beta:0:270deg:4"},
                                       {"grid-size", "33"},
                                       {"format", "csv"},
                                       {"out", (dir / "run").string()}});
    const RunReport report = run_scenario(cfg);
    REQUIRE(report.frames.size() == 4);
    for (std::size_t i = 0; i < report.frames.size(); ++i) {
        const double beta = report.frames[i].value;
        double expect = beta / 2.0;                     // mod pi comparison
        double got = report.frames[i].rotation_from_first;
        double diff = std::fmod(got - expect, kPi);
        if (diff > kHalfPi) diff -= kPi;
        if (diff < -kHalfPi) diff += kPi;
        CHECK(std::abs(diff) < 1e-9);
    }
}

TEST_CASE("lg-input alpha sweep: modulation depth equals |cos alpha|") {
    const auto dir = fresh_dir("alpha_sweep");
    ScenarioConfig cfg = build_config({{"scenario", "lg-input"},
                                       {"sweep", "alpha:0:180deg:5"},
                                       {"grid-size", "33"},
                                       {"format", "csv"},
                                       {"out", (dir / "run").string()}});
    const RunReport report = run_scenario(cfg);
    REQUIRE(report.frames.size() == 5);
    for (const FrameMetrics& f : report.frames)
        CHECK(std::abs(f.modulation - std::abs(std::cos(f.value))) < 1e-6);
}

TEST_CASE("dual-input delta sweep moves power between ports") {
    const auto dir = fresh_dir("dual");
    ScenarioConfig cfg = build_config({{"scenario", "dual-input"},
                                       {"theta", "90deg"},
                                       {"phi", "180deg"},
                                       {"alpha", "90deg"},
                                       {"sweep", "delta:-90deg:90deg:3"},
                                       {"grid-size", "65"},
                                       {"format", "csv"},
                                       {"out", (dir / "run").string()}});
    const RunReport report = run_scenario(cfg);
    REQUIRE(report.frames.size() == 3);

    // delta = -pi/2: all power at d; 0: split; +pi/2: all power at c.
    CHECK(report.frames[0].power_port_c < 1e-15);
    CHECK(report.frames[0].power_port_d == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(report.frames[1].power_port_c == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(report.frames[1].power_port_d == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(report.frames[2].power_port_c == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(report.frames[2].power_port_d < 1e-15);
}

TEST_CASE("biphoton-sweep scenario emits the coincidence table") {
    const auto dir = fresh_dir("hom");
    ScenarioConfig cfg = build_config(
        {{"scenario", "biphoton-sweep"}, {"out", (dir / "run").string()}});
    const RunReport report = run_scenario(cfg);
    REQUIRE(report.hom.size() == 65);
    CHECK(report.frames.empty());
    for (const HomPoint& p : report.hom)
        CHECK(std::abs(p.coincidence + p.bunching - 1.0) < 1e-12);
    // The default sweep covers delta = pi/2 where coincidences vanish.
    double min_c = 1.0;
    for (const HomPoint& p : report.hom) min_c = std::min(min_c, p.coincidence);
    CHECK(min_c < 1e-12);
    CHECK(std::filesystem::exists(dir / "run" / "hom.csv"));
    CHECK(std::filesystem::exists(dir / "run" / "report.json"));
}

TEST_CASE("scenario validation errors") {
    SUBCASE("single-input scenarios demand delta = +-pi/2") {
        ScenarioConfig cfg = build_config({{"scenario", "balanced-vector"},
                                           {"delta", "0.3"},
                                           {"out", "unused"}});
        CHECK_THROWS_AS(run_scenario(cfg), std::invalid_argument);
    }
    SUBCASE("delta sweeps are rejected for single-input scenarios") {
        ScenarioConfig cfg = build_config({{"scenario", "balanced-vector"},
                                           {"sweep", "delta:0:1:4"},
                                           {"out", "unused"}});
        CHECK_THROWS_AS(run_scenario(cfg), std::invalid_argument);
    }
    SUBCASE("unwritable output directory raises an I/O error") {
        ScenarioConfig cfg = build_config({{"scenario", "balanced-vector"},
                                           {"grid-size", "17"},
                                           {"out", "/proc/definitely/not/writable"}});
        CHECK_THROWS_AS(run_scenario(cfg), std::runtime_error);
    }
}

TEST_CASE("profile matches the pixel pipeline where they intersect") {
    // Pixel (x, y) = (0, w0) is exactly the phi_report = 0 profile sample.
    const auto dir = fresh_dir("consistency");
    ScenarioConfig cfg = build_config({{"scenario", "balanced-vector"},
                                       {"gamma", "45deg"},
                                       {"beta", "180deg"},
                                       {"out", (dir / "run").string()}});
    const RunReport report = run_scenario(cfg);

    // Reconstruct the analyzed pixel power at (row, col) = (96, 128).
    const PixelCoords pc = pixel_coords(cfg.grid, 96, 128);
    REQUIRE(pc.x_image == 0.0);
    REQUIRE(pc.y_image == 1.0);
    JonesVector v = scenario_port_field(cfg, cfg.angles, cfg.delta, Port::c, pc.r,
                                        pc.phi_field);
    v = apply_polarizer(v, *cfg.gamma);
    const double pixel_power = power_density(v);

    // Locate the phi = 0 azimuthal row in the emitted CSV.
    const std::string csv = slurp(dir / "run" / report.frames[0].profile_file);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line); // header
    bool found = false;
    while (std::getline(lines, line)) {
        if (line.rfind("0,1,", 0) == 0) {
            const double value = std::stod(line.substr(4));
            CHECK(std::abs(value - pixel_power) < 1e-12 * std::max(1.0, pixel_power));
            found = true;
            break;
        }
    }
    CHECK(found);
}

TEST_CASE("identical configurations produce bitwise-identical outputs") {
    const auto dir = fresh_dir("determinism");
    auto run_into = [&](const std::string& name) {
        ScenarioConfig cfg = build_config({{"scenario", "balanced-vector"},
                                           {"gamma", "45deg"},
                                           {"sweep", "beta:0:180deg:3"},
                                           {"grid-size", "33"},
                                           {"ellipses", "true"},
                                           {"format", "pgm,png,csv"},
                                           {"out", (dir / name).string()}});
        return run_scenario(cfg);
    };
    const RunReport a = run_into("a");
    const RunReport b = run_into("b");
    REQUIRE(a.files == b.files);
    for (const std::string& name : a.files) {
        CHECK(slurp(dir / "a" / name) == slurp(dir / "b" / name));
    }
}
