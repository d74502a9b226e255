// Scenario orchestration: named configurations, parameter sweeps, profile
// extraction and metric fitting, and the two-photon coincidence sweep.
// File emission lives in io.hpp; everything here is deterministic for a
// fixed configuration.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinorbit/fock.hpp"
#include "spinorbit/interferometer.hpp"
#include "spinorbit/polarization.hpp"

namespace spinorbit {

enum class Scenario { balanced_vector, lg_input, dual_input, custom, biphoton_sweep };

Scenario scenario_from_name(const std::string& name); // throws on unknown name
std::string scenario_name(Scenario s);

struct SweepSpec {
    enum class Param { gamma, beta, alpha, delta };
    Param parameter = Param::beta;
    double start = 0.0;
    double stop = 0.0;
    int steps = 2; // >= 2
};

// Parses "3.14", "90deg", "-0.25rad" (bare numbers are radians).
double parse_angle(const std::string& text);
// Parses "param:start:stop:steps" with angle syntax for start/stop.
SweepSpec parse_sweep(const std::string& text);

struct ScenarioConfig {
    Scenario scenario = Scenario::balanced_vector;
    PoincareAngles angles{};
    double delta = 1.5707963267948966;
    std::optional<double> gamma;
    GridSpec grid{};
    std::optional<SweepSpec> sweep;
    std::string output_dir = ".";
    double amplitude = 1.0;
    Port image_port = Port::c;
    bool write_pgm = true;
    bool write_png = false;
    bool write_csv = true;
    bool write_ellipses = false;
    int profile_samples = 256;
};

// Builds a configuration from string key/value pairs (config file contents
// or command-line flags).  Named scenarios pre-fill their angles first:
//   balanced-vector: theta = pi/2, phi = pi,    alpha = pi/2
//   lg-input:        theta = pi/2, phi = -pi/2
// Later keys override earlier ones and pre-filled values.  Unknown keys or
// malformed values throw std::invalid_argument.
ScenarioConfig build_config(const std::vector<std::pair<std::string, std::string>>& kv);

// Reads "key = value" lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> load_config_file(const std::string& path);

// Azimuthal profile: power at (r = w0, phi_report_k) for K uniform reported
// azimuths in [-pi, pi); radial profile: power at (r_k, phi_report = 0).
struct Profile {
    std::vector<double> phi_report;   // azimuthal block
    std::vector<double> azimuthal_power;
    std::vector<double> r_over_w0;    // radial block
    std::vector<double> radial_power;
};

// Least-squares fit of p ~ c0 + amplitude * sin(2 phi + phase) on a uniform
// azimuth grid.
struct HarmonicFit {
    double mean = 0.0;
    double amplitude = 0.0;
    double phase = 0.0; // in (-pi, pi]
};

HarmonicFit fit_second_harmonic(const std::vector<double>& phi,
                                const std::vector<double>& power);

// (max - min) / (max + min) over the azimuthal profile; 0 when the profile
// carries no power.
double modulation_depth(const std::vector<double>& power);

struct FrameMetrics {
    int index = 0;
    std::string parameter = "none";
    double value = 0.0;
    double p_max = 0.0;
    double power_port_c = 0.0;
    double power_port_d = 0.0;
    double modulation = 0.0;
    double fit_phase = 0.0;
    double fit_amplitude = 0.0;
    double rotation_from_first = 0.0; // pattern rotation (mod pi), from fit phase
    std::string image_file;
    std::string profile_file;
    std::string ellipse_file;
};

struct HomPoint {
    double delta = 0.0;
    double coincidence = 0.0;
    double bunching = 0.0;
};

struct RunReport {
    ScenarioConfig config;
    std::vector<FrameMetrics> frames;
    std::vector<HomPoint> hom;
    std::vector<std::string> files; // relative to output_dir, in emission order
    std::string report_file;        // relative path of the JSON report
};

// Per-delta coincidence/bunching table for a normalized input state.
std::vector<HomPoint> run_biphoton_sweep(const SpinOrbitAmplitudes& amps,
                                         const std::vector<double>& deltas);

// Renders every frame of the configuration into config.output_dir and
// writes the JSON report.  Throws std::invalid_argument on configuration
// errors and std::runtime_error on I/O failure.
RunReport run_scenario(const ScenarioConfig& config);

// The per-frame field pipeline used by run_scenario, exposed for tests:
// output-port field before the analyzer, at arbitrary (r, phi_field).
JonesVector scenario_port_field(const ScenarioConfig& config,
                                const PoincareAngles& angles, double delta,
                                Port port, double r, double phi_field);

} // namespace spinorbit
