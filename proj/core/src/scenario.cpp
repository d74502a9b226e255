#include "spinorbit/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "spinorbit/io.hpp"

namespace spinorbit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 1.5707963267948966;

double wrap_pm_pi(double x) {
    double y = std::fmod(x + kPi, 2.0 * kPi);
    if (y < 0.0) y += 2.0 * kPi;
    return y - kPi;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(s.substr(start));
            break;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

bool parse_bool(const std::string& value) {
    if (value == "1" || value == "true" || value == "on" || value == "yes") return true;
    if (value == "0" || value == "false" || value == "off" || value == "no") return false;
    throw std::invalid_argument("expected a boolean, got '" + value + "'");
}

int parse_int(const std::string& value) {
    std::size_t idx = 0;
    const int v = std::stoi(value, &idx);
    if (trim(value.substr(idx)) != "")
        throw std::invalid_argument("expected an integer, got '" + value + "'");
    return v;
}

double parse_number(const std::string& value) {
    std::size_t idx = 0;
    const double v = std::stod(value, &idx);
    if (trim(value.substr(idx)) != "")
        throw std::invalid_argument("expected a number, got '" + value + "'");
    return v;
}

std::vector<double> linspace(double start, double stop, int steps) {
    std::vector<double> values(steps);
    for (int i = 0; i < steps; ++i)
        values[i] = start + (stop - start) * static_cast<double>(i) / (steps - 1);
    return values;
}

bool is_single_input(Scenario s) {
    return s == Scenario::balanced_vector || s == Scenario::lg_input ||
           s == Scenario::custom;
}

DeltaSign sign_from_delta(double delta) {
    if (std::abs(delta - kHalfPi) < 1e-9) return DeltaSign::positive;
    if (std::abs(delta + kHalfPi) < 1e-9) return DeltaSign::negative;
    throw std::invalid_argument(
        "this scenario requires delta = +pi/2 or -pi/2 (got " + std::to_string(delta) + ")");
}

std::string frame_name(int index, const char* suffix) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "frame_%03d%s", index, suffix);
    return buf;
}

} // namespace

Scenario scenario_from_name(const std::string& name) {
    if (name == "balanced-vector") return Scenario::balanced_vector;
    if (name == "lg-input") return Scenario::lg_input;
    if (name == "dual-input") return Scenario::dual_input;
    if (name == "custom") return Scenario::custom;
    if (name == "biphoton-sweep") return Scenario::biphoton_sweep;
    throw std::invalid_argument("unknown scenario '" + name + "'");
}

std::string scenario_name(Scenario s) {
    switch (s) {
        case Scenario::balanced_vector: return "balanced-vector";
        case Scenario::lg_input: return "lg-input";
        case Scenario::dual_input: return "dual-input";
        case Scenario::custom: return "custom";
        case Scenario::biphoton_sweep: return "biphoton-sweep";
    }
    return "unknown";
}

double parse_angle(const std::string& text) {
    const std::string s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty angle");
    std::size_t idx = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &idx);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed angle '" + text + "'");
    }
    const std::string unit = trim(s.substr(idx));
    if (unit == "" || unit == "rad") return v;
    if (unit == "deg") return v * kPi / 180.0;
    throw std::invalid_argument("unknown angle unit '" + unit + "' in '" + text + "'");
}

SweepSpec parse_sweep(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 4)
        throw std::invalid_argument("sweep must be param:start:stop:steps, got '" + text + "'");

    SweepSpec spec;
    const std::string name = trim(parts[0]);
    if (name == "gamma") spec.parameter = SweepSpec::Param::gamma;
    else if (name == "beta") spec.parameter = SweepSpec::Param::beta;
    else if (name == "alpha") spec.parameter = SweepSpec::Param::alpha;
    else if (name == "delta") spec.parameter = SweepSpec::Param::delta;
    else throw std::invalid_argument("unknown sweep parameter '" + name + "'");

    spec.start = parse_angle(parts[1]);
    spec.stop = parse_angle(parts[2]);
    spec.steps = parse_int(trim(parts[3]));
    if (spec.steps < 2) throw std::invalid_argument("sweep needs at least 2 steps");
    return spec;
}

std::vector<std::pair<std::string, std::string>> load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);

    std::vector<std::pair<std::string, std::string>> kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": expected key = value");
        kv.emplace_back(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
    return kv;
}

ScenarioConfig build_config(const std::vector<std::pair<std::string, std::string>>& kv) {
    ScenarioConfig cfg;

    // The scenario choice decides the pre-filled angles, so resolve it first
    // regardless of where the key appears.
    for (const auto& [key, value] : kv)
        if (key == "scenario") cfg.scenario = scenario_from_name(value);

    switch (cfg.scenario) {
        case Scenario::balanced_vector:
        case Scenario::biphoton_sweep:
            cfg.angles = PoincareAngles{kHalfPi, kPi, kHalfPi, 0.0};
            break;
        case Scenario::lg_input:
            cfg.angles = PoincareAngles{kHalfPi, -kHalfPi, 0.0, 0.0};
            break;
        case Scenario::dual_input:
        case Scenario::custom:
            cfg.angles = PoincareAngles{};
            break;
    }
    cfg.delta = kHalfPi;

    for (const auto& [key, value] : kv) {
        if (key == "scenario") continue;
        if (key == "theta") cfg.angles.theta = parse_angle(value);
        else if (key == "phi") cfg.angles.phi = parse_angle(value);
        else if (key == "alpha") cfg.angles.alpha = parse_angle(value);
        else if (key == "beta") cfg.angles.beta = parse_angle(value);
        else if (key == "delta") cfg.delta = parse_angle(value);
        else if (key == "gamma") cfg.gamma = parse_angle(value);
        else if (key == "grid-size") cfg.grid.samples_per_axis = parse_int(value);
        else if (key == "half-extent") cfg.grid.half_extent = parse_number(value);
        else if (key == "w0") cfg.grid.waist_w0 = parse_number(value);
        else if (key == "out") cfg.output_dir = value;
        else if (key == "amplitude") cfg.amplitude = parse_number(value);
        else if (key == "sweep") cfg.sweep = parse_sweep(value);
        else if (key == "profile-samples") cfg.profile_samples = parse_int(value);
        else if (key == "ellipses") cfg.write_ellipses = parse_bool(value);
        else if (key == "port") {
            if (value == "c") cfg.image_port = Port::c;
            else if (value == "d") cfg.image_port = Port::d;
            else throw std::invalid_argument("port must be 'c' or 'd'");
        } else if (key == "format") {
            cfg.write_pgm = cfg.write_png = cfg.write_csv = false;
            for (const std::string& raw : split(value, ',')) {
                const std::string f = trim(raw);
                if (f == "pgm") cfg.write_pgm = true;
                else if (f == "png") cfg.write_png = true;
                else if (f == "csv") cfg.write_csv = true;
                else if (f == "json") /* always written */;
                else throw std::invalid_argument("unknown format '" + f + "'");
            }
        } else {
            throw std::invalid_argument("unknown option '" + key + "'");
        }
    }

    if (cfg.profile_samples < 8)
        throw std::invalid_argument("profile-samples must be >= 8");
    if (!std::isfinite(cfg.amplitude) || cfg.amplitude < 0.0)
        throw std::invalid_argument("amplitude must be finite and >= 0");
    return cfg;
}

HarmonicFit fit_second_harmonic(const std::vector<double>& phi,
                                const std::vector<double>& power) {
    if (phi.size() != power.size() || phi.size() < 8)
        throw std::invalid_argument("fit_second_harmonic: need matching vectors, >= 8 samples");

    // Uniform azimuth grid makes {1, sin 2phi, cos 2phi} orthogonal, so the
    // least-squares solution is three projections.
    const double n = static_cast<double>(phi.size());
    double mean = 0.0, cs = 0.0, cc = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        mean += power[i];
        cs += power[i] * std::sin(2.0 * phi[i]);
        cc += power[i] * std::cos(2.0 * phi[i]);
    }
    mean /= n;
    cs *= 2.0 / n;
    cc *= 2.0 / n;

    HarmonicFit fit;
    fit.mean = mean;
    fit.amplitude = std::hypot(cs, cc);
    fit.phase = (cs == 0.0 && cc == 0.0) ? 0.0 : std::atan2(cc, cs);
    return fit;
}

double modulation_depth(const std::vector<double>& power) {
    if (power.empty()) return 0.0;
    const auto [lo, hi] = std::minmax_element(power.begin(), power.end());
    const double sum = *hi + *lo;
    return sum > 0.0 ? (*hi - *lo) / sum : 0.0;
}

JonesVector scenario_port_field(const ScenarioConfig& config,
                                const PoincareAngles& angles, double delta,
                                Port port, double r, double phi_field) {
    const double w0 = config.grid.waist_w0;
    const cplx i(0.0, 1.0);

    if (config.scenario == Scenario::dual_input) {
        const double c = std::cos(delta / 2.0);
        const double s = std::sin(delta / 2.0);
        const DeltaSign mode = port == Port::c ? DeltaSign::positive : DeltaSign::negative;
        const cplx pref = port == Port::c ? i * (c + s) : i * (c - s);
        const JonesVector psi =
            psi_parameterized(angles, mode, r, phi_field, w0, config.amplitude);
        return {pref * psi.ex, pref * psi.ey};
    }

    if (is_single_input(config.scenario)) {
        const DeltaSign sign = sign_from_delta(delta);
        const double pm = sign_factor(sign);
        const cplx pref = (port == Port::c ? pm : 1.0) * i / std::sqrt(2.0);
        const JonesVector psi =
            psi_parameterized(angles, sign, r, phi_field, w0, config.amplitude);
        return {pref * psi.ex, pref * psi.ey};
    }

    throw std::invalid_argument("scenario_port_field: scenario renders no field");
}

std::vector<HomPoint> run_biphoton_sweep(const SpinOrbitAmplitudes& amps,
                                         const std::vector<double>& deltas) {
    if (deltas.empty())
        throw std::invalid_argument("run_biphoton_sweep: empty delta grid");

    const OperatorPolynomial input = biphoton_input(amps);
    std::vector<HomPoint> points;
    points.reserve(deltas.size());
    for (double d : deltas) {
        const OperatorPolynomial out = substitute_output_operators(input, d);
        HomPoint p;
        p.delta = d;
        p.coincidence = coincidence_probability(out);
        p.bunching = bunching_probability(out);
        points.push_back(p);
    }
    return points;
}

namespace {

struct FramePipeline {
    PoincareAngles angles;
    double delta = kHalfPi;
    std::optional<double> gamma;
};

// Analyzed power at an arbitrary point of the imaged port.
double frame_power(const ScenarioConfig& cfg, const FramePipeline& f, Port port,
                   double r, double phi_field) {
    JonesVector v = scenario_port_field(cfg, f.angles, f.delta, port, r, phi_field);
    if (f.gamma) v = apply_polarizer(v, *f.gamma);
    return power_density(v);
}

Profile compute_profile(const ScenarioConfig& cfg, const FramePipeline& f, Port port) {
    Profile profile;
    const int k = cfg.profile_samples;
    const double w0 = cfg.grid.waist_w0;

    profile.phi_report.resize(k);
    profile.azimuthal_power.resize(k);
    for (int j = 0; j < k; ++j) {
        const double phi_report = -kPi + 2.0 * kPi * static_cast<double>(j) / k;
        profile.phi_report[j] = phi_report;
        profile.azimuthal_power[j] = frame_power(cfg, f, port, w0, phi_report + kHalfPi);
    }

    const int radial = cfg.profile_samples / 2 + 1;
    profile.r_over_w0.resize(radial);
    profile.radial_power.resize(radial);
    for (int j = 0; j < radial; ++j) {
        const double r = cfg.grid.half_extent * static_cast<double>(j) / (radial - 1);
        profile.r_over_w0[j] = r / w0;
        // Reported azimuth 0 lies at field azimuth pi/2.
        profile.radial_power[j] = frame_power(cfg, f, port, r, kHalfPi);
    }
    return profile;
}

} // namespace

RunReport run_scenario(const ScenarioConfig& config) {
    config.grid.validate();
    if (config.sweep && config.sweep->steps < 2)
        throw std::invalid_argument("sweep needs at least 2 steps");

    if (config.scenario == Scenario::biphoton_sweep) {
        if (config.sweep && config.sweep->parameter != SweepSpec::Param::delta)
            throw std::invalid_argument("biphoton-sweep sweeps delta only");
    } else if (is_single_input(config.scenario)) {
        sign_from_delta(config.delta); // validates +-pi/2
        if (config.sweep && config.sweep->parameter == SweepSpec::Param::delta)
            throw std::invalid_argument(
                "delta sweeps apply to dual-input or biphoton-sweep scenarios");
    }

    RunReport report;
    report.config = config;

    const std::filesystem::path out_dir(config.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory: " + config.output_dir);

    auto emit = [&](const std::string& name, const std::string& bytes) {
        write_file((out_dir / name).string(), bytes);
        report.files.push_back(name);
    };

    if (config.scenario == Scenario::biphoton_sweep) {
        const SweepSpec sweep =
            config.sweep.value_or(SweepSpec{SweepSpec::Param::delta, 0.0, kPi, 65});
        const SpinOrbitAmplitudes amps = product_amplitudes(config.angles, 1.0);
        report.hom = run_biphoton_sweep(amps, linspace(sweep.start, sweep.stop, sweep.steps));
        emit("hom.csv", encode_hom_csv(report.hom));
        report.report_file = "report.json";
        write_file((out_dir / report.report_file).string(), encode_report_json(report));
        report.files.push_back(report.report_file);
        return report;
    }

    struct FrameValue {
        std::string parameter = "none";
        double value = 0.0;
    };
    std::vector<FrameValue> frame_values;
    if (config.sweep) {
        const char* names[] = {"gamma", "beta", "alpha", "delta"};
        const std::string pname = names[static_cast<int>(config.sweep->parameter)];
        for (double v : linspace(config.sweep->start, config.sweep->stop, config.sweep->steps))
            frame_values.push_back({pname, v});
    } else {
        frame_values.push_back({});
    }

    double first_phase = 0.0;
    for (std::size_t fi = 0; fi < frame_values.size(); ++fi) {
        FramePipeline pipe{config.angles, config.delta, config.gamma};
        if (config.sweep) {
            const double v = frame_values[fi].value;
            switch (config.sweep->parameter) {
                case SweepSpec::Param::gamma: pipe.gamma = v; break;
                case SweepSpec::Param::beta: pipe.angles.beta = v; break;
                case SweepSpec::Param::alpha: pipe.angles.alpha = v; break;
                case SweepSpec::Param::delta: pipe.delta = v; break;
            }
        }

        const int index = static_cast<int>(fi);
        FrameMetrics metrics;
        metrics.index = index;
        metrics.parameter = frame_values[fi].parameter;
        metrics.value = frame_values[fi].value;

        // Analyzed image of the selected port.
        const FieldGrid raw = sample_field(config.grid, [&](double r, double phi) {
            return scenario_port_field(config, pipe.angles, pipe.delta, config.image_port,
                                       r, phi);
        });
        const FieldGrid imaged = pipe.gamma ? apply_polarizer(raw, *pipe.gamma) : raw;

        std::vector<double> power(imaged.values.size());
        double p_max = 0.0;
        for (std::size_t i = 0; i < imaged.values.size(); ++i) {
            power[i] = power_density(imaged.values[i]);
            p_max = std::max(p_max, power[i]);
        }
        metrics.p_max = p_max;

        // Per-port powers before the analyzer.
        const Port other = config.image_port == Port::c ? Port::d : Port::c;
        const FieldGrid raw_other = sample_field(config.grid, [&](double r, double phi) {
            return scenario_port_field(config, pipe.angles, pipe.delta, other, r, phi);
        });
        const double power_imaged = raw.total_power();
        const double power_other = raw_other.total_power();
        metrics.power_port_c = config.image_port == Port::c ? power_imaged : power_other;
        metrics.power_port_d = config.image_port == Port::c ? power_other : power_imaged;

        const Profile profile = compute_profile(config, pipe, config.image_port);
        metrics.modulation = modulation_depth(profile.azimuthal_power);
        const HarmonicFit fit =
            fit_second_harmonic(profile.phi_report, profile.azimuthal_power);
        metrics.fit_amplitude = fit.amplitude;
        metrics.fit_phase = fit.phase;
        if (fi == 0) first_phase = fit.phase;
        metrics.rotation_from_first = wrap_pm_pi(fit.phase - first_phase) / 2.0;

        const int n = config.grid.samples_per_axis;
        const std::vector<std::uint8_t> pixels = quantize_power(power, p_max);
        if (config.write_pgm) {
            metrics.image_file = frame_name(index, ".pgm");
            emit(metrics.image_file, encode_pgm(n, n, pixels));
        }
        if (config.write_png) {
            const std::string name = frame_name(index, ".png");
            if (metrics.image_file.empty()) metrics.image_file = name;
            emit(name, encode_png_gray8(n, n, pixels));
        }
        if (config.write_csv) {
            metrics.profile_file = frame_name(index, "_profile.csv");
            emit(metrics.profile_file, encode_profile_csv(profile));
        }
        if (config.write_ellipses) {
            metrics.ellipse_file = frame_name(index, "_ellipses.csv");
            const int stride = std::max(1, n / 32);
            emit(metrics.ellipse_file, encode_ellipse_csv(ellipse_map(raw), stride));
        }

        report.frames.push_back(metrics);
    }

    report.report_file = "report.json";
    write_file((out_dir / report.report_file).string(), encode_report_json(report));
    report.files.push_back(report.report_file);
    return report;
}

} // namespace spinorbit
