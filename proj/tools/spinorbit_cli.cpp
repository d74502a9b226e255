// Command-line front end for the spin-orbit interferometer simulator.
//
// Subcommands:
//   render    one frame of a scenario (image + profiles + JSON report)
//   sweep     a parameter sweep (one frame per value)
//   hom       two-photon coincidence vs internal phase
//   selftest  fast invariant battery, prints one PASS/FAIL line per check
//
// Angles accept an explicit unit suffix ("90deg", "1.57rad"); bare numbers
// are radians.  The polarizer angle gamma is measured from the vertical,
// anticlockwise as viewed from the beam source.  Images are the camera view
// of the beam; the reported azimuth phi runs from the vertical axis toward
// the image +x direction.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "spinorbit/fock.hpp"
#include "spinorbit/interferometer.hpp"
#include "spinorbit/io.hpp"
#include "spinorbit/polarization.hpp"
#include "spinorbit/scenario.hpp"

namespace {

using namespace spinorbit;

constexpr double kPi = 3.14159265358979323846;

struct FlagSet {
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> kv;
};

void add_common_flags(CLI::App* cmd, FlagSet& flags) {
    cmd->add_option("--config", flags.config_path, "key = value configuration file");

    auto capture = [&flags](const std::string& key) {
        return [&flags, key](const std::string& value) { flags.kv.emplace_back(key, value); };
    };
    cmd->add_option_function<std::string>("--scenario", capture("scenario"),
                                          "balanced-vector | lg-input | dual-input | custom | biphoton-sweep");
    cmd->add_option_function<std::string>("--theta", capture("theta"), "orbital polar angle");
    cmd->add_option_function<std::string>("--phi", capture("phi"), "orbital azimuthal phase");
    cmd->add_option_function<std::string>("--alpha", capture("alpha"), "spin polar angle");
    cmd->add_option_function<std::string>("--beta", capture("beta"), "spin retardance phase");
    cmd->add_option_function<std::string>("--delta", capture("delta"), "internal interferometer phase");
    cmd->add_option_function<std::string>("--gamma", capture("gamma"), "analyzer angle from vertical");
    cmd->add_option_function<std::string>("--grid-size", capture("grid-size"), "samples per axis (>= 16)");
    cmd->add_option_function<std::string>("--half-extent", capture("half-extent"), "grid half extent in w0 units");
    cmd->add_option_function<std::string>("--w0", capture("w0"), "beam radius");
    cmd->add_option_function<std::string>("--amplitude", capture("amplitude"), "classical field amplitude E");
    cmd->add_option_function<std::string>("--out", capture("out"), "output directory");
    cmd->add_option_function<std::string>("--format", capture("format"), "pgm,png,csv,json (comma list)");
    cmd->add_option_function<std::string>("--sweep", capture("sweep"), "param:start:stop:steps");
    cmd->add_option_function<std::string>("--port", capture("port"), "imaged output port, c or d");
    cmd->add_option_function<std::string>("--ellipses", capture("ellipses"), "emit polarization-ellipse maps");
    cmd->add_option_function<std::string>("--profile-samples", capture("profile-samples"),
                                          "azimuthal profile sample count");
}

ScenarioConfig config_from_flags(const FlagSet& flags) {
    std::vector<std::pair<std::string, std::string>> kv;
    if (!flags.config_path.empty()) kv = load_config_file(flags.config_path);
    kv.insert(kv.end(), flags.kv.begin(), flags.kv.end());
    return build_config(kv);
}

int run_report_command(const FlagSet& flags, bool expect_sweep, bool force_hom) {
    ScenarioConfig cfg = config_from_flags(flags);
    if (force_hom) cfg.scenario = Scenario::biphoton_sweep;
    if (expect_sweep && !cfg.sweep && cfg.scenario != Scenario::biphoton_sweep)
        throw std::invalid_argument("sweep subcommand needs --sweep param:start:stop:steps");
    if (!expect_sweep && !force_hom) cfg.sweep.reset();

    const RunReport report = run_scenario(cfg);
    if (!report.hom.empty()) {
        double min_c = 1.0, at = 0.0;
        for (const HomPoint& p : report.hom) {
            if (p.coincidence < min_c) {
                min_c = p.coincidence;
                at = p.delta;
            }
        }
        std::printf("hom sweep: %zu points, min coincidence %.3e at delta %.6f rad\n",
                    report.hom.size(), min_c, at);
    } else {
        std::printf("%s: %zu frame(s), %zu file(s)\n", scenario_name(cfg.scenario).c_str(),
                    report.frames.size(), report.files.size());
    }
    std::printf("report: %s\n", report.report_file.c_str());
    return 0;
}

// --- selftest ---------------------------------------------------------------

double det_uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

PoincareAngles random_angles(std::mt19937_64& rng) {
    return {det_uniform(rng, 0.0, kPi), det_uniform(rng, -kPi, kPi),
            det_uniform(rng, 0.0, kPi), det_uniform(rng, -kPi, kPi)};
}

struct SelftestResult {
    int failures = 0;
    void report(const char* name, double err, double tol) {
        const bool ok = err < tol;
        if (!ok) ++failures;
        std::printf("[%s] %-40s max_err=%.3e  tol=%.0e\n", ok ? "PASS" : "FAIL", name, err,
                    tol);
    }
};

int run_selftest() {
    SelftestResult result;
    std::mt19937_64 rng(0x5eed5eedULL);

    {
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const double delta = det_uniform(rng, -2.0 * kPi, 2.0 * kPi);
            for (BasisModeIndex idx : {BasisModeIndex{0, 0}, BasisModeIndex{0, 1}}) {
                const TransferMatrix u = transfer_matrix(idx, delta);
                for (int i = 0; i < 2; ++i) {
                    for (int j = 0; j < 2; ++j) {
                        cplx acc{};
                        for (int k = 0; k < 2; ++k)
                            acc += std::conj(u.at(k, i)) * u.at(k, j);
                        if (i == j) acc -= 1.0;
                        worst = std::max(worst, std::abs(acc));
                    }
                }
            }
        }
        result.report("transfer-matrix unitarity", worst, 1e-12);
    }
    {
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            PortPair in;
            for (BasisModeIndex idx : BasisModeIndex::all()) {
                in.first.at(idx) = cplx(det_uniform(rng, -1, 1), det_uniform(rng, -1, 1));
                in.second.at(idx) = cplx(det_uniform(rng, -1, 1), det_uniform(rng, -1, 1));
            }
            const double delta = det_uniform(rng, -kPi, kPi);
            const PortPair out = propagate(in, delta);
            worst = std::max(worst, std::abs(out.total_power() - in.total_power()));
        }
        result.report("propagation power conservation", worst, 1e-12);
    }
    {
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const SpinOrbitAmplitudes amps = product_amplitudes(random_angles(rng), 1.0);
            const OperatorPolynomial input = biphoton_input(amps);
            for (DeltaSign sign : {DeltaSign::positive, DeltaSign::negative}) {
                const OperatorPolynomial out =
                    substitute_output_operators(input, delta_value(sign));
                worst = std::max(worst, coincidence_probability(out));
                worst = std::max(worst,
                                 max_aligned_difference(out, hom_output_state(amps, sign)));
            }
        }
        result.report("hom suppression and closed form", worst, 1e-12);
    }
    {
        SpinOrbitAmplitudes e00_only;
        e00_only.e00 = 1.0;
        const OperatorPolynomial input = biphoton_input(e00_only);
        double worst = 0.0;
        for (int i = 0; i < 64; ++i) {
            const double delta = -kPi + 2.0 * kPi * i / 64.0;
            const double c =
                coincidence_probability(substitute_output_operators(input, delta));
            worst = std::max(worst, std::abs(c - std::cos(delta) * std::cos(delta)));
        }
        result.report("single-mode coincidence cos^2 law", worst, 1e-12);
    }
    {
        double worst = 0.0;
        for (int set = 0; set < 10; ++set) {
            const PoincareAngles angles = random_angles(rng);
            const SpinOrbitAmplitudes amps = product_amplitudes(angles, 1.0);
            for (int pt = 0; pt < 200; ++pt) {
                const double r = det_uniform(rng, 0.0, 4.0);
                const double phi = det_uniform(rng, -kPi, kPi);
                for (DeltaSign sign : {DeltaSign::positive, DeltaSign::negative}) {
                    const JonesVector a = psi_parameterized(angles, sign, r, phi, 1.0, 1.0);
                    const JonesVector b = psi_from_basis(amps, sign, r, phi, 1.0);
                    worst = std::max({worst, std::abs(a.ex - b.ex), std::abs(a.ey - b.ey)});
                }
            }
        }
        result.report("mode-function dual derivation", worst, 1e-10);
    }
    {
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const double gamma = det_uniform(rng, 0.0, kPi);
            const double beta = det_uniform(rng, -kPi, kPi);
            const SpinOrbitAmplitudes amps =
                product_amplitudes({kPi / 2.0, kPi, kPi / 2.0, beta}, 1.0);
            for (int pt = 0; pt < 50; ++pt) {
                const double r = det_uniform(rng, 0.0, 4.0);
                const double phi = det_uniform(rng, -kPi, kPi);
                JonesVector v = psi_from_basis(amps, DeltaSign::positive, r, phi, 1.0);
                const cplx pref = cplx(0.0, 1.0) / std::sqrt(2.0);
                v.ex *= pref;
                v.ey *= pref;
                const double pipeline = power_density(apply_polarizer(v, gamma));
                const double closed =
                    polarized_power(gamma, beta, DeltaSign::positive, r, phi, 1.0, 1.0);
                worst = std::max(worst, std::abs(pipeline - closed));
            }
        }
        result.report("polarized power formula vs pipeline", worst, 1e-10);
    }
    {
        const GridSpec spec{4.0, 257, 1.0};
        const FieldGrid grid = sample_field(spec, [](double r, double phi) {
            return basis_field({0, 0}, r, phi, 1.0);
        });
        result.report("mode normalization quadrature", std::abs(grid.total_power() - 1.0),
                      1e-4);
    }

    std::printf("selftest: %d failure(s)\n", result.failures);
    return result.failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spin-orbit vector-mode interferometer simulator"};
    app.require_subcommand(1);

    FlagSet render_flags, sweep_flags, hom_flags;
    CLI::App* render = app.add_subcommand("render", "render one scenario frame");
    add_common_flags(render, render_flags);
    CLI::App* sweep = app.add_subcommand("sweep", "render a parameter sweep");
    add_common_flags(sweep, sweep_flags);
    CLI::App* hom = app.add_subcommand("hom", "two-photon coincidence vs delta");
    add_common_flags(hom, hom_flags);
    CLI::App* selftest = app.add_subcommand("selftest", "run the invariant battery");

    CLI11_PARSE(app, argc, argv);

    try {
        if (render->parsed()) return run_report_command(render_flags, false, false);
        if (sweep->parsed()) return run_report_command(sweep_flags, true, false);
        if (hom->parsed()) return run_report_command(hom_flags, false, true);
        if (selftest->parsed()) return run_selftest();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
