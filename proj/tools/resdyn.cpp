#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "resdyn/config.hpp"
#include "resdyn/csv.hpp"
#include "resdyn/errors.hpp"
#include "resdyn/field.hpp"
#include "resdyn/oracle.hpp"
#include "resdyn/resonance.hpp"
#include "resdyn/specfun.hpp"

namespace {

using nlohmann::json;
using namespace resdyn;

constexpr double kPi = 3.141592653589793238;

struct CliOptions {
    std::string config_path;
    std::string output_path = "-";
    std::optional<std::string> parity;
    std::optional<std::string> mode;
    std::optional<double> t_start;
    std::optional<double> t_end;
    std::optional<int> n_samples;
    std::optional<double> alpha;
};

std::string read_all(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig load_with_overrides(const CliOptions& opt) {
    json doc;
    try {
        doc = json::parse(read_all(opt.config_path));
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: JSON parse error: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: top-level document must be a JSON object");
    if (opt.parity) doc["parity"] = *opt.parity;
    if (opt.mode) doc["mode"] = *opt.mode;
    if (opt.t_start) doc["time_grid"]["t_start"] = *opt.t_start;
    if (opt.t_end) doc["time_grid"]["t_end"] = *opt.t_end;
    if (opt.n_samples) doc["time_grid"]["n_samples"] = *opt.n_samples;
    if (opt.alpha) doc["alpha"] = *opt.alpha;
    return parse_run_config(doc);
}

void write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("output: cannot open '" + path + "'");
    out << text;
    if (!out) throw ConfigError("output: write to '" + path + "' failed");
}

int cmd_trace(const CliOptions& opt) {
    const RunConfig cfg = load_with_overrides(opt);
    const AtomPairConfig atoms = cfg.working_atoms();
    const EnergyTrace trace = make_energy_trace(
        atoms, cfg.parity, cfg.working_time(cfg.time_grid.t_start),
        cfg.working_time(cfg.time_grid.t_end), cfg.time_grid.n_samples, cfg.working_lifetime(),
        cfg.working_lightcone_epsilon());
    if (trace.lifetime_warning)
        std::cerr << "warning: t_end exceeds 10% of lifetime_hint; the perturbative window may "
                     "not apply\n";
    if (trace.skipped_in_band > 0)
        std::cerr << "note: " << trace.skipped_in_band
                  << " sample(s) inside the light-cone guard band were skipped\n";

    const double stationary = delta_e_stationary(atoms, cfg.parity);
    std::string out = "t,delta_e_rwa,delta_e_cr,delta_e_total,delta_e_stationary\n";
    for (size_t i = 0; i < trace.times.size(); ++i) {
        out += format17(trace.times[i]);
        out += ',';
        out += format17(trace.rwa[i]);
        out += ',';
        out += format17(trace.cr[i]);
        out += ',';
        out += format17(trace.total[i]);
        out += ',';
        out += format17(stationary);
        out += '\n';
    }
    write_output(opt.output_path, out);
    return 0;
}

int cmd_map(const CliOptions& opt) {
    const RunConfig cfg = load_with_overrides(opt);
    const auto grid = cfg.working_grid();
    if (!grid) throw ConfigError("map: config must provide a 'grid' block");
    const double t = cfg.working_time(cfg.time_grid.t_end);
    const auto samples = field_map(*grid, t, cfg.working_atoms(), cfg.parity);

    std::string out = "x,y,z,h_A,h_B,h_AB,total,inside_cone_A,inside_cone_B,flag\n";
    for (const auto& s : samples) {
        out += format17(s.point.x);
        out += ',';
        out += format17(s.point.y);
        out += ',';
        out += format17(s.point.z);
        out += ',';
        out += format17(s.h_A);
        out += ',';
        out += format17(s.h_B);
        out += ',';
        out += format17(s.h_AB);
        out += ',';
        out += format17(s.total);
        out += ',';
        out += s.inside_cone_A ? '1' : '0';
        out += ',';
        out += s.inside_cone_B ? '1' : '0';
        out += ',';
        out += std::to_string(static_cast<int>(s.flag));
        out += '\n';
    }
    write_output(opt.output_path, out);
    return 0;
}

int cmd_probe(const CliOptions& opt) {
    const RunConfig cfg = load_with_overrides(opt);
    const auto point = cfg.working_probe_point();
    const auto alpha = cfg.working_alpha();
    if (!point) throw ConfigError("probe: config must provide 'probe_point'");
    if (!alpha) throw ConfigError("probe: config must provide 'alpha'");
    const AtomPairConfig atoms = cfg.working_atoms();
    const double t = cfg.working_time(cfg.time_grid.t_end);

    const FieldMapSample density = total_density(*point, t, atoms, cfg.parity);
    const double energy = probe_energy(*point, *alpha, t, atoms, cfg.parity);
    const Vec3 force = probe_force(*point, *alpha, t, atoms, cfg.parity);

    json doc;
    doc["point"] = {point->x, point->y, point->z};
    doc["t"] = t;
    doc["alpha"] = *alpha;
    doc["probe_energy"] = energy;
    doc["probe_force"] = {force.x, force.y, force.z};
    doc["density"] = {{"h_A", density.h_A},
                      {"h_B", density.h_B},
                      {"h_AB", density.h_AB},
                      {"total", density.total},
                      {"inside_cone_A", density.inside_cone_A},
                      {"inside_cone_B", density.inside_cone_B}};
    write_output(opt.output_path, doc.dump(2) + "\n");
    return 0;
}

std::string short_num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return std::string(buf);
}

json make_check(const std::string& name, double value, double target, double tolerance) {
    const double err = std::fabs(value - target);
    return json{{"name", name},      {"value", value},         {"target", target},
                {"abs_error", err},  {"tolerance", tolerance}, {"pass", err <= tolerance}};
}

int cmd_oracle_check(const CliOptions& opt) {
    const RunConfig cfg = load_with_overrides(opt);
    const AtomPairConfig atoms = cfg.working_atoms();
    const QuadratureSettings st = cfg.working_quadrature();
    const double R = atoms.R();
    const double k0 = atoms.k0;
    const double i_target = kPi * std::cos(k0 * R);

    json checks = json::array();
    checks.push_back(make_check("integral_I1", integral_I1(R, k0, st), i_target,
                                std::max(1e-4 * std::fabs(i_target), 1e-3)));
    checks.push_back(make_check("integral_I2_precone", integral_I2(R, k0, 0.5 * R, st), i_target,
                                std::max(1e-4 * std::fabs(i_target), 1e-3)));
    checks.push_back(make_check("integral_I2_postcone", integral_I2(R, k0, 2.0 * R, st), 0.0,
                                1e-3));

    const double stationary = delta_e_stationary(atoms, cfg.parity);
    for (const double frac : {0.3, 0.7, 1.5, 3.0}) {
        const double t = frac * R;
        const double closed = delta_e(t, atoms, cfg.parity, cfg.mode);
        const double quad = delta_e_quadrature(t, atoms, cfg.parity, cfg.mode, st);
        const double tol = std::max({1e-4 * std::fabs(closed), 1e-3 * std::fabs(stationary),
                                     1e-12});
        checks.push_back(
            make_check("delta_e_t_over_R_" + short_num(frac), quad, closed, tol));
    }

    bool all_pass = true;
    for (const auto& c : checks) all_pass = all_pass && c.at("pass").get<bool>();

    json doc;
    doc["checks"] = checks;
    doc["all_pass"] = all_pass;
    doc["R"] = R;
    doc["k0"] = k0;
    doc["settings"] = quadrature_to_json(st);
    write_output(opt.output_path, doc.dump(2) + "\n");
    return all_pass ? 0 : 3;
}

int cmd_specfun_check(const CliOptions& opt) {
    json checks = json::array();

    // pinned high-precision anchors
    const struct {
        double x, si, ci;
    } anchors[] = {
        {1.0, 0.94608307036718301, 0.33740392290096813},
        {2.0, 1.6054129768026948, 0.42298082877486500},
        {kPi, 1.8519370519824662, 0.073667912046425525},
        {5.0, 1.5499312449446741, -0.19002974965664388},
        {20.0, 1.5482417010434398, 0.044419820845353317},
        {50.0, 1.5516170724859359, -0.0056283863241163054},
        {1000.0, 1.5702331219687712, 0.00082631551109068228},
    };
    for (const auto& a : anchors) {
        checks.push_back(
            make_check("Si_anchor_" + short_num(a.x), sin_integral(a.x).value, a.si, 1e-12));
        checks.push_back(
            make_check("Ci_anchor_" + short_num(a.x), cos_integral(a.x).value, a.ci, 1e-12));
    }

    // derivative identities: Si' = sin(x)/x, Ci' = cos(x)/x
    const double h = 1e-6;
    for (const double x : {0.5, 1.0, 5.0, 20.0, 100.0}) {
        const double dsi = (sin_integral(x + h).value - sin_integral(x - h).value) / (2.0 * h);
        const double dci = (cos_integral(x + h).value - cos_integral(x - h).value) / (2.0 * h);
        checks.push_back(make_check("Si_derivative_" + short_num(x), dsi, std::sin(x) / x, 1e-6));
        checks.push_back(make_check("Ci_derivative_" + short_num(x), dci, std::cos(x) / x, 1e-6));
    }

    // continuity across the internal evaluation-regime switches: the jump
    // between the two sides must match the analytic slope, not exceed it
    for (const double x0 : {16.0, 40.0}) {
        const double d = x0 * 1e-10;
        const double si_jump =
            sin_integral(x0 + d).value - sin_integral(x0 - d).value;
        const double ci_jump =
            cos_integral(x0 + d).value - cos_integral(x0 - d).value;
        checks.push_back(make_check("Si_crossover_" + short_num(x0), si_jump,
                                    2.0 * d * std::sin(x0) / x0, 1e-11));
        checks.push_back(make_check("Ci_crossover_" + short_num(x0), ci_jump,
                                    2.0 * d * std::cos(x0) / x0, 1e-11));
    }

    // reported error estimates stay within spec over the working range
    double worst_est = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double x = std::pow(10.0, -6.0 + 11.0 * i / 199.0);
        worst_est = std::max(worst_est, sin_integral(x).est_error);
        worst_est = std::max(worst_est, cos_integral(x).est_error);
        worst_est = std::max(worst_est, shifted_sin_integral(x).est_error);
    }
    checks.push_back(make_check("max_est_error_log_grid", worst_est, 0.0, 1e-12));

    // shifted form: si(x) = Si(x) - pi/2 on both signs of x
    const double pi_half = 1.5707963267948966;
    for (const double x : {0.7, 12.0, 33.0}) {
        checks.push_back(make_check("shifted_identity_" + short_num(x),
                                    shifted_sin_integral(x).value,
                                    sin_integral(x).value - pi_half, 1e-15));
        checks.push_back(make_check("shifted_identity_neg_" + short_num(x),
                                    shifted_sin_integral(-x).value,
                                    -sin_integral(x).value - pi_half, 1e-15));
    }

    bool all_pass = true;
    for (const auto& c : checks) all_pass = all_pass && c.at("pass").get<bool>();

    json doc;
    doc["checks"] = checks;
    doc["all_pass"] = all_pass;
    write_output(opt.output_path, doc.dump(2) + "\n");
    return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamical resonance interaction of an entangled two-atom system"};
    app.require_subcommand(1);

    CliOptions opt;
    const auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* c = sub->add_option("-c,--config", opt.config_path,
                                  "JSON config file ('-' reads stdin)");
        if (needs_config) c->required();
        sub->add_option("-o,--output", opt.output_path, "output file ('-' writes stdout)");
        sub->add_option("--parity", opt.parity, "override: symmetric|antisymmetric");
        sub->add_option("--mode", opt.mode, "override: full|rwa");
        sub->add_option("--t-start", opt.t_start, "override time_grid.t_start");
        sub->add_option("--t-end", opt.t_end, "override time_grid.t_end");
        sub->add_option("--n-samples", opt.n_samples, "override time_grid.n_samples");
        sub->add_option("--alpha", opt.alpha, "override probe polarizability");
    };

    CLI::App* trace = app.add_subcommand("trace", "time series of the interaction energy (CSV)");
    add_common(trace, true);
    CLI::App* map = app.add_subcommand("map", "planar field-energy-density map (CSV)");
    add_common(map, true);
    CLI::App* probe =
        app.add_subcommand("probe", "probe energy and force on a third atom (JSON)");
    add_common(probe, true);
    CLI::App* oracle = app.add_subcommand(
        "oracle-check", "compare quadrature oracle against closed forms (JSON)");
    add_common(oracle, true);
    CLI::App* specfun =
        app.add_subcommand("specfun-check", "special-function self-diagnostics (JSON)");
    add_common(specfun, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (trace->parsed()) return cmd_trace(opt);
        if (map->parsed()) return cmd_map(opt);
        if (probe->parsed()) return cmd_probe(opt);
        if (oracle->parsed()) return cmd_oracle_check(opt);
        if (specfun->parsed()) return cmd_specfun_check(opt);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
