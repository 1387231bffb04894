#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "resdyn/field.hpp"
#include "resdyn/oracle.hpp"
#include "resdyn/resonance.hpp"

namespace resdyn {

// Natural: inputs already in working units (c = 1).
// GaussianFromSI: inputs in SI (m, 1/m, C*m, s, m^3); converted to Gaussian
// cgs by the working_* accessors.
enum class UnitSystem { Natural, GaussianFromSI };

struct TimeGrid {
    double t_start = 0.0;
    double t_end = 1.0;
    int n_samples = 2;
};

// One JSON document drives every subcommand; see README for the schema.
// Fields are stored exactly as parsed; working_* accessors apply the unit
// conversion when units == GaussianFromSI.
struct RunConfig {
    AtomPairConfig atoms;
    DickeParity parity = DickeParity::Symmetric;
    CouplingMode mode = CouplingMode::Full;
    UnitSystem units = UnitSystem::Natural;
    TimeGrid time_grid;
    std::optional<GridSpec> grid;
    std::optional<double> alpha;
    std::optional<Vec3> probe_point;
    QuadratureSettings quadrature;
    bool quadrature_explicit = false;  // true when the document had a block
    std::optional<double> lifetime_hint;
    double lightcone_epsilon = 0.0;  // <= 0: default 1e-9 * R

    void validate() const;  // throws ConfigError

    AtomPairConfig working_atoms() const;
    double working_time(double t) const;
    double working_length(double x) const;
    std::optional<GridSpec> working_grid() const;
    std::optional<Vec3> working_probe_point() const;
    std::optional<double> working_alpha() const;
    std::optional<double> working_lifetime() const;
    double working_lightcone_epsilon() const;
    QuadratureSettings working_quadrature() const;
};

// Strict parser: unknown keys, wrong types, or violated invariants raise
// ConfigError naming the offending field.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);  // file, or "-" for stdin

nlohmann::json to_json(const RunConfig& cfg);

// Quadrature block shared by config files and the standalone settings file
// named by the RESDYN_QUADRATURE_FILE environment variable.
QuadratureSettings parse_quadrature_settings(const nlohmann::json& block, double k0);
nlohmann::json quadrature_to_json(const QuadratureSettings& settings);

}  // namespace resdyn
