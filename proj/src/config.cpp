#include "resdyn/config.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "resdyn/errors.hpp"
#include "resdyn/units.hpp"

namespace resdyn {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ConfigError("config field '" + field + "': " + what);
}

void check_keys(const json& obj, const std::string& ctx,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* k : allowed)
            if (item.key() == k) {
                ok = true;
                break;
            }
        if (!ok) throw ConfigError("config: unknown key '" + item.key() + "' in " + ctx);
    }
}

const json& require(const json& obj, const std::string& ctx, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(ctx + "." + key, "is required");
    return *it;
}

double get_number(const json& v, const std::string& field) {
    if (!v.is_number()) fail(field, "must be a number");
    return v.get<double>();
}

int get_int(const json& v, const std::string& field) {
    if (!v.is_number_integer()) fail(field, "must be an integer");
    return v.get<int>();
}

Vec3 get_vec3(const json& v, const std::string& field) {
    if (!v.is_array() || v.size() != 3) fail(field, "must be an array of 3 numbers");
    double comp[3];
    for (int i = 0; i < 3; ++i) {
        if (!v[i].is_number()) fail(field, "must be an array of 3 numbers");
        comp[i] = v[i].get<double>();
    }
    return Vec3{comp[0], comp[1], comp[2]};
}

json vec3_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

AtomPairConfig parse_atoms(const json& block) {
    if (!block.is_object()) fail("atoms", "must be an object");
    check_keys(block, "atoms", {"r_A", "r_B", "mu_A", "mu_B", "k0"});
    AtomPairConfig atoms;
    atoms.r_A = get_vec3(require(block, "atoms", "r_A"), "atoms.r_A");
    atoms.r_B = get_vec3(require(block, "atoms", "r_B"), "atoms.r_B");
    atoms.mu_A = get_vec3(require(block, "atoms", "mu_A"), "atoms.mu_A");
    atoms.mu_B = get_vec3(require(block, "atoms", "mu_B"), "atoms.mu_B");
    if (auto it = block.find("k0"); it != block.end()) atoms.k0 = get_number(*it, "atoms.k0");
    return atoms;
}

GridSpec parse_grid(const json& block) {
    if (!block.is_object()) fail("grid", "must be an object");
    check_keys(block, "grid",
               {"origin", "axis_u", "axis_v", "extent_u", "extent_v", "n_u", "n_v"});
    GridSpec g;
    g.origin = get_vec3(require(block, "grid", "origin"), "grid.origin");
    if (auto it = block.find("axis_u"); it != block.end())
        g.axis_u = get_vec3(*it, "grid.axis_u");
    if (auto it = block.find("axis_v"); it != block.end())
        g.axis_v = get_vec3(*it, "grid.axis_v");
    if (auto it = block.find("extent_u"); it != block.end())
        g.extent_u = get_number(*it, "grid.extent_u");
    if (auto it = block.find("extent_v"); it != block.end())
        g.extent_v = get_number(*it, "grid.extent_v");
    if (auto it = block.find("n_u"); it != block.end()) g.n_u = get_int(*it, "grid.n_u");
    if (auto it = block.find("n_v"); it != block.end()) g.n_v = get_int(*it, "grid.n_v");
    return g;
}

TimeGrid parse_time_grid(const json& block) {
    if (!block.is_object()) fail("time_grid", "must be an object");
    check_keys(block, "time_grid", {"t_start", "t_end", "n_samples"});
    TimeGrid tg;
    if (auto it = block.find("t_start"); it != block.end())
        tg.t_start = get_number(*it, "time_grid.t_start");
    if (auto it = block.find("t_end"); it != block.end())
        tg.t_end = get_number(*it, "time_grid.t_end");
    if (auto it = block.find("n_samples"); it != block.end())
        tg.n_samples = get_int(*it, "time_grid.n_samples");
    return tg;
}

double unit_scale_length(UnitSystem u) {
    return u == UnitSystem::GaussianFromSI ? units::cm_per_m : 1.0;
}
double unit_scale_time(UnitSystem u) {
    return u == UnitSystem::GaussianFromSI ? units::c_cm_per_s : 1.0;
}

}  // namespace

QuadratureSettings parse_quadrature_settings(const nlohmann::json& block, double k0) {
    if (!block.is_object()) fail("quadrature", "must be an object");
    check_keys(block, "quadrature",
               {"pole_excision_halfwidth", "k_max", "convergence_factor_eta",
                "period_partitions", "target_rel_error"});
    QuadratureSettings st = QuadratureSettings::defaults_for(k0);
    if (auto it = block.find("pole_excision_halfwidth"); it != block.end())
        st.pole_excision_halfwidth = get_number(*it, "quadrature.pole_excision_halfwidth");
    if (auto it = block.find("k_max"); it != block.end())
        st.k_max = get_number(*it, "quadrature.k_max");
    if (auto it = block.find("convergence_factor_eta"); it != block.end()) {
        if (!it->is_array()) fail("quadrature.convergence_factor_eta", "must be an array");
        st.convergence_factor_eta.clear();
        for (const auto& e : *it)
            st.convergence_factor_eta.push_back(
                get_number(e, "quadrature.convergence_factor_eta[]"));
    }
    if (auto it = block.find("period_partitions"); it != block.end())
        st.period_partitions = get_int(*it, "quadrature.period_partitions");
    if (auto it = block.find("target_rel_error"); it != block.end())
        st.target_rel_error = get_number(*it, "quadrature.target_rel_error");
    st.validate(k0);
    return st;
}

nlohmann::json quadrature_to_json(const QuadratureSettings& settings) {
    return json{{"pole_excision_halfwidth", settings.pole_excision_halfwidth},
                {"k_max", settings.k_max},
                {"convergence_factor_eta", settings.convergence_factor_eta},
                {"period_partitions", settings.period_partitions},
                {"target_rel_error", settings.target_rel_error}};
}

RunConfig parse_run_config(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("config: top-level document must be a JSON object");
    check_keys(doc, "the top-level document",
               {"atoms", "parity", "mode", "units", "time_grid", "grid", "alpha", "probe_point",
                "quadrature", "lifetime_hint", "lightcone_epsilon"});

    RunConfig cfg;
    cfg.atoms = parse_atoms(require(doc, "config", "atoms"));

    if (auto it = doc.find("parity"); it != doc.end()) {
        if (!it->is_string()) fail("parity", "must be a string");
        const std::string v = it->get<std::string>();
        if (v == "symmetric")
            cfg.parity = DickeParity::Symmetric;
        else if (v == "antisymmetric")
            cfg.parity = DickeParity::Antisymmetric;
        else
            fail("parity", "must be 'symmetric' or 'antisymmetric'");
    }
    if (auto it = doc.find("mode"); it != doc.end()) {
        if (!it->is_string()) fail("mode", "must be a string");
        const std::string v = it->get<std::string>();
        if (v == "full")
            cfg.mode = CouplingMode::Full;
        else if (v == "rwa")
            cfg.mode = CouplingMode::RWA;
        else
            fail("mode", "must be 'full' or 'rwa'");
    }
    if (auto it = doc.find("units"); it != doc.end()) {
        if (!it->is_string()) fail("units", "must be a string");
        const std::string v = it->get<std::string>();
        if (v == "natural")
            cfg.units = UnitSystem::Natural;
        else if (v == "gaussian_from_si")
            cfg.units = UnitSystem::GaussianFromSI;
        else
            fail("units", "must be 'natural' or 'gaussian_from_si'");
    }
    if (auto it = doc.find("time_grid"); it != doc.end()) cfg.time_grid = parse_time_grid(*it);
    if (auto it = doc.find("grid"); it != doc.end()) cfg.grid = parse_grid(*it);
    if (auto it = doc.find("alpha"); it != doc.end())
        cfg.alpha = get_number(*it, "alpha");
    if (auto it = doc.find("probe_point"); it != doc.end())
        cfg.probe_point = get_vec3(*it, "probe_point");
    if (auto it = doc.find("quadrature"); it != doc.end()) {
        cfg.quadrature =
            parse_quadrature_settings(*it, cfg.atoms.k0 * (cfg.units == UnitSystem::GaussianFromSI
                                                               ? units::per_cm_per_per_m
                                                               : 1.0));
        cfg.quadrature_explicit = true;
    }
    if (auto it = doc.find("lifetime_hint"); it != doc.end())
        cfg.lifetime_hint = get_number(*it, "lifetime_hint");
    if (auto it = doc.find("lightcone_epsilon"); it != doc.end())
        cfg.lightcone_epsilon = get_number(*it, "lightcone_epsilon");

    cfg.validate();
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(path);
        if (!in) throw ConfigError("config: cannot open '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: JSON parse error: ") + e.what());
    }
    return parse_run_config(doc);
}

void RunConfig::validate() const {
    working_atoms().validate();
    if (!(time_grid.t_start >= 0.0)) fail("time_grid.t_start", "must be >= 0");
    if (!(time_grid.t_end > time_grid.t_start))
        fail("time_grid.t_end", "must exceed t_start");
    if (time_grid.n_samples < 2) fail("time_grid.n_samples", "must be >= 2");
    if (grid) {
        try {
            grid->validate();
        } catch (const ConfigError& e) {
            throw ConfigError(std::string("config field 'grid': ") + e.what());
        }
    }
    if (alpha && !std::isfinite(*alpha)) fail("alpha", "must be finite");
    if (probe_point && !probe_point->finite()) fail("probe_point", "must be finite");
    if (lifetime_hint && !(*lifetime_hint > 0.0)) fail("lifetime_hint", "must be > 0");
    if (!(lightcone_epsilon >= 0.0) || !std::isfinite(lightcone_epsilon))
        fail("lightcone_epsilon", "must be >= 0 and finite");
    // explicit quadrature settings were validated at parse time; re-validate
    // here so hand-built configs get the same checks
    if (quadrature_explicit)
        quadrature.validate(atoms.k0 *
                            (units == UnitSystem::GaussianFromSI ? units::per_cm_per_per_m : 1.0));
}

static AtomPairConfig working_copy(const AtomPairConfig& a, UnitSystem u) {
    AtomPairConfig w = a;
    if (u == UnitSystem::GaussianFromSI) {
        w.r_A = w.r_A * units::cm_per_m;
        w.r_B = w.r_B * units::cm_per_m;
        w.mu_A = w.mu_A * units::statC_cm_per_C_m;
        w.mu_B = w.mu_B * units::statC_cm_per_C_m;
        w.k0 = w.k0 * units::per_cm_per_per_m;
    }
    return w;
}

AtomPairConfig RunConfig::working_atoms() const { return working_copy(atoms, units); }

double RunConfig::working_time(double t) const { return t * unit_scale_time(units); }

double RunConfig::working_length(double x) const { return x * unit_scale_length(units); }

std::optional<GridSpec> RunConfig::working_grid() const {
    if (!grid) return std::nullopt;
    GridSpec g = *grid;
    const double s = unit_scale_length(units);
    g.origin = g.origin * s;
    g.extent_u *= s;
    g.extent_v *= s;
    return g;
}

std::optional<Vec3> RunConfig::working_probe_point() const {
    if (!probe_point) return std::nullopt;
    return *probe_point * unit_scale_length(units);
}

std::optional<double> RunConfig::working_alpha() const {
    if (!alpha) return std::nullopt;
    return *alpha * (units == UnitSystem::GaussianFromSI ? units::cm3_per_m3 : 1.0);
}

std::optional<double> RunConfig::working_lifetime() const {
    if (!lifetime_hint) return std::nullopt;
    return *lifetime_hint * unit_scale_time(units);
}

double RunConfig::working_lightcone_epsilon() const {
    return lightcone_epsilon > 0.0 ? lightcone_epsilon * unit_scale_time(units) : 0.0;
}

QuadratureSettings RunConfig::working_quadrature() const {
    const double k0w =
        atoms.k0 * (units == UnitSystem::GaussianFromSI ? units::per_cm_per_per_m : 1.0);
    if (quadrature_explicit) return quadrature;
    if (const char* env = std::getenv("RESDYN_QUADRATURE_FILE"); env && *env) {
        std::ifstream in(env);
        if (!in)
            throw ConfigError(std::string("config: cannot open quadrature settings file '") +
                              env + "' (RESDYN_QUADRATURE_FILE)");
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("config: quadrature settings file parse error: ") +
                              e.what());
        }
        return parse_quadrature_settings(doc, k0w);
    }
    return QuadratureSettings::defaults_for(k0w);
}

nlohmann::json to_json(const RunConfig& cfg) {
    json doc;
    doc["atoms"] = json{{"r_A", vec3_to_json(cfg.atoms.r_A)},
                        {"r_B", vec3_to_json(cfg.atoms.r_B)},
                        {"mu_A", vec3_to_json(cfg.atoms.mu_A)},
                        {"mu_B", vec3_to_json(cfg.atoms.mu_B)},
                        {"k0", cfg.atoms.k0}};
    doc["parity"] = cfg.parity == DickeParity::Symmetric ? "symmetric" : "antisymmetric";
    doc["mode"] = cfg.mode == CouplingMode::Full ? "full" : "rwa";
    doc["units"] = cfg.units == UnitSystem::Natural ? "natural" : "gaussian_from_si";
    doc["time_grid"] = json{{"t_start", cfg.time_grid.t_start},
                            {"t_end", cfg.time_grid.t_end},
                            {"n_samples", cfg.time_grid.n_samples}};
    if (cfg.grid)
        doc["grid"] = json{{"origin", vec3_to_json(cfg.grid->origin)},
                           {"axis_u", vec3_to_json(cfg.grid->axis_u)},
                           {"axis_v", vec3_to_json(cfg.grid->axis_v)},
                           {"extent_u", cfg.grid->extent_u},
                           {"extent_v", cfg.grid->extent_v},
                           {"n_u", cfg.grid->n_u},
                           {"n_v", cfg.grid->n_v}};
    if (cfg.alpha) doc["alpha"] = *cfg.alpha;
    if (cfg.probe_point) doc["probe_point"] = vec3_to_json(*cfg.probe_point);
    if (cfg.quadrature_explicit) doc["quadrature"] = quadrature_to_json(cfg.quadrature);
    if (cfg.lifetime_hint) doc["lifetime_hint"] = *cfg.lifetime_hint;
    doc["lightcone_epsilon"] = cfg.lightcone_epsilon;
    return doc;
}

}  // namespace resdyn
