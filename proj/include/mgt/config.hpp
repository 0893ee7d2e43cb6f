#pragma once

// Scenario configuration: sectioned key = value text with '#' comments.
// Every key carries its SI unit in the name. Missing keys take the defaults
// below; unknown keys are violations. Validation collects every problem.

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mgt/bearing.hpp"
#include "mgt/combustor.hpp"
#include "mgt/cycle.hpp"
#include "mgt/errors.hpp"
#include "mgt/gasprops.hpp"
#include "mgt/turbo.hpp"

namespace mgt::config {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

struct Entry {
    std::string value;
    int line;
};

using Sections = std::map<std::string, std::map<std::string, Entry>>;

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

/// Syntax only: [section] headers and key = value lines.
inline Sections parse(const std::string& text) {
    Sections out;
    std::istringstream in(text);
    std::string raw, section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ParseError(line, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section.empty()) throw ParseError(line, "empty section name");
            if (out.count(section)) throw ParseError(line, "duplicate section [" + section + "]");
            out[section];
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ParseError(line, "expected 'key = value'");
        if (section.empty()) throw ParseError(line, "key outside of any [section]");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) throw ParseError(line, "missing key before '='");
        if (value.empty()) throw ParseError(line, "missing value for '" + key + "'");
        if (out[section].count(key)) throw ParseError(line, "duplicate key '" + key + "' in [" + section + "]");
        out[section][key] = {value, line};
    }
    return out;
}

struct ScenarioConfig {
    gas::PropertyModel properties{};
    double ambient_temperature = 300.0;
    double ambient_pressure = 101325.0;

    cycle::CycleDesignPoint cycle{};
    double target_net_power = 39.0;  // W, comparison target

    combustor::CombustorGeometry combustor_geometry{};
    combustor::CombustorModel combustor_model{};
    double combustor_inlet_temperature = 300.0;
    double combustor_inlet_pressure = 101325.0;
    std::vector<double> sweep_phi{0.5, 0.6, 0.8};
    std::vector<double> sweep_air_mass_flow{3e-5, 4e-5, 5e-5, 1e-4, 1.5e-4};
    std::vector<double> sweep_chamber_height{6e-4, 1e-3, 1.2e-3};
    double threshold_phi = 0.8;
    double threshold_chamber_height = 1.2e-3;
    double threshold_search_min = 1e-5;  // kg/s
    double threshold_search_max = 2e-4;  // kg/s

    turbo::TurbineStage turbine{};
    double turbine_mass_flow = 0.36e-3;
    double design_rpm = 15000.0;
    double etch_nonuniformity = 0.05;
    double cold_drive_temperature = 300.0;
    std::vector<double> operating_rpm{5000, 7500, 10000, 12500, 15000, 17500, 20000};

    bearing::SpiralGrooveBearing top_bearing{};
    bearing::SpiralGrooveBearing bottom_bearing{1.0e-3, 2.2e-3, 36e-6, 12, 20.0, 0.5, bearing::PumpDirection::pump_out};
    bearing::FilmState film{};
    bearing::GridSpec grid{65, 192, 2.0, 2.0};
    double total_gap = 20e-6;
    double gravity = 9.80665;
    std::optional<double> external_load;  // N, positive toward the top bearing; empty = rotor weight
    std::vector<double> map_clearance{3e-6, 4e-6, 5e-6, 6e-6, 8e-6, 10e-6};
};

struct ValidationResult {
    std::optional<ScenarioConfig> config;
    std::vector<std::string> errors;
    bool ok() const { return config.has_value(); }
};

namespace detail {

class Reader {
public:
    Reader(const Sections& s, std::vector<std::string>& errors) : sections_(s), errors_(errors) {}

    void section(const std::string& name) {
        current_ = name;
        known_[name];
    }

    void number(const std::string& key, double& target) {
        if (auto e = take(key)) {
            if (auto v = to_double(*e, key)) target = *v;
        }
    }

    void integer(const std::string& key, int& target) {
        if (auto e = take(key)) {
            if (auto v = to_double(*e, key)) {
                if (*v != std::floor(*v) || std::abs(*v) > 1e9) {
                    fail(*e, key, "'" + e->value + "' is not an integer");
                } else {
                    target = static_cast<int>(*v);
                }
            }
        }
    }

    void optional_number(const std::string& key, std::optional<double>& target) {
        if (auto e = take(key)) {
            if (e->value == "auto") {
                target.reset();
            } else if (auto v = to_double(*e, key)) {
                target = *v;
            }
        }
    }

    void list(const std::string& key, std::vector<double>& target) {
        if (auto e = take(key)) {
            std::vector<double> out;
            std::istringstream in(e->value);
            std::string item;
            bool ok = true;
            while (std::getline(in, item, ',')) {
                Entry sub{trim(item), e->line};
                if (auto v = to_double(sub, key)) {
                    out.push_back(*v);
                } else {
                    ok = false;
                }
            }
            if (ok && out.empty()) fail(*e, key, "empty list");
            if (ok && !out.empty()) target = std::move(out);
        }
    }

    void choice(const std::string& key, const std::vector<std::string>& options,
                const std::function<void(const std::string&)>& apply) {
        if (auto e = take(key)) {
            for (const auto& o : options) {
                if (e->value == o) {
                    apply(o);
                    return;
                }
            }
            std::string all;
            for (const auto& o : options) all += (all.empty() ? "" : " | ") + o;
            fail(*e, key, "'" + e->value + "' is not one of " + all);
        }
    }

    // Unknown sections and keys.
    void finish() {
        for (const auto& [name, keys] : sections_) {
            auto k = known_.find(name);
            if (k == known_.end()) {
                const int line = keys.empty() ? 0 : keys.begin()->second.line;
                errors_.push_back("unknown section [" + name + "]" + (line ? " (line " + std::to_string(line) + ")" : ""));
                continue;
            }
            for (const auto& [key, e] : keys) {
                if (!k->second.count(key))
                    errors_.push_back("line " + std::to_string(e.line) + ": unknown key '" + key + "' in [" + name + "]");
            }
        }
    }

private:
    std::optional<Entry> take(const std::string& key) {
        known_[current_].insert(key);
        auto s = sections_.find(current_);
        if (s == sections_.end()) return std::nullopt;
        auto k = s->second.find(key);
        if (k == s->second.end()) return std::nullopt;
        return k->second;
    }

    std::optional<double> to_double(const Entry& e, const std::string& key) {
        const char* begin = e.value.c_str();
        char* end = nullptr;
        errno = 0;
        const double v = std::strtod(begin, &end);
        if (end == begin || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
            fail(e, key, "'" + e.value + "' is not a finite number");
            return std::nullopt;
        }
        return v;
    }

    void fail(const Entry& e, const std::string& key, const std::string& what) {
        errors_.push_back("line " + std::to_string(e.line) + ": " + current_ + "." + key + ": " + what);
    }

    const Sections& sections_;
    std::vector<std::string>& errors_;
    std::string current_;
    std::map<std::string, std::set<std::string>> known_;
};

inline void prefixed(std::vector<std::string>& errors, const std::string& section, const std::vector<std::string>& v) {
    for (const auto& s : v) errors.push_back(section + ": " + s);
}

}  // namespace detail

/// Parses and checks a scenario; on failure every violation is listed.
inline ValidationResult validate(const std::string& text) {
    ValidationResult res;
    Sections sections;
    try {
        sections = parse(text);
    } catch (const ParseError& e) {
        res.errors.push_back(std::string("parse error: ") + e.what());
        return res;
    }
    auto& errors = res.errors;
    ScenarioConfig c;
    detail::Reader r(sections, errors);

    double const_cp = c.properties.constant_cp, const_gamma = c.properties.constant_gamma;
    bool constant_mode = false;
    r.section("properties");
    r.choice("mode", {"polynomial", "constant_cp"}, [&](const std::string& m) { constant_mode = m == "constant_cp"; });
    r.number("constant_cp_J_kgK", const_cp);
    r.number("constant_gamma", const_gamma);

    r.section("ambient");
    r.number("temperature_K", c.ambient_temperature);
    r.number("pressure_Pa", c.ambient_pressure);

    auto& cy = c.cycle;
    r.section("cycle");
    r.number("air_mass_flow_kg_s", cy.air_mass_flow);
    r.number("pressure_ratio", cy.pressure_ratio);
    r.number("fuel_mass_flow_kg_s", cy.fuel_mass_flow);
    r.number("eta_compressor", cy.eta_compressor);
    r.number("eta_turbine", cy.eta_turbine);
    r.number("eta_combustor", cy.eta_combustor);
    r.number("sigma_combustor", cy.sigma_combustor);
    r.number("eta_mechanical", cy.eta_mechanical);
    r.number("fuel_lhv_J_kg", cy.fuel_lhv);
    r.number("target_net_power_W", c.target_net_power);

    auto& cg = c.combustor_geometry;
    r.section("combustor");
    r.number("chamber_height_m", cg.chamber_height);
    r.number("annulus_outer_radius_m", cg.annulus_outer_radius);
    r.number("annulus_inner_radius_m", cg.annulus_inner_radius);
    r.number("recirculation_channel_length_m", cg.recirculation_channel_length);
    r.number("recirculation_hydraulic_diameter_m", cg.recirculation_hydraulic_diameter);
    r.number("die_footprint_m", cg.die_footprint);
    r.number("inlet_temperature_K", c.combustor_inlet_temperature);
    r.number("inlet_pressure_Pa", c.combustor_inlet_pressure);
    r.number("nusselt", c.combustor_model.heat_transfer.nusselt);
    r.number("prandtl", c.combustor_model.heat_transfer.prandtl);
    r.number("chamber_ntu", c.combustor_model.heat_transfer.chamber_ntu);
    r.list("sweep_phi", c.sweep_phi);
    r.list("sweep_air_mass_flow_kg_s", c.sweep_air_mass_flow);
    r.list("sweep_chamber_height_m", c.sweep_chamber_height);
    r.number("threshold_phi", c.threshold_phi);
    r.number("threshold_chamber_height_m", c.threshold_chamber_height);
    r.number("threshold_search_min_kg_s", c.threshold_search_min);
    r.number("threshold_search_max_kg_s", c.threshold_search_max);

    auto& ch = c.combustor_model.chemistry;
    r.section("calibration");
    r.number("pre_exponential_s", ch.pre_exponential);
    r.number("activation_energy_J_mol", ch.activation_energy);
    r.number("phi_exponent", ch.phi_exponent);
    r.number("pressure_exponent", ch.pressure_exponent);
    r.number("reference_pressure_Pa", ch.reference_pressure);
    r.number("critical_damkohler", ch.critical_damkohler);
    r.number("wall_conductance_W_K", cg.wall_thermal_conductance);

    auto& t = c.turbine;
    r.section("turbine");
    r.integer("blade_count", t.rotor.blade_count);
    r.number("outer_diameter_m", t.rotor.outer_diameter);
    r.number("inner_diameter_m", t.rotor.inner_diameter);
    r.number("blade_height_m", t.rotor.blade_height);
    r.optional_number("inlet_blade_angle_deg", t.rotor.inlet_blade_angle);
    r.number("exit_blade_angle_deg", t.rotor.exit_blade_angle);
    r.optional_number("rotor_mass_kg", t.rotor.rotor_mass);
    r.integer("stator_vane_count", t.stator.vane_count);
    r.number("stator_exit_angle_deg", t.stator.exit_flow_angle);
    r.number("stator_exit_radius_m", t.stator.exit_radius);
    r.number("blockage", t.blockage);
    r.number("material_density_kg_m3", t.material_density);
    r.number("disk_thickness_m", t.disk_thickness);
    r.number("blade_solidity", t.blade_solidity);
    r.number("mass_flow_kg_s", c.turbine_mass_flow);
    r.number("design_rpm", c.design_rpm);
    r.number("etch_nonuniformity", c.etch_nonuniformity);
    r.number("cold_drive_temperature_K", c.cold_drive_temperature);
    r.list("operating_rpm", c.operating_rpm);

    r.section("bearing");
    double ri = c.top_bearing.inner_radius, ro = c.top_bearing.outer_radius;
    double top_depth = c.top_bearing.groove_depth, bottom_depth = c.bottom_bearing.groove_depth;
    int grooves = c.top_bearing.groove_count;
    double angle = c.top_bearing.spiral_angle, width = c.top_bearing.groove_width_fraction;
    r.number("inner_radius_m", ri);
    r.number("outer_radius_m", ro);
    r.number("top_groove_depth_m", top_depth);
    r.number("bottom_groove_depth_m", bottom_depth);
    r.integer("groove_count", grooves);
    r.number("spiral_angle_deg", angle);
    r.number("groove_width_fraction", width);
    r.number("nominal_clearance_m", c.film.nominal_clearance);
    r.number("total_gap_m", c.total_gap);
    r.number("rpm", c.film.rpm);
    r.number("viscosity_Pa_s", c.film.viscosity);
    r.integer("grid_radial", c.grid.n_r);
    r.integer("grid_angular", c.grid.n_theta);
    r.number("radial_grading", c.grid.radial_grading);
    r.number("angular_grading", c.grid.angular_grading);
    r.number("gravity_m_s2", c.gravity);
    r.optional_number("external_load_N", c.external_load);
    r.list("map_clearance_m", c.map_clearance);
    r.finish();

    // cross-section assembly
    if (constant_mode) {
        if (!(const_cp > 0.0)) errors.push_back("properties: constant_cp_J_kgK must be > 0");
        if (!(const_gamma > 1.0 && const_gamma <= 5.0 / 3.0))
            errors.push_back("properties: constant_gamma must lie in (1, 5/3]");
        c.properties = {gas::PropertyMode::constant_cp, const_cp, const_gamma};
    }
    c.cycle.properties = c.properties;
    if (!(c.ambient_temperature >= 200.0 && c.ambient_temperature <= 1000.0))
        errors.push_back("ambient: temperature_K must lie in [200, 1000]");
    if (!(c.ambient_pressure > 0.0)) errors.push_back("ambient: pressure_Pa must be > 0");
    if (errors.empty()) c.cycle.ambient = gas::GasState(gas::standard_air(), c.ambient_temperature, c.ambient_pressure);
    c.combustor_model.heat_transfer.ambient_temperature = c.ambient_temperature;
    c.film.ambient_pressure = c.ambient_pressure;
    for (auto* b : {&c.top_bearing, &c.bottom_bearing}) {
        b->inner_radius = ri;
        b->outer_radius = ro;
        b->groove_count = grooves;
        b->spiral_angle = angle;
        b->groove_width_fraction = width;
    }
    c.top_bearing.groove_depth = top_depth;
    c.bottom_bearing.groove_depth = bottom_depth;

    detail::prefixed(errors, "cycle", c.cycle.violations());
    if (!(c.target_net_power > 0.0)) errors.push_back("cycle: target_net_power_W must be > 0");
    if (c.cycle.fuel_mass_flow > 0.0 && c.cycle.air_mass_flow > 0.0 &&
        gas::equivalence_ratio(c.cycle.fuel_mass_flow, c.cycle.air_mass_flow) > 1.0)
        errors.push_back("cycle: fuel/air flows give a rich mixture (phi > 1)");

    detail::prefixed(errors, "combustor", c.combustor_geometry.violations());
    detail::prefixed(errors, "combustor", c.combustor_model.heat_transfer.violations());
    detail::prefixed(errors, "calibration", c.combustor_model.chemistry.violations());
    if (!(c.combustor_inlet_temperature >= 200.0 && c.combustor_inlet_temperature <= 1000.0))
        errors.push_back("combustor: inlet_temperature_K must lie in [200, 1000]");
    if (!(c.combustor_inlet_pressure > 0.0)) errors.push_back("combustor: inlet_pressure_Pa must be > 0");
    for (double p : c.sweep_phi)
        if (!(p >= 0.0 && p <= 1.0)) errors.push_back("combustor: sweep_phi values must lie in [0, 1]");
    for (double m : c.sweep_air_mass_flow)
        if (!(m > 0.0)) errors.push_back("combustor: sweep_air_mass_flow_kg_s values must be > 0");
    for (double h : c.sweep_chamber_height)
        if (!(h > 0.0)) errors.push_back("combustor: sweep_chamber_height_m values must be > 0");
    if (!(c.threshold_phi > 0.0 && c.threshold_phi <= 1.0)) errors.push_back("combustor: threshold_phi must lie in (0, 1]");
    if (!(c.threshold_chamber_height > 0.0)) errors.push_back("combustor: threshold_chamber_height_m must be > 0");
    if (!(c.threshold_search_min > 0.0 && c.threshold_search_max > c.threshold_search_min))
        errors.push_back("combustor: need 0 < threshold_search_min_kg_s < threshold_search_max_kg_s");

    detail::prefixed(errors, "turbine", c.turbine.violations());
    if (!(c.turbine_mass_flow > 0.0)) errors.push_back("turbine: mass_flow_kg_s must be > 0");
    if (!(c.design_rpm > 0.0)) errors.push_back("turbine: design_rpm must be > 0");
    if (!(c.etch_nonuniformity >= 0.0 && c.etch_nonuniformity < 1.0))
        errors.push_back("turbine: etch_nonuniformity must lie in [0, 1)");
    if (!(c.cold_drive_temperature >= 200.0 && c.cold_drive_temperature <= 1000.0))
        errors.push_back("turbine: cold_drive_temperature_K must lie in [200, 1000]");
    for (double v : c.operating_rpm)
        if (!(v >= 0.0)) errors.push_back("turbine: operating_rpm values must be >= 0");

    detail::prefixed(errors, "bearing", c.top_bearing.violations());
    if (!(bottom_depth >= 0.0)) errors.push_back("bearing: bottom_groove_depth_m must be >= 0");
    detail::prefixed(errors, "bearing", c.film.violations());
    if (!(c.total_gap > 0.0)) errors.push_back("bearing: total_gap_m must be > 0");
    if (c.grid.n_r < 32 || c.grid.n_theta < 64) errors.push_back("bearing: grid must be at least 32 x 64");
    if (!(c.grid.radial_grading >= 1.0)) errors.push_back("bearing: radial_grading must be >= 1");
    if (!(c.grid.angular_grading >= 1.0)) errors.push_back("bearing: angular_grading must be >= 1");
    if (c.grid.angular_grading != 1.0 && grooves > 0 && c.grid.n_theta > 0) {
        const int per = c.grid.n_theta / grooves;
        const double g = width * per;
        if (per * grooves != c.grid.n_theta || std::abs(g - std::round(g)) > 1e-9 || std::round(g) < 1 ||
            std::round(g) >= per)
            errors.push_back("bearing: angular_grading needs grid_angular to place cell faces on every groove edge");
    }
    if (!(c.gravity >= 0.0)) errors.push_back("bearing: gravity_m_s2 must be >= 0");
    for (double v : c.map_clearance)
        if (!(v > 0.0)) errors.push_back("bearing: map_clearance_m values must be > 0");

    if (errors.empty()) res.config = std::move(c);
    return res;
}

/// Returns the config or throws ParameterError listing every violation.
inline ScenarioConfig load_or_throw(const std::string& text) {
    auto r = validate(text);
    if (r.ok()) return *r.config;
    std::string msg;
    for (const auto& e : r.errors) msg += (msg.empty() ? "" : "\n") + e;
    throw ParameterError(msg);
}

/// 64-bit FNV-1a of the config bytes.
inline std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

/// Replaces (or adds) section.key = value in config text.
inline std::string with_override(const std::string& text, const std::string& section, const std::string& key,
                                 const std::string& value) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string raw, current;
    bool done = false, in_target = false, saw_section = false;
    while (std::getline(in, raw)) {
        const auto hash = raw.find('#');
        const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (!s.empty() && s.front() == '[' && s.back() == ']') {
            if (in_target && !done) {
                out << key << " = " << value << "\n";
                done = true;
            }
            current = trim(s.substr(1, s.size() - 2));
            in_target = current == section;
            saw_section = saw_section || in_target;
        } else if (in_target && !s.empty()) {
            const auto eq = s.find('=');
            if (eq != std::string::npos && trim(s.substr(0, eq)) == key) {
                out << key << " = " << value << "\n";
                done = true;
                continue;
            }
        }
        out << raw << "\n";
    }
    if (!done) {
        if (!saw_section) out << "[" << section << "]\n";
        else if (!in_target) out << "[" << section << "]\n";
        out << key << " = " << value << "\n";
    }
    return out.str();
}

}  // namespace mgt::config
