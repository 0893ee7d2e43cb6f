#pragma once

// Subcommand runner. Every module builds its files in memory; nothing touches
// the output directory until all requested modules have finished.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mgt/bearing.hpp"
#include "mgt/combustor.hpp"
#include "mgt/config.hpp"
#include "mgt/cycle.hpp"
#include "mgt/errors.hpp"
#include "mgt/gasprops.hpp"
#include "mgt/turbo.hpp"

namespace mgt::cli {

namespace fs = std::filesystem;

enum ExitCode { kOk = 0, kValidationFailure = 1, kSolverFailure = 2 };

inline std::string fmt(double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

class Csv {
public:
    explicit Csv(const std::vector<std::string>& header) { row_strings(header); }

    template <class... T>
    void row(const T&... v) {
        std::vector<std::string> cells{cell(v)...};
        row_strings(cells);
    }

    const std::string& str() const { return text_; }

private:
    static std::string cell(double v) { return fmt(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(const std::string& s) { return s; }
    static std::string cell(const char* s) { return s; }

    void row_strings(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) text_ += (i ? "," : "") + cells[i];
        text_ += "\n";
    }

    std::string text_;
};

struct Bundle {
    std::map<std::string, std::string> files;  // name -> content
    std::vector<std::string> summary;
    std::vector<std::string> warnings;
};

// ---------------------------------------------------------------------------
// Module runs

struct CycleOutputs {
    cycle::CycleResult result;
    double fitted_eta_mechanical = std::nan("");
};

inline CycleOutputs run_cycle(const config::ScenarioConfig& c, Bundle& out) {
    CycleOutputs o;
    o.result = cycle::run_cycle(c.cycle);
    Csv st({"station", "T_K", "p_Pa", "mdot_kg_s"});
    for (const auto& s : o.result.stations) st.row(s.label, s.state.temperature, s.state.pressure, s.mass_flow);
    out.files["cycle_stations.csv"] = st.str();

    const auto& p = o.result.performance;
    Csv perf({"quantity", "value"});
    perf.row("net_power_W", p.net_power);
    perf.row("compressor_power_W", p.compressor_power);
    perf.row("turbine_power_W", p.turbine_power);
    perf.row("turbine_inlet_temperature_K", p.turbine_inlet_temperature);
    perf.row("thermal_efficiency", p.thermal_efficiency);
    perf.row("specific_fuel_consumption_kg_J", p.specific_fuel_consumption);
    perf.row("equivalence_ratio", p.equivalence_ratio);
    out.files["cycle_performance.csv"] = perf.str();

    out.summary.push_back("cycle: net power " + fmt(p.net_power) + " W (comparison target " +
                          fmt(c.target_net_power) + " W, ratio " + fmt(p.net_power / c.target_net_power) + ")");
    out.summary.push_back("cycle: compressor " + fmt(p.compressor_power) + " W, turbine " + fmt(p.turbine_power) +
                          " W, turbine inlet " + fmt(p.turbine_inlet_temperature) + " K");
    out.summary.push_back("cycle: thermal efficiency " + fmt(p.thermal_efficiency) + ", equivalence ratio " +
                          fmt(p.equivalence_ratio));
    try {
        o.fitted_eta_mechanical = cycle::fit_mechanical_efficiency(c.cycle, c.target_net_power);
        out.summary.push_back("cycle: eta_mechanical for " + fmt(c.target_net_power) + " W = " +
                              fmt(o.fitted_eta_mechanical));
    } catch (const DomainError& e) {
        out.warnings.push_back(std::string("cycle: ") + e.what());
    }
    for (const auto& w : o.result.warnings) out.warnings.push_back("cycle: " + w);
    return o;
}

inline void run_combustor(const config::ScenarioConfig& c, Bundle& out) {
    Csv sw({"phi", "mdot_g_s", "chamber_height_mm", "residence_time_s", "chemical_time_s", "damkohler", "stable",
            "exit_T_K", "wall_T_K"});
    for (double h : c.sweep_chamber_height) {
        auto g = c.combustor_geometry;
        g.chamber_height = h;
        for (double phi : c.sweep_phi) {
            for (double m : c.sweep_air_mass_flow) {
                const combustor::CombustorOperatingPoint op{m, phi, c.combustor_inlet_temperature,
                                                           c.combustor_inlet_pressure};
                const auto s = combustor::stability(g, op, c.combustor_model);
                sw.row(phi, m * 1e3, h * 1e3, s.residence_time, s.chemical_time, s.damkohler, s.stable ? 1 : 0,
                       s.exit_temperature, s.wall_temperature);
            }
        }
    }
    out.files["combustor_sweep.csv"] = sw.str();

    auto g = c.combustor_geometry;
    g.chamber_height = c.threshold_chamber_height;
    const double m_min = combustor::minimum_stable_air_flow(g, c.threshold_phi, c.threshold_search_min,
                                                            c.threshold_search_max, c.combustor_model, 1e-6,
                                                            c.combustor_inlet_temperature, c.combustor_inlet_pressure);
    if (std::isnan(m_min)) out.warnings.push_back("combustor: no stability threshold inside the search interval");
    out.summary.push_back("combustor: minimum stable air flow at phi " + fmt(c.threshold_phi) + ", h " +
                          fmt(c.threshold_chamber_height * 1e3) + " mm = " + fmt(m_min * 1e3) + " g/s");
    const double T_ad = combustor::adiabatic_flame_temperature(c.threshold_phi, c.combustor_inlet_temperature,
                                                               c.combustor_inlet_pressure);
    out.summary.push_back("combustor: adiabatic flame temperature at phi " + fmt(c.threshold_phi) + " = " +
                          fmt(T_ad) + " K");
}

struct TurbineOutputs {
    double inlet_blade_angle;
    double zero_incidence_rpm;
    double rotor_mass;
};

inline TurbineOutputs run_turbine(const config::ScenarioConfig& c, const cycle::CycleResult& cyc, Bundle& out) {
    const auto& model = c.properties;
    const gas::GasState hot = cyc.stations.at(2).state;  // combustor exit
    auto stage = c.turbine;
    if (!stage.rotor.inlet_blade_angle)
        stage.rotor.inlet_blade_angle =
            turbo::matched_inlet_blade_angle(stage, c.design_rpm, c.turbine_mass_flow, hot, model);
    const double beta = *stage.rotor.inlet_blade_angle;
    const double rpm0 = turbo::zero_incidence_rpm(stage, c.turbine_mass_flow, hot, beta, model);

    Csv ol({"rpm", "U_tip", "incidence_deg", "specific_work_J_kg", "power_W", "imbalance_load_N"});
    for (double rpm : c.operating_rpm) {
        const auto p = turbo::evaluate(stage, rpm, c.turbine_mass_flow, hot, model);
        const auto imb = turbo::imbalance_load(stage, c.etch_nonuniformity, rpm);
        ol.row(rpm, p.inlet.U, p.incidence, p.specific_work, p.power, imb.load);
    }
    out.files["turbine_operating_line.csv"] = ol.str();

    const auto design = turbo::evaluate(stage, c.design_rpm, c.turbine_mass_flow, hot, model);
    const gas::GasState cold(gas::standard_air(), c.cold_drive_temperature, hot.pressure);
    const auto derate = turbo::cold_drive_derate(hot, cold, stage, c.turbine_mass_flow, model);
    const auto imb = turbo::imbalance_load(stage, c.etch_nonuniformity, c.design_rpm);
    const double m = turbo::rotor_mass(stage);

    out.summary.push_back("turbine: tip speed " + fmt(design.inlet.U) + " m/s at " + fmt(c.design_rpm) +
                          " rpm, inlet blade angle " + fmt(beta) + " deg" +
                          (c.turbine.rotor.inlet_blade_angle ? "" : " (matched)"));
    out.summary.push_back("turbine: zero-incidence rpm " + fmt(rpm0) + ", specific work " +
                          fmt(design.specific_work) + " J/kg, power " + fmt(design.power) + " W");
    out.summary.push_back("turbine: cold drive at " + fmt(c.cold_drive_temperature) + " K: rpm ratio " +
                          fmt(derate.rpm_ratio) + ", power ratio " + fmt(derate.power_ratio));
    out.summary.push_back("turbine: rotor mass " + fmt(m) + " kg, imbalance load " + fmt(imb.load) + " N at " +
                          fmt(c.etch_nonuniformity * 100.0) + "% non-uniformity");
    return {beta, rpm0, m};
}

inline std::optional<bearing::AxialEquilibrium> run_bearing(const config::ScenarioConfig& c, Bundle& out) {
    const auto& b = c.top_bearing;
    const auto field = bearing::solve_reynolds(b, c.film, c.grid);
    std::string dump = "r_m,theta_rad,p_Pa\n";
    for (int i = 0; i < field.n_r; ++i)
        for (int j = 0; j < field.n_theta; ++j)
            dump += fmt(field.radii[i]) + "," + fmt(field.theta(i, j)) + "," + fmt(field.p(i, j)) + "\n";
    out.files["bearing_field.csv"] = dump;

    Csv map({"clearance_m", "rpm", "load_N", "stiffness_N_per_m"});
    for (double cl : c.map_clearance) {
        auto f = c.film;
        f.nominal_clearance = cl;
        map.row(cl, f.rpm, bearing::load(b, f, c.grid), bearing::axial_stiffness(b, f, c.grid));
    }
    out.files["bearing_load_map.csv"] = map.str();

    const double W = bearing::load_capacity(field);
    const auto ng = bearing::narrow_groove_reference(b, c.film);
    out.summary.push_back("bearing: top bearing at " + fmt(c.film.nominal_clearance) + " m, compressibility number " +
                          fmt(bearing::compressibility_number(b, c.film)) + ", load " + fmt(W) +
                          " N (narrow-groove reference " + fmt(ng.load) + " N)");
    if (!ng.applicable) out.warnings.push_back("bearing: " + ng.warning);

    const double mass = turbo::rotor_mass(c.turbine);
    const double external = c.external_load ? *c.external_load : -mass * c.gravity;
    try {
        const auto eq = bearing::axial_equilibrium(c.top_bearing, c.bottom_bearing, c.total_gap, external, c.film.rpm,
                                                   c.film.ambient_pressure, c.film.viscosity, c.grid);
        Csv e({"quantity", "value"});
        e.row("total_gap_m", c.total_gap);
        e.row("external_load_N", external);
        e.row("top_clearance_m", eq.top_clearance);
        e.row("bottom_clearance_m", eq.bottom_clearance);
        e.row("top_load_N", eq.top_load);
        e.row("bottom_load_N", eq.bottom_load);
        e.row("converged", eq.converged ? 1 : 0);
        out.files["bearing_equilibrium.csv"] = e.str();
        out.summary.push_back("bearing: equilibrium clearances top " + fmt(eq.top_clearance) + " m, bottom " +
                              fmt(eq.bottom_clearance) + " m (external load " + fmt(external) + " N)");
        if (!eq.converged) out.warnings.push_back("bearing: equilibrium search stopped before the load tolerance");
        return eq;
    } catch (const SolverError& e) {
        out.summary.push_back("bearing: no axial equilibrium");
        out.warnings.push_back(std::string("bearing: ") + e.what());
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Output

inline std::string timestamp_utc() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline std::string hex64(std::uint64_t h) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// Writes every file or none; on error removes what it wrote and leaves FAILED.
inline void commit(const Bundle& b, const fs::path& dir) {
    std::vector<fs::path> written;
    try {
        fs::create_directories(dir);
        fs::remove(dir / "FAILED");
        for (const auto& [name, content] : b.files) {
            const fs::path p = dir / name;
            std::ofstream f(p, std::ios::binary | std::ios::trunc);
            if (!f) throw std::runtime_error("cannot write " + p.string());
            written.push_back(p);
            f << content;
            f.close();
            if (!f) throw std::runtime_error("write failed for " + p.string());
        }
    } catch (...) {
        std::error_code ec;
        for (const auto& p : written) fs::remove(p, ec);
        throw;
    }
}

inline void mark_failed(const fs::path& dir, const std::string& why) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    std::ofstream f(dir / "FAILED");
    if (f) f << why << "\n";
}

inline Bundle run_modules(const std::string& subcommand, const config::ScenarioConfig& c,
                          const std::string& config_text) {
    Bundle b;
    const bool all = subcommand == "all";
    std::optional<CycleOutputs> cyc;
    if (all || subcommand == "cycle" || subcommand == "turbine") {
        Bundle scratch;
        cyc = run_cycle(c, all || subcommand == "cycle" ? b : scratch);
    }
    if (all || subcommand == "combustor") run_combustor(c, b);
    std::optional<TurbineOutputs> turb;
    if (all || subcommand == "turbine") turb = run_turbine(c, cyc->result, b);
    std::optional<bearing::AxialEquilibrium> eq;
    if (all || subcommand == "bearing") eq = run_bearing(c, b);

    if (all) {
        const double phi = gas::equivalence_ratio(c.cycle.fuel_mass_flow, c.cycle.air_mass_flow);
        b.summary.push_back("design: equivalence ratio " + fmt(phi) + " from cycle flows, zero-incidence rpm " +
                            fmt(turb->zero_incidence_rpm) + ", equilibrium clearances " +
                            (eq ? "top " + fmt(eq->top_clearance) + " m, bottom " + fmt(eq->bottom_clearance) + " m"
                                : std::string("none")));
    }

    std::string s;
    for (const auto& line : b.summary) s += line + "\n";
    if (!b.warnings.empty()) {
        s += "warnings:\n";
        for (const auto& w : b.warnings) s += "  " + w + "\n";
    }
    b.files["summary.txt"] = s;
    b.files["run_info.txt"] = "timestamp " + timestamp_utc() + "\nsubcommand " + subcommand + "\nconfig_fnv1a " +
                              hex64(config::fnv1a(config_text)) + "\n";
    return b;
}

struct SweepSpec {
    std::string section, key;
    double start, stop;
    int count;
};

/// "section.key=start:stop:n"
inline SweepSpec parse_sweep(const std::string& text) {
    const auto eq = text.find('=');
    const auto dot = text.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
        throw ParameterError("sweep must look like section.key=start:stop:n");
    SweepSpec s;
    s.section = text.substr(0, dot);
    s.key = text.substr(dot + 1, eq - dot - 1);
    std::string range = text.substr(eq + 1);
    std::vector<std::string> parts;
    std::istringstream in(range);
    for (std::string p; std::getline(in, p, ':');) parts.push_back(p);
    if (parts.size() != 3 || s.section.empty() || s.key.empty())
        throw ParameterError("sweep must look like section.key=start:stop:n");
    try {
        std::size_t a = 0, b = 0, n = 0;
        s.start = std::stod(parts[0], &a);
        s.stop = std::stod(parts[1], &b);
        s.count = std::stoi(parts[2], &n);
        if (a != parts[0].size() || b != parts[1].size() || n != parts[2].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw ParameterError("sweep range '" + range + "' is not start:stop:n");
    }
    if (s.count < 1) throw ParameterError("sweep needs n >= 1");
    return s;
}

inline std::vector<double> sweep_values(const SweepSpec& s) {
    std::vector<double> v;
    for (int i = 0; i < s.count; ++i)
        v.push_back(s.count == 1 ? s.start : s.start + (s.stop - s.start) * i / (s.count - 1));
    return v;
}

inline int validate_command(const std::string& text, std::ostream& out, std::ostream& err) {
    const auto r = config::validate(text);
    if (r.ok()) {
        out << "config valid\n";
        return kOk;
    }
    for (const auto& e : r.errors) err << e << "\n";
    return kValidationFailure;
}

inline bool known_subcommand(const std::string& s) {
    return s == "cycle" || s == "combustor" || s == "turbine" || s == "bearing" || s == "all";
}

inline int run_command(const std::string& subcommand, const std::string& config_text, const fs::path& dir,
                       const std::optional<std::string>& sweep, std::ostream& out, std::ostream& err) {
    if (!known_subcommand(subcommand)) {
        err << "unknown subcommand '" << subcommand << "'\n";
        return kValidationFailure;
    }
    std::vector<std::pair<std::string, std::string>> runs;  // subdir, config text
    std::string index;
    if (sweep) {
        SweepSpec s;
        try {
            s = parse_sweep(*sweep);
        } catch (const ParameterError& e) {
            err << e.what() << "\n";
            return kValidationFailure;
        }
        Csv idx({"run", "section", "key", "value"});
        int i = 0;
        for (double v : sweep_values(s)) {
            char name[32];
            std::snprintf(name, sizeof name, "sweep_%03d", i++);
            runs.emplace_back(name, config::with_override(config_text, s.section, s.key, fmt(v)));
            idx.row(std::string(name), s.section, s.key, v);
        }
        index = idx.str();
    } else {
        runs.emplace_back("", config_text);
    }

    std::vector<config::ScenarioConfig> cfgs;
    bool valid = true;
    for (const auto& [name, text] : runs) {
        auto r = config::validate(text);
        if (!r.ok()) {
            valid = false;
            for (const auto& e : r.errors) err << (name.empty() ? "" : name + ": ") << e << "\n";
        } else {
            cfgs.push_back(*r.config);
        }
    }
    if (!valid) return kValidationFailure;

    std::vector<Bundle> bundles;
    try {
        for (std::size_t i = 0; i < runs.size(); ++i) bundles.push_back(run_modules(subcommand, cfgs[i], runs[i].second));
    } catch (const std::exception& e) {
        err << "solver failure: " << e.what() << "\n";
        mark_failed(dir, e.what());
        return kSolverFailure;
    }
    try {
        for (std::size_t i = 0; i < runs.size(); ++i) commit(bundles[i], runs[i].first.empty() ? dir : dir / runs[i].first);
        if (sweep) {
            Bundle b;
            b.files["sweep_index.csv"] = index;
            commit(b, dir);
        }
    } catch (const std::exception& e) {
        err << "output failure: " << e.what() << "\n";
        mark_failed(dir, e.what());
        return kSolverFailure;
    }
    for (std::size_t i = 0; i < runs.size(); ++i) {
        if (!runs[i].first.empty()) out << runs[i].first << ":\n";
        out << bundles[i].files["summary.txt"];
    }
    return kOk;
}

}  // namespace mgt::cli
