// One line per acceptance criterion; nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <unistd.h>

#include "mgt/cli.hpp"
#include "oracle.hpp"

#ifndef MGT_CONFIG_DIR
#define MGT_CONFIG_DIR "configs"
#endif

using namespace mgt;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

std::string default_text() { return slurp(fs::path(MGT_CONFIG_DIR) / "default.cfg"); }

config::ScenarioConfig defaults() { return config::load_or_throw(default_text()); }

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Outcome design_power() {
    const auto c = defaults();
    const auto net = cycle::run_cycle(c.cycle).performance.net_power;
    const double eta = cycle::fit_mechanical_efficiency(c.cycle, 39.0);
    auto d = c.cycle;
    d.eta_mechanical = eta;
    const double fitted = cycle::run_cycle(d).performance.net_power;
    const bool ok = net >= 30.0 && net <= 55.0 && rel(fitted, 39.0) <= 0.02;
    return {ok, "net power " + num(net) + " W in [30, 55]; eta_mechanical " + num(eta) + " gives " + num(fitted) +
                    " W vs 39 W"};
}

Outcome design_phi() {
    const auto c = defaults();
    const double phi = cycle::run_cycle(c.cycle).performance.equivalence_ratio;
    const double hand = (17.0 / 3600.0 / 0.36) / 0.0292;
    const bool ok = std::abs(phi - 0.45) <= 0.02 && std::abs(hand - 0.45) <= 0.02 && std::abs(phi - hand) <= 0.02;
    return {ok, "phi " + num(phi) + ", hand oracle " + num(hand)};
}

Outcome stability_map() {
    const auto c = defaults();
    auto geo = [&](double h) {
        auto g = c.combustor_geometry;
        g.chamber_height = h;
        return g;
    };
    const auto a = combustor::stability(geo(0.6e-3), {0.15e-3, 0.6}, c.combustor_model);
    const auto b = combustor::stability(geo(1.0e-3), {0.15e-3, 0.6}, c.combustor_model);
    const auto u = combustor::stability(geo(0.6e-3), {0.15e-3, 0.5}, c.combustor_model);
    const double m = combustor::minimum_stable_air_flow(geo(1.2e-3), 0.8, 1e-5, 2e-4, c.combustor_model);
    const bool ok = a.stable && b.stable && !u.stable && m >= 0.03e-3 && m <= 0.05e-3;
    return {ok, "Da " + num(a.damkohler) + " / " + num(b.damkohler) + " / " + num(u.damkohler) +
                    " (stable, stable, unstable expected); minimum stable flow " + num(m * 1e3) + " g/s"};
}

Outcome exit_band() {
    const auto c = defaults();
    auto g = c.combustor_geometry;
    g.chamber_height = 1.2e-3;
    bool ok = true;
    std::string d = "exit T";
    for (double m : {0.05e-3, 0.10e-3, 0.15e-3}) {
        const auto e = combustor::exit_temperature(g, {m, 0.8}, c.combustor_model);
        ok = ok && e.reacting && e.exit_temperature >= 1400.0 && e.exit_temperature <= 1600.0;
        d += " " + num(e.exit_temperature);
    }
    return {ok, d + " K in [1400, 1600]"};
}

Outcome flame_oracle() {
    bool ok = true;
    double worst = 0.0;
    for (double phi : {0.4, 0.6, 0.8, 1.0}) {
        const double diff =
            std::abs(combustor::adiabatic_flame_temperature(phi, 300.0) - oracle::flame_temperature(phi, 300.0));
        worst = std::max(worst, diff);
        ok = ok && diff <= 60.0;
    }
    return {ok, "worst |T_ad - oracle| " + num(worst) + " K"};
}

Outcome turbine_kinematics() {
    const auto c = defaults();
    const double U = turbo::blade_speed(c.turbine.rotor.tip_radius(), 15000.0);
    const auto st = cycle::run_cycle(c.cycle).stations[2].state;
    const double mdot = c.turbine_mass_flow;
    double worst = 0.0;
    for (double blade : {50.0, 60.0, 69.0}) {
        const double rpm = turbo::zero_incidence_rpm(c.turbine, mdot, st, blade);
        worst = std::max(worst, std::abs(turbo::incidence(turbo::inlet_triangle(c.turbine, rpm, mdot, st), blade)));
    }
    const turbo::VelocityTriangle in{6.44, 10.0, 20.0, 13.56, 0.0, 0.0};
    const turbo::VelocityTriangle out{3.46, 10.0, 0.0, -3.46, 0.0, 0.0};
    const double w = turbo::euler_specific_work(in, out);
    const double same = turbo::euler_specific_work(in, in);
    const bool ok = std::abs(U - 6.44) <= 0.01 && worst < 1e-6 && std::abs(w - 128.8) < 1e-9 &&
                    std::abs(mdot * w - 0.046) < 0.001 && same == 0.0;
    return {ok, "U_tip " + num(U) + " m/s; worst round-trip incidence " + num(worst) + " deg; w " + num(w) +
                    " J/kg, power " + num(mdot * w) + " W"};
}

Outcome bearing_suite() {
    using namespace bearing;
    const auto c = defaults();
    const auto& b = c.top_bearing;
    std::string d;
    bool ok = true;

    FilmState rest = c.film;
    rest.rpm = 0.0;
    auto flat = b;
    flat.groove_depth = 0.0;
    const double null_speed = load(b, rest, c.grid);
    const auto flat_field = solve_reynolds(flat, c.film, c.grid);
    double flat_dev = 0.0;
    for (double p : flat_field.pressures) flat_dev = std::max(flat_dev, std::abs(p - c.film.ambient_pressure));
    const double null_depth = load_capacity(flat_field);
    const bool nulls = null_speed == 0.0 && std::abs(null_depth) < 1e-12 && flat_dev < 1e-9 * c.film.ambient_pressure;
    ok = ok && nulls;
    d += "nulls " + std::string(nulls ? "ok" : "BAD") + " (" + num(null_speed) + ", " + num(null_depth) + " N)";

    const double w1 = load(b, c.film, {33, 96, 2.0, 2.0});
    const double w2 = load(b, c.film, {65, 192, 2.0, 2.0});
    const double w3 = load(b, c.film, {129, 384, 2.0, 2.0});
    const double order = std::log2((w2 - w1) / (w3 - w2));
    ok = ok && order >= 1.8;
    d += "; convergence order " + num(order) + " (need >= 1.8)";

    d += "; narrow-groove gap";
    for (int n : {16, 24, 32}) {
        auto g = b;
        g.groove_count = n;
        const double num_load = load(g, c.film, {65, 16 * n, 2.0, 2.0});
        const double ng = narrow_groove_reference(g, c.film).load;
        const double lam = compressibility_number(g, c.film);
        const double gap = (num_load - ng) / ng;
        ok = ok && lam < 1.0 && std::abs(gap) <= 0.15;
        d += " N=" + std::to_string(n) + ": " + num(100.0 * gap) + "%";
    }
    d += " (need within 15%, Lambda " + num(compressibility_number(b, c.film)) + ")";

    auto mirror = b;
    mirror.pump_direction = PumpDirection::pump_out;
    FilmState rev = c.film;
    rev.rpm = -rev.rpm;
    const double reflection = rel(load(mirror, rev, c.grid), load(b, c.film, c.grid));
    ok = ok && reflection <= 1e-6;
    d += "; reflection mismatch " + num(reflection);
    return {ok, d};
}

Outcome equilibrium() {
    const auto c = defaults();
    const double weight = turbo::rotor_mass(c.turbine) * c.gravity;
    try {
        const auto e = bearing::axial_equilibrium(c.top_bearing, c.bottom_bearing, c.total_gap, -weight, 15000.0,
                                                  c.film.ambient_pressure, c.film.viscosity, c.grid);
        const bool ok = e.converged && e.top_clearance > 0.0 && e.bottom_clearance > 0.0;
        return {ok, "top " + num(e.top_clearance * 1e6) + " um, bottom " + num(e.bottom_clearance * 1e6) +
                        " um, rotor weight " + num(weight) + " N, converged " + (e.converged ? "yes" : "no")};
    } catch (const SolverError& e) {
        return {false, e.what()};
    }
}

Outcome imbalance() {
    const auto c = defaults();
    const auto& s = c.turbine;
    const auto lib = turbo::imbalance_load(s, 0.05, 15000.0);
    const auto bf = oracle::brute_imbalance(s.rotor.blade_count, s.rotor.tip_radius(), s.rotor.hub_radius(),
                                            s.rotor.blade_height, s.disk_thickness, s.material_density,
                                            s.blade_solidity, 0.05);
    const double w = 2.0 * pi * 15000.0 / 60.0;
    const double oracle_load = bf.mass * bf.offset * w * w;
    const double slow = turbo::imbalance_load(s, 0.05, 7500.0).load;
    const double scale = rel(lib.load, 4.0 * slow);
    const bool ok = rel(lib.load, oracle_load) <= 0.01 && rel(lib.centroid_offset, bf.offset) <= 0.01 && scale <= 1e-6;
    return {ok, "load " + num(lib.load) + " N vs oracle " + num(oracle_load) + " N, offset " +
                    num(lib.centroid_offset) + " m vs " + num(bf.offset) + " m; omega^2 mismatch " + num(scale)};
}

Outcome determinism() {
    const fs::path base = fs::temp_directory_path() / ("mgt_accept_" + std::to_string(::getpid()));
    fs::remove_all(base);
    std::ostringstream out, err;
    const int a = cli::run_command("all", default_text(), base / "a", std::nullopt, out, err);
    const int b = cli::run_command("all", default_text(), base / "b", std::nullopt, out, err);
    std::map<std::string, std::string> fa, fb;
    for (auto* p : {&fa, &fb}) {
        const fs::path dir = base / (p == &fa ? "a" : "b");
        if (!fs::exists(dir)) continue;
        for (const auto& e : fs::directory_iterator(dir))
            if (e.path().extension() == ".csv") (*p)[e.path().filename().string()] = slurp(e.path());
    }
    fs::remove_all(base);
    const bool ok = a == 0 && b == 0 && fa.size() >= 7 && fa == fb;
    return {ok, std::to_string(fa.size()) + " CSV files, exit codes " + std::to_string(a) + "/" + std::to_string(b) +
                    (fa == fb ? ", byte-identical" : ", differ")};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget;  // s, 0 = none
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {1, "design-point net power", 1.0, design_power},
        {2, "design equivalence ratio", 1.0, design_phi},
        {3, "combustor stability map", 5.0, stability_map},
        {4, "exit-temperature band", 5.0, exit_band},
        {5, "flame-temperature oracle", 1.0, flame_oracle},
        {6, "turbine kinematics", 1.0, turbine_kinematics},
        {7, "bearing solver validation", 120.0, bearing_suite},
        {8, "axial equilibrium existence", 60.0, equilibrium},
        {9, "imbalance oracle", 10.0, imbalance},
        {10, "determinism", 0.0, determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = c.budget == 0.0 || dt < c.budget;
        const bool pass = o.pass && in_time;
        if (!pass) ++failures;
        std::printf("%s criterion %d (%s): %s [%.2f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                    dt, in_time ? "" : ", over budget");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
    return failures == 0 ? 0 : 1;
}
