#pragma once

// Reduced-order annular micro combustor.
//
// Thermal part: a lumped balance with three couplings. The chamber gas heats
// the wall through a chamber NTU, the hairpin recirculation channel pulls heat
// from the wall back into the fresh mixture (counterflow exchanger with a
// laminar constant-Nusselt correlation), and the outer wall loses G (Tw - Tamb)
// to the surroundings. Stability: Damkohler number of residence time over an
// Arrhenius-type global chemical time evaluated at the preheat temperature.

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "mgt/errors.hpp"
#include "mgt/gasprops.hpp"
#include "mgt/numerics.hpp"

namespace mgt::combustor {

using gas::GasComposition;
using numerics::kPi;

struct CombustorGeometry {
    double chamber_height = 1.2e-3;                     // m
    double annulus_outer_radius = 8.0e-3;               // m
    double annulus_inner_radius = 5.0e-3;               // m
    double recirculation_channel_length = 10.0e-3;      // m
    double recirculation_hydraulic_diameter = 1.0e-3;   // m
    double wall_thermal_conductance = 0.768776;         // W/K
    double die_footprint = 0.0215;                      // m

    double chamber_volume() const {
        return kPi * (annulus_outer_radius * annulus_outer_radius - annulus_inner_radius * annulus_inner_radius) *
               chamber_height;
    }

    std::vector<std::string> violations() const {
        std::vector<std::string> v;
        if (!(annulus_inner_radius > 0.0)) v.push_back("annulus_inner_radius must be > 0");
        if (!(annulus_outer_radius > annulus_inner_radius)) v.push_back("annulus_outer_radius must exceed annulus_inner_radius");
        if (!(chamber_height > 0.0)) v.push_back("chamber_height must be > 0");
        if (!(wall_thermal_conductance >= 0.0)) v.push_back("wall_thermal_conductance must be >= 0");
        if (!(recirculation_channel_length >= 0.0)) v.push_back("recirculation_channel_length must be >= 0");
        if (!(recirculation_hydraulic_diameter > 0.0)) v.push_back("recirculation_hydraulic_diameter must be > 0");
        if (!(die_footprint > 0.0)) v.push_back("die_footprint must be > 0");
        if (2.0 * annulus_outer_radius > die_footprint) v.push_back("annulus does not fit inside the die footprint");
        return v;
    }

    void validate() const {
        auto v = violations();
        if (!v.empty()) throw ParameterError(v.front());
    }
};

struct CombustorOperatingPoint {
    double air_mass_flow;               // kg/s
    double equivalence_ratio;
    double inlet_temperature = 300.0;   // K
    double inlet_pressure = 101325.0;   // Pa

    void validate() const {
        if (!(air_mass_flow > 0.0)) throw ParameterError("air_mass_flow must be > 0");
        if (!(equivalence_ratio >= 0.0)) throw ParameterError("equivalence_ratio must be >= 0");
        gas::check_lean(equivalence_ratio);
        if (!(inlet_temperature > 0.0)) throw ParameterError("inlet_temperature must be > 0");
        if (!(inlet_pressure > 0.0)) throw ParameterError("inlet_pressure must be > 0");
    }

    double fuel_mass_flow() const { return air_mass_flow * equivalence_ratio * gas::stoichiometric_fuel_air_ratio(); }
    double total_mass_flow() const { return air_mass_flow + fuel_mass_flow(); }
};

// tau_chem = A exp(Ea / (R T_pre)) / (phi^n (p/p_ref)^m)
struct ChemistryModel {
    double pre_exponential = 1.46537e-13;  // s
    double activation_energy = 65000.0;   // J/mol
    double phi_exponent = 2.0;
    double pressure_exponent = 1.0;
    double reference_pressure = 101325.0;  // Pa
    double critical_damkohler = 1.0;

    std::vector<std::string> violations() const {
        std::vector<std::string> v;
        if (!(pre_exponential > 0.0)) v.push_back("pre_exponential must be > 0");
        if (!(activation_energy > 0.0)) v.push_back("activation_energy must be > 0");
        if (!(phi_exponent > 0.0)) v.push_back("phi_exponent must be > 0");
        if (!(pressure_exponent >= 0.0)) v.push_back("pressure_exponent must be >= 0");
        if (!(reference_pressure > 0.0)) v.push_back("reference_pressure must be > 0");
        if (!(critical_damkohler > 0.0)) v.push_back("critical_damkohler must be > 0");
        return v;
    }
};

struct HeatTransferModel {
    double nusselt = 7.54;               // parallel plates, constant wall temperature
    double prandtl = 0.7;
    double chamber_ntu = 0.8;            // gas-to-wall, per unit chamber heat capacity rate
    double ambient_temperature = 300.0;  // K

    std::vector<std::string> violations() const {
        std::vector<std::string> v;
        if (!(nusselt > 0.0)) v.push_back("nusselt must be > 0");
        if (!(prandtl > 0.0)) v.push_back("prandtl must be > 0");
        if (!(chamber_ntu > 0.0)) v.push_back("chamber_ntu must be > 0");
        if (!(ambient_temperature > 0.0)) v.push_back("ambient_temperature must be > 0");
        return v;
    }
};

struct CombustorModel {
    ChemistryModel chemistry{};
    HeatTransferModel heat_transfer{};
};

/// Stoichiometric H2/air mass ratio for standard dry air.
inline double stoichiometric_fuel_air_ratio() { return gas::stoichiometric_fuel_air_ratio(); }

inline double equivalence_ratio(double fuel_mass_flow, double air_mass_flow) {
    return gas::equivalence_ratio(fuel_mass_flow, air_mass_flow);
}

/// Sutherland viscosity for air, Pa s.
inline double air_viscosity(double T) {
    return 1.716e-5 * std::pow(T / 273.15, 1.5) * (273.15 + 110.4) / (T + 110.4);
}

/// Complete-combustion adiabatic flame temperature (no dissociation).
inline double adiabatic_flame_temperature(double phi, double inlet_temperature, double inlet_pressure = 101325.0) {
    gas::check_lean(phi);
    if (!(inlet_pressure > 0.0)) throw ParameterError("inlet pressure must be > 0");
    if (phi == 0.0) return inlet_temperature;
    const GasComposition fresh = gas::fresh_mixture(phi);
    const GasComposition burned = gas::burned_composition(phi);
    const double h = gas::enthalpy_mass(fresh, inlet_temperature);
    return numerics::bisect([&](double T) { return gas::enthalpy_mass(burned, T) - h; }, inlet_temperature,
                            gas::table_t_max(burned), 1e-9);
}

struct RecuperatorResult {
    double preheat_temperature;  // K
    double effectiveness;
    double ntu;
    double heat_removed;         // W taken from the wall
};

inline RecuperatorResult recuperator_preheat(const CombustorGeometry& g, const CombustorOperatingPoint& op,
                                             double wall_temperature, const HeatTransferModel& ht = {}) {
    const double Tin = op.inlet_temperature;
    if (wall_temperature < Tin) throw ParameterError("wall temperature below mixture inlet temperature");
    const GasComposition fresh = gas::fresh_mixture(op.equivalence_ratio);
    const double mdot = op.total_mass_flow();
    const double T_film = 0.5 * (Tin + wall_temperature);
    const double cp = gas::cp_mass(fresh, T_film);
    const double k = air_viscosity(T_film) * cp / ht.prandtl;
    const double width = 2.0 * kPi * g.annulus_outer_radius;
    const double hA = ht.nusselt * k / g.recirculation_hydraulic_diameter * 2.0 * width * g.recirculation_channel_length;
    const double ntu = hA / (mdot * cp);
    const double eps = -std::expm1(-ntu);
    const double T_pre = Tin + eps * (wall_temperature - Tin);
    const double q = mdot * (gas::enthalpy_mass(fresh, T_pre) - gas::enthalpy_mass(fresh, Tin));
    return {T_pre, eps, ntu, q};
}

/// Chamber volume over volumetric throughput of products at flame_temperature.
inline double residence_time(const CombustorGeometry& g, const CombustorOperatingPoint& op, double flame_temperature) {
    if (!(flame_temperature > 0.0)) throw ParameterError("flame temperature must be > 0");
    const double M = gas::burned_composition(op.equivalence_ratio).molar_mass();
    const double rho = op.inlet_pressure * M / (gas::kUniversalGasConstant * flame_temperature);
    return g.chamber_volume() * rho / op.total_mass_flow();
}

inline double chemical_time(double phi, double pressure, double preheat_temperature, const ChemistryModel& c = {}) {
    if (!(phi >= 0.0)) throw ParameterError("equivalence ratio must be >= 0");
    if (!(pressure > 0.0)) throw ParameterError("pressure must be > 0");
    if (!(preheat_temperature > 0.0)) throw ParameterError("preheat temperature must be > 0");
    if (phi == 0.0) return std::numeric_limits<double>::infinity();
    return c.pre_exponential * std::exp(c.activation_energy / (gas::kUniversalGasConstant * preheat_temperature)) /
           (std::pow(phi, c.phi_exponent) * std::pow(pressure / c.reference_pressure, c.pressure_exponent));
}

struct ThermalState {
    double exit_temperature;      // K
    double wall_temperature;      // K
    double preheat_temperature;   // K
    double effectiveness;
    double heat_release;          // W, chemical
    double enthalpy_rise;         // W, gas stream inlet -> exit
    double wall_loss;             // W
    double recirculated_heat;     // W
};

namespace detail {

inline double exit_temperature_for_wall(const GasComposition& burned, double h_target) {
    const double t_lo = gas::table_t_min(burned);
    if (gas::enthalpy_mass(burned, t_lo) >= h_target) return t_lo;
    return numerics::bisect([&](double T) { return gas::enthalpy_mass(burned, T) - h_target; }, t_lo,
                            gas::table_t_max(burned), 1e-9);
}

}  // namespace detail

/// Lumped wall/gas balance of a burning chamber (no stability check).
inline ThermalState exit_temperature_reacting(const CombustorGeometry& g, const CombustorOperatingPoint& op,
                                              const HeatTransferModel& ht = {}) {
    g.validate();
    op.validate();
    const double phi = op.equivalence_ratio;
    const double Tin = op.inlet_temperature;
    const double Tamb = ht.ambient_temperature;
    const double mdot = op.total_mass_flow();
    const double G = g.wall_thermal_conductance;
    const GasComposition fresh = gas::fresh_mixture(phi);
    const GasComposition burned = gas::burned_composition(phi);
    const double h_in = gas::enthalpy_mass(fresh, Tin);
    const double heat_release = mdot * (gas::enthalpy_mass(fresh, gas::kReferenceTemperature) -
                                        gas::enthalpy_mass(burned, gas::kReferenceTemperature));

    auto exit_T = [&](double Tw) { return detail::exit_temperature_for_wall(burned, h_in - G * (Tw - Tamb) / mdot); };
    auto residual = [&](double Tw) {
        const double Te = exit_T(Tw);
        const double H = ht.chamber_ntu * mdot * gas::cp_mass(burned, Te);
        const auto rec = recuperator_preheat(g, op, Tw, ht);
        return H * (Te - Tw) - rec.heat_removed - G * (Tw - Tamb);
    };

    const double T_ad = adiabatic_flame_temperature(phi, Tin, op.inlet_pressure);
    double Tw = Tin;
    if (T_ad > Tin) Tw = numerics::bisect(residual, Tin, T_ad, 1e-9);
    const double Te = exit_T(Tw);
    const auto rec = recuperator_preheat(g, op, Tw, ht);
    const double loss = G * (Tw - Tamb);
    const double rise = mdot * (gas::sensible_enthalpy_mass(burned, Te) - gas::sensible_enthalpy_mass(fresh, Tin));
    return {Te, Tw, rec.preheat_temperature, rec.effectiveness, heat_release, rise, loss, rec.heat_removed};
}

struct StabilityResult {
    double residence_time;       // s
    double chemical_time;        // s
    double damkohler;
    bool stable;
    double exit_temperature;     // K
    double wall_temperature;     // K
    double preheat_temperature;  // K
    double flame_temperature;    // K, adiabatic at preheat
};

inline StabilityResult stability(const CombustorGeometry& g, const CombustorOperatingPoint& op,
                                 const CombustorModel& model = {}) {
    const auto th = exit_temperature_reacting(g, op, model.heat_transfer);
    const double phi = op.equivalence_ratio;
    const double T_flame = adiabatic_flame_temperature(phi, th.preheat_temperature, op.inlet_pressure);
    const double t_res = residence_time(g, op, T_flame);
    const double t_chem = chemical_time(phi, op.inlet_pressure, th.preheat_temperature, model.chemistry);
    const double Da = t_res / t_chem;
    const bool stable = Da >= model.chemistry.critical_damkohler;
    if (stable) {
        return {t_res, t_chem, Da, true, th.exit_temperature, th.wall_temperature, th.preheat_temperature, T_flame};
    }
    // blown out: fuel and air both enter at the inlet temperature
    return {t_res, t_chem, Da, false, op.inlet_temperature, op.inlet_temperature, th.preheat_temperature, T_flame};
}

struct ExitTemperature {
    double exit_temperature;  // K
    double wall_temperature;  // K
    bool reacting;
};

/// Exit and wall temperatures; non-reacting mixed temperature when blown out.
inline ExitTemperature exit_temperature(const CombustorGeometry& g, const CombustorOperatingPoint& op,
                                        const CombustorModel& model = {}) {
    const auto s = stability(g, op, model);
    return {s.exit_temperature, s.wall_temperature, s.stable};
}

/// Smallest stable air flow in [lo, hi] (kg/s), by bisection on the verdict.
/// Returns NaN when the whole interval is stable or unstable.
inline double minimum_stable_air_flow(const CombustorGeometry& g, double phi, double lo, double hi,
                                      const CombustorModel& model = {}, double rel_tol = 1e-6,
                                      double inlet_temperature = 300.0, double inlet_pressure = 101325.0) {
    auto ok = [&](double m) { return stability(g, {m, phi, inlet_temperature, inlet_pressure}, model).stable; };
    if (ok(lo) || !ok(hi)) return std::numeric_limits<double>::quiet_NaN();
    while (hi - lo > rel_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace mgt::combustor
