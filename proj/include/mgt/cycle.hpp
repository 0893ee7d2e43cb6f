#pragma once

// Simple-cycle Brayton solver: compressor, combustor and turbine chained
// station by station. Work terms are mass-specific enthalpy differences.

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "mgt/errors.hpp"
#include "mgt/gasprops.hpp"
#include "mgt/numerics.hpp"

namespace mgt::cycle {

using gas::GasComposition;
using gas::GasState;
using gas::PropertyModel;

inline constexpr double kHydrogenLhv = 120.0e6;  // J/kg
inline constexpr double kCombustorTMax = 3000.0;

struct CompressionResult {
    GasState exit;
    double specific_work;  // J/kg, positive into the gas
};

struct ExpansionResult {
    GasState exit;
    double specific_work;  // J/kg, positive out of the gas
};

struct CombustionResult {
    GasState exit;
    double mass_flow;      // air + fuel, kg/s
    double heat_release;   // W, eta * fuel * LHV
    double equivalence_ratio;
};

namespace detail {

inline void check_efficiency(const char* name, double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) {
        std::ostringstream msg;
        msg << name << " = " << eta << " must lie in (0, 1]";
        throw ParameterError(msg.str());
    }
}

// Temperature reached isentropically from (T1, p1) to p2.
inline double isentropic_temperature(const PropertyModel& model, const GasComposition& x, double T1,
                                     double p1, double p2) {
    if (model.is_constant()) {
        const double g = model.constant_gamma;
        return T1 * std::pow(p2 / p1, (g - 1.0) / g);
    }
    const double s1 = gas::entropy_mass(model, x, T1, p1);
    return numerics::bisect([&](double T) { return gas::entropy_mass(model, x, T, p2) - s1; },
                            gas::table_t_min(x), gas::table_t_max(x), 1e-10);
}

inline double temperature_at_enthalpy(const PropertyModel& model, const GasComposition& x, double hs) {
    return gas::temperature_from_sensible_enthalpy(model, x, hs, gas::table_t_min(x), gas::table_t_max(x));
}

}  // namespace detail

/// Adiabatic compression by pressure_ratio at isentropic efficiency eta.
inline CompressionResult compress(const GasState& inlet, double pressure_ratio, double eta,
                                  const PropertyModel& model = {}) {
    detail::check_efficiency("eta_compressor", eta);
    if (!(pressure_ratio >= 1.0)) throw ParameterError("compressor pressure ratio must be >= 1");
    if (pressure_ratio == 1.0) return {inlet, 0.0};

    const auto& x = inlet.composition;
    const double T1 = inlet.temperature;
    const double p2 = inlet.pressure * pressure_ratio;
    const double T2s = detail::isentropic_temperature(model, x, T1, inlet.pressure, p2);
    const double h1 = gas::sensible_enthalpy_mass(model, x, T1);
    const double w = (gas::sensible_enthalpy_mass(model, x, T2s) - h1) / eta;
    const double T2 = detail::temperature_at_enthalpy(model, x, h1 + w);
    return {GasState(x, T2, p2), w};
}

/// Adiabatic expansion to exit_pressure at isentropic efficiency eta.
inline ExpansionResult expand(const GasState& inlet, double exit_pressure, double eta,
                              const PropertyModel& model = {}) {
    detail::check_efficiency("eta_turbine", eta);
    if (!(exit_pressure > 0.0)) throw ParameterError("turbine exit pressure must be positive");
    if (exit_pressure > inlet.pressure) {
        std::ostringstream msg;
        msg << "turbine exit pressure " << exit_pressure << " Pa exceeds inlet pressure " << inlet.pressure << " Pa";
        throw ParameterError(msg.str());
    }
    if (exit_pressure == inlet.pressure) return {inlet, 0.0};

    const auto& x = inlet.composition;
    const double T1 = inlet.temperature;
    const double T2s = detail::isentropic_temperature(model, x, T1, inlet.pressure, exit_pressure);
    const double h1 = gas::sensible_enthalpy_mass(model, x, T1);
    const double w = (h1 - gas::sensible_enthalpy_mass(model, x, T2s)) * eta;
    const double T2 = detail::temperature_at_enthalpy(model, x, h1 - w);
    return {GasState(x, T2, exit_pressure), w};
}

/// Burns H2 (entering at fuel_temperature) in the inlet air stream.
/// Heat released eta * mf * LHV goes into the mixed product stream.
inline CombustionResult combust(const GasState& inlet, double air_mass_flow, double fuel_mass_flow, double eta,
                                double sigma, const PropertyModel& model = {},
                                double fuel_temperature = std::numeric_limits<double>::quiet_NaN(),
                                double lhv = kHydrogenLhv) {
    detail::check_efficiency("eta_combustor", eta);
    detail::check_efficiency("sigma_combustor", sigma);
    if (!(lhv > 0.0)) throw ParameterError("fuel LHV must be positive");
    const double phi = gas::equivalence_ratio(fuel_mass_flow, air_mass_flow);
    gas::check_lean(phi);

    const double p_exit = inlet.pressure * sigma;
    if (fuel_mass_flow == 0.0) {
        return {GasState(inlet.composition, inlet.temperature, p_exit), air_mass_flow, 0.0, 0.0};
    }
    const double Tf = std::isnan(fuel_temperature) ? inlet.temperature : fuel_temperature;
    const double mdot = air_mass_flow + fuel_mass_flow;
    const double Q = eta * fuel_mass_flow * lhv;
    const GasComposition products = gas::burned_composition(phi);

    double T_exit;
    if (model.is_constant()) {
        const double cp = model.constant_cp;
        T_exit = (air_mass_flow * inlet.temperature + fuel_mass_flow * Tf) / mdot + Q / (mdot * cp);
    } else {
        const double H_in = air_mass_flow * gas::sensible_enthalpy_mass(inlet.composition, inlet.temperature) +
                            fuel_mass_flow * gas::sensible_enthalpy_mass(gas::pure("H2"), Tf) + Q;
        const double lo = std::min(inlet.temperature, Tf);
        T_exit = numerics::bisect(
            [&](double T) { return mdot * gas::sensible_enthalpy_mass(products, T) - H_in; }, lo, kCombustorTMax,
            1e-9);
    }
    return {GasState(products, T_exit, p_exit), mdot, Q, phi};
}

struct CycleDesignPoint {
    GasState ambient{gas::standard_air(), 300.0, 101325.0};
    double air_mass_flow = 0.36e-3;             // kg/s
    double pressure_ratio = 4.0;
    double fuel_mass_flow = 17.0 / 3600.0 * 1e-3;  // kg/s
    double eta_compressor = 0.65;
    double eta_turbine = 0.75;
    double eta_combustor = 0.74;
    double sigma_combustor = 0.92;
    double eta_mechanical = 1.0;
    double fuel_lhv = kHydrogenLhv;              // J/kg
    PropertyModel properties{};

    std::vector<std::string> violations() const {
        std::vector<std::string> v;
        auto eff = [&v](const char* name, double x) {
            if (!(x > 0.0 && x <= 1.0)) {
                std::ostringstream m;
                m << name << " = " << x << " must lie in (0, 1]";
                v.push_back(m.str());
            }
        };
        eff("eta_compressor", eta_compressor);
        eff("eta_turbine", eta_turbine);
        eff("eta_combustor", eta_combustor);
        eff("sigma_combustor", sigma_combustor);
        eff("eta_mechanical", eta_mechanical);
        if (!(pressure_ratio >= 1.0)) v.push_back("pressure_ratio must be >= 1");
        if (!(air_mass_flow > 0.0)) v.push_back("air_mass_flow must be > 0");
        if (!(fuel_mass_flow >= 0.0)) v.push_back("fuel_mass_flow must be >= 0");
        if (!(fuel_lhv > 0.0)) v.push_back("fuel_lhv must be > 0");
        return v;
    }

    void validate() const {
        auto v = violations();
        if (!v.empty()) throw ParameterError(v.front());
    }
};

struct StationState {
    std::string label;
    GasState state;
    double mass_flow;  // kg/s
};

struct CyclePerformance {
    double net_power;            // W
    double compressor_power;     // W
    double turbine_power;        // W
    double turbine_inlet_temperature;  // K
    double thermal_efficiency;
    double specific_fuel_consumption;  // kg/J
    double equivalence_ratio;
};

struct CycleResult {
    CyclePerformance performance;
    std::vector<StationState> stations;
    std::vector<std::string> warnings;
};

inline CycleResult run_cycle(const CycleDesignPoint& d) {
    d.validate();
    const auto& model = d.properties;
    CycleResult out;

    const auto comp = compress(d.ambient, d.pressure_ratio, d.eta_compressor, model);
    const auto burn = combust(comp.exit, d.air_mass_flow, d.fuel_mass_flow, d.eta_combustor, d.sigma_combustor,
                              model, d.ambient.temperature, d.fuel_lhv);

    const double p_out = d.ambient.pressure;
    ExpansionResult turb{burn.exit, 0.0};
    if (burn.exit.pressure > p_out) {
        turb = expand(burn.exit, p_out, d.eta_turbine, model);
    } else {
        out.warnings.push_back("turbine inlet pressure does not exceed ambient; no expansion work");
    }

    const double Wc = d.air_mass_flow * comp.specific_work;
    const double Wt = burn.mass_flow * turb.specific_work;
    const double net = Wt * d.eta_mechanical - Wc;
    const double fuel_power = d.fuel_mass_flow * d.fuel_lhv;

    CyclePerformance& perf = out.performance;
    perf.net_power = net;
    perf.compressor_power = Wc;
    perf.turbine_power = Wt;
    perf.turbine_inlet_temperature = burn.exit.temperature;
    perf.thermal_efficiency = fuel_power > 0.0 ? net / fuel_power : 0.0;
    perf.specific_fuel_consumption =
        net > 0.0 ? d.fuel_mass_flow / net : std::numeric_limits<double>::infinity();
    perf.equivalence_ratio = burn.equivalence_ratio;

    out.stations = {
        {"inlet", d.ambient, d.air_mass_flow},
        {"compressor-exit", comp.exit, d.air_mass_flow},
        {"combustor-exit", burn.exit, burn.mass_flow},
        {"turbine-exit", turb.exit, burn.mass_flow},
    };
    return out;
}

/// eta_mechanical giving the requested net power, all else fixed.
inline double fit_mechanical_efficiency(CycleDesignPoint d, double target_net_power) {
    d.eta_mechanical = 1.0;
    const auto perf = run_cycle(d).performance;
    if (!(perf.turbine_power > 0.0)) throw DomainError("turbine produces no power; cannot fit eta_mechanical");
    const double eta = (target_net_power + perf.compressor_power) / perf.turbine_power;
    if (!(eta > 0.0 && eta <= 1.0)) {
        std::ostringstream msg;
        msg << "target net power " << target_net_power << " W needs eta_mechanical = " << eta << ", outside (0, 1]";
        throw DomainError(msg.str());
    }
    return eta;
}

}  // namespace mgt::cycle
