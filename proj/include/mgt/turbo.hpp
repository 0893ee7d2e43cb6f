#pragma once

// Meanline analysis of the planar radial-inflow turbine: velocity triangles
// at rotor inlet (tip) and exit (hub), Euler work, incidence matching, cold
// drive derating and the imbalance load from a tilted etch depth.

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mgt/errors.hpp"
#include "mgt/gasprops.hpp"
#include "mgt/numerics.hpp"

namespace mgt::turbo {

using gas::GasState;
using gas::PropertyModel;
using numerics::deg_to_rad;
using numerics::kPi;
using numerics::rad_to_deg;

inline constexpr double kSiliconDensity = 2330.0;  // kg/m^3

struct RotorGeometry {
    int blade_count = 17;
    double outer_diameter = 8.2e-3;   // m
    double inner_diameter = 4.4e-3;   // m
    double blade_height = 0.4e-3;     // m
    std::optional<double> inlet_blade_angle;  // deg from radial; empty = match zero incidence at design
    double exit_blade_angle = -50.0;  // deg from radial
    std::optional<double> rotor_mass;  // kg; empty = from geometry

    double tip_radius() const { return 0.5 * outer_diameter; }
    double hub_radius() const { return 0.5 * inner_diameter; }

    std::vector<std::string> violations() const {
        std::vector<std::string> v;
        if (!(inner_diameter > 0.0)) v.push_back("rotor inner_diameter must be > 0");
        if (!(outer_diameter > inner_diameter)) v.push_back("rotor outer_diameter must exceed inner_diameter");
        if (blade_count < 2) v.push_back("rotor blade_count must be >= 2");
        if (!(blade_height > 0.0)) v.push_back("rotor blade_height must be > 0");
        if (inlet_blade_angle && !(std::abs(*inlet_blade_angle) < 90.0)) v.push_back("rotor inlet_blade_angle must lie in (-90, 90) deg");
        if (!(std::abs(exit_blade_angle) < 90.0)) v.push_back("rotor exit_blade_angle must lie in (-90, 90) deg");
        if (rotor_mass && !(*rotor_mass > 0.0)) v.push_back("rotor_mass must be > 0");
        return v;
    }
};

struct StatorGeometry {
    int vane_count = 23;
    double exit_flow_angle = 70.0;  // deg from radial
    double exit_radius = 4.3e-3;    // m

    std::vector<std::string> violations() const {
        std::vector<std::string> v;
        if (vane_count < 2) v.push_back("stator vane_count must be >= 2");
        if (!(exit_flow_angle > 0.0 && exit_flow_angle < 89.0)) v.push_back("stator exit_flow_angle must lie in (0, 89) deg");
        if (!(exit_radius > 0.0)) v.push_back("stator exit_radius must be > 0");
        return v;
    }
};

struct TurbineStage {
    RotorGeometry rotor{};
    StatorGeometry stator{};
    double blockage = 0.9;                  // effective / geometric flow area
    double material_density = kSiliconDensity;
    double disk_thickness = 0.4e-3;         // m
    double blade_solidity = 0.1;            // blade fraction of the bladed annulus

    std::vector<std::string> violations() const {
        auto v = rotor.violations();
        for (auto& s : stator.violations()) v.push_back(s);
        if (!(stator.exit_radius >= rotor.tip_radius())) v.push_back("stator exit_radius must not be inside the rotor tip");
        if (!(blockage > 0.0 && blockage <= 1.0)) v.push_back("blockage must lie in (0, 1]");
        if (!(material_density > 0.0)) v.push_back("material_density must be > 0");
        if (!(disk_thickness >= 0.0)) v.push_back("disk_thickness must be >= 0");
        if (!(blade_solidity > 0.0 && blade_solidity <= 1.0)) v.push_back("blade_solidity must lie in (0, 1]");
        return v;
    }

    void validate() const {
        auto v = violations();
        if (!v.empty()) throw ParameterError(v.front());
    }

    double inlet_area() const { return 2.0 * kPi * rotor.tip_radius() * rotor.blade_height * blockage; }
    double exit_area() const { return 2.0 * kPi * rotor.hub_radius() * rotor.blade_height * blockage; }
};

struct VelocityTriangle {
    double U;         // blade speed, m/s
    double Cm;        // meridional (radial) absolute = relative, m/s
    double Ctheta;    // absolute tangential, m/s
    double Wtheta;    // relative tangential, m/s
    double alpha;     // absolute flow angle, deg from meridional
    double beta;      // relative flow angle, deg from meridional
};

/// U = omega r.
inline double blade_speed(double radius, double rpm) {
    if (!(radius >= 0.0)) throw ParameterError("radius must be >= 0");
    if (!(rpm >= 0.0)) throw ParameterError("rpm must be >= 0");
    return 2.0 * kPi * rpm / 60.0 * radius;
}

inline double meridional_velocity(double mass_flow, const GasState& state, double flow_area,
                                  const PropertyModel& model = {}) {
    if (!(flow_area > 0.0)) throw ParameterError("flow area must be > 0");
    if (!(mass_flow > 0.0)) throw ParameterError("mass flow must be > 0");
    return mass_flow / (gas::density(model, state) * flow_area);
}

namespace detail {
inline VelocityTriangle from_components(double U, double Cm, double Ctheta) {
    const double Wtheta = Ctheta - U;
    return {U, Cm, Ctheta, Wtheta, rad_to_deg(std::atan(Ctheta / Cm)), rad_to_deg(std::atan(Wtheta / Cm))};
}
}  // namespace detail

/// Triangle from a prescribed absolute flow angle (stator-fed station).
inline VelocityTriangle velocity_triangle(double radius, double rpm, double mass_flow, const GasState& state,
                                          double flow_area, double absolute_flow_angle,
                                          const PropertyModel& model = {}) {
    const double U = blade_speed(radius, rpm);
    const double Cm = meridional_velocity(mass_flow, state, flow_area, model);
    return detail::from_components(U, Cm, Cm * std::tan(deg_to_rad(absolute_flow_angle)));
}

/// Triangle from a prescribed relative flow angle (flow leaving a blade row).
inline VelocityTriangle velocity_triangle_relative(double radius, double rpm, double mass_flow, const GasState& state,
                                                   double flow_area, double relative_flow_angle,
                                                   const PropertyModel& model = {}) {
    const double U = blade_speed(radius, rpm);
    const double Cm = meridional_velocity(mass_flow, state, flow_area, model);
    return detail::from_components(U, Cm, U + Cm * std::tan(deg_to_rad(relative_flow_angle)));
}

/// Relative flow angle minus blade metal angle, deg.
inline double incidence(const VelocityTriangle& t, double blade_angle) { return t.beta - blade_angle; }

/// w = U1 Ctheta1 - U2 Ctheta2.
inline double euler_specific_work(const VelocityTriangle& in, const VelocityTriangle& out) {
    return in.U * in.Ctheta - out.U * out.Ctheta;
}

// Rotor-inlet triangle. Free vortex and continuity across the vaneless gap
// both scale with 1/r, so the stator exit angle carries to the rotor tip.
inline VelocityTriangle inlet_triangle(const TurbineStage& s, double rpm, double mass_flow, const GasState& state,
                                       const PropertyModel& model = {}) {
    return velocity_triangle(s.rotor.tip_radius(), rpm, mass_flow, state, s.inlet_area(), s.stator.exit_flow_angle,
                             model);
}

// Exit at the hub with flow leaving at the blade angle; inlet density kept.
inline VelocityTriangle exit_triangle(const TurbineStage& s, double rpm, double mass_flow, const GasState& state,
                                      const PropertyModel& model = {}) {
    return velocity_triangle_relative(s.rotor.hub_radius(), rpm, mass_flow, state, s.exit_area(),
                                      s.rotor.exit_blade_angle, model);
}

/// rpm at which the relative inlet flow angle equals blade_angle.
inline double zero_incidence_rpm(const TurbineStage& s, double mass_flow, const GasState& state, double blade_angle,
                                  const PropertyModel& model = {}) {
    const double Cm = meridional_velocity(mass_flow, state, s.inlet_area(), model);
    const double Ctheta = Cm * std::tan(deg_to_rad(s.stator.exit_flow_angle));
    const double U = Ctheta - Cm * std::tan(deg_to_rad(blade_angle));
    if (!(U >= 0.0)) {
        std::ostringstream msg;
        msg << "blade angle " << blade_angle << " deg needs reverse rotation for zero incidence";
        throw DomainError(msg.str());
    }
    return U / (2.0 * kPi * s.rotor.tip_radius()) * 60.0;
}

/// Inlet metal angle giving zero incidence at (rpm, mass_flow, state).
inline double matched_inlet_blade_angle(const TurbineStage& s, double rpm, double mass_flow, const GasState& state,
                                        const PropertyModel& model = {}) {
    return inlet_triangle(s, rpm, mass_flow, state, model).beta;
}

inline double inlet_blade_angle(const TurbineStage& s) {
    if (!s.rotor.inlet_blade_angle) throw ParameterError("rotor inlet blade angle has not been resolved");
    return *s.rotor.inlet_blade_angle;
}

struct StagePoint {
    double rpm;
    VelocityTriangle inlet;
    VelocityTriangle exit;
    double incidence;      // deg
    double specific_work;  // J/kg
    double power;          // W
};

inline StagePoint evaluate(const TurbineStage& s, double rpm, double mass_flow, const GasState& state,
                           const PropertyModel& model = {}) {
    const auto in = inlet_triangle(s, rpm, mass_flow, state, model);
    const auto out = exit_triangle(s, rpm, mass_flow, state, model);
    const double w = euler_specific_work(in, out);
    return {rpm, in, out, incidence(in, inlet_blade_angle(s)), w, mass_flow * w};
}

struct DerateResult {
    double rpm_ratio;    // cold / hot zero-incidence rpm
    double power_ratio;  // cold / hot power, zero exit swirl
    double hot_rpm;
    double cold_rpm;
};

/// Cold-air drive versus hot-gas drive at equal mass flow.
inline DerateResult cold_drive_derate(const GasState& hot, const GasState& cold, const TurbineStage& s,
                                      double mass_flow, const PropertyModel& model = {}) {
    const double beta = inlet_blade_angle(s);
    auto run = [&](const GasState& g) {
        const double rpm = zero_incidence_rpm(s, mass_flow, g, beta, model);
        const auto in = inlet_triangle(s, rpm, mass_flow, g, model);
        return std::pair{rpm, mass_flow * in.U * in.Ctheta};
    };
    const auto [rpm_h, p_h] = run(hot);
    const auto [rpm_c, p_c] = run(cold);
    return {rpm_c / rpm_h, p_c / p_h, rpm_h, rpm_c};
}

/// Total-pressure ratio across an ideal stage extracting specific_work from state.
inline double stage_pressure_ratio(double specific_work, const GasState& inlet, const PropertyModel& model = {}) {
    const double T = inlet.temperature;
    const double cp = gas::cp_mass(model, inlet.composition, T);
    const double g = gas::gamma(model, inlet.composition, T);
    const double T_out = T - specific_work / cp;
    if (!(T_out > 0.0)) throw DomainError("specific work exceeds the available enthalpy");
    return std::pow(T / T_out, g / (g - 1.0));
}

// ---------------------------------------------------------------------------
// Mass properties.

inline double blade_volume(const TurbineStage& s) {
    const double R = s.rotor.tip_radius(), r = s.rotor.hub_radius();
    return s.blade_solidity * kPi * (R * R - r * r) * s.rotor.blade_height;
}

inline double rotor_mass(const TurbineStage& s) {
    if (s.rotor.rotor_mass) return *s.rotor.rotor_mass;
    const double R = s.rotor.tip_radius();
    return s.material_density * (kPi * R * R * s.disk_thickness + blade_volume(s));
}

struct ImbalanceResult {
    double load;              // N
    double centroid_offset;   // m
};

/// Blade height tilted linearly across the diameter by `fraction` of nominal:
/// h(x) = b (1 + fraction x / (2 R)). Only the blades carry the tilt.
inline ImbalanceResult imbalance_load(const TurbineStage& s, double fraction, double rpm) {
    if (!(fraction >= 0.0 && fraction < 1.0)) throw ParameterError("etch non-uniformity fraction must lie in [0, 1)");
    if (!(rpm >= 0.0)) throw ParameterError("rpm must be >= 0");
    const double R = s.rotor.tip_radius(), r = s.rotor.hub_radius();
    const double b = s.rotor.blade_height;
    const double moment = s.material_density * s.blade_solidity * b * fraction / (2.0 * R) * kPi *
                          (std::pow(R, 4) - std::pow(r, 4)) / 4.0;
    const double m = rotor_mass(s);
    const double e = moment / m;
    const double omega = 2.0 * kPi * rpm / 60.0;
    return {m * e * omega * omega, e};
}

}  // namespace mgt::turbo
