#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mgt/cycle.hpp"
#include "mgt/turbo.hpp"
#include "oracle.hpp"

using namespace mgt;
using namespace mgt::turbo;
using mgt::gas::GasState;

namespace {

constexpr double pi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

GasState hot_gas() { return GasState(gas::burned_composition(0.45), 1200.0, 3.0e5); }
GasState cold_air() { return GasState(gas::standard_air(), 300.0, 3.0e5); }

TurbineStage matched_stage(const GasState& g, double rpm = 15000.0, double mdot = 0.36e-3) {
    TurbineStage s;
    s.rotor.inlet_blade_angle = matched_inlet_blade_angle(s, rpm, mdot, g);
    return s;
}

void expect_consistent(const VelocityTriangle& t) {
    EXPECT_EQ(t.Wtheta, t.Ctheta - t.U);
    EXPECT_NEAR(std::tan(t.alpha * pi / 180.0), t.Ctheta / t.Cm, 1e-9 * (1.0 + std::abs(t.Ctheta / t.Cm)));
    EXPECT_NEAR(std::tan(t.beta * pi / 180.0), t.Wtheta / t.Cm, 1e-9 * (1.0 + std::abs(t.Wtheta / t.Cm)));
}

oracle::Imbalance brute_imbalance(const TurbineStage& s, double f) {
    return oracle::brute_imbalance(s.rotor.blade_count, s.rotor.tip_radius(), s.rotor.hub_radius(),
                                   s.rotor.blade_height, s.disk_thickness, s.material_density, s.blade_solidity, f);
}

}  // namespace

TEST(Turbo, BladeSpeedExamples) {
    EXPECT_EQ(blade_speed(4.1e-3, 0.0), 0.0);
    EXPECT_NEAR(blade_speed(4.1e-3, 15000.0), 2.0 * pi * 15000.0 / 60.0 * 0.0041, 1e-12);
    EXPECT_NEAR(blade_speed(4.1e-3, 15000.0), 6.44, 0.01);
    EXPECT_NEAR(blade_speed(2.2e-3, 15000.0), 3.46, 0.01);
    EXPECT_THROW(blade_speed(-1e-3, 100.0), ParameterError);
    EXPECT_THROW(blade_speed(1e-3, -1.0), ParameterError);
}

TEST(Turbo, PureRadialInflow) {
    const auto t = velocity_triangle(4.1e-3, 15000.0, 0.36e-3, hot_gas(), 9e-6, 0.0);
    EXPECT_EQ(t.Ctheta, 0.0);
    EXPECT_NEAR(t.beta, std::atan(-t.U / t.Cm) * 180.0 / pi, 1e-12);
    expect_consistent(t);
}

TEST(Turbo, BladeSpeedEqualToSwirlGivesMeridionalRelativeFlow) {
    TurbineStage s;
    const auto g = hot_gas();
    const double rpm = zero_incidence_rpm(s, 0.36e-3, g, 0.0);
    const auto t = inlet_triangle(s, rpm, 0.36e-3, g);
    EXPECT_NEAR(t.U, t.Ctheta, 1e-12 * t.Ctheta);
    EXPECT_NEAR(t.beta, 0.0, 1e-9);
}

TEST(Turbo, TriangleMatchesHandEvaluationAtCombustorExit) {
    const auto cyc = cycle::run_cycle(cycle::CycleDesignPoint{});
    const auto& st = cyc.stations[2].state;
    TurbineStage s;
    const double mdot = 0.36e-3;
    const auto t = inlet_triangle(s, 15000.0, mdot, st);

    const auto x = oracle::normalized(oracle::products_per_air(cyc.performance.equivalence_ratio));
    const double rho = st.pressure * oracle::molar_mass(x) / (oracle::Ru * st.temperature);
    const double A = 2.0 * pi * 4.1e-3 * 0.4e-3 * 0.9;
    const double Cm = mdot / (rho * A);
    const double Ct = Cm * std::tan(70.0 * pi / 180.0);
    const double U = 2.0 * pi * 15000.0 / 60.0 * 4.1e-3;
    EXPECT_LT(rel(t.Cm, Cm), 1e-9);
    EXPECT_LT(rel(t.Ctheta, Ct), 1e-9);
    EXPECT_LT(rel(t.U, U), 1e-12);
    EXPECT_LT(rel(t.Wtheta, Ct - U), 1e-9);
    expect_consistent(t);
}

TEST(Turbo, TriangleIdentityEverywhere) {
    const auto g = hot_gas();
    for (double rpm : {0.0, 1000.0, 15000.0, 60000.0})
        for (double a : {-60.0, 0.0, 30.0, 70.0, 85.0}) {
            expect_consistent(velocity_triangle(3e-3, rpm, 0.36e-3, g, 9e-6, a));
            expect_consistent(velocity_triangle_relative(3e-3, rpm, 0.36e-3, g, 9e-6, a));
        }
}

TEST(Turbo, MeridionalVelocityErrors) {
    EXPECT_THROW(meridional_velocity(0.36e-3, hot_gas(), 0.0), ParameterError);
    EXPECT_THROW(meridional_velocity(0.0, hot_gas(), 1e-6), ParameterError);
}

TEST(Turbo, IncidenceExamples) {
    const auto g = hot_gas();
    TurbineStage s;
    const auto t = inlet_triangle(s, 12000.0, 0.36e-3, g);
    EXPECT_EQ(incidence(t, t.beta), 0.0);

    for (double blade : {40.0, 60.0, 69.0}) {
        const double rpm = zero_incidence_rpm(s, 0.36e-3, g, blade);
        EXPECT_LT(std::abs(incidence(inlet_triangle(s, rpm, 0.36e-3, g), blade)), 1e-6);
    }
}

TEST(Turbo, IncidenceStrictlyDecreasingInRpm) {
    const auto g = hot_gas();
    TurbineStage s;
    const double blade = 60.0;
    double prev = incidence(inlet_triangle(s, 0.0, 0.36e-3, g), blade);
    for (int k = 1; k <= 5; ++k) {
        const double rpm = 10000.0 * k;
        const double h = 1.0;
        const double a = incidence(inlet_triangle(s, rpm - h, 0.36e-3, g), blade);
        const double b = incidence(inlet_triangle(s, rpm + h, 0.36e-3, g), blade);
        EXPECT_LT((b - a) / (2.0 * h), 0.0) << rpm;
        const double cur = incidence(inlet_triangle(s, rpm, 0.36e-3, g), blade);
        EXPECT_LT(cur, prev);
        prev = cur;
    }
}

TEST(Turbo, ZeroIncidenceRpmUnique) {
    const auto g = hot_gas();
    TurbineStage s;
    const double blade = 55.0;
    const double rpm0 = zero_incidence_rpm(s, 0.36e-3, g, blade);
    // sign change exactly once across a wide scan
    int changes = 0;
    double prev = incidence(inlet_triangle(s, 0.0, 0.36e-3, g), blade);
    for (double rpm = 500.0; rpm <= 3.0e5; rpm += 500.0) {
        const double cur = incidence(inlet_triangle(s, rpm, 0.36e-3, g), blade);
        if ((prev > 0) != (cur > 0)) ++changes;
        prev = cur;
    }
    EXPECT_EQ(changes, 1);
    EXPECT_GT(rpm0, 0.0);
    EXPECT_THROW(zero_incidence_rpm(s, 0.36e-3, g, 89.0), DomainError);
}

TEST(Turbo, EulerWorkExamples) {
    const VelocityTriangle in{6.44, 10.0, 20.0, 13.56, 0.0, 0.0};
    const VelocityTriangle same{6.44, 5.0, 20.0, 13.56, 0.0, 0.0};
    EXPECT_EQ(euler_specific_work(in, same), 0.0);
    const VelocityTriangle out{3.46, 10.0, 0.0, -3.46, 0.0, 0.0};
    EXPECT_NEAR(euler_specific_work(in, out), 128.8, 1e-9);
    EXPECT_NEAR(0.36e-3 * euler_specific_work(in, out), 0.046, 0.001);
}

TEST(Turbo, EvaluatePowerIsMassFlowTimesWork) {
    const auto g = hot_gas();
    const auto s = matched_stage(g);
    const auto pt = evaluate(s, 15000.0, 0.36e-3, g);
    EXPECT_NEAR(pt.incidence, 0.0, 1e-9);
    EXPECT_DOUBLE_EQ(pt.power, 0.36e-3 * pt.specific_work);
    EXPECT_DOUBLE_EQ(pt.specific_work, pt.inlet.U * pt.inlet.Ctheta - pt.exit.U * pt.exit.Ctheta);
    TurbineStage unresolved;
    EXPECT_THROW(evaluate(unresolved, 15000.0, 0.36e-3, g), ParameterError);
}

TEST(Turbo, ColdDriveSameStateIsUnity) {
    const auto g = hot_gas();
    const auto s = matched_stage(g);
    const auto d = cold_drive_derate(g, g, s, 0.36e-3);
    EXPECT_DOUBLE_EQ(d.rpm_ratio, 1.0);
    EXPECT_DOUBLE_EQ(d.power_ratio, 1.0);
}

TEST(Turbo, ColdDriveDecreases) {
    const auto s = matched_stage(hot_gas());
    const auto d = cold_drive_derate(hot_gas(), cold_air(), s, 0.36e-3);
    EXPECT_LT(d.power_ratio, 1.0);
    EXPECT_LT(d.rpm_ratio, 1.0);
    EXPECT_GT(d.power_ratio, 0.0);
}

TEST(Turbo, ColdDrivePowerRatioIsDensityRatioSquared) {
    const auto s = matched_stage(hot_gas());
    const auto d = cold_drive_derate(hot_gas(), cold_air(), s, 0.36e-3);
    // Cm ~ 1/rho, U at zero incidence ~ Cm, Ctheta ~ Cm, so P ~ Cm^2
    const double Mh = oracle::molar_mass(oracle::normalized(oracle::products_per_air(0.45)));
    const double Mc = oracle::molar_mass(oracle::air());
    const double rho_h = 3.0e5 * Mh / (oracle::Ru * 1200.0);
    const double rho_c = 3.0e5 * Mc / (oracle::Ru * 300.0);
    const double ratio = std::pow(rho_h / rho_c, 2);
    EXPECT_LT(rel(d.power_ratio, ratio), 0.01);
    EXPECT_LT(rel(d.rpm_ratio, rho_h / rho_c), 0.01);
}

TEST(Turbo, ColdDriveRatiosBelowOneAcrossTemperatures) {
    const auto s = matched_stage(hot_gas());
    for (double Tc : {250.0, 400.0, 800.0, 1100.0}) {
        const auto d = cold_drive_derate(hot_gas(), GasState(gas::standard_air(), Tc, 3.0e5), s, 0.36e-3);
        EXPECT_LE(d.power_ratio, 1.0) << Tc;
        EXPECT_LE(d.rpm_ratio, 1.0) << Tc;
    }
}

TEST(Turbo, EulerWorkMatchesCycleEnthalpyDrop) {
    // design point: cycle combustor exit, 15000 rpm, exit angle set for zero exit swirl
    const auto cyc = cycle::run_cycle(cycle::CycleDesignPoint{});
    const auto st = cyc.stations[2].state;
    const double mdot = 0.36e-3, rpm = 15000.0;
    auto s = matched_stage(st, rpm, mdot);
    const double U_hub = blade_speed(s.rotor.hub_radius(), rpm);
    const double Cm_exit = meridional_velocity(mdot, st, s.exit_area());
    s.rotor.exit_blade_angle = std::atan(-U_hub / Cm_exit) * 180.0 / pi;
    const auto pt = evaluate(s, rpm, mdot, st);
    EXPECT_NEAR(pt.exit.Ctheta, 0.0, 1e-9);

    const double pr = stage_pressure_ratio(pt.specific_work, st);
    const auto ex = cycle::expand(st, st.pressure / pr, 1.0);
    EXPECT_LT(rel(ex.specific_work, pt.specific_work), 0.02);
}

TEST(Turbo, StagePressureRatioErrors) {
    EXPECT_EQ(stage_pressure_ratio(0.0, hot_gas()), 1.0);
    EXPECT_THROW(stage_pressure_ratio(1e8, hot_gas()), DomainError);
}

TEST(Turbo, ImbalanceZeroFraction) {
    TurbineStage s;
    const auto r = imbalance_load(s, 0.0, 15000.0);
    EXPECT_EQ(r.load, 0.0);
    EXPECT_EQ(r.centroid_offset, 0.0);
}

TEST(Turbo, ImbalanceOmegaSquared) {
    TurbineStage s;
    const double a = imbalance_load(s, 0.05, 7500.0).load;
    const double b = imbalance_load(s, 0.05, 15000.0).load;
    EXPECT_LT(rel(b, 4.0 * a), 1e-6);
}

TEST(Turbo, ImbalanceLinearInFraction) {
    TurbineStage s;
    const double a = imbalance_load(s, 0.01, 15000.0).load;
    const double b = imbalance_load(s, 0.02, 15000.0).load;
    EXPECT_LT(std::abs(a / b - 0.5) / 0.5, 0.01);
}

TEST(Turbo, ImbalanceMatchesBruteForceIntegration) {
    TurbineStage s;
    const auto lib = imbalance_load(s, 0.05, 15000.0);
    const auto bf = brute_imbalance(s, 0.05);
    const double w = 2.0 * pi * 15000.0 / 60.0;
    EXPECT_LT(rel(lib.centroid_offset, bf.offset), 0.01);
    EXPECT_LT(rel(lib.load, bf.mass * bf.offset * w * w), 0.01);
    EXPECT_LT(rel(rotor_mass(s), bf.mass), 1e-3);
}

TEST(Turbo, ImbalanceErrors) {
    TurbineStage s;
    EXPECT_THROW(imbalance_load(s, 1.0, 100.0), ParameterError);
    EXPECT_THROW(imbalance_load(s, -0.1, 100.0), ParameterError);
    EXPECT_THROW(imbalance_load(s, 0.05, -1.0), ParameterError);
}

TEST(Turbo, MassOverride) {
    TurbineStage s;
    s.rotor.rotor_mass = 1e-4;
    EXPECT_EQ(rotor_mass(s), 1e-4);
    const auto r = imbalance_load(s, 0.05, 15000.0);
    EXPECT_NEAR(r.load, 1e-4 * r.centroid_offset * std::pow(2.0 * pi * 250.0, 2), 1e-15);
}

TEST(Turbo, GeometryValidation) {
    TurbineStage s;
    EXPECT_TRUE(s.violations().empty());
    s.rotor.inner_diameter = 9e-3;
    s.rotor.blade_count = 1;
    s.stator.exit_flow_angle = 89.5;
    s.blockage = 1.5;
    EXPECT_EQ(s.violations().size(), 4u);
    EXPECT_THROW(s.validate(), ParameterError);
    TurbineStage t;
    t.rotor.exit_blade_angle = -90.0;
    EXPECT_THROW(t.validate(), ParameterError);
}
