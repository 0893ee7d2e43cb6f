#include <gtest/gtest.h>

#include <cmath>

#include "mgt/gasprops.hpp"
#include "oracle.hpp"

using namespace mgt;
using namespace mgt::gas;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Gasprops, AirCpAt300K) {
    const double cp = cp_mass(standard_air(), 300.0);
    EXPECT_LT(rel(cp, 1005.0), 0.01);
    EXPECT_LT(rel(cp, oracle::cp_mass(oracle::air(), 300.0)), 1e-9);
}

TEST(Gasprops, AirCpAt1500K) {
    const double cp = cp_mass(standard_air(), 1500.0);
    EXPECT_LT(rel(cp, 1211.0), 0.02);
    EXPECT_LT(rel(cp, oracle::cp_mass(oracle::air(), 1500.0)), 1e-9);
}

TEST(Gasprops, ConstantModeReturnsConfiguredCp) {
    const auto m = PropertyModel::constant(1234.5, 1.3);
    EXPECT_EQ(cp_mass(m, pure("N2"), 700.0), 1234.5);
    EXPECT_EQ(gamma(m, pure("H2O"), 1500.0), 1.3);
}

TEST(Gasprops, EnthalpyAtReferenceIsFormationOnly) {
    for (double phi : {0.0, 0.45, 1.0}) {
        const auto x = burned_composition(phi);
        EXPECT_NEAR(sensible_enthalpy_mass(x, kReferenceTemperature), 0.0, 1e-9);
        const double hf = -241826.0 * x.fraction("H2O") / x.molar_mass();
        EXPECT_NEAR(enthalpy_mass(x, kReferenceTemperature), hf, 1e-6 * std::abs(hf) + 1e-9);
    }
    EXPECT_EQ(species("H2").h_formation, 0.0);
}

TEST(Gasprops, AirEnthalpyRise300To600) {
    const double dh = enthalpy_mass(standard_air(), 600.0) - enthalpy_mass(standard_air(), 300.0);
    EXPECT_LT(rel(dh, 309e3), 0.02);
    const double ref = oracle::hs_mass(oracle::air(), 600.0) - oracle::hs_mass(oracle::air(), 300.0);
    EXPECT_LT(rel(dh, ref), 1e-8);
}

TEST(Gasprops, GammaValues) {
    EXPECT_LT(rel(gamma(standard_air(), 300.0), 1.4), 0.005);
    for (double T : {300.0, 1000.0, 2500.0}) EXPECT_NEAR(gamma(pure("Ar"), T), 5.0 / 3.0, 1e-3);
    const double g = gamma(burned_composition(0.45), 1500.0);
    EXPECT_GT(g, 1.28);
    EXPECT_LT(g, 1.36);
    EXPECT_LT(rel(g, oracle::gamma(oracle::normalized(oracle::products_per_air(0.45)), 1500.0)), 1e-9);
}

TEST(Gasprops, GammaBounds) {
    for (double phi : {0.0, 0.3, 0.7, 1.0})
        for (double T = 300.0; T <= 3000.0; T += 100.0) {
            const double g = gamma(burned_composition(phi), T);
            EXPECT_GT(g, 1.0);
            EXPECT_LE(g, 5.0 / 3.0 + 1e-12);
        }
}

TEST(Gasprops, BurnedCompositionExamples) {
    EXPECT_EQ(burned_composition(0.0), standard_air());
    EXPECT_EQ(burned_composition(1.0).fraction("O2"), 0.0);
    const auto x = burned_composition(0.45);
    const auto ref = oracle::normalized(oracle::products_per_air(0.45));
    for (const auto& [s, f] : ref) EXPECT_NEAR(x.fraction(s), f, 1e-9) << s;
    EXPECT_THROW(burned_composition(1.01), UnsupportedMixtureError);
}

TEST(Gasprops, ElementConservation) {
    for (int k = 0; k <= 20; ++k) {
        const double phi = k / 20.0;
        // per mole of air: reactants are air + 2 x_O2 phi H2
        const double h2 = 2.0 * kAirO2 * phi;
        const double H_in = 2.0 * h2, O_in = 2.0 * kAirO2, N_in = 2.0 * kAirN2, Ar_in = kAirAr;
        const auto x = burned_composition(phi);
        const double scale = N_in / (2.0 * x.fraction("N2"));  // moles of products
        EXPECT_NEAR(2.0 * x.fraction("H2O") * scale, H_in, 1e-12);
        EXPECT_NEAR((x.fraction("H2O") + 2.0 * x.fraction("O2")) * scale, O_in, 1e-12);
        EXPECT_NEAR(x.fraction("Ar") * scale, Ar_in, 1e-12);
        double sum = 0.0;
        for (const auto& [s, f] : x.mole_fractions()) sum += f;
        EXPECT_NEAR(sum, 1.0, 1e-12);
    }
}

TEST(Gasprops, EnthalpyDerivativeMatchesCp) {
    const GasComposition mixes[] = {standard_air(), burned_composition(0.45), burned_composition(1.0),
                                    fresh_mixture(0.8), pure("H2")};
    for (const auto& x : mixes) {
        for (int k = 0; k < 10; ++k) {
            const double T = 320.0 + 300.0 * k;  // 320 .. 3020
            if (T + 1.0 > table_t_max(x)) continue;
            if (std::abs(T - 1000.0) < 2.0) continue;
            const double dT = 0.5;
            const double d = (enthalpy_mass(x, T + dT) - enthalpy_mass(x, T - dT)) / (2.0 * dT);
            EXPECT_LT(rel(d, cp_mass(x, T)), 1e-3) << T;
        }
    }
}

TEST(Gasprops, CpPositiveAndContinuousAtRangeJoin) {
    for (const auto& s : kSpeciesTable) {
        for (double T = s.t_min(); T <= s.t_max(); T += 50.0) EXPECT_GT(s.cp_molar(T), 0.0);
        const double join = s.ranges[0].t_max;
        const auto& a = s.ranges[0].a;
        const auto& b = s.ranges[1].a;
        auto cp = [&](const auto& c) {
            return c[0] + join * (c[1] + join * (c[2] + join * (c[3] + join * c[4])));
        };
        EXPECT_LT(std::abs(cp(a) - cp(b)) / cp(b), 0.005) << s.name;
    }
}

TEST(Gasprops, MixingIsLinearInMolarCp) {
    const auto blend = GasComposition({{"N2", 0.5}, {"H2O", 0.5}});
    for (double T : {400.0, 900.0, 1700.0}) {
        const double mol = 0.5 * species("N2").cp_molar(T) + 0.5 * species("H2O").cp_molar(T);
        EXPECT_LT(rel(cp_mass(blend, T) * blend.molar_mass(), mol), 1e-12);
    }
}

TEST(Gasprops, Errors) {
    EXPECT_THROW(cp_mass(pure("O2"), 4000.0), RangeError);
    try {
        cp_mass(pure("H2O"), 100.0);
        FAIL();
    } catch (const RangeError& e) {
        EXPECT_NE(std::string(e.what()).find("H2O"), std::string::npos);
    }
    EXPECT_THROW(species("CH4"), LookupError);
    EXPECT_THROW(cp_mass(GasComposition({{"He", 1.0}}), 300.0), LookupError);
    EXPECT_THROW(GasComposition({{"N2", 0.5}, {"O2", 0.4}}), ParameterError);
    EXPECT_THROW(GasComposition({{"N2", 1.2}, {"O2", -0.2}}), ParameterError);
    EXPECT_THROW(GasState(standard_air(), 0.0, 1e5), ParameterError);
    EXPECT_THROW(GasState(standard_air(), 300.0, -1.0), ParameterError);
}

TEST(Gasprops, StoichiometricRatio) {
    EXPECT_NEAR(stoichiometric_fuel_air_ratio(), oracle::stoichiometric_far(), 1e-12);
    // O2 mass fraction of air over ~8 kg O2 per kg H2
    const double y_o2 = kAirO2 * 31.9988e-3 / standard_air().molar_mass();
    EXPECT_NEAR(stoichiometric_fuel_air_ratio(), y_o2 * (2.0 * 2.01588 / 31.9988), 1e-12);
    EXPECT_NEAR(stoichiometric_fuel_air_ratio(), 0.0292, 1e-3);
}
