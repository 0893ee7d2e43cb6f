#pragma once

// Ideal-gas thermodynamic properties of air, hydrogen and lean hydrogen-air
// combustion products.
//
// Species data are NASA 7-coefficient polynomials (GRI-Mech 3.0 thermo set)
// for N2, O2, Ar, H2 and H2O. Enthalpies are reported relative to 298.15 K
// with the standard formation enthalpy added on top of the sensible part.
// A constant-cp mode bypasses the tables for textbook-style calculations.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>

#include "mgt/errors.hpp"
#include "mgt/numerics.hpp"

namespace mgt::gas {

inline constexpr double kUniversalGasConstant = 8.314462618;  // J/(mol K)
inline constexpr double kReferenceTemperature = 298.15;       // K
inline constexpr double kStandardPressure = 101325.0;         // Pa

// Dry air by mole; humidity ignored.
inline constexpr double kAirN2 = 0.7808;
inline constexpr double kAirO2 = 0.2095;
inline constexpr double kAirAr = 0.0097;

struct PolynomialRange {
    double t_min;  // K
    double t_max;  // K
    std::array<double, 7> a;  // cp/R = a0 + a1 T + ... + a4 T^4; a5, a6 integration constants
};

struct SpeciesThermo {
    std::string_view name;
    double molar_mass;   // kg/mol
    std::array<PolynomialRange, 2> ranges;  // low, high; ranges[0].t_max == ranges[1].t_min
    double h_formation;  // J/mol at 298.15 K

    double t_min() const { return ranges[0].t_min; }
    double t_max() const { return ranges[1].t_max; }

    const PolynomialRange& range_for(double T) const {
        if (!(T >= t_min() && T <= t_max())) {
            std::ostringstream msg;
            msg << "temperature " << T << " K outside the valid range [" << t_min() << ", "
                << t_max() << "] K of species " << name;
            throw RangeError(msg.str());
        }
        return T < ranges[0].t_max ? ranges[0] : ranges[1];
    }

    /// Molar heat capacity, J/(mol K).
    double cp_molar(double T) const {
        const auto& a = range_for(T).a;
        return kUniversalGasConstant * (a[0] + T * (a[1] + T * (a[2] + T * (a[3] + T * a[4]))));
    }

    // Absolute polynomial enthalpy H(T) in the NASA convention.
    double nasa_enthalpy(double T) const {
        const auto& a = range_for(T).a;
        return kUniversalGasConstant *
               (T * (a[0] + T * (a[1] / 2 + T * (a[2] / 3 + T * (a[3] / 4 + T * a[4] / 5)))) + a[5]);
    }

    /// H(T) - H(298.15 K), J/mol.
    double sensible_enthalpy_molar(double T) const {
        return nasa_enthalpy(T) - nasa_enthalpy(kReferenceTemperature);
    }

    /// Standard-state (1 atm) molar entropy, J/(mol K).
    double entropy_molar(double T) const {
        const auto& a = range_for(T).a;
        return kUniversalGasConstant *
               (a[0] * std::log(T) + T * (a[1] + T * (a[2] / 2 + T * (a[3] / 3 + T * a[4] / 4))) + a[6]);
    }
};

// clang-format off
inline constexpr std::array<SpeciesThermo, 5> kSpeciesTable{{
    {"N2", 28.0134e-3,
     {{{200.0, 1000.0, {3.298677, 1.4082404e-3, -3.963222e-6, 5.641515e-9, -2.444854e-12, -1020.8999, 3.950372}},
       {1000.0, 5000.0, {2.92664, 1.4879768e-3, -5.68476e-7, 1.0097038e-10, -6.753351e-15, -922.7977, 5.980528}}}},
     0.0},
    {"O2", 31.9988e-3,
     {{{200.0, 1000.0, {3.78245636, -2.99673416e-3, 9.84730201e-6, -9.68129509e-9, 3.24372837e-12, -1063.94356, 3.65767573}},
       {1000.0, 3500.0, {3.28253784, 1.48308754e-3, -7.57966669e-7, 2.09470555e-10, -2.16717794e-14, -1088.45772, 5.45323129}}}},
     0.0},
    {"Ar", 39.948e-3,
     {{{200.0, 1000.0, {2.5, 0.0, 0.0, 0.0, 0.0, -745.375, 4.366}},
       {1000.0, 5000.0, {2.5, 0.0, 0.0, 0.0, 0.0, -745.375, 4.366}}}},
     0.0},
    {"H2", 2.01588e-3,
     {{{200.0, 1000.0, {2.34433112, 7.98052075e-3, -1.9478151e-5, 2.01572094e-8, -7.37611761e-12, -917.935173, 0.683010238}},
       {1000.0, 3500.0, {3.3372792, -4.94024731e-5, 4.99456778e-7, -1.79566394e-10, 2.00255376e-14, -950.158922, -3.20502331}}}},
     0.0},
    {"H2O", 18.01528e-3,
     {{{200.0, 1000.0, {4.19864056, -2.0364341e-3, 6.52040211e-6, -5.48797062e-9, 1.77197817e-12, -30293.7267, -0.849032208}},
       {1000.0, 3500.0, {3.03399249, 2.17691804e-3, -1.64072518e-7, -9.7041987e-11, 1.68200992e-14, -30004.2971, 4.9667701}}}},
     -241826.0},
}};
// clang-format on

inline const SpeciesThermo& species(std::string_view name) {
    for (const auto& s : kSpeciesTable) {
        if (s.name == name) return s;
    }
    throw LookupError("unknown species '" + std::string(name) + "'");
}

/// Mole fractions keyed by species identifier. Fractions lie in [0, 1] and
/// sum to one within 1e-9; species names are resolved on evaluation.
class GasComposition {
public:
    using Map = std::map<std::string, double, std::less<>>;

    GasComposition() = default;

    explicit GasComposition(Map mole_fractions) : fractions_(std::move(mole_fractions)) {
        double sum = 0.0;
        for (const auto& [name, x] : fractions_) {
            if (!(x >= 0.0 && x <= 1.0)) {
                throw ParameterError("mole fraction of " + name + " outside [0, 1]");
            }
            sum += x;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            std::ostringstream msg;
            msg.precision(12);
            msg << "mole fractions sum to " << sum << ", expected 1";
            throw ParameterError(msg.str());
        }
    }

    // Normalizes raw mole numbers before validation.
    static GasComposition from_moles(const Map& moles) {
        double total = 0.0;
        for (const auto& [name, n] : moles) total += n;
        if (!(total > 0.0)) throw ParameterError("mole numbers must have a positive sum");
        Map x;
        for (const auto& [name, n] : moles) x[name] = n / total;
        return GasComposition(std::move(x));
    }

    const Map& mole_fractions() const { return fractions_; }

    double fraction(std::string_view name) const {
        auto it = fractions_.find(name);
        return it == fractions_.end() ? 0.0 : it->second;
    }

    template <class F>
    void for_each_species(F&& f) const {
        for (const auto& [name, x] : fractions_) {
            if (x > 0.0) f(species(name), x);
        }
    }

    /// Mixture molar mass, kg/mol.
    double molar_mass() const {
        double m = 0.0;
        for (const auto& [name, x] : fractions_) m += x * species(name).molar_mass;
        return m;
    }

    bool operator==(const GasComposition&) const = default;

private:
    Map fractions_;
};

inline GasComposition standard_air() {
    return GasComposition({{"N2", kAirN2}, {"O2", kAirO2}, {"Ar", kAirAr}});
}

inline GasComposition pure(std::string_view name) {
    (void)species(name);
    return GasComposition({{std::string(name), 1.0}});
}

struct GasState {
    GasComposition composition;
    double temperature;  // K
    double pressure;     // Pa

    GasState(GasComposition x, double T, double p) : composition(std::move(x)), temperature(T), pressure(p) {
        if (!(T > 0.0)) throw ParameterError("gas temperature must be positive");
        if (!(p > 0.0)) throw ParameterError("gas pressure must be positive");
    }
};

enum class PropertyMode { polynomial, constant_cp };

/// Selects between the embedded polynomial tables and user-fixed cp, gamma.
struct PropertyModel {
    PropertyMode mode = PropertyMode::polynomial;
    double constant_cp = 1005.0;   // J/(kg K)
    double constant_gamma = 1.4;

    static PropertyModel polynomial() { return {}; }
    static PropertyModel constant(double cp, double gamma) {
        if (!(cp > 0.0)) throw ParameterError("constant cp must be positive");
        if (!(gamma > 1.0)) throw ParameterError("constant gamma must exceed 1");
        return {PropertyMode::constant_cp, cp, gamma};
    }
    bool is_constant() const { return mode == PropertyMode::constant_cp; }
};

namespace detail {

template <class F>
double molar_weighted(const GasComposition& x, F&& per_species) {
    double sum = 0.0;
    x.for_each_species([&](const SpeciesThermo& s, double xi) { sum += xi * per_species(s); });
    return sum;
}

inline double formation_enthalpy_mass(const GasComposition& x) {
    return molar_weighted(x, [](const SpeciesThermo& s) { return s.h_formation; }) / x.molar_mass();
}

}  // namespace detail

/// Specific gas constant, J/(kg K).
inline double gas_constant(const PropertyModel& model, const GasComposition& x) {
    if (model.is_constant()) return model.constant_cp * (model.constant_gamma - 1.0) / model.constant_gamma;
    return kUniversalGasConstant / x.molar_mass();
}

inline double gas_constant(const GasComposition& x) { return gas_constant(PropertyModel{}, x); }

/// Mass-specific heat capacity, J/(kg K).
inline double cp_mass(const PropertyModel& model, const GasComposition& x, double T) {
    if (model.is_constant()) {
        if (!(T > 0.0)) throw RangeError("temperature must be positive");
        return model.constant_cp;
    }
    return detail::molar_weighted(x, [T](const SpeciesThermo& s) { return s.cp_molar(T); }) / x.molar_mass();
}

inline double cp_mass(const GasComposition& x, double T) { return cp_mass(PropertyModel{}, x, T); }

/// Sensible enthalpy relative to 298.15 K, J/kg.
inline double sensible_enthalpy_mass(const PropertyModel& model, const GasComposition& x, double T) {
    if (model.is_constant()) {
        if (!(T > 0.0)) throw RangeError("temperature must be positive");
        return model.constant_cp * (T - kReferenceTemperature);
    }
    return detail::molar_weighted(x, [T](const SpeciesThermo& s) { return s.sensible_enthalpy_molar(T); }) /
           x.molar_mass();
}

inline double sensible_enthalpy_mass(const GasComposition& x, double T) {
    return sensible_enthalpy_mass(PropertyModel{}, x, T);
}

/// Sensible plus formation enthalpy, J/kg.
inline double enthalpy_mass(const PropertyModel& model, const GasComposition& x, double T) {
    return sensible_enthalpy_mass(model, x, T) + detail::formation_enthalpy_mass(x);
}

inline double enthalpy_mass(const GasComposition& x, double T) { return enthalpy_mass(PropertyModel{}, x, T); }

/// Specific entropy at (T, p) without the (constant) ideal mixing term, J/(kg K).
/// Only differences at fixed composition are meaningful.
inline double entropy_mass(const PropertyModel& model, const GasComposition& x, double T, double p) {
    const double R = gas_constant(model, x);
    if (model.is_constant()) {
        return model.constant_cp * std::log(T / kReferenceTemperature) - R * std::log(p / kStandardPressure);
    }
    const double s0 = detail::molar_weighted(x, [T](const SpeciesThermo& s) { return s.entropy_molar(T); }) /
                      x.molar_mass();
    return s0 - R * std::log(p / kStandardPressure);
}

/// Ratio of specific heats cp / (cp - R).
inline double gamma(const PropertyModel& model, const GasComposition& x, double T) {
    if (model.is_constant()) return model.constant_gamma;
    const double cp = cp_mass(model, x, T);
    return cp / (cp - gas_constant(model, x));
}

inline double gamma(const GasComposition& x, double T) { return gamma(PropertyModel{}, x, T); }

/// Ideal-gas density, kg/m^3.
inline double density(const PropertyModel& model, const GasState& state) {
    return state.pressure / (gas_constant(model, state.composition) * state.temperature);
}

inline double density(const GasState& state) { return density(PropertyModel{}, state); }

// Upper temperature limit shared by every tabulated species.
inline double table_t_max(const GasComposition& x) {
    double t = 1e9;
    x.for_each_species([&](const SpeciesThermo& s, double) { t = std::min(t, s.t_max()); });
    return t;
}

inline double table_t_min(const GasComposition& x) {
    double t = 0.0;
    x.for_each_species([&](const SpeciesThermo& s, double) { t = std::max(t, s.t_min()); });
    return t;
}

/// Inverts sensible_enthalpy_mass for temperature by bisection on [t_lo, t_hi].
inline double temperature_from_sensible_enthalpy(const PropertyModel& model, const GasComposition& x,
                                                  double h_sensible, double t_lo, double t_hi,
                                                  double abs_tol = 1e-10) {
    if (model.is_constant()) return kReferenceTemperature + h_sensible / model.constant_cp;
    return numerics::bisect(
        [&](double T) { return sensible_enthalpy_mass(model, x, T) - h_sensible; }, t_lo, t_hi, abs_tol);
}

// ---------------------------------------------------------------------------
// Hydrogen-air stoichiometry (complete combustion, 2 H2 + O2 -> 2 H2O).

/// Stoichiometric H2/air mass ratio for the fixed dry-air composition.
inline double stoichiometric_fuel_air_ratio() {
    const GasComposition air = standard_air();
    const double h2_moles = 2.0 * kAirO2;  // per mole of air
    return h2_moles * species("H2").molar_mass / air.molar_mass();
}

/// (fuel/air) / stoichiometric (fuel/air).
inline double equivalence_ratio(double fuel_mass_flow, double air_mass_flow) {
    if (!(air_mass_flow > 0.0)) throw ParameterError("air mass flow must be positive");
    if (!(fuel_mass_flow >= 0.0)) throw ParameterError("fuel mass flow must be non-negative");
    return (fuel_mass_flow / air_mass_flow) / stoichiometric_fuel_air_ratio();
}

inline void check_lean(double phi) {
    if (!(phi >= 0.0)) throw ParameterError("equivalence ratio must be non-negative");
    if (phi > 1.0) {
        std::ostringstream msg;
        msg << "equivalence ratio " << phi << " is rich; complete-combustion products are only defined for phi <= 1";
        throw UnsupportedMixtureError(msg.str());
    }
}

/// Unburned premixed H2-air at equivalence ratio phi.
inline GasComposition fresh_mixture(double phi) {
    if (!(phi >= 0.0)) throw ParameterError("equivalence ratio must be non-negative");
    if (phi == 0.0) return standard_air();
    return GasComposition::from_moles(
        {{"N2", kAirN2}, {"O2", kAirO2}, {"Ar", kAirAr}, {"H2", 2.0 * kAirO2 * phi}});
}

/// Complete-combustion products of H2 in standard air, 0 <= phi <= 1.
inline GasComposition burned_composition(double phi) {
    check_lean(phi);
    if (phi == 0.0) return standard_air();
    const double water = 2.0 * kAirO2 * phi;
    GasComposition::Map moles{{"N2", kAirN2}, {"Ar", kAirAr}, {"H2O", water}};
    if (phi < 1.0) moles["O2"] = kAirO2 * (1.0 - phi);
    return GasComposition::from_moles(moles);
}

}  // namespace mgt::gas
