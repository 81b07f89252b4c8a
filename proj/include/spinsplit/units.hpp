#pragma once

#include <string>
#include <string_view>

#include "spinsplit/errors.hpp"

// Natural-unit core (m = c = 1) and SI conversions. Everything downstream of
// this module works with pure numbers: momenta in units of mc, energies in
// mc^2, the magnetic field through the dimensionless parameter
// b = hbar*|e|*B / (m^2 c^2) = B / B_crit.
namespace spinsplit::units {

// CODATA 2018 values, SI. The source-of-truth table is in README.md.
namespace constants {
inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double speed_of_light = 299792458.0;        // m/s (exact)
inline constexpr double planck = 6.62607015e-34;             // J s (exact)
inline constexpr double hbar = planck / (2.0 * pi);          // J s
inline constexpr double elementary_charge = 1.602176634e-19; // C (exact)
inline constexpr double electron_mass = 9.1093837015e-31;    // kg
inline constexpr double proton_mass = 1.67262192369e-27;     // kg
inline constexpr double neutron_mass = 1.67492749804e-27;    // kg
inline constexpr double muon_mass = 1.883531627e-28;         // kg
inline constexpr double bohr_magneton = 9.2740100783e-24;    // J/T
inline constexpr double nuclear_magneton = 5.0507837461e-27; // J/T
inline constexpr double proton_mdm = 1.41060679736e-26;      // J/T
inline constexpr double neutron_mdm = 9.6623651e-27;         // J/T (size)
inline constexpr double muon_mdm = 4.49044830e-26;           // J/T (size)
} // namespace constants

// Physical particle. Dipole moments are sizes (>= 0); the sign of the field
// coupling lives entirely in delta = (d E - mu B)/(m c^2).
struct ParticleSpec {
    double mass = 0.0;   // kg
    double charge = 0.0; // C, signed
    double mdm = 0.0;    // J/T, magnetic dipole moment size
    double edm = 0.0;    // C m, electric dipole moment size
    std::string name;
};

// Static fields along the common field axis; either component may be zero or
// negative (direction).
struct FieldSpec {
    double e_field = 0.0; // V/m
    double b_field = 0.0; // T
};

enum class Kind { momentum, energy, field_parameter };

// A dimensionless number in natural units together with what it measures.
struct NaturalValue {
    double value = 0.0;
    Kind kind = Kind::energy;
};

ParticleSpec electron();
ParticleSpec proton();
ParticleSpec neutron();
ParticleSpec muon();
bool has_preset(std::string_view name);
ParticleSpec preset(std::string_view name); // throws invalid-input if unknown

void validate(const ParticleSpec& p);
void validate(const FieldSpec& f);

double rest_energy_joule(const ParticleSpec& p);    // m c^2
double momentum_unit_si(const ParticleSpec& p);     // m c
double critical_field_tesla(const ParticleSpec& p); // m^2 c^2 / (|e| hbar)

// delta = (d E - mu B) / (m c^2), sign preserved.
NaturalValue delta_from_fields(const ParticleSpec& p, const FieldSpec& f);

// b = hbar |e| B / (m^2 c^2). Requires charge != 0 and B >= 0.
NaturalValue b_param(const ParticleSpec& p, const FieldSpec& f);

double to_si_energy(const NaturalValue& v, const ParticleSpec& p);   // J
double to_si_momentum(const NaturalValue& v, const ParticleSpec& p); // kg m/s
double to_si_field(const NaturalValue& v, const ParticleSpec& p);    // T

NaturalValue natural_energy(double joule, const ParticleSpec& p);
NaturalValue natural_momentum(double si, const ParticleSpec& p);
NaturalValue natural_field(double tesla, const ParticleSpec& p);

// omega_L = splitting * m c^2 / hbar, in rad/s.
double larmor_frequency(const NaturalValue& splitting, const ParticleSpec& p);

} // namespace spinsplit::units
