#include "spinsplit/units.hpp"

#include <cmath>

#include "spinsplit/errors.hpp"

namespace spinsplit::units {

namespace {

namespace k = constants;

bool finite(double x) { return std::isfinite(x); }

} // namespace

ParticleSpec electron() {
    return {k::electron_mass, -k::elementary_charge, k::bohr_magneton, 0.0, "electron"};
}

ParticleSpec proton() {
    return {k::proton_mass, k::elementary_charge, k::proton_mdm, 0.0, "proton"};
}

ParticleSpec neutron() {
    return {k::neutron_mass, 0.0, k::neutron_mdm, 0.0, "neutron"};
}

ParticleSpec muon() {
    return {k::muon_mass, -k::elementary_charge, k::muon_mdm, 0.0, "muon"};
}

bool has_preset(std::string_view name) {
    return name == "electron" || name == "proton" || name == "neutron" || name == "muon";
}

ParticleSpec preset(std::string_view name) {
    if (name == "electron") return electron();
    if (name == "proton") return proton();
    if (name == "neutron") return neutron();
    if (name == "muon") return muon();
    throw DomainError("invalid-input",
                      "unknown particle preset '" + std::string(name) +
                          "' (expected electron, proton, neutron or muon)");
}

void validate(const ParticleSpec& p) {
    if (!finite(p.mass) || !finite(p.charge) || !finite(p.mdm) || !finite(p.edm))
        throw DomainError("invalid-input", "particle parameters must be finite");
    if (p.mass <= 0.0)
        throw DomainError("invalid-input", "particle mass must be positive");
    if (p.mdm < 0.0 || p.edm < 0.0)
        throw DomainError("invalid-input",
                          "dipole moments are sizes and must be non-negative");
}

void validate(const FieldSpec& f) {
    if (!finite(f.e_field) || !finite(f.b_field))
        throw DomainError("invalid-input", "field values must be finite");
}

double rest_energy_joule(const ParticleSpec& p) {
    return p.mass * k::speed_of_light * k::speed_of_light;
}

double momentum_unit_si(const ParticleSpec& p) {
    return p.mass * k::speed_of_light;
}

double critical_field_tesla(const ParticleSpec& p) {
    if (p.charge == 0.0)
        throw DomainError("neutral-particle", "critical field undefined for a neutral particle");
    return p.mass * p.mass * k::speed_of_light * k::speed_of_light /
           (std::abs(p.charge) * k::hbar);
}

NaturalValue delta_from_fields(const ParticleSpec& p, const FieldSpec& f) {
    validate(p);
    validate(f);
    double joule = p.edm * f.e_field - p.mdm * f.b_field;
    return {joule / rest_energy_joule(p), Kind::energy};
}

NaturalValue b_param(const ParticleSpec& p, const FieldSpec& f) {
    validate(p);
    validate(f);
    if (p.charge == 0.0)
        throw DomainError("neutral-particle", "field parameter b undefined for a neutral particle");
    if (f.b_field < 0.0)
        throw DomainError("negative-field", "field parameter b requires B >= 0");
    return {f.b_field / critical_field_tesla(p), Kind::field_parameter};
}

double to_si_energy(const NaturalValue& v, const ParticleSpec& p) {
    if (v.kind != Kind::energy)
        throw DomainError("kind-mismatch", "expected an energy-kind value");
    return v.value * rest_energy_joule(p);
}

double to_si_momentum(const NaturalValue& v, const ParticleSpec& p) {
    if (v.kind != Kind::momentum)
        throw DomainError("kind-mismatch", "expected a momentum-kind value");
    return v.value * momentum_unit_si(p);
}

double to_si_field(const NaturalValue& v, const ParticleSpec& p) {
    if (v.kind != Kind::field_parameter)
        throw DomainError("kind-mismatch", "expected a field-parameter-kind value");
    return v.value * critical_field_tesla(p);
}

NaturalValue natural_energy(double joule, const ParticleSpec& p) {
    validate(p);
    return {joule / rest_energy_joule(p), Kind::energy};
}

NaturalValue natural_momentum(double si, const ParticleSpec& p) {
    validate(p);
    return {si / momentum_unit_si(p), Kind::momentum};
}

NaturalValue natural_field(double tesla, const ParticleSpec& p) {
    validate(p);
    return {tesla / critical_field_tesla(p), Kind::field_parameter};
}

double larmor_frequency(const NaturalValue& splitting, const ParticleSpec& p) {
    if (splitting.kind != Kind::energy)
        throw DomainError("kind-mismatch", "precession frequency needs an energy splitting");
    return std::abs(splitting.value) * rest_energy_joule(p) / k::hbar;
}

} // namespace spinsplit::units
