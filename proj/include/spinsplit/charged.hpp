#pragma once

#include "spinsplit/errors.hpp"

// Relativistic and nonrelativistic Landau-level energies and spin splittings
// of a charged spin-1/2 particle in a uniform magnetic field, in natural
// units (momenta in mc, energies in mc^2, field as b = hbar|e|B/(m^2 c^2)).
namespace spinsplit::charged {

struct ChargedConfig {
    double p_par = 0.0; // momentum along the field
    double b = 0.0;     // dimensionless field, >= 0
    int n = 0;          // Landau index, >= 0
};

void validate(const ChargedConfig& cfg);

struct LandauSplitResult {
    double splitting;
    double level_up;   // E_n^{+1}
    double level_down; // E_n^{-1}
};

// E_n^sigma = sqrt(1 + p_par^2 + (2n+1+sigma) b), sigma in {-1,+1}.
double landau_level(const ChargedConfig& cfg, int sigma);

// Delta_n = E_n^{+1} - E_n^{-1}, evaluated as 2b/(E_n^up + E_n^down) so that
// tiny fields keep full precision.
LandauSplitResult splitting(const ChargedConfig& cfg);

// Nonrelativistic splitting: b for every n and p_par.
double splitting_nonrel(const ChargedConfig& cfg);

// E_n^nonrel = 1 + p_par^2/2 + ((2n+1+sigma)/2) b
double landau_level_nonrel(const ChargedConfig& cfg, int sigma);

// b - ((2n+1)/2) b^2 - (1/2) b p_par^2, second order in p_par and b.
double splitting_low_field(const ChargedConfig& cfg);

// b/|p_par|; independent of n and of the mass.
double splitting_high_speed(const ChargedConfig& cfg);

// d Delta_n / d p_par = -p_par Delta_n / (E_n^up E_n^down)
double splitting_gradient_par(const ChargedConfig& cfg);

} // namespace spinsplit::charged
