#pragma once

#include <string>

#include "spinsplit/errors.hpp"

// Closed-form energies, spin splitting and asymptotic limits of a neutral
// spin-1/2 particle with dipole coupling to static collinear E/B fields.
// All quantities are in natural units (momenta in mc, energies in mc^2).
namespace spinsplit::neutral {

// The splitting is even in both momentum components and odd in delta, so
// negative inputs are accepted and handled by the exact formulas.
struct NeutralConfig {
    double p_par = 0.0;  // momentum along the field axis
    double p_perp = 0.0; // momentum transverse to the field axis
    double delta = 0.0;  // interaction energy (d E - mu B)/(m c^2)
};

void validate(const NeutralConfig& cfg);

// Below the threshold sqrt(1 + p_perp^2) the rest-frame splitting is 2*delta;
// above it the splitting saturates at 2*sqrt(1 + p_perp^2).
enum class Regime { linear, saturated };
std::string to_string(Regime r);

struct NeutralEigenvalues {
    double e_plus_up;
    double e_plus_down;
    double e_minus_up;
    double e_minus_down;
};

struct SplitResult {
    double splitting;
    Regime regime; // meaningful at p_par = 0; depends only on (p_perp, delta)
    double threshold;
};

struct Gradient {
    double d_p_par;
    double d_p_perp;
};

double transverse_energy(double p_perp); // sqrt(1 + p_perp^2)

// E_pm^{up,down} = +-sqrt(p_par^2 + (sqrt(1+p_perp^2) +- delta)^2)
NeutralEigenvalues eigenvalues(const NeutralConfig& cfg);

// Delta = E_+^up - E_+^down, evaluated as the cancellation-free quotient
// 4*delta*sqrt(1+p_perp^2) / (E_+^up + E_+^down). The naive difference loses
// all significant digits for p_par >~ 1e7.
SplitResult splitting(const NeutralConfig& cfg);

// Delta_0 = |sqrt(1+p_perp^2)+delta| - |sqrt(1+p_perp^2)-delta|
SplitResult splitting_at_rest(double p_perp, double delta);

Regime regime(const NeutralConfig& cfg);
Regime regime(double p_perp, double delta);

// Delta_0 * (1 - p_par^2 / (2|1 + p_perp^2 - delta^2|)); singular at the
// regime boundary, where the expansion denominator vanishes.
double splitting_low_speed(const NeutralConfig& cfg);

// 2*delta*sqrt(1+p_perp^2)/|p_par|
double splitting_high_speed(const NeutralConfig& cfg);

// Analytic partials of the exact splitting. d/dp_par = -p_par*Delta/(E^up E^down).
Gradient splitting_gradient(const NeutralConfig& cfg);

} // namespace spinsplit::neutral
