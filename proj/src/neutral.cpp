#include "spinsplit/neutral.hpp"

#include <cmath>

#include "spinsplit/errors.hpp"

namespace spinsplit::neutral {

namespace {

// E+ for a single spin branch: sqrt(p_par^2 + (eps + s*delta)^2), s = +-1.
double branch_energy(double p_par, double eps, double delta, int s) {
    return std::hypot(p_par, eps + s * delta);
}

// Splitting as the difference-of-squares quotient 4*delta*eps/(E_up + E_dn).
// Exactly equal to E_up - E_dn in real arithmetic but free of cancellation
// when the two energies are close (p_par >> 1 or delta -> 0). The
// denominator is always positive: both energies vanish only if eps = 0,
// and eps = sqrt(1 + p_perp^2) >= 1.
double quotient_splitting(double delta, double eps, double e_up, double e_dn) {
    return 4.0 * delta * eps / (e_up + e_dn);
}

} // namespace

void validate(const NeutralConfig& cfg) {
    if (!std::isfinite(cfg.p_par) || !std::isfinite(cfg.p_perp) || !std::isfinite(cfg.delta))
        throw DomainError("invalid-input", "neutral config fields must be finite");
}

std::string to_string(Regime r) {
    return r == Regime::linear ? "linear" : "saturated";
}

double transverse_energy(double p_perp) {
    return std::hypot(1.0, p_perp);
}

NeutralEigenvalues eigenvalues(const NeutralConfig& cfg) {
    validate(cfg);
    const double eps = transverse_energy(cfg.p_perp);
    const double up = branch_energy(cfg.p_par, eps, cfg.delta, +1);
    const double dn = branch_energy(cfg.p_par, eps, cfg.delta, -1);
    return {up, dn, -up, -dn};
}

Regime regime(double p_perp, double delta) {
    // Tie at |delta| = threshold counts as saturated; the two branch
    // formulas coincide there.
    return std::abs(delta) < transverse_energy(p_perp) ? Regime::linear
                                                       : Regime::saturated;
}

Regime regime(const NeutralConfig& cfg) {
    return regime(cfg.p_perp, cfg.delta);
}

SplitResult splitting(const NeutralConfig& cfg) {
    validate(cfg);
    const double eps = transverse_energy(cfg.p_perp);
    const double up = branch_energy(cfg.p_par, eps, cfg.delta, +1);
    const double dn = branch_energy(cfg.p_par, eps, cfg.delta, -1);
    return {quotient_splitting(cfg.delta, eps, up, dn),
            regime(cfg.p_perp, cfg.delta), eps};
}

SplitResult splitting_at_rest(double p_perp, double delta) {
    return splitting({0.0, p_perp, delta});
}

double splitting_low_speed(const NeutralConfig& cfg) {
    validate(cfg);
    const double denom = 1.0 + cfg.p_perp * cfg.p_perp - cfg.delta * cfg.delta;
    if (std::abs(denom) <= 1e-12)
        throw DomainError("singular-expansion",
                          "low-speed expansion is singular at |delta| = sqrt(1 + p_perp^2)");
    const double delta0 = splitting_at_rest(cfg.p_perp, cfg.delta).splitting;
    return delta0 * (1.0 - cfg.p_par * cfg.p_par / (2.0 * std::abs(denom)));
}

double splitting_high_speed(const NeutralConfig& cfg) {
    validate(cfg);
    if (cfg.p_par == 0.0)
        throw DomainError("division-by-zero",
                          "high-speed approximation undefined at p_par = 0");
    // |p_par| keeps the approximation even in p_par like the exact formula.
    return 2.0 * cfg.delta * transverse_energy(cfg.p_perp) / std::abs(cfg.p_par);
}

Gradient splitting_gradient(const NeutralConfig& cfg) {
    validate(cfg);
    const double eps = transverse_energy(cfg.p_perp);
    const double up = branch_energy(cfg.p_par, eps, cfg.delta, +1);
    const double dn = branch_energy(cfg.p_par, eps, cfg.delta, -1);
    if (up == 0.0 || dn == 0.0)
        throw DomainError("degenerate", "gradient undefined where an eigenvalue vanishes");
    const double split = quotient_splitting(cfg.delta, eps, up, dn);
    const double d_par = -cfg.p_par * split / (up * dn);
    const double d_perp =
        (cfg.p_perp / eps) * ((eps + cfg.delta) / up - (eps - cfg.delta) / dn);
    return {d_par, d_perp};
}

} // namespace spinsplit::neutral
