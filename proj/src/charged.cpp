#include "spinsplit/charged.hpp"

#include <cmath>

#include "spinsplit/errors.hpp"

namespace spinsplit::charged {

void validate(const ChargedConfig& cfg) {
    if (!std::isfinite(cfg.p_par) || !std::isfinite(cfg.b))
        throw DomainError("invalid-input", "charged config fields must be finite");
    if (cfg.b < 0.0)
        throw DomainError("negative-field", "field parameter b must be non-negative");
    if (cfg.n < 0)
        throw DomainError("invalid-input", "Landau index n must be non-negative");
}

namespace {

void check_sigma(int sigma) {
    if (sigma != 1 && sigma != -1)
        throw DomainError("invalid-spin", "spin label sigma must be +1 or -1");
}

// 1 + p^2 + (2n+1+sigma) b, the square of the relativistic level.
double level_squared(const ChargedConfig& cfg, int sigma) {
    return 1.0 + cfg.p_par * cfg.p_par + (2.0 * cfg.n + 1 + sigma) * cfg.b;
}

} // namespace

double landau_level(const ChargedConfig& cfg, int sigma) {
    validate(cfg);
    check_sigma(sigma);
    return std::sqrt(level_squared(cfg, sigma));
}

LandauSplitResult splitting(const ChargedConfig& cfg) {
    validate(cfg);
    const double up = std::sqrt(level_squared(cfg, +1));
    const double dn = std::sqrt(level_squared(cfg, -1));
    // up^2 - dn^2 = 2b exactly, so the quotient form below equals up - dn
    // without cancellation even at b ~ 1e-12.
    return {2.0 * cfg.b / (up + dn), up, dn};
}

double splitting_nonrel(const ChargedConfig& cfg) {
    validate(cfg);
    return cfg.b;
}

double landau_level_nonrel(const ChargedConfig& cfg, int sigma) {
    validate(cfg);
    check_sigma(sigma);
    return 1.0 + 0.5 * cfg.p_par * cfg.p_par + 0.5 * (2.0 * cfg.n + 1 + sigma) * cfg.b;
}

double splitting_low_field(const ChargedConfig& cfg) {
    validate(cfg);
    const double b = cfg.b;
    const double p2 = cfg.p_par * cfg.p_par;
    return b - 0.5 * (2.0 * cfg.n + 1) * b * b - 0.5 * b * p2;
}

double splitting_high_speed(const ChargedConfig& cfg) {
    validate(cfg);
    if (cfg.p_par == 0.0)
        throw DomainError("division-by-zero",
                          "high-speed approximation undefined at p_par = 0");
    return cfg.b / std::abs(cfg.p_par);
}

double splitting_gradient_par(const ChargedConfig& cfg) {
    validate(cfg);
    const auto s = splitting(cfg);
    return -cfg.p_par * s.splitting / (s.level_up * s.level_down);
}

} // namespace spinsplit::charged
