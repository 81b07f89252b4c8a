#include "spinsplit/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spinsplit/charged.hpp"
#include "spinsplit/format.hpp"

namespace spinsplit::oracles {

namespace {

constexpr Complex I{0.0, 1.0};

Matrix4 zero_matrix() {
    Matrix4 m{};
    return m;
}

Matrix4 matmul(const Matrix4& a, const Matrix4& b) {
    Matrix4 c = zero_matrix();
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const Complex aik = a[i][k];
            if (aik == Complex{}) continue;
            for (int j = 0; j < 4; ++j) c[i][j] += aik * b[k][j];
        }
    return c;
}

Matrix4 adjoint(const Matrix4& a) {
    Matrix4 c = zero_matrix();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) c[i][j] = std::conj(a[j][i]);
    return c;
}

double offdiag_norm(const Matrix4& m) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) s += std::norm(m[i][j]);
    return std::sqrt(s);
}

double frobenius(const Matrix4& m) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += std::norm(m[i][j]);
    return std::sqrt(s);
}

} // namespace

DiracMatrices dirac_matrices() {
    DiracMatrices d{};
    d.alpha_x = {{{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}}};
    d.alpha_y = {{{0, 0, 0, -I}, {0, 0, I, 0}, {0, -I, 0, 0}, {I, 0, 0, 0}}};
    d.alpha_z = {{{0, 0, 1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, -1, 0, 0}}};
    d.beta = {{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}}};
    d.sigma_par = {{{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}}};
    return d;
}

Matrix4 neutral_hamiltonian(const neutral::NeutralConfig& cfg) {
    neutral::validate(cfg);
    const DiracMatrices d = dirac_matrices();
    const Matrix4 beta_sigma = matmul(d.beta, d.sigma_par);
    Matrix4 h = zero_matrix();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            h[i][j] = d.alpha_z[i][j] * cfg.p_par + d.alpha_x[i][j] * cfg.p_perp +
                      d.beta[i][j] + beta_sigma[i][j] * cfg.delta;
    return h;
}

std::array<double, 4> hermitian4_eigenvalues(Matrix4 m) {
    const double scale = frobenius(m);
    const double stop = 1e-15 * std::max(1.0, scale);

    for (int sweep = 0; sweep < 60; ++sweep) {
        if (offdiag_norm(m) <= stop) {
            std::array<double, 4> ev{m[0][0].real(), m[1][1].real(),
                                     m[2][2].real(), m[3][3].real()};
            std::sort(ev.begin(), ev.end());
            return ev;
        }
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) {
                const double apq = std::abs(m[p][q]);
                if (apq <= 1e-300) continue;
                const double app = m[p][p].real();
                const double aqq = m[q][q].real();
                const Complex phase = m[p][q] / apq;
                // Pick tan(theta) as the smaller root of
                // t^2 + 2 tau t - 1 = 0, tau = (app-aqq)/(2|apq|),
                // which zeroes the (p,q) entry of R^H m R.
                const double tau = (app - aqq) / (2.0 * apq);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(tau, 1.0));
                const double cs = 1.0 / std::hypot(t, 1.0);
                const double sn = t * cs;

                Matrix4 r = zero_matrix();
                for (int i = 0; i < 4; ++i) r[i][i] = 1.0;
                r[p][p] = cs;
                r[q][q] = cs;
                r[p][q] = -sn * phase;
                r[q][p] = sn * std::conj(phase);
                m = matmul(adjoint(r), matmul(m, r));
            }
    }
    throw DomainError("non-convergence", "4x4 Jacobi eigensolver did not converge");
}

std::array<double, 4> neutral_oracle(const neutral::NeutralConfig& cfg) {
    return hermitian4_eigenvalues(neutral_hamiltonian(cfg));
}

namespace {

// Number of eigenvalues of the tridiagonal (diag, e on both off-diagonals)
// strictly below lambda, by Sturm counting on the LDL^T pivots.
int sturm_count(const std::vector<double>& diag, double e2, double lambda,
                double pivmin) {
    int count = 0;
    double d = diag[0] - lambda;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
    for (size_t i = 1; i < diag.size(); ++i) {
        d = diag[i] - lambda - e2 / d;
        if (std::abs(d) < pivmin) d = -pivmin;
        if (d < 0.0) ++count;
    }
    return count;
}

// k-th smallest eigenvalue (0-based) by bisection.
double bisect_eigenvalue(const std::vector<double>& diag, double e2, int k,
                         double lo, double hi, double pivmin) {
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi));
         ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(diag, e2, mid, pivmin) >= k + 1)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

// Lowest n_max+1 eigenvalues of -d^2/dxi^2 + xi^2 on (-L, L), Dirichlet,
// n interior points.
std::vector<double> oscillator_spectrum(int n_max, int n, double halfwidth) {
    const double h = 2.0 * halfwidth / (n + 1);
    const double inv_h2 = 1.0 / (h * h);
    std::vector<double> diag(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double x = -halfwidth + (i + 1) * h;
        diag[static_cast<size_t>(i)] = 2.0 * inv_h2 + x * x;
    }
    const double e2 = inv_h2 * inv_h2;

    double lo = diag[0], hi = diag[0];
    for (double a : diag) {
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    lo -= 2.0 * inv_h2;
    hi += 2.0 * inv_h2;
    const double pivmin =
        std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon() *
        std::max(1.0, e2);

    std::vector<double> ev(static_cast<size_t>(n_max) + 1);
    for (int k = 0; k <= n_max; ++k)
        ev[static_cast<size_t>(k)] = bisect_eigenvalue(diag, e2, k, lo, hi, pivmin);
    return ev;
}

} // namespace

std::vector<double> landau_oracle(int n_max, int grid_points, double box_halfwidth) {
    if (n_max < 0)
        throw DomainError("invalid-input", "n_max must be non-negative");
    if (grid_points < 200)
        throw DomainError("invalid-input", "landau oracle needs at least 200 grid points");
    if (!std::isfinite(box_halfwidth) || box_halfwidth <= 0.0)
        throw DomainError("invalid-input", "box halfwidth must be positive and finite");

    std::vector<double> ev = oscillator_spectrum(n_max, grid_points, box_halfwidth);

    // Box-convergence check: double the box at the same grid spacing
    // (h = 2L/(n+1), so n -> 2n+1 keeps h) and require the top requested
    // eigenvalue to be unchanged. Catches eigenstates squeezed by the walls.
    const std::vector<double> wide =
        oscillator_spectrum(n_max, 2 * grid_points + 1, 2.0 * box_halfwidth);
    const double top = ev[static_cast<size_t>(n_max)];
    const double drift = std::abs(top - wide[static_cast<size_t>(n_max)]);
    if (drift > 1e-6 * std::max(1.0, std::abs(top)))
        throw DomainError("insufficient-box",
                          "box_halfwidth too small for the requested eigenstate");
    return ev;
}

std::uint64_t SplitMix64::next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
}

int SplitMix64::uniform_int(int n) {
    return static_cast<int>(next() % static_cast<std::uint64_t>(n));
}

namespace {

// Error measure used throughout verification: robust to eigenvalues near 0
// (dirac spectra cross zero when delta > sqrt(1 + p_perp^2)).
double rel_error(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

struct Sample {
    std::array<double, 3> params;
    double err;
};

double dirac_sample_error(const std::array<double, 3>& t) {
    const neutral::NeutralConfig cfg{t[0], t[1], t[2]};
    const auto oracle = neutral_oracle(cfg);
    const auto closed = neutral::eigenvalues(cfg);
    std::array<double, 4> expect{closed.e_minus_up, closed.e_minus_down,
                                 closed.e_plus_down, closed.e_plus_up};
    std::sort(expect.begin(), expect.end());
    double err = 0.0;
    for (int i = 0; i < 4; ++i) err = std::max(err, rel_error(expect[i], oracle[i]));
    return err;
}

double landau_sample_error(const std::array<double, 3>& t,
                           const std::vector<double>& lambda) {
    const charged::ChargedConfig cfg{t[0], t[1], static_cast<int>(t[2])};
    double err = 0.0;
    for (int sigma : {-1, +1}) {
        const double closed = charged::landau_level(cfg, sigma);
        const double lam = lambda[static_cast<size_t>(cfg.n)];
        const double recon =
            std::sqrt(1.0 + cfg.p_par * cfg.p_par + (lam + sigma) * cfg.b);
        err = std::max(err, rel_error(closed, recon));
    }
    return err;
}

} // namespace

std::string OracleReport::summary_line() const {
    std::string s = "verify kind=";
    s += kind == VerifyKind::dirac ? "dirac" : "landau";
    s += " samples=" + std::to_string(samples);
    s += " seed=" + std::to_string(seed);
    s += " tol=" + format_sci(tolerance);
    s += " max_rel_error=" + format_sci(max_rel_error);
    s += pass ? " result=pass" : " result=fail";
    return s;
}

std::string OracleReport::worst_line() const {
    std::string s = "worst sample=" + std::to_string(worst_index);
    if (kind == VerifyKind::dirac) {
        s += " p_par=" + format_sci(worst_params[0]);
        s += " p_perp=" + format_sci(worst_params[1]);
        s += " delta=" + format_sci(worst_params[2]);
    } else {
        s += " p_par=" + format_sci(worst_params[0]);
        s += " b=" + format_sci(worst_params[1]);
        s += " n=" + std::to_string(static_cast<int>(worst_params[2]));
    }
    return s;
}

OracleReport run_verification(VerifyKind kind, int samples, std::uint64_t seed,
                              double tol, Execution exec) {
    if (samples < 1)
        throw DomainError("invalid-input", "verification needs at least one sample");
    if (!std::isfinite(tol) || tol <= 0.0)
        throw DomainError("invalid-input", "tolerance must be positive and finite");

    // Draw all tuples up front so the draw order is independent of the
    // execution policy.
    SplitMix64 rng(seed);
    std::vector<Sample> grid(static_cast<size_t>(samples));
    for (auto& s : grid) {
        if (kind == VerifyKind::dirac) {
            s.params = {rng.uniform(0.0, 5.0), rng.uniform(0.0, 5.0),
                        rng.uniform(0.0, 5.0)};
        } else {
            s.params = {rng.uniform(0.0, 5.0), rng.uniform(0.01, 2.0),
                        static_cast<double>(rng.uniform_int(6))};
        }
        s.err = 0.0;
    }

    std::vector<double> lambda;
    if (kind == VerifyKind::landau) lambda = landau_oracle(5);

    const auto eval = [&](Sample& s) {
        s.err = kind == VerifyKind::dirac ? dirac_sample_error(s.params)
                                          : landau_sample_error(s.params, lambda);
    };

    const auto count = static_cast<std::ptrdiff_t>(grid.size());
    if (exec == Execution::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (std::ptrdiff_t i = 0; i < count; ++i)
            eval(grid[static_cast<size_t>(i)]);
    } else {
        for (std::ptrdiff_t i = 0; i < count; ++i)
            eval(grid[static_cast<size_t>(i)]);
    }

    OracleReport report;
    report.kind = kind;
    report.samples = samples;
    report.seed = seed;
    report.tolerance = tol;
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const Sample& s = grid[static_cast<size_t>(i)];
        if (s.err > report.max_rel_error) {
            report.max_rel_error = s.err;
            report.worst_index = static_cast<int>(i);
            report.worst_params = s.params;
        }
    }
    report.pass = report.max_rel_error <= tol;
    return report;
}

} // namespace spinsplit::oracles
