#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "spinsplit/errors.hpp"
#include "spinsplit/execution.hpp"
#include "spinsplit/neutral.hpp"

// Independent numerical ground truth: exact diagonalization of the 4x4
// Dirac-matrix Hamiltonian (neutral case) and a finite-difference transverse
// eigensolver (charged case). Shares no arithmetic with the closed-form
// paths it checks.
namespace spinsplit::oracles {

using Complex = std::complex<double>;
using Matrix4 = std::array<std::array<Complex, 4>, 4>;

// Standard (Dirac) representation; the field axis is z, the transverse
// momentum axis is x. sigma_par is the dimensionless spin matrix along the
// field with eigenvalues +-1.
struct DiracMatrices {
    Matrix4 alpha_x, alpha_y, alpha_z, beta, sigma_par;
};

DiracMatrices dirac_matrices();

// H = alpha_z p_par + alpha_x p_perp + beta + beta sigma_par delta
// (rest-mass term included).
Matrix4 neutral_hamiltonian(const neutral::NeutralConfig& cfg);

// Self-contained cyclic-Jacobi eigensolver for Hermitian 4x4 matrices.
// Returns eigenvalues sorted ascending. Throws non-convergence after the
// sweep cap; that signals a bug, never an expected state.
std::array<double, 4> hermitian4_eigenvalues(Matrix4 m);

// Sorted eigenvalues of the matrix Hamiltonian at cfg.
std::array<double, 4> neutral_oracle(const neutral::NeutralConfig& cfg);

// Lowest n_max+1 eigenvalues of -d^2/dxi^2 + xi^2 discretized with
// second-order central differences on a uniform grid over
// (-box_halfwidth, box_halfwidth), Dirichlet boundaries, grid_points interior
// nodes. lambda_n -> 2n+1 as the grid refines. Box convergence is checked by
// re-solving with the halfwidth doubled at the same spacing; an unconverged
// top eigenstate raises insufficient-box.
// Consumers reconstruct E_n^sigma = sqrt(1 + p_par^2 + (lambda_n + sigma) b).
std::vector<double> landau_oracle(int n_max, int grid_points = 2000,
                                  double box_halfwidth = 12.0);

// splitmix64. This is the documented generator behind run_verification, so
// reports are reproducible across implementations (see README).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    double uniform01();                    // [0,1), 53-bit
    double uniform(double lo, double hi);  // lo + (hi-lo)*uniform01()
    int uniform_int(int n);                // {0,...,n-1}

private:
    std::uint64_t state_;
};

enum class VerifyKind { dirac, landau };

struct OracleReport {
    VerifyKind kind = VerifyKind::dirac;
    int samples = 0;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    double max_rel_error = 0.0;
    bool pass = false; // max_rel_error <= tolerance
    int worst_index = -1;
    // dirac: {p_par, p_perp, delta}; landau: {p_par, b, n}
    std::array<double, 3> worst_params{};

    std::string summary_line() const;
    std::string worst_line() const;
};

// Draws `samples` parameter tuples from SplitMix64(seed) (dirac: p_par,
// p_perp, delta uniform in [0,5]; landau: p_par in [0,5], b in [0.01,2],
// n in {0..5}), compares the closed forms against the oracle and returns the
// max-aggregated report. Identical seed gives a bit-identical report, with
// either execution policy. Relative error is measured against max(1, |E|).
OracleReport run_verification(VerifyKind kind, int samples, std::uint64_t seed,
                              double tol, Execution exec = Execution::parallel);

} // namespace spinsplit::oracles
