#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rcmetro/operators.hpp"
#include "rcmetro/thermal.hpp"

namespace rcmetro {

enum class LambdaMethod { root, closed_form };

struct LambdaSolution {
    double lambda = 0.0;
    double residual = 0.0;
    LambdaMethod method = LambdaMethod::root;
};

/// Left side of the variational condition dE_g/d lambda = 0,
/// lambda - g/omega + (eps lambda / omega) exp(-lambda^2 / 2).
double lambda_equation(double lambda, double epsilon, double omega, double g);

/// Smallest root of lambda_equation on [0, (g/omega)(1 + eps/omega) + 1].
/// Throws NumericalError if no sign change is found on the bracket.
LambdaSolution solve_lambda(double epsilon, double omega, double g, double tol = 1e-12);

/// g / (omega + eps exp(-lambda0^2 / 2)), lambda0 = g / (eps + omega).
double lambda_closed_form(double epsilon, double omega, double g);

/// d lambda / d eps of lambda_closed_form.
double dlambda_closed_form(double epsilon, double omega, double g);

/// d lambda / d eps of the exact root, by implicit differentiation.
double dlambda_implicit(double epsilon, double omega, double g, double lambda);

/// lambda^n exp(-lambda^2/2) m!/(m+n)! L_m^n(lambda^2) via the three-term
/// Laguerre recurrence.
double coefficient_F(int n, int m, double lambda);

/// Energy (N/4)(omega lambda^2 - 2 g lambda) - (N/2) eps exp(-lambda^2/2) of
/// the displaced |-N/2, 0> state at arbitrary lambda.
double grwa_ground_energy(int n_spins, double epsilon, double omega, double g, double lambda);

/// One excitation-conserving block. States |m, n> with (m + J) + n = k;
/// excitation_index = k - 1, so the isolated ground entry has index -1.
/// Rows are ordered by ascending m.
struct GrwaBlock {
    int excitation_index = -1;
    int two_j = 1;
    long multiplicity = 1;
    Eigen::MatrixXd matrix;
    std::vector<std::pair<double, int>> labels;  // (m, n)
};

/// Blocks for k = 0 ... n_max in every selected spin sector. Block k holds
/// min(k, 2J) + 1 states, so the retained space is the triangle n <= n_max - (m + J)
/// of the (2J+1)(n_max+1) rectangle; the rest is the truncation edge.
std::vector<GrwaBlock> build_grwa_blocks(const ProbeParams& p, double lambda, int n_max,
                                         SectorMode sectors = SectorMode::full);

struct GrwaPartition {
    double ln_z = 0.0;
    double min_energy = 0.0;
    /// Gibbs weight carried by the highest excitation block.
    double edge_weight = 0.0;
    bool truncated = false;
};

GrwaPartition grwa_partition(const std::vector<GrwaBlock>& blocks, double beta);

/// Ascending eigenvalues of all blocks of the sector 2J = two_j (multiplicity
/// not expanded).
std::vector<double> grwa_levels(const std::vector<GrwaBlock>& blocks, int two_j);

struct GrwaOptions {
    SectorMode sectors = SectorMode::full;
    double fd_step = 1e-3;  // units of omega
};

struct GrwaObservables {
    double beta = 0.0;
    double ln_z = 0.0;
    double mean_jz = 0.0;   // -(1/beta) d lnZ / d eps
    double var_jz = 0.0;    // (1/beta^2) d^2 lnZ / d eps^2
    double dmean_deps = 0.0;
    double snr = 0.0;
    bool truncated = false;
};

/// GRWA thermodynamics from eps-derivatives of lnZ_GRWA, lambda re-solved at
/// every stencil point. Only lnZ is available in this approximation, so the
/// variance is the free-energy one.
GrwaObservables grwa_observables(const ProbeParams& p, double beta, int n_max,
                                 const GrwaOptions& opt = {});

enum class CurvatureSource {
    closed_form,  // d lambda / d eps from the approximate closed form
    implicit,     // d lambda / d eps of the exact root
};

struct GroundEnergyDerivs {
    double e_g = 0.0;
    double de_deps = 0.0;
    double d2e_deps2 = 0.0;
    double lambda = 0.0;
    double dlambda_deps = 0.0;
    /// Second-order finite difference of e_g(eps), for the consistency check.
    double d2e_fd = 0.0;
};

/// Throws NumericalError if analytic and finite-difference second
/// derivatives differ by more than check_tol (relative); pass check_tol <= 0
/// to skip the check.
GroundEnergyDerivs ground_energy_derivs(const ProbeParams& p,
                                        CurvatureSource source = CurvatureSource::closed_form,
                                        double check_tol = 1e-3);

/// N = 1: c 4 (E'')^2 / (1 - 4 (E')^2); N >= 2: -c beta E''.
/// Throws DomainError if the N = 1 denominator is not positive or beta <= 0.
double asymptotic_snr(int n_spins, const GroundEnergyDerivs& d, double beta, double constant = 1.0);

}  // namespace rcmetro
