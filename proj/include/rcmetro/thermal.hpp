#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rcmetro/operators.hpp"

namespace rcmetro {

enum class SectorMode {
    full,     // every total-spin sector, weighted by multiplicity
    maximal,  // J = N/2 only
};

enum class VarianceEstimator {
    operator_trace,  // <Jz^2> - <Jz>^2 as Gibbs-weighted eigenbasis traces
    free_energy,     // (1/beta^2) d^2 lnZ / d eps^2 = -(1/beta) d<Jz>/d eps
};

enum class DeltaConvention {
    absolute,  // snr - snr_weak
    per_spin,  // (snr - snr_weak) / N
};

std::string to_string(SectorMode m);
std::string to_string(VarianceEstimator v);
std::string to_string(DeltaConvention c);
SectorMode parse_sector_mode(const std::string& s);
VarianceEstimator parse_variance_estimator(const std::string& s);
DeltaConvention parse_delta_convention(const std::string& s);

struct EigenSystem {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXd eigenvectors;  // columns; first nonzero component positive
    CompositeBasis basis;
};

/// Throws NumericalError (with dimension and norm) if the solver fails.
EigenSystem eigendecompose(const OperatorMatrix& h);

/// Per-sector data needed for any beta: energies and the diagonal of Jz, Jz^2
/// and the top-Fock-level projector in the eigenbasis.
struct SectorSpectrum {
    int two_j = 0;
    long multiplicity = 1;
    Eigen::VectorXd energies;
    Eigen::VectorXd jz;
    Eigen::VectorXd jz2;
    Eigen::VectorXd top_fock;
};

struct ThermalOptions {
    SectorMode sectors = SectorMode::full;
    std::size_t dimension_cap = kDefaultDimensionCap;
};

struct ThermalObservables {
    double beta = 0.0;
    double ln_z = 0.0;
    double mean_jz = 0.0;
    double mean_jz2 = 0.0;
    double var_jz = 0.0;
    /// Gibbs population of the highest retained Fock level.
    double truncation_weight = 0.0;
    bool truncated = false;
};

/// Diagonalized composite system at fixed (params, n_max). Immutable and
/// cheap to query at many beta.
class ThermalModel {
public:
    ThermalModel(const ProbeParams& p, int n_max, const ThermalOptions& opt = {});

    /// Same model with epsilon replaced; epsilon may be negative (stencil points).
    static ThermalModel at_epsilon(const ProbeParams& p, double epsilon, int n_max,
                                   const ThermalOptions& opt = {});

    ThermalObservables observables(double beta) const;
    const std::vector<SectorSpectrum>& sectors() const { return sectors_; }
    double ground_energy() const { return ground_; }
    int n_max() const { return n_max_; }

private:
    ThermalModel() = default;
    void build(const ProbeParams& p, double epsilon, int n_max, const ThermalOptions& opt);

    std::vector<SectorSpectrum> sectors_;
    double ground_ = 0.0;
    int n_max_ = 0;
};

/// Truncation flag threshold on ThermalObservables::truncation_weight.
inline constexpr double kTruncationWeightLimit = 1e-10;

/// Shift-stabilized Gibbs sums over sectors. Throws DomainError unless beta > 0.
ThermalObservables thermal_observables(const ProbeParams& p, double beta, int n_max,
                                       const ThermalOptions& opt = {});

struct SnrOptions {
    /// Finite-difference step in units of omega.
    double fd_step = 1e-4;
    SectorMode sectors = SectorMode::full;
    VarianceEstimator variance = VarianceEstimator::operator_trace;
    DeltaConvention delta = DeltaConvention::absolute;
    std::size_t dimension_cap = kDefaultDimensionCap;
};

struct SnrPoint {
    double beta = 0.0;
    double snr = 0.0;
    double snr_weak = 0.0;
    double delta_snr = 0.0;
    DeltaConvention convention = DeltaConvention::absolute;
    double mean_jz = 0.0;
    double var_jz = 0.0;
    double dmean_deps = 0.0;
    int n_max = 0;
    bool converged = true;
};

/// d<Jz>/d eps by central differences at h and 2h with one Richardson step;
/// snr = (d<Jz>/d eps)^2 / var. Throws NumericalError (degenerate variance)
/// when var < 1e-14 N^2.
SnrPoint snr_exact(const ProbeParams& p, double beta, int n_max, const SnrOptions& opt = {});

/// Same as snr_exact on many beta values, diagonalizing the five stencil
/// Hamiltonians once. Output order follows `betas`.
std::vector<SnrPoint> snr_curve(const ProbeParams& p, const std::vector<double>& betas, int n_max,
                                const SnrOptions& opt = {});

struct ConvergenceSettings {
    double ln_z_tol = 1e-8;
    double rel_tol = 1e-6;  // on <Jz> and snr
    int start = 16;
    int cap = 4096;
};

struct ConvergenceReport {
    int n_max = 0;
    int steps = 0;
    ThermalObservables observables;
    SnrPoint point;
};

/// Doubles n_max from `start` until (lnZ, <Jz>, snr) at n and 2n agree within
/// tolerance and n itself carries no top-Fock weight, then returns n.
/// Throws ConvergenceError when the cap is reached.
ConvergenceReport converge_nmax(const ProbeParams& p, double beta, const ConvergenceSettings& cs = {},
                                const SnrOptions& opt = {});

/// Probe state Tr_RC exp(-beta H)/Z, block diagonal over spin sectors. Each
/// block carries its multiplicity: Tr rho = sum_J mult_J Tr block_J.
struct ReducedState {
    struct Block {
        int two_j = 0;
        long multiplicity = 1;
        Eigen::MatrixXd rho;
    };
    std::vector<Block> blocks;

    double trace() const;
    double min_eigenvalue() const;
    double mean_jz() const;
};

ReducedState reduced_probe_state(const ProbeParams& p, double beta, int n_max,
                                 const ThermalOptions& opt = {});

/// exp(-beta eps Jz)/Z restricted to the same sectors as `like`.
ReducedState gibbs_probe_state(const ReducedState& like, double epsilon, double beta);

/// S(rho || sigma) = Tr rho (ln rho - ln sigma); sigma must have full support.
double relative_entropy(const ReducedState& rho, const ReducedState& sigma);

struct GibbsFit {
    double beta = 0.0;
    double relative_entropy = 0.0;
};

/// Gibbs state of eps Jz closest to rho in relative entropy; the optimum
/// matches <Jz>. Throws DomainError for eps <= 0.
GibbsFit best_gibbs_fit(const ReducedState& rho, double epsilon);

}  // namespace rcmetro
