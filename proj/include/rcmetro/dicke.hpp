#pragma once

#include <optional>
#include <string>

#include "rcmetro/thermal.hpp"

namespace rcmetro {

/// Large-N Dicke model; gbar = sqrt(N) g / 2 is the intensive coupling.
struct DickeParams {
    double epsilon = 1.0;
    double omega = 1.0;
    double gbar = 1.0;
    int n_spins = 1;

    void validate() const;
    /// mu = eps omega / (4 gbar^2); a transition exists iff mu < 1.
    double mu() const;
};

enum class DickePhase { normal, superradiant };

std::string to_string(DickePhase p);

/// eps / (2 artanh mu) for mu < 1, nothing otherwise.
std::optional<double> critical_temperature(const DickeParams& p);

/// Superradiant iff T < T_c; exactly at T_c the normal branch is used.
DickePhase phase_at(const DickeParams& p, double beta);

/// Root of eta mu = tanh(beta eps eta / 2) on [1, 1/mu]. Returns 1 within
/// root tolerance of T_c; throws PhaseError in the normal phase.
double solve_eta(const DickeParams& p, double beta);

struct LaplaceResult {
    DickePhase phase = DickePhase::normal;
    double ln_z = 0.0;
    double z0 = 0.0;
    double eta = 1.0;
    double phi = 0.0;      // Phi(z0)
    double phi_zz = 0.0;   // Phi''(z0)
};

/// Phi(z) = -beta omega z^2 + ln 2 cosh(beta sqrt(eps^2 + 16 gbar^2 z^2) / 2).
double dicke_phi(const DickeParams& p, double beta, double z);
double dicke_phi_zz(const DickeParams& p, double beta, double z);

/// ln Z = N Phi(z0) + (1/2) ln(2 / (beta omega |Phi''(z0)|)). Throws
/// NumericalError when |Phi''(z0)| < 1e-14 (flat direction at T_c).
LaplaceResult laplace_partition(const DickeParams& p, double beta);

ThermalObservables dicke_observables(const DickeParams& p, double beta);

struct DickeSnr {
    double beta = 0.0;
    DickePhase phase = DickePhase::normal;
    double eta = 1.0;
    double snr_per_n = 0.0;
    double snr_weak_per_n = 0.0;
    /// (S_DM - S_weak) / N.
    double delta_per_n = 0.0;
    double snr = 0.0;  // extensive, N * snr_per_n
};

/// Two-branch closed form: beta^2 / (2 + 2 cosh(beta eps)) in the normal phase,
/// omega^2 / (16 gbar^4 - eps^2 omega^2) in the superradiant phase.
DickeSnr dicke_snr(const DickeParams& p, double beta);

struct HpBranch {
    double minus_sq = 0.0;
    double plus_sq = 0.0;
    double minus = 0.0;  // NaN when minus_sq < 0
    double plus = 0.0;
    bool stable = true;
};

struct HpSpectrum {
    HpBranch normal;
    std::optional<HpBranch> superradiant;  // present iff mu < 1
};

/// Holstein-Primakoff + Bogoliubov excitation energies. The normal branch is
/// flagged unstable (stable = false) beyond the critical coupling.
HpSpectrum hp_excitations(const DickeParams& p);

}  // namespace rcmetro
