#pragma once

namespace rcmetro {

/// Canonical (weak-coupling) Gibbs state of eps Jz for N independent spins.
struct WeakResult {
    double beta = 0.0;
    double mean_jz = 0.0;
    double var_jz = 0.0;
    double snr = 0.0;
};

/// snr = N beta^2 / (2 + 2 cosh(beta eps)), evaluated through sech so that
/// beta*eps of several thousand neither overflows nor loses the result.
/// Throws DomainError unless beta > 0 and N >= 1.
WeakResult weak_snr(int n_spins, double epsilon, double beta);

/// Leading low-temperature term N beta^2 exp(-beta eps). Valid for beta*eps >> 1
/// only. Throws DomainError unless temperature > 0 and epsilon > 0.
double weak_lowT_asymptote(double epsilon, double temperature, int n_spins);

/// sech(x) without overflow.
double stable_sech(double x);

}  // namespace rcmetro
