#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace rcmetro {

using cplx = std::complex<double>;

/// Residual bath after the reaction-coordinate extraction:
/// J1(w) = gamma * w * exp(-w / omega_c).
struct OhmicResidual {
    double gamma = 0.05;
    double omega_c = 1e3;

    void validate() const;
    double density(double w) const;
    /// W1(0) = (2/pi) gamma omega_c, the shift absorbed by the counterterm.
    double cauchy_at_zero() const;
};

/// Original bath seen by the bare probe:
/// J0(w) = Gamma * varsigma * w / ((w^2 - w0^2)^2 + Gamma^2 w^2).
struct LorentzianOriginal {
    double varsigma = 0.0;
    double gamma_width = 0.0;
    double omega0 = 1.0;

    double density(double w) const;
    /// Closed-form transform -varsigma / (z^2 - w0^2 + i Gamma z), valid for Im z >= 0.
    cplx cauchy(cplx z) const;
};

/// Gamma = gamma * omega0, varsigma = 4 omega0 g^2. Throws DomainError unless
/// omega0 > 0 and g > 0.
LorentzianOriginal map_residual_to_original(const OhmicResidual& res, double omega0, double g);

struct CauchyOptions {
    double rel_tol = 1e-10;
    /// Finite-interval end. 0 picks 50 * max(|z|, density_scale).
    double upper = 0.0;
    /// Characteristic frequency of J (peak or cutoff).
    double density_scale = 1.0;
    /// For real z: return the boundary value W(x + i0) instead of raising.
    bool principal_value = false;
};

/// W(z) = (2/pi) int_0^inf J(w) w / (w^2 - z^2) dw for an odd-extended J.
/// The pole near Re z is removed by subtracting J(|Re z|) and adding the
/// logarithm analytically; [upper, inf) is mapped onto (0, 1].
/// Throws DomainError for real nonzero z without principal_value, and
/// QuadratureError if any piece fails to converge.
cplx cauchy_transform(const std::function<double(double)>& density, cplx z,
                      const CauchyOptions& opt = {});

enum class RealPartTreatment {
    /// W1(z) - W1(0): the counterterm cancels the static shift.
    counterterm_subtracted,
    /// W1(z) as is.
    raw,
    /// i Im W1(z) only.
    imaginary_only,
};

struct EquivalenceReport {
    double max_residual = 0.0;
    double worst_frequency = 0.0;
    std::vector<double> residuals;
    /// True when g == 0 and residuals are absolute.
    bool absolute = false;
};

/// Compares -W0(w + i delta)/2 from the Lorentzian closed form with
/// 2 g^2 w0 / ((w + i delta)^2 - w0^2 + w0 W1eff(w + i delta)), W1 by quadrature.
/// Residuals are relative to |lhs|, absolute when g == 0.
EquivalenceReport verify_equivalence(const OhmicResidual& res, double omega0, double g,
                                     std::span<const double> grid, double delta = 1e-6,
                                     RealPartTreatment treatment = RealPartTreatment::counterterm_subtracted,
                                     double rel_tol = 1e-10);

}  // namespace rcmetro
