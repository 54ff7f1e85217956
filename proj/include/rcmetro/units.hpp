#pragma once

namespace rcmetro::units {

// SI 2019 exact values.
inline constexpr double kBoltzmann = 1.380649e-23;  // J / K
inline constexpr double kPlanck = 6.62607015e-34;   // J s

/// k_B T / h in GHz for a temperature in mK (about 20.8366 GHz/K).
double thermal_frequency_ghz(double temperature_mk);

/// 2 pi nu: ordinary frequency in GHz to angular frequency in rad/ns.
double angular_ghz(double nu_ghz);

/// Circuit parameters reduced to omega = 1.
struct Dimensionless {
    double epsilon = 0.0;     // eps / omega
    double omega = 1.0;
    double g = 0.0;           // g / omega
    double beta_omega = 0.0;  // hbar omega / (k_B T)
};

/// Inputs are ordinary frequencies nu = freq / 2 pi in GHz and T in mK.
/// Throws DomainError unless omega and temperature are positive and the
/// other frequencies are nonnegative.
Dimensionless convert_units(double epsilon_ghz, double omega_ghz, double g_ghz, double temperature_mk);

}  // namespace rcmetro::units
