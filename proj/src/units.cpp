#include "rcmetro/units.hpp"

#include <numbers>

#include "rcmetro/errors.hpp"

namespace rcmetro::units {

double thermal_frequency_ghz(double temperature_mk) {
    if (!(temperature_mk > 0.0)) throw DomainError("temperature must be > 0");
    return kBoltzmann * temperature_mk * 1e-3 / kPlanck * 1e-9;
}

double angular_ghz(double nu_ghz) { return 2.0 * std::numbers::pi * nu_ghz; }

Dimensionless convert_units(double epsilon_ghz, double omega_ghz, double g_ghz, double temperature_mk) {
    if (!(omega_ghz > 0.0)) throw DomainError("omega must be > 0");
    if (!(epsilon_ghz >= 0.0) || !(g_ghz >= 0.0)) throw DomainError("frequencies must be >= 0");
    // The 2 pi factors cancel in every ratio; beta omega = h nu_omega / (k_B T).
    Dimensionless d;
    d.epsilon = epsilon_ghz / omega_ghz;
    d.g = g_ghz / omega_ghz;
    d.beta_omega = omega_ghz / thermal_frequency_ghz(temperature_mk);
    return d;
}

}  // namespace rcmetro::units
