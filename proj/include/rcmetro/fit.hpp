#pragma once

#include <span>
#include <string>
#include <utility>

#include "rcmetro/table.hpp"

namespace rcmetro {

/// S ~ T^theta fitted as ln S = theta ln T + c with T = 1 / (beta omega).
struct ScalingFit {
    double theta = 0.0;
    double stderr_theta = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::pair<double, double> window{0.0, 0.0};  // beta omega range
    int points = 0;
};

/// Least squares over the points with beta_omega inside `window`. Throws
/// DomainError with fewer than 5 points or a nonpositive SNR in the window.
ScalingFit fit_scaling(std::span<const double> beta_omega, std::span<const double> snr,
                       std::pair<double, double> window);

/// Reads beta_omega, snr and converged columns; `curve` selects rows of one
/// curve when the table has a curve column. Unconverged rows in the window
/// are an error.
ScalingFit fit_scaling(const Table& table, std::pair<double, double> window, const std::string& curve = "");

/// Single multiplicative constant c minimizing sum (ln reference - ln(c model))^2.
double fit_scale(std::span<const double> reference, std::span<const double> model);

}  // namespace rcmetro
