#include "rcmetro/fit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rcmetro/errors.hpp"

namespace rcmetro {

ScalingFit fit_scaling(std::span<const double> beta_omega, std::span<const double> snr,
                       std::pair<double, double> window) {
    if (beta_omega.size() != snr.size()) throw DomainError("fit inputs differ in length");
    std::vector<double> x, y;
    for (std::size_t i = 0; i < snr.size(); ++i) {
        const double b = beta_omega[i];
        if (b < window.first || b > window.second) continue;
        if (!(snr[i] > 0.0) || !(b > 0.0)) throw DomainError("nonpositive value inside the fit window");
        x.push_back(-std::log(b));
        y.push_back(std::log(snr[i]));
    }
    const int n = static_cast<int>(x.size());
    if (n < 5) throw DomainError("fit needs >= 5 points in the window, got " + std::to_string(n));

    double mx = 0.0, my = 0.0;
    for (int i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw DomainError("fit window holds a single temperature");

    ScalingFit f;
    f.theta = sxy / sxx;
    f.intercept = my - f.theta * mx;
    double ssr = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = y[i] - f.intercept - f.theta * x[i];
        ssr += r * r;
    }
    f.stderr_theta = std::sqrt(ssr / (n - 2) / sxx);
    f.r_squared = syy > 0.0 ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 1.0;
    f.window = window;
    f.points = n;
    return f;
}

ScalingFit fit_scaling(const Table& table, std::pair<double, double> window, const std::string& curve) {
    const bool has_curve = table.column_index("curve") >= 0;
    const bool has_conv = table.column_index("converged") >= 0;
    std::vector<double> b, s;
    for (std::size_t r = 0; r < table.size(); ++r) {
        if (!curve.empty() && has_curve && table.text(r, "curve") != curve) continue;
        const double bo = table.real(r, "beta_omega");
        if (bo < window.first || bo > window.second) continue;
        if (has_conv && !table.boolean(r, "converged")) {
            throw DomainError("unconverged row at beta_omega = " + std::to_string(bo));
        }
        b.push_back(bo);
        s.push_back(table.real(r, "snr"));
    }
    return fit_scaling(b, s, window);
}

double fit_scale(std::span<const double> reference, std::span<const double> model) {
    if (reference.size() != model.size() || reference.empty()) throw DomainError("fit_scale needs equal nonempty inputs");
    double acc = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        if (!(reference[i] > 0.0 && model[i] > 0.0)) throw DomainError("fit_scale needs positive values");
        acc += std::log(reference[i] / model[i]);
    }
    return std::exp(acc / reference.size());
}

}  // namespace rcmetro
