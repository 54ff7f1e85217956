#include "rcmetro/rcmap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rcmetro/errors.hpp"
#include "rcmetro/numerics.hpp"

namespace rcmetro {

void OhmicResidual::validate() const {
    if (!(gamma > 0.0)) throw DomainError("ohmic gamma must be > 0");
    if (!(omega_c > 0.0)) throw DomainError("ohmic omega_c must be > 0");
}

double OhmicResidual::density(double w) const {
    return gamma * w * std::exp(-w / omega_c);
}

double OhmicResidual::cauchy_at_zero() const {
    return 2.0 / std::numbers::pi * gamma * omega_c;
}

double LorentzianOriginal::density(double w) const {
    const double d = w * w - omega0 * omega0;
    return gamma_width * varsigma * w / (d * d + gamma_width * gamma_width * w * w);
}

cplx LorentzianOriginal::cauchy(cplx z) const {
    return -varsigma / (z * z - omega0 * omega0 + cplx(0.0, gamma_width) * z);
}

LorentzianOriginal map_residual_to_original(const OhmicResidual& res, double omega0, double g) {
    res.validate();
    if (!(omega0 > 0.0)) throw DomainError("omega0 must be > 0");
    if (!(g > 0.0)) throw DomainError("g must be > 0");
    return {4.0 * omega0 * g * g, res.gamma * omega0, omega0};
}

namespace {

double density_magnitude(const std::function<double(double)>& density, double upper) {
    double m = 0.0;
    for (int k = 0; k <= 64; ++k) {
        const double w = upper * std::pow(10.0, -8.0 + 8.0 * k / 64.0);
        m = std::max(m, std::abs(density(w)));
    }
    return m;
}

}  // namespace

cplx cauchy_transform(const std::function<double(double)>& density, cplx z, const CauchyOptions& opt) {
    if (!(opt.rel_tol > 0.0)) throw DomainError("quadrature tolerance must be > 0");
    const bool on_axis = z.imag() == 0.0;
    if (on_axis && z.real() != 0.0 && !opt.principal_value) {
        throw DomainError("real argument requires principal-value mode");
    }
    const double upper =
        opt.upper > 0.0 ? opt.upper : 50.0 * std::max(std::abs(z), opt.density_scale);
    const double abs_tol = opt.rel_tol * std::max(density_magnitude(density, upper), 1e-300);
    const double inv_pi = 1.0 / std::numbers::pi;

    // Tail [upper, inf) through w = upper / t.
    const auto tail = [&](auto&& kernel, bool imag) {
        const std::function<double(double)> f = [&](double t) {
            const double w = upper / t;
            const cplx v = density(w) * kernel(w) * (upper / (t * t));
            return imag ? v.imag() : v.real();
        };
        const double bp[] = {0.0, 1.0};
        return numerics::integrate(f, bp, opt.rel_tol, abs_tol).value;
    };

    if (z == cplx(0.0, 0.0)) {
        const std::function<double(double)> f = [&](double w) { return density(w) / w; };
        const double bp[] = {0.0, std::min(opt.density_scale, upper), upper};
        const double head = numerics::integrate(f, bp, opt.rel_tol, abs_tol).value;
        const double rest = tail([](double w) { return cplx(1.0 / w); }, false);
        return 2.0 * inv_pi * (head + rest);
    }

    const double a = std::clamp(z.real(), 0.0, upper);
    const double b = std::clamp(-z.real(), 0.0, upper);
    const double ja = density(a);
    const double jb = density(b);

    const auto body = [&](double w) {
        return (density(w) - ja) / (w - z) + (density(w) - jb) / (w + z);
    };
    std::vector<double> bp{0.0, a, b, std::min(2.0 * std::abs(z), upper),
                           std::min(opt.density_scale, upper), upper};
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

    const std::function<double(double)> re = [&](double w) { return body(w).real(); };
    const std::function<double(double)> im = [&](double w) { return body(w).imag(); };
    const double head_re = numerics::integrate(re, bp, opt.rel_tol, abs_tol).value;
    const double head_im = numerics::integrate(im, bp, opt.rel_tol, abs_tol).value;

    // Signed zeros keep the logarithms on the branch approached from Im z > 0.
    const cplx logs = ja * (std::log(upper - z) - std::log(-z)) + jb * (std::log(upper + z) - std::log(z));

    const auto kernel = [&](double w) { return 1.0 / (w - z) + 1.0 / (w + z); };
    const double tail_re = tail(kernel, false);
    const double tail_im = tail(kernel, true);

    return inv_pi * (cplx(head_re + tail_re, head_im + tail_im) + logs);
}

EquivalenceReport verify_equivalence(const OhmicResidual& res, double omega0, double g,
                                     std::span<const double> grid, double delta,
                                     RealPartTreatment treatment, double rel_tol) {
    res.validate();
    if (!(omega0 > 0.0)) throw DomainError("omega0 must be > 0");
    if (!(g >= 0.0)) throw DomainError("g must be >= 0");
    if (!(delta > 0.0)) throw DomainError("delta must be > 0");
    if (grid.empty()) throw DomainError("frequency grid is empty");

    EquivalenceReport report;
    report.absolute = g == 0.0;
    const LorentzianOriginal lor{4.0 * omega0 * g * g, res.gamma * omega0, omega0};
    const double w1_zero = res.cauchy_at_zero();
    const auto j1 = [&](double w) { return res.density(w); };
    CauchyOptions opt;
    opt.rel_tol = rel_tol;
    opt.density_scale = res.omega_c;

    for (double w : grid) {
        if (!(w > 0.0)) throw DomainError("grid frequencies must be > 0");
        const cplx z(w, delta);
        const cplx lhs = -0.5 * lor.cauchy(z);
        cplx w1 = cauchy_transform(j1, z, opt);
        switch (treatment) {
            case RealPartTreatment::counterterm_subtracted: w1 -= w1_zero; break;
            case RealPartTreatment::raw: break;
            case RealPartTreatment::imaginary_only: w1 = cplx(0.0, w1.imag()); break;
        }
        const cplx rhs = 2.0 * g * g * omega0 / (z * z - omega0 * omega0 + omega0 * w1);
        const double r = report.absolute ? std::abs(lhs - rhs) : std::abs(lhs - rhs) / std::abs(lhs);
        report.residuals.push_back(r);
        if (r > report.max_residual || report.residuals.size() == 1) {
            report.max_residual = r;
            report.worst_frequency = w;
        }
    }
    return report;
}

}  // namespace rcmetro
