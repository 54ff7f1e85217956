#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "oracle_values.hpp"
#include "rcmetro/errors.hpp"
#include "rcmetro/numerics.hpp"
#include "rcmetro/rcmap.hpp"

using namespace rcmetro;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
    return out;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("rcmap") {

TEST_CASE("mapping parameters") {
    const auto l = map_residual_to_original({0.1, 1e3}, 1.0, 0.5);
    CHECK(l.gamma_width == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(l.varsigma == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(l.omega0 == 1.0);
    const auto m = map_residual_to_original({0.05, 1e3}, 2.0, 0.3);
    CHECK(m.gamma_width == doctest::Approx(0.1));
    CHECK(m.varsigma == doctest::Approx(4 * 2.0 * 0.09));
    CHECK(m.density(2.0) == doctest::Approx(m.varsigma / (m.gamma_width * 2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(map_residual_to_original({0.1, 1e3}, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(map_residual_to_original({0.1, 1e3}, 0.0, 0.5), DomainError);
    CHECK_THROWS_AS(OhmicResidual({0.0, 1.0}).validate(), DomainError);
}

TEST_CASE("Lorentzian peak keeps its area as it narrows") {
    // area of J0 tends to pi varsigma / (2 omega0) as Gamma -> 0
    double prev = 1e300;
    for (double gamma : {0.2, 0.05, 0.01}) {
        const auto l = map_residual_to_original({gamma, 1e3}, 1.0, 0.5);
        const double lo = 1.0 - 40 * gamma, hi = 1.0 + 40 * gamma;
        const std::vector<double> bp{0.0, std::max(lo, 0.5), 1.0, hi, 50.0};
        const double area = numerics::integrate([&](double w) { return l.density(w); }, bp, 1e-12).value +
                            numerics::integrate([&](double w) { return l.density(w); }, std::vector<double>{50.0, 1e5}, 1e-10).value;
        const double err = std::abs(area / (std::numbers::pi * l.varsigma / 2.0) - 1.0);
        CAPTURE(gamma);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 0.02);
}

TEST_CASE("Lorentzian closed-form transform agrees with quadrature") {
    const auto l = map_residual_to_original({0.05, 1e3}, 1.0, 0.5);
    CHECK(std::abs(l.cauchy({0.0, 0.8}).real() - oracle::kLorentzW_iy08_re) < 1e-12);
    CHECK(std::abs(l.cauchy({0.0, 0.8}).imag()) < 1e-15);
    CauchyOptions opt;
    for (cplx z : {cplx(0.0, 0.8), cplx(0.5, 0.1), cplx(1.0, 0.02), cplx(2.5, 0.3)}) {
        CAPTURE(z);
        const cplx w = cauchy_transform([&](double x) { return l.density(x); }, z, opt);
        CHECK(rel(w, l.cauchy(z)) < 1e-8);
    }
}

TEST_CASE("narrow peak behaves as a single mode") {
    // W(z) -> (2/pi) A omega0 / (omega0^2 - z^2) with A the peak area
    const cplx z(0.0, 0.5);
    double prev = 1e300;
    for (double gamma : {0.1, 0.03, 0.01}) {
        const auto l = map_residual_to_original({gamma, 1e3}, 1.0, 0.5);
        const double area = std::numbers::pi * l.varsigma / 2.0;
        const cplx limit = (2.0 / std::numbers::pi) * area / (1.0 - z * z);
        const cplx w = cauchy_transform([&](double x) { return l.density(x); }, z);
        const double err = rel(w, limit);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 0.02);
}

TEST_CASE("Ohmic transform at the real axis") {
    const OhmicResidual o{0.05, 100.0};
    const auto j = [&](double x) { return o.density(x); };
    CauchyOptions pv;
    pv.principal_value = true;
    pv.density_scale = o.omega_c;
    const cplx b = cauchy_transform(j, {0.7, 0.0}, pv);
    CHECK(std::abs(b.real() / oracle::kOhmicW_re_x07_wc100 - 1.0) < 1e-8);
    CHECK(std::abs(b.imag() / oracle::kOhmicW_im_x07_wc100 - 1.0) < 1e-10);
    const cplx c = cauchy_transform(j, {2.5, 0.0}, pv);
    CHECK(std::abs(c.real() / oracle::kOhmicW_re_x25_wc100 - 1.0) < 1e-8);

    CauchyOptions off = pv;
    off.principal_value = false;
    const cplx d = cauchy_transform(j, {0.7, 1e-6}, off);
    CHECK(std::abs(d.real() / oracle::kOhmicW_re_x07_wc100 - 1.0) < 1e-5);
    CHECK(std::abs(d.imag() / oracle::kOhmicW_im_x07_wc100 - 1.0) < 1e-5);
    CHECK_THROWS_AS(cauchy_transform(j, {0.7, 0.0}, off), DomainError);
    CHECK(std::abs(o.cauchy_at_zero() - 2.0 / std::numbers::pi * o.gamma * o.omega_c) < 1e-12);
}

TEST_CASE("W(iy) is real") {
    const OhmicResidual o{0.05, 100.0};
    CauchyOptions opt;
    opt.density_scale = o.omega_c;
    for (double y : {0.1, 1.0, 30.0}) {
        const cplx w = cauchy_transform([&](double x) { return o.density(x); }, {0.0, y}, opt);
        CHECK(std::abs(w.imag()) <= 1e-12 * std::abs(w.real()));
        CHECK(w.real() > 0.0);
    }
}

TEST_CASE("Im W(x + i delta) -> J(x)") {
    const OhmicResidual o{0.05, 10.0};
    const auto l = map_residual_to_original({0.3, 1e3}, 1.0, 0.5);
    const auto check_density = [](const std::function<double(double)>& j, double x, double scale) {
        CauchyOptions opt;
        opt.density_scale = scale;
        const double d = 1e-2;
        const double w1 = cauchy_transform(j, {x, d}, opt).imag();
        const double w2 = cauchy_transform(j, {x, d / 2}, opt).imag();
        const double w4 = cauchy_transform(j, {x, d / 4}, opt).imag();
        // error is O(delta) + O(delta^2): two Richardson steps
        const double r1 = 2 * w2 - w1, r2 = 2 * w4 - w2;
        const double lim = (4 * r2 - r1) / 3;
        CHECK(std::abs(lim / j(x) - 1.0) < 1e-4);
    };
    for (double x : {0.3, 1.0, 4.0}) {
        CAPTURE(x);
        check_density([&](double w) { return o.density(w); }, x, o.omega_c);
        check_density([&](double w) { return l.density(w); }, x, 1.0);
    }
}

TEST_CASE("equivalence residual shrinks with the cutoff") {
    const auto grid = linspace(0.1, 3.0, 30);
    double prev = 1e300;
    for (double wc : {1e2, 1e3, 1e4}) {
        const auto r = verify_equivalence({0.05, wc}, 1.0, 0.5, grid);
        CAPTURE(wc);
        CHECK_FALSE(r.absolute);
        CHECK(r.residuals.size() == grid.size());
        CHECK(r.max_residual < prev);
        prev = r.max_residual;
    }
}

TEST_CASE("equivalence at vanishing coupling") {
    const auto grid = linspace(0.1, 3.0, 10);
    const auto r = verify_equivalence({0.05, 1e3}, 1.0, 0.0, grid);
    CHECK(r.absolute);
    CHECK(r.max_residual < 1e-12);
}

TEST_CASE("real-part treatments differ") {
    const auto grid = linspace(0.1, 3.0, 10);
    const OhmicResidual o{0.05, 1e3};
    const double sub = verify_equivalence(o, 1.0, 0.5, grid, 1e-6, RealPartTreatment::counterterm_subtracted).max_residual;
    const double raw = verify_equivalence(o, 1.0, 0.5, grid, 1e-6, RealPartTreatment::raw).max_residual;
    CHECK(raw > 10 * sub);
}

TEST_CASE("argument checks") {
    const std::vector<double> grid{0.5};
    CHECK_THROWS_AS(verify_equivalence({0.05, 1e3}, 1.0, 0.5, grid, 0.0), DomainError);
    CHECK_THROWS_AS(verify_equivalence({0.05, 1e3}, 1.0, 0.5, std::vector<double>{}), DomainError);
    CHECK_THROWS_AS(verify_equivalence({0.05, 1e3}, 1.0, 0.5, std::vector<double>{-1.0}), DomainError);
}

}
