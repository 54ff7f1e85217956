#include "rcmetro/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <sstream>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <lapacke.h>

#include "rcmetro/errors.hpp"

namespace rcmetro::numerics {

RootResult find_root(const std::function<double(double)>& f, double lo, double hi,
                     double f_tol, double x_tol, int max_iterations) {
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (f_lo == 0.0) return {lo, 0.0, 0};
    if (f_hi == 0.0) return {hi, 0.0, 0};
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "no sign change on [" << lo << ", " << hi << "]: f(lo) = " << f_lo
            << ", f(hi) = " << f_hi;
        throw NumericalError(msg.str());
    }

    RootResult best{std::abs(f_lo) < std::abs(f_hi) ? lo : hi,
                    std::abs(f_lo) < std::abs(f_hi) ? f_lo : f_hi, 0};
    int side = 0;
    for (int it = 1; it <= max_iterations; ++it) {
        double x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        const double width = hi - lo;
        // Keep the secant point away from the bracket ends; fall back to bisection.
        if (!(x > lo + 0.01 * width && x < hi - 0.01 * width) || it % 8 == 0) {
            x = 0.5 * (lo + hi);
        }
        const double fx = f(x);
        if (std::abs(fx) < std::abs(best.residual)) best = {x, fx, it};
        best.iterations = it;
        if (fx == 0.0 || std::abs(fx) < f_tol) return {x, fx, it};
        if ((fx > 0.0) == (f_hi > 0.0)) {
            hi = x;
            f_hi = fx;
            if (side == 1) f_lo *= 0.5;
            side = 1;
        } else {
            lo = x;
            f_lo = fx;
            if (side == -1) f_hi *= 0.5;
            side = -1;
        }
        if (hi - lo <= x_tol || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                                                  std::max(std::abs(lo), std::abs(hi))) {
            return best;
        }
    }
    return best;
}

namespace {

double gsl_trampoline(double x, void* params) {
    return (*static_cast<const std::function<double(double)>*>(params))(x);
}

void disable_gsl_abort() {
    static std::once_flag once;
    std::call_once(once, [] { gsl_set_error_handler_off(); });
}

}  // namespace

IntegralResult integrate(const std::function<double(double)>& f, std::span<const double> breakpoints,
                         double rel_tol, double abs_tol, unsigned max_intervals) {
    disable_gsl_abort();
    std::unique_ptr<gsl_integration_workspace, decltype(&gsl_integration_workspace_free)> ws(
        gsl_integration_workspace_alloc(max_intervals), &gsl_integration_workspace_free);

    gsl_function fn;
    fn.function = &gsl_trampoline;
    fn.params = const_cast<std::function<double(double)>*>(&f);

    IntegralResult total;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double a = breakpoints[i];
        const double b = breakpoints[i + 1];
        if (b <= a) continue;
        double value = 0.0;
        double err = 0.0;
        const int status = gsl_integration_qag(&fn, a, b, abs_tol, rel_tol, max_intervals,
                                               GSL_INTEG_GAUSS31, ws.get(), &value, &err);
        if (status != GSL_SUCCESS || !std::isfinite(value)) {
            std::ostringstream msg;
            msg.precision(6);
            msg << "quadrature failed on [" << a << ", " << b << "]: " << gsl_strerror(status)
                << " (value " << value << ", error estimate " << err << ")";
            throw QuadratureError(msg.str());
        }
        total.value += value;
        total.error += err;
    }
    return total;
}

double richardson_derivative(double f_m2, double f_m1, double f_p1, double f_p2, double h) {
    const double d1 = (f_p1 - f_m1) / (2.0 * h);
    const double d2 = (f_p2 - f_m2) / (4.0 * h);
    return (4.0 * d1 - d2) / 3.0;
}

double richardson_derivative(const std::function<double(double)>& f, double x, double h) {
    return richardson_derivative(f(x - 2.0 * h), f(x - h), f(x + h), f(x + 2.0 * h), h);
}

double second_derivative(const std::function<double(double)>& f, double x, double h) {
    return (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) -
            f(x - 2.0 * h)) /
           (12.0 * h * h);
}

double log_sum_exp(std::span<const double> a) {
    if (a.empty()) return -std::numeric_limits<double>::infinity();
    const double m = *std::max_element(a.begin(), a.end());
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double v : a) s += std::exp(v - m);
    return m + std::log(s);
}

SymmetricEigen symmetric_eigen(Eigen::MatrixXd a, bool want_vectors) {
    if (a.rows() != a.cols()) throw NumericalError("symmetric_eigen: matrix is not square");
    const auto n = static_cast<lapack_int>(a.rows());
    SymmetricEigen out;
    out.values.resize(n);
    if (n == 0) return out;
    const lapack_int info =
        LAPACKE_dsyevd(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'L', n, a.data(), n, out.values.data());
    if (info != 0) {
        std::ostringstream msg;
        msg << "dsyevd failed with info = " << info << " (dim " << n << ")";
        throw NumericalError(msg.str());
    }
    if (want_vectors) out.vectors = std::move(a);
    return out;
}

}  // namespace rcmetro::numerics
