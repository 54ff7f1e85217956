#pragma once

#include <functional>
#include <span>
#include <string>

#include <Eigen/Dense>

namespace rcmetro::numerics {

struct RootResult {
    double x = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

/// Bracketed root of f on [lo, hi] by a regula-falsi / bisection hybrid
/// (Illinois weighting, bisection whenever the secant step stalls).
/// Stops when |f(x)| < f_tol or the bracket is narrower than x_tol.
/// Throws NumericalError if f(lo) and f(hi) have the same strict sign; the
/// message reports both endpoint values.
RootResult find_root(const std::function<double(double)>& f, double lo, double hi,
                     double f_tol = 1e-12, double x_tol = 0.0, int max_iterations = 500);

struct IntegralResult {
    double value = 0.0;
    double error = 0.0;
};

/// Adaptive 31-point Gauss-Kronrod (GSL qag) on each consecutive pair of
/// ascending breakpoints. `error` is the summed absolute error estimate.
/// Throws QuadratureError with the offending interval and GSL's reason if a
/// piece fails to reach max(abs_tol, rel_tol * |piece|).
IntegralResult integrate(const std::function<double(double)>& f, std::span<const double> breakpoints,
                         double rel_tol = 1e-10, double abs_tol = 0.0, unsigned max_intervals = 2000);

/// Central difference of f at x with step h and one Richardson step,
/// (4 D(h) - D(2h)) / 3.
double richardson_derivative(const std::function<double(double)>& f, double x, double h);

/// Same stencil given precomputed values f(x +- h), f(x +- 2h).
double richardson_derivative(double f_m2, double f_m1, double f_p1, double f_p2, double h);

/// Second derivative, five-point: (-f(x+2h) + 16 f(x+h) - 30 f(x) + 16 f(x-h) - f(x-2h)) / (12 h^2).
double second_derivative(const std::function<double(double)>& f, double x, double h);

struct SymmetricEigen {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // columns; empty when not requested
};

/// Dense symmetric eigenproblem via LAPACK divide and conquer (dsyevd).
/// Only the lower triangle of `a` is read. Throws NumericalError on failure.
SymmetricEigen symmetric_eigen(Eigen::MatrixXd a, bool want_vectors = true);

/// log(sum_i exp(a_i)) with the maximum factored out. Empty input gives -inf.
double log_sum_exp(std::span<const double> a);

}  // namespace rcmetro::numerics
