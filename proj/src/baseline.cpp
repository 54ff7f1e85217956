#include "rcmetro/baseline.hpp"

#include <cmath>

#include "rcmetro/errors.hpp"

namespace rcmetro {

double stable_sech(double x) {
    const double e = std::exp(-std::abs(x));
    return 2.0 * e / (1.0 + e * e);
}

WeakResult weak_snr(int n_spins, double epsilon, double beta) {
    if (n_spins < 1) throw DomainError("N must be >= 1");
    if (!(beta > 0.0)) throw DomainError("beta must be > 0");
    const double half = 0.5 * beta * epsilon;
    const double sech = stable_sech(half);
    const double sech2 = sech * sech;

    WeakResult r;
    r.beta = beta;
    r.mean_jz = -0.5 * n_spins * std::tanh(half);
    r.var_jz = 0.25 * n_spins * sech2;
    // 2 + 2 cosh(x) = 4 cosh^2(x / 2)
    r.snr = 0.25 * n_spins * beta * beta * sech2;
    return r;
}

double weak_lowT_asymptote(double epsilon, double temperature, int n_spins) {
    if (!(temperature > 0.0)) throw DomainError("temperature must be > 0");
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be > 0");
    if (n_spins < 1) throw DomainError("N must be >= 1");
    const double beta = 1.0 / temperature;
    return n_spins * beta * beta * std::exp(-beta * epsilon);
}

}  // namespace rcmetro
