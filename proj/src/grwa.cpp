#include "rcmetro/grwa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rcmetro/errors.hpp"
#include "rcmetro/numerics.hpp"

namespace rcmetro {

double lambda_equation(double lambda, double epsilon, double omega, double g) {
    return lambda - g / omega + (epsilon * lambda / omega) * std::exp(-0.5 * lambda * lambda);
}

LambdaSolution solve_lambda(double epsilon, double omega, double g, double tol) {
    if (!(omega > 0.0)) throw DomainError("omega must be > 0");
    if (!(g >= 0.0)) throw DomainError("g must be >= 0");
    if (!(tol > 0.0)) throw DomainError("tolerance must be > 0");
    const auto f = [&](double l) { return lambda_equation(l, epsilon, omega, g); };
    if (g == 0.0) return {0.0, 0.0, LambdaMethod::root};

    const double hi = (g / omega) * (1.0 + epsilon / omega) + 1.0;
    // Scan for the first sign change so that the smallest root wins.
    constexpr int kScan = 256;
    double a = 0.0;
    double fa = f(a);
    for (int i = 1; i <= kScan; ++i) {
        const double b = hi * i / kScan;
        const double fb = f(b);
        if ((fa < 0.0) != (fb < 0.0) || fb == 0.0) {
            const auto r = numerics::find_root(f, a, b, tol);
            return {r.x, r.residual, LambdaMethod::root};
        }
        a = b;
        fa = fb;
    }
    std::ostringstream msg;
    msg.precision(17);
    msg << "lambda equation has no sign change on [0, " << hi << "]: f(0) = " << f(0.0)
        << ", f(hi) = " << f(hi);
    throw NumericalError(msg.str());
}

double lambda_closed_form(double epsilon, double omega, double g) {
    const double l0 = g / (epsilon + omega);
    return g / (omega + epsilon * std::exp(-0.5 * l0 * l0));
}

double dlambda_closed_form(double epsilon, double omega, double g) {
    const double s = epsilon + omega;
    const double l0 = g / s;
    const double e = std::exp(0.5 * l0 * l0);
    const double d = epsilon + omega * e;
    return -g * e * (epsilon * g * g + s * s * s) / (s * s * s * d * d);
}

double dlambda_implicit(double epsilon, double omega, double g, double lambda) {
    (void)g;
    const double e = std::exp(-0.5 * lambda * lambda);
    const double df_deps = lambda * e / omega;
    const double df_dlam = 1.0 + (epsilon / omega) * e * (1.0 - lambda * lambda);
    return -df_deps / df_dlam;
}

double coefficient_F(int n, int m, double lambda) {
    if (n < 0 || m < 0) throw DomainError("F_n(m) needs n, m >= 0");
    const double x = lambda * lambda;
    const double alpha = n;
    // L_m^alpha(x) by the upward recurrence.
    double l_prev = 1.0;
    double l = 1.0 + alpha - x;
    if (m == 0) l = 1.0;
    for (int k = 1; k < m; ++k) {
        const double next = ((2.0 * k + 1.0 + alpha - x) * l - (k + alpha) * l_prev) / (k + 1.0);
        l_prev = l;
        l = next;
    }
    const double ratio = std::exp(std::lgamma(m + 1.0) - std::lgamma(m + n + 1.0));
    return std::pow(lambda, n) * std::exp(-0.5 * x) * ratio * l;
}

double grwa_ground_energy(int n_spins, double epsilon, double omega, double g, double lambda) {
    return 0.25 * n_spins * (omega * lambda * lambda - 2.0 * g * lambda) -
           0.5 * n_spins * epsilon * std::exp(-0.5 * lambda * lambda);
}

std::vector<GrwaBlock> build_grwa_blocks(const ProbeParams& p, double lambda, int n_max,
                                         SectorMode sectors) {
    if (p.n_spins < 1) throw DomainError("N must be >= 1");
    if (!(p.omega > 0.0)) throw DomainError("omega must be > 0");
    if (n_max < 0) throw DomainError("n_max must be >= 0");
    auto sector_list = sector_multiplicities(p.n_spins);
    if (sectors == SectorMode::maximal) sector_list.resize(1);

    const double delta = p.omega * lambda * lambda - 2.0 * p.g * lambda;
    const double g_tilde = p.g - p.omega * lambda;
    std::vector<double> f0(n_max + 1), f1(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        f0[n] = coefficient_F(0, n, lambda);
        f1[n] = coefficient_F(1, n, lambda);
    }

    std::vector<GrwaBlock> out;
    for (const auto& s : sector_list) {
        const double j = s.j();
        for (int k = 0; k <= n_max; ++k) {
            const int size = std::min(k, s.two_j) + 1;
            GrwaBlock b;
            b.excitation_index = k - 1;
            b.two_j = s.two_j;
            b.multiplicity = s.multiplicity;
            b.matrix = Eigen::MatrixXd::Zero(size, size);
            for (int r = 0; r < size; ++r) {
                const double m = -j + r;
                const int n = k - r;
                b.labels.emplace_back(m, n);
                b.matrix(r, r) = p.omega * n + 0.5 * delta * (j * (j + 1.0) - m * m) + p.epsilon * m * f0[n];
                if (r + 1 < size) {
                    // <m+1, n-1| H |m, n>
                    const double v = 0.5 * std::sqrt(j * (j + 1.0) - m * (m + 1.0)) * std::sqrt(double(n)) *
                                     (g_tilde + p.epsilon * f1[n - 1]);
                    b.matrix(r + 1, r) = v;
                    b.matrix(r, r + 1) = v;
                }
            }
            out.push_back(std::move(b));
        }
    }
    return out;
}

namespace {

Eigen::VectorXd block_eigenvalues(const Eigen::MatrixXd& m) {
    if (m.rows() == 1) return m.diagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("GRWA block diagonalization failed");
    return es.eigenvalues();
}

}  // namespace

GrwaPartition grwa_partition(const std::vector<GrwaBlock>& blocks, double beta) {
    if (!(beta > 0.0)) throw DomainError("beta must be > 0");
    if (blocks.empty()) throw DomainError("no GRWA blocks");
    std::vector<Eigen::VectorXd> ev;
    ev.reserve(blocks.size());
    double e_min = std::numeric_limits<double>::infinity();
    int top = -2;
    for (const auto& b : blocks) {
        ev.push_back(block_eigenvalues(b.matrix));
        e_min = std::min(e_min, ev.back().minCoeff());
        top = std::max(top, b.excitation_index);
    }
    double z = 0.0;
    double edge = 0.0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const double w = blocks[i].multiplicity * (-beta * (ev[i].array() - e_min)).exp().sum();
        z += w;
        if (blocks[i].excitation_index == top) edge += w;
    }
    GrwaPartition out;
    out.ln_z = -beta * e_min + std::log(z);
    out.min_energy = e_min;
    out.edge_weight = edge / z;
    out.truncated = out.edge_weight > kTruncationWeightLimit;
    return out;
}

std::vector<double> grwa_levels(const std::vector<GrwaBlock>& blocks, int two_j) {
    std::vector<double> out;
    for (const auto& b : blocks) {
        if (b.two_j != two_j) continue;
        const auto ev = block_eigenvalues(b.matrix);
        out.insert(out.end(), ev.data(), ev.data() + ev.size());
    }
    std::sort(out.begin(), out.end());
    return out;
}

GrwaObservables grwa_observables(const ProbeParams& p, double beta, int n_max, const GrwaOptions& opt) {
    p.validate();
    if (!(beta > 0.0)) throw DomainError("beta must be > 0");
    if (!(opt.fd_step > 0.0)) throw DomainError("fd_step must be > 0");
    const double h = opt.fd_step * p.omega;
    double ln_z[5];
    bool truncated = false;
    for (int k = -2; k <= 2; ++k) {
        ProbeParams q = p;
        q.epsilon = p.epsilon + k * h;
        const double lam = solve_lambda(q.epsilon, q.omega, q.g).lambda;
        const auto part = grwa_partition(build_grwa_blocks(q, lam, n_max, opt.sectors), beta);
        ln_z[k + 2] = part.ln_z;
        truncated = truncated || part.truncated;
    }
    const double d1 = numerics::richardson_derivative(ln_z[0], ln_z[1], ln_z[3], ln_z[4], h);
    const double d2 = (-ln_z[4] + 16.0 * ln_z[3] - 30.0 * ln_z[2] + 16.0 * ln_z[1] - ln_z[0]) / (12.0 * h * h);

    GrwaObservables o;
    o.beta = beta;
    o.ln_z = ln_z[2];
    o.mean_jz = -d1 / beta;
    o.dmean_deps = -d2 / beta;
    o.var_jz = d2 / (beta * beta);
    o.snr = o.var_jz > 0.0 ? o.dmean_deps * o.dmean_deps / o.var_jz : 0.0;
    o.truncated = truncated;
    return o;
}

GroundEnergyDerivs ground_energy_derivs(const ProbeParams& p, CurvatureSource source, double check_tol) {
    p.validate();
    const int n = p.n_spins;
    const double lam = solve_lambda(p.epsilon, p.omega, p.g).lambda;
    const double e = std::exp(-0.5 * lam * lam);

    GroundEnergyDerivs d;
    d.lambda = lam;
    d.e_g = grwa_ground_energy(n, p.epsilon, p.omega, p.g, lam);
    d.de_deps = -0.5 * n * e;
    d.dlambda_deps = source == CurvatureSource::closed_form
                         ? dlambda_closed_form(p.epsilon, p.omega, p.g)
                         : dlambda_implicit(p.epsilon, p.omega, p.g, lam);
    d.d2e_deps2 = 0.5 * n * lam * e * d.dlambda_deps;

    const auto energy = [&](double eps) {
        return grwa_ground_energy(n, eps, p.omega, p.g, solve_lambda(eps, p.omega, p.g).lambda);
    };
    d.d2e_fd = numerics::second_derivative(energy, p.epsilon, 2e-3 * p.omega);

    if (check_tol > 0.0) {
        const double diff = std::abs(d.d2e_deps2 - d.d2e_fd);
        const double scale = std::max(std::abs(d.d2e_fd), std::abs(d.d2e_deps2));
        if (diff > check_tol * scale && diff > 1e-8 * n) {
            std::ostringstream msg;
            msg.precision(10);
            msg << "ground-energy curvature mismatch: analytic " << d.d2e_deps2 << " vs finite-difference "
                << d.d2e_fd << " (relative " << diff / scale << ", eps = " << p.epsilon << ", g = " << p.g << ")";
            throw NumericalError(msg.str());
        }
    }
    return d;
}

double asymptotic_snr(int n_spins, const GroundEnergyDerivs& d, double beta, double constant) {
    if (n_spins < 1) throw DomainError("N must be >= 1");
    if (!(beta > 0.0)) throw DomainError("beta must be > 0");
    if (n_spins == 1) {
        const double den = 1.0 - 4.0 * d.de_deps * d.de_deps;
        if (!(den > 0.0)) {
            throw DomainError("1 - 4 (dE/deps)^2 = " + std::to_string(den) + " is not positive");
        }
        return constant * 4.0 * d.d2e_deps2 * d.d2e_deps2 / den;
    }
    return -constant * beta * d.d2e_deps2;
}

}  // namespace rcmetro
