#include "rcmetro/thermal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "rcmetro/baseline.hpp"
#include "rcmetro/errors.hpp"
#include "rcmetro/numerics.hpp"

namespace rcmetro {

std::string to_string(SectorMode m) { return m == SectorMode::full ? "full" : "maximal"; }

std::string to_string(VarianceEstimator v) {
    return v == VarianceEstimator::operator_trace ? "operator" : "free_energy";
}

std::string to_string(DeltaConvention c) {
    return c == DeltaConvention::absolute ? "absolute" : "per_spin";
}

SectorMode parse_sector_mode(const std::string& s) {
    if (s == "full") return SectorMode::full;
    if (s == "maximal") return SectorMode::maximal;
    throw DomainError("sector mode must be full|maximal, got '" + s + "'");
}

VarianceEstimator parse_variance_estimator(const std::string& s) {
    if (s == "operator") return VarianceEstimator::operator_trace;
    if (s == "free_energy") return VarianceEstimator::free_energy;
    throw DomainError("variance estimator must be operator|free_energy, got '" + s + "'");
}

DeltaConvention parse_delta_convention(const std::string& s) {
    if (s == "absolute") return DeltaConvention::absolute;
    if (s == "per_spin") return DeltaConvention::per_spin;
    throw DomainError("delta convention must be absolute|per_spin, got '" + s + "'");
}

EigenSystem eigendecompose(const OperatorMatrix& h) {
    numerics::SymmetricEigen es;
    try {
        es = numerics::symmetric_eigen(h.entries);
    } catch (const NumericalError& e) {
        std::ostringstream msg;
        msg << e.what() << ": |H|_F = " << h.entries.norm() << ", 2J = " << h.basis.two_j
            << ", n_max = " << h.basis.n_max;
        throw NumericalError(msg.str());
    }
    EigenSystem out{std::move(es.values), std::move(es.vectors), h.basis};
    for (int c = 0; c < out.eigenvectors.cols(); ++c) {
        auto col = out.eigenvectors.col(c);
        for (int r = 0; r < col.size(); ++r) {
            if (std::abs(col(r)) > 1e-12) {
                if (col(r) < 0.0) col = -col;
                break;
            }
        }
    }
    return out;
}

namespace {

std::vector<SpinSector> selected_sectors(int n_spins, SectorMode mode) {
    auto all = sector_multiplicities(n_spins);
    if (mode == SectorMode::maximal) all.resize(1);
    return all;
}

void check_dimension(int two_j, int n_max, std::size_t cap) {
    const std::size_t dim = static_cast<std::size_t>(two_j + 1) * static_cast<std::size_t>(n_max + 1);
    if (dim > cap) {
        throw ResourceError("composite dimension " + std::to_string(dim) + " exceeds cap " +
                            std::to_string(cap));
    }
}

}  // namespace

ThermalModel::ThermalModel(const ProbeParams& p, int n_max, const ThermalOptions& opt) {
    p.validate();
    build(p, p.epsilon, n_max, opt);
}

ThermalModel ThermalModel::at_epsilon(const ProbeParams& p, double epsilon, int n_max,
                                      const ThermalOptions& opt) {
    ProbeParams q = p;
    q.epsilon = std::abs(epsilon);
    q.validate();
    ThermalModel m;
    m.build(p, epsilon, n_max, opt);
    return m;
}

void ThermalModel::build(const ProbeParams& p, double epsilon, int n_max, const ThermalOptions& opt) {
    if (n_max < 1) throw DomainError("n_max must be >= 1");
    n_max_ = n_max;
    ground_ = std::numeric_limits<double>::infinity();
    for (const auto& s : selected_sectors(p.n_spins, opt.sectors)) {
        check_dimension(s.two_j, n_max, opt.dimension_cap);
        const auto h = detail::assemble_hamiltonian(epsilon, p.omega, p.g, s.two_j, n_max);
        const auto& basis = h.basis;

        // The coupling moves (m, n) by (+-1, +-1), so the parity of a + n is
        // conserved and each sector splits into two independent blocks.
        SectorSpectrum sp;
        sp.two_j = s.two_j;
        sp.multiplicity = s.multiplicity;
        sp.energies.resize(basis.dim());
        sp.jz.resize(basis.dim());
        sp.jz2.resize(basis.dim());
        sp.top_fock.resize(basis.dim());
        Eigen::Index filled = 0;
        for (int parity = 0; parity < 2; ++parity) {
            std::vector<int> idx;
            Eigen::VectorXd m_diag, top;
            std::vector<double> mv, tv;
            for (int a = 0; a < basis.spin_dim(); ++a) {
                for (int n = 0; n <= n_max; ++n) {
                    if ((a + n) % 2 != parity) continue;
                    idx.push_back(basis.index(a, n));
                    mv.push_back(-0.5 * s.two_j + a);
                    tv.push_back(n == n_max ? 1.0 : 0.0);
                }
            }
            const auto d = static_cast<Eigen::Index>(idx.size());
            if (d == 0) continue;
            Eigen::MatrixXd block(d, d);
            for (Eigen::Index r = 0; r < d; ++r) {
                for (Eigen::Index c = 0; c < d; ++c) block(r, c) = h.entries(idx[r], idx[c]);
            }
            m_diag = Eigen::Map<Eigen::VectorXd>(mv.data(), d);
            top = Eigen::Map<Eigen::VectorXd>(tv.data(), d);
            const auto es = numerics::symmetric_eigen(std::move(block));
            const Eigen::MatrixXd v2 = es.vectors.array().square().matrix();
            sp.energies.segment(filled, d) = es.values;
            sp.jz.segment(filled, d) = v2.transpose() * m_diag;
            sp.jz2.segment(filled, d) = v2.transpose() * m_diag.array().square().matrix();
            sp.top_fock.segment(filled, d) = v2.transpose() * top;
            filled += d;
        }
        std::vector<Eigen::Index> order(static_cast<std::size_t>(filled));
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        std::sort(order.begin(), order.end(), [&](auto x, auto y) { return sp.energies(x) < sp.energies(y); });
        sp.energies = sp.energies(order).eval();
        sp.jz = sp.jz(order).eval();
        sp.jz2 = sp.jz2(order).eval();
        sp.top_fock = sp.top_fock(order).eval();
        ground_ = std::min(ground_, sp.energies(0));
        sectors_.push_back(std::move(sp));
    }
}

ThermalObservables ThermalModel::observables(double beta) const {
    if (!(beta > 0.0)) throw DomainError("beta must be > 0");
    double z = 0.0, jz = 0.0, jz2 = 0.0, top = 0.0;
    for (const auto& s : sectors_) {
        const Eigen::ArrayXd w =
            (-beta * (s.energies.array() - ground_)).exp() * static_cast<double>(s.multiplicity);
        z += w.sum();
        jz += (w * s.jz.array()).sum();
        jz2 += (w * s.jz2.array()).sum();
        top += (w * s.top_fock.array()).sum();
    }
    ThermalObservables o;
    o.beta = beta;
    o.ln_z = -beta * ground_ + std::log(z);
    o.mean_jz = jz / z;
    o.mean_jz2 = jz2 / z;
    o.var_jz = std::max(0.0, o.mean_jz2 - o.mean_jz * o.mean_jz);
    o.truncation_weight = top / z;
    o.truncated = o.truncation_weight > kTruncationWeightLimit;
    return o;
}

ThermalObservables thermal_observables(const ProbeParams& p, double beta, int n_max,
                                       const ThermalOptions& opt) {
    return ThermalModel(p, n_max, opt).observables(beta);
}

namespace {

struct Stencil {
    // eps - 2h, eps - h, eps, eps + h, eps + 2h
    std::vector<ThermalModel> models;
    double h = 0.0;
};

Stencil build_stencil(const ProbeParams& p, int n_max, const SnrOptions& opt) {
    if (!(opt.fd_step > 0.0)) throw DomainError("fd_step must be > 0");
    p.validate();
    const ThermalOptions topt{opt.sectors, opt.dimension_cap};
    Stencil st;
    st.h = opt.fd_step * p.omega;
    for (int k = -2; k <= 2; ++k) {
        st.models.push_back(ThermalModel::at_epsilon(p, p.epsilon + k * st.h, n_max, topt));
    }
    return st;
}

SnrPoint evaluate(const ProbeParams& p, const Stencil& st, double beta, const SnrOptions& opt) {
    std::array<ThermalObservables, 5> o;
    for (int k = 0; k < 5; ++k) o[k] = st.models[k].observables(beta);
    const double dm = numerics::richardson_derivative(o[0].mean_jz, o[1].mean_jz, o[3].mean_jz,
                                                      o[4].mean_jz, st.h);
    SnrPoint pt;
    pt.beta = beta;
    pt.mean_jz = o[2].mean_jz;
    pt.dmean_deps = dm;
    pt.var_jz = opt.variance == VarianceEstimator::operator_trace ? o[2].var_jz : -dm / beta;
    const double n = p.n_spins;
    if (!(pt.var_jz >= 1e-14 * n * n)) {
        std::ostringstream msg;
        msg << "degenerate variance " << pt.var_jz << " at beta = " << beta
            << " (" << to_string(opt.variance) << " estimator)";
        throw NumericalError(msg.str());
    }
    pt.snr = dm * dm / pt.var_jz;
    pt.snr_weak = weak_snr(p.n_spins, p.epsilon, beta).snr;
    pt.convention = opt.delta;
    pt.delta_snr = pt.snr - pt.snr_weak;
    if (opt.delta == DeltaConvention::per_spin) pt.delta_snr /= n;
    pt.n_max = st.models[2].n_max();
    pt.converged = std::none_of(o.begin(), o.end(), [](const auto& x) { return x.truncated; });
    return pt;
}

}  // namespace

SnrPoint snr_exact(const ProbeParams& p, double beta, int n_max, const SnrOptions& opt) {
    if (!(beta > 0.0)) throw DomainError("beta must be > 0");
    return evaluate(p, build_stencil(p, n_max, opt), beta, opt);
}

std::vector<SnrPoint> snr_curve(const ProbeParams& p, const std::vector<double>& betas, int n_max,
                                const SnrOptions& opt) {
    for (double b : betas) {
        if (!(b > 0.0)) throw DomainError("beta must be > 0");
    }
    const auto st = build_stencil(p, n_max, opt);
    std::vector<SnrPoint> out;
    out.reserve(betas.size());
    for (double b : betas) out.push_back(evaluate(p, st, b, opt));
    return out;
}

ConvergenceReport converge_nmax(const ProbeParams& p, double beta, const ConvergenceSettings& cs,
                                const SnrOptions& opt) {
    if (!(cs.ln_z_tol > 0.0 && cs.rel_tol > 0.0)) throw DomainError("tolerances must be > 0");
    if (cs.start < 1) throw DomainError("start n_max must be >= 1");
    const ThermalOptions topt{opt.sectors, opt.dimension_cap};

    const auto at = [&](int n) {
        ConvergenceReport r;
        r.n_max = n;
        r.observables = thermal_observables(p, beta, n, topt);
        r.point = snr_exact(p, beta, n, opt);
        return r;
    };
    const auto close = [](double a, double b, double tol, double floor) {
        return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), floor});
    };

    ConvergenceReport prev = at(cs.start);
    int steps = 1;
    for (int n = 2 * cs.start; n <= cs.cap; n *= 2) {
        ConvergenceReport next = at(n);
        ++steps;
        // The difference quotient resolves d<Jz>/d eps only to about 1e-13 N / h;
        // snr changes below what that allows are roundoff, not truncation.
        const double d_noise = 1e-13 * p.n_spins / (opt.fd_step * p.omega);
        const double snr_noise =
            prev.point.snr * 2.0 * d_noise / std::max(std::abs(prev.point.dmean_deps), 1e-300);
        const bool ok = close(prev.observables.ln_z, next.observables.ln_z, cs.ln_z_tol, 1.0) &&
                        close(prev.point.mean_jz, next.point.mean_jz, cs.rel_tol, 1e-10 * p.n_spins) &&
                        (close(prev.point.snr, next.point.snr, cs.rel_tol, 1e-300) ||
                         std::abs(prev.point.snr - next.point.snr) <= snr_noise);
        if (ok && prev.point.converged) {
            prev.steps = steps;
            return prev;
        }
        prev = std::move(next);
    }
    std::ostringstream msg;
    msg << "Fock truncation not converged at n_max cap " << cs.cap << " (beta = " << beta
        << ", g = " << p.g << ", last snr = " << prev.point.snr << ")";
    throw ConvergenceError(msg.str());
}

double ReducedState::trace() const {
    double t = 0.0;
    for (const auto& b : blocks) t += b.multiplicity * b.rho.trace();
    return t;
}

double ReducedState::min_eigenvalue() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& b : blocks) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.rho, Eigen::EigenvaluesOnly);
        m = std::min(m, es.eigenvalues()(0));
    }
    return m;
}

double ReducedState::mean_jz() const {
    double s = 0.0;
    for (const auto& b : blocks) {
        for (int a = 0; a < b.rho.rows(); ++a) s += b.multiplicity * b.rho(a, a) * (-0.5 * b.two_j + a);
    }
    return s;
}

ReducedState reduced_probe_state(const ProbeParams& p, double beta, int n_max,
                                 const ThermalOptions& opt) {
    p.validate();
    if (!(beta > 0.0)) throw DomainError("beta must be > 0");
    if (n_max < 1) throw DomainError("n_max must be >= 1");

    std::vector<EigenSystem> systems;
    std::vector<SpinSector> sectors = selected_sectors(p.n_spins, opt.sectors);
    double ground = std::numeric_limits<double>::infinity();
    for (const auto& s : sectors) {
        check_dimension(s.two_j, n_max, opt.dimension_cap);
        systems.push_back(eigendecompose(detail::assemble_hamiltonian(p.epsilon, p.omega, p.g, s.two_j, n_max)));
        ground = std::min(ground, systems.back().eigenvalues(0));
    }

    ReducedState out;
    double z = 0.0;
    for (std::size_t k = 0; k < sectors.size(); ++k) {
        const auto& es = systems[k];
        const auto& basis = es.basis;
        const Eigen::VectorXd sw = (-0.5 * beta * (es.eigenvalues.array() - ground)).exp().matrix();
        const Eigen::MatrixXd v = es.eigenvectors * sw.asDiagonal();
        // rho_full = v v^T; trace out the Fock index (fast index of each spin row block).
        const int ds = basis.spin_dim();
        const int df = basis.fock_dim();
        Eigen::MatrixXd rho(ds, ds);
        for (int a = 0; a < ds; ++a) {
            for (int b = a; b < ds; ++b) {
                const double x = v.middleRows(a * df, df).cwiseProduct(v.middleRows(b * df, df)).sum();
                rho(a, b) = x;
                rho(b, a) = x;
            }
        }
        z += sectors[k].multiplicity * rho.trace();
        out.blocks.push_back({sectors[k].two_j, sectors[k].multiplicity, std::move(rho)});
    }
    for (auto& b : out.blocks) b.rho /= z;
    return out;
}

ReducedState gibbs_probe_state(const ReducedState& like, double epsilon, double beta) {
    ReducedState out;
    double z = 0.0;
    double shift = 0.0;
    for (const auto& b : like.blocks) shift = std::max(shift, 0.5 * b.two_j * std::abs(beta * epsilon));
    for (const auto& b : like.blocks) {
        const int d = b.two_j + 1;
        Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(d, d);
        for (int a = 0; a < d; ++a) rho(a, a) = std::exp(-beta * epsilon * (-0.5 * b.two_j + a) - shift);
        z += b.multiplicity * rho.trace();
        out.blocks.push_back({b.two_j, b.multiplicity, std::move(rho)});
    }
    for (auto& b : out.blocks) b.rho /= z;
    return out;
}

namespace {

Eigen::MatrixXd matrix_log(const Eigen::MatrixXd& m, bool allow_singular) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    Eigen::VectorXd l(m.rows());
    for (int i = 0; i < l.size(); ++i) {
        const double x = es.eigenvalues()(i);
        if (x > 1e-300) {
            l(i) = std::log(x);
        } else if (allow_singular) {
            l(i) = 0.0;  // 0 ln 0 = 0 on the rho side
        } else {
            throw DomainError("reference state lacks full support");
        }
    }
    return es.eigenvectors() * l.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

double relative_entropy(const ReducedState& rho, const ReducedState& sigma) {
    if (rho.blocks.size() != sigma.blocks.size()) throw DomainError("sector layouts differ");
    double s = 0.0;
    for (std::size_t k = 0; k < rho.blocks.size(); ++k) {
        const auto& r = rho.blocks[k];
        const auto& q = sigma.blocks[k];
        if (r.two_j != q.two_j || r.multiplicity != q.multiplicity) throw DomainError("sector layouts differ");
        const Eigen::MatrixXd d = matrix_log(r.rho, true) - matrix_log(q.rho, false);
        s += r.multiplicity * (r.rho * d).trace();
    }
    return std::max(0.0, s);
}

GibbsFit best_gibbs_fit(const ReducedState& rho, double epsilon) {
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be > 0 for a Gibbs fit");
    const double target = rho.mean_jz();
    const auto mismatch = [&](double x) { return gibbs_probe_state(rho, 1.0, x).mean_jz() - target; };
    // x = beta * eps; <Jz> is decreasing in x.
    const double x = numerics::find_root(mismatch, -700.0, 700.0, 1e-14).x;
    GibbsFit fit;
    fit.beta = x / epsilon;
    fit.relative_entropy = relative_entropy(rho, gibbs_probe_state(rho, epsilon, fit.beta));
    return fit;
}

}  // namespace rcmetro
