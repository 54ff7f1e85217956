#include "rcmetro/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "rcmetro/baseline.hpp"
#include "rcmetro/dicke.hpp"
#include "rcmetro/errors.hpp"
#include "rcmetro/grwa.hpp"
#include "rcmetro/thermal.hpp"

namespace rcmetro {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kDefaultLevelsNmax = 60;
constexpr int kLevelsReported = 6;

using Rows = std::vector<std::vector<Cell>>;

ProbeParams probe(const CurveSpec& c) { return {c.n_spins, c.epsilon, 1.0, c.g}; }

SnrOptions snr_options(const SweepConfig& cfg) {
    SnrOptions o;
    o.fd_step = cfg.fd_step;
    o.sectors = cfg.sectors;
    o.variance = cfg.variance;
    o.delta = cfg.delta;
    return o;
}

ConvergenceSettings convergence(const SweepConfig& cfg) {
    ConvergenceSettings cs;
    cs.ln_z_tol = cfg.ln_z_tol;
    cs.rel_tol = cfg.rel_tol;
    cs.cap = cfg.n_max_cap;
    return cs;
}

double asymptote_for(const SweepConfig& cfg, const ProbeParams& p, double beta) {
    try {
        return asymptotic_snr(p.n_spins, ground_energy_derivs(p, cfg.curvature), beta);
    } catch (const DomainError&) {
        return kNaN;
    } catch (const NumericalError&) {
        return kNaN;
    }
}

std::vector<Cell> snr_row(const CurveSpec& c, double grid_value, double snr, double snr_weak, double delta,
                          int n_max, bool converged, const std::string& phase, double eta, double mean_jz,
                          double var_jz, double asymptote) {
    return {c.label, grid_value, c.beta_omega, snr, snr_weak, delta, std::int64_t{n_max},
            converged, phase, eta, mean_jz, var_jz, asymptote};
}

Rows rabi_rows(const SweepConfig& cfg, const CurveSpec& c, double v) {
    const auto p = probe(c);
    const double beta = c.beta_omega;
    const double asym = asymptote_for(cfg, p, beta);
    try {
        const SnrPoint pt = cfg.n_max > 0 ? snr_exact(p, beta, cfg.n_max, snr_options(cfg))
                                          : converge_nmax(p, beta, convergence(cfg), snr_options(cfg)).point;
        return {snr_row(c, v, pt.snr, pt.snr_weak, pt.delta_snr, pt.n_max, pt.converged, "", kNaN, pt.mean_jz,
                        pt.var_jz, asym)};
    } catch (const ConvergenceError&) {
        const double w = weak_snr(p.n_spins, p.epsilon, beta).snr;
        return {snr_row(c, v, kNaN, w, kNaN, cfg.n_max_cap, false, "", kNaN, kNaN, kNaN, asym)};
    }
}

// GRWA at the configured n_max, or doubled until the edge block carries no
// weight and the SNR settles.
Rows grwa_rows(const SweepConfig& cfg, const CurveSpec& c, double v) {
    const auto p = probe(c);
    const double beta = c.beta_omega;
    GrwaOptions go;
    go.sectors = cfg.sectors;
    const double w = weak_snr(p.n_spins, p.epsilon, beta).snr;
    const double asym = asymptote_for(cfg, p, beta);
    const auto row = [&](const GrwaObservables& o, int n, bool ok) {
        double delta = o.snr - w;
        if (cfg.delta == DeltaConvention::per_spin) delta /= p.n_spins;
        return Rows{snr_row(c, v, o.snr, w, delta, n, ok, "", kNaN, o.mean_jz, o.var_jz, asym)};
    };
    if (cfg.n_max > 0) {
        const auto o = grwa_observables(p, beta, cfg.n_max, go);
        return row(o, cfg.n_max, !o.truncated);
    }
    auto prev = grwa_observables(p, beta, 16, go);
    for (int n = 32; n <= cfg.n_max_cap; n *= 2) {
        const auto next = grwa_observables(p, beta, n, go);
        if (!prev.truncated && std::abs(next.snr - prev.snr) <= cfg.rel_tol * std::abs(next.snr)) {
            return row(prev, n / 2, true);
        }
        prev = next;
    }
    return row(prev, cfg.n_max_cap, false);
}

Rows weak_rows(const SweepConfig& cfg, const CurveSpec& c, double v) {
    (void)cfg;
    const auto r = weak_snr(c.n_spins, c.epsilon, c.beta_omega);
    const double asym = c.epsilon > 0.0 ? weak_lowT_asymptote(c.epsilon, 1.0 / c.beta_omega, c.n_spins) : kNaN;
    return {snr_row(c, v, r.snr, r.snr, 0.0, 0, true, "", kNaN, r.mean_jz, r.var_jz, asym)};
}

Rows dicke_rows(const SweepConfig& cfg, const CurveSpec& c, double v) {
    const DickeParams dp{c.epsilon, 1.0, c.gbar, c.n_spins};
    const auto s = dicke_snr(dp, c.beta_omega);
    const auto o = dicke_observables(dp, c.beta_omega);
    const double n = c.n_spins;
    const double delta = cfg.delta == DeltaConvention::per_spin ? s.delta_per_n : s.delta_per_n * n;
    return {snr_row(c, v, s.snr, s.snr_weak_per_n * n, delta, 0, true, to_string(s.phase),
                    s.phase == DickePhase::superradiant ? s.eta : kNaN, o.mean_jz, o.var_jz, kNaN)};
}

std::vector<double> exact_levels(const ProbeParams& p, int n_max, SectorMode mode) {
    auto sectors = sector_multiplicities(p.n_spins);
    if (mode == SectorMode::maximal) sectors.resize(1);
    std::vector<double> out;
    for (const auto& s : sectors) {
        const auto es = eigendecompose(build_mapped_hamiltonian(p, s.two_j, n_max));
        out.insert(out.end(), es.eigenvalues.data(), es.eigenvalues.data() + es.eigenvalues.size());
    }
    std::sort(out.begin(), out.end());
    return out;
}

Rows level_rows(const SweepConfig& cfg, const CurveSpec& c, double v) {
    const auto p = probe(c);
    const int n_max = cfg.n_max > 0 ? cfg.n_max : kDefaultLevelsNmax;
    const auto exact = exact_levels(p, n_max, cfg.sectors);
    const double lam = solve_lambda(p.epsilon, p.omega, p.g).lambda;
    const auto blocks = build_grwa_blocks(p, lam, n_max, cfg.sectors);
    std::vector<double> approx;
    for (const auto& b : blocks) {
        const auto l = grwa_levels({b}, b.two_j);
        approx.insert(approx.end(), l.begin(), l.end());
    }
    std::sort(approx.begin(), approx.end());
    Rows rows;
    for (int k = 0; k < kLevelsReported && k < int(exact.size()) && k < int(approx.size()); ++k) {
        const double rel = std::abs(approx[k] - exact[k]) / std::max(std::abs(exact[k]), 1e-300);
        rows.push_back({c.label, v, std::int64_t{c.n_spins}, std::int64_t{k}, exact[k], approx[k], rel});
    }
    return rows;
}

Rows observable_rows(const SweepConfig& cfg, const CurveSpec& c, double v) {
    const auto p = probe(c);
    const double beta = c.beta_omega;
    const double weak = weak_snr(p.n_spins, p.epsilon, beta).mean_jz;
    const ThermalOptions topt{cfg.sectors, kDefaultDimensionCap};
    GrwaOptions go;
    go.sectors = cfg.sectors;
    int n_max = cfg.n_max;
    bool ok = true;
    double exact = kNaN;
    try {
        if (n_max <= 0) n_max = converge_nmax(p, beta, convergence(cfg), snr_options(cfg)).n_max;
        const auto o = thermal_observables(p, beta, n_max, topt);
        exact = o.mean_jz;
        ok = !o.truncated;
    } catch (const ConvergenceError&) {
        ok = false;
        n_max = cfg.n_max_cap;
    } catch (const NumericalError&) {
        // degenerate variance inside the convergence loop; <Jz> itself is fine
        n_max = 64;
        const auto o = thermal_observables(p, beta, n_max, topt);
        exact = o.mean_jz;
        ok = !o.truncated;
    }
    const double grwa = grwa_observables(p, beta, std::max(n_max, 16), go).mean_jz;
    return {{c.label, v, beta, exact, grwa, weak, std::int64_t{n_max}, ok}};
}

Rows lambda_rows(const SweepConfig& cfg, const CurveSpec& c, double v) {
    (void)cfg;
    const auto s = solve_lambda(c.epsilon, 1.0, c.g);
    return {{c.label, v, s.lambda, lambda_closed_form(c.epsilon, 1.0, c.g), s.residual}};
}

Rows curvature_rows(const SweepConfig& cfg, const CurveSpec& c, double v) {
    const auto p = probe(c);
    const auto d = ground_energy_derivs(p, cfg.curvature, 0.0);
    const int n_max = cfg.n_max > 0 ? cfg.n_max : 40;
    return {{c.label, v, std::int64_t{c.n_spins}, d.d2e_deps2, d.d2e_fd, exact_ground_curvature(p, n_max)}};
}

Rows evaluate(const SweepConfig& cfg, const CurveSpec& c, double v) {
    switch (cfg.model) {
        case ModelKind::rabi_exact: return rabi_rows(cfg, c, v);
        case ModelKind::grwa: return grwa_rows(cfg, c, v);
        case ModelKind::weak: return weak_rows(cfg, c, v);
        case ModelKind::dicke: return dicke_rows(cfg, c, v);
        case ModelKind::levels: return level_rows(cfg, c, v);
        case ModelKind::observables: return observable_rows(cfg, c, v);
        case ModelKind::lambda: return lambda_rows(cfg, c, v);
        case ModelKind::curvature: return curvature_rows(cfg, c, v);
    }
    return {};
}

}  // namespace

std::vector<Column> sweep_columns(ModelKind model) {
    using T = ColumnType;
    switch (model) {
        case ModelKind::levels:
            return {{"curve", T::text},   {"grid_value", T::real}, {"n_spins", T::integer}, {"level", T::integer},
                    {"exact", T::real},   {"grwa", T::real},       {"rel_error", T::real}};
        case ModelKind::observables:
            return {{"curve", T::text},         {"grid_value", T::real},    {"beta_omega", T::real},
                    {"mean_jz_exact", T::real}, {"mean_jz_grwa", T::real},  {"mean_jz_weak", T::real},
                    {"n_max", T::integer},      {"converged", T::boolean}};
        case ModelKind::lambda:
            return {{"curve", T::text},
                    {"grid_value", T::real},
                    {"lambda_root", T::real},
                    {"lambda_closed", T::real},
                    {"residual", T::real}};
        case ModelKind::curvature:
            return {{"curve", T::text},     {"grid_value", T::real}, {"n_spins", T::integer},
                    {"d2e_grwa", T::real},  {"d2e_grwa_fd", T::real}, {"d2e_exact", T::real}};
        default:
            return {{"curve", T::text},     {"grid_value", T::real}, {"beta_omega", T::real},
                    {"snr", T::real},       {"snr_weak", T::real},   {"delta_snr", T::real},
                    {"n_max", T::integer},  {"converged", T::boolean}, {"phase", T::text},
                    {"eta", T::real},       {"mean_jz", T::real},    {"var_jz", T::real},
                    {"asymptote", T::real}};
    }
}

double exact_ground_curvature(const ProbeParams& p, int n_max, double h) {
    const auto ground = [&](double eps) {
        const auto es = eigendecompose(detail::assemble_hamiltonian(eps, p.omega, p.g, p.n_spins, n_max));
        return es.eigenvalues(0);
    };
    const double f[5] = {ground(p.epsilon - 2 * h), ground(p.epsilon - h), ground(p.epsilon),
                         ground(p.epsilon + h), ground(p.epsilon + 2 * h)};
    return (-f[4] + 16.0 * f[3] - 30.0 * f[2] + 16.0 * f[1] - f[0]) / (12.0 * h * h);
}

SweepResult run_sweep(const SweepConfig& cfg, int jobs) {
    if (cfg.curves.empty() || cfg.values.empty()) throw ConfigError("grid", "nothing to evaluate");
    struct Task {
        const CurveSpec* curve;
        double value;
    };
    std::vector<Task> tasks;
    for (const auto& c : cfg.curves) {
        for (double v : cfg.values) tasks.push_back({&c, v});
    }
    std::vector<Rows> results(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};

    const auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
            try {
                const auto spec = point_spec(cfg, *tasks[i].curve, tasks[i].value);
                results[i] = evaluate(cfg, spec, tasks[i].value);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int n_workers = std::clamp(jobs, 1, static_cast<int>(tasks.size()));
    {
        std::vector<std::jthread> pool;
        for (int k = 1; k < n_workers; ++k) pool.emplace_back(worker);
        worker();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    SweepResult out{Table(sweep_columns(cfg.model)), 0};
    const int conv = out.table.column_index("converged");
    for (auto& rows : results) {
        for (auto& r : rows) {
            if (conv >= 0 && !std::get<bool>(r[conv])) ++out.unconverged;
            out.table.add_row(std::move(r));
        }
    }
    return out;
}

}  // namespace rcmetro
