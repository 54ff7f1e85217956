#include "rcmetro/dicke.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "rcmetro/baseline.hpp"
#include "rcmetro/errors.hpp"
#include "rcmetro/numerics.hpp"

namespace rcmetro {

void DickeParams::validate() const {
    if (!(epsilon > 0.0)) throw DomainError("dicke epsilon must be > 0");
    if (!(omega > 0.0)) throw DomainError("dicke omega must be > 0");
    if (!(gbar > 0.0)) throw DomainError("dicke gbar must be > 0");
    if (n_spins < 1) throw DomainError("dicke N must be >= 1");
}

double DickeParams::mu() const { return epsilon * omega / (4.0 * gbar * gbar); }

std::string to_string(DickePhase p) { return p == DickePhase::normal ? "normal" : "superradiant"; }

std::optional<double> critical_temperature(const DickeParams& p) {
    p.validate();
    const double mu = p.mu();
    if (!(mu < 1.0)) return std::nullopt;
    return p.epsilon / (2.0 * std::atanh(mu));
}

namespace {

double critical_beta(const DickeParams& p) { return 2.0 * std::atanh(p.mu()) / p.epsilon; }

bool at_critical(const DickeParams& p, double beta) {
    return p.mu() < 1.0 && std::abs(beta - critical_beta(p)) <= 1e-12 * critical_beta(p);
}

}  // namespace

DickePhase phase_at(const DickeParams& p, double beta) {
    p.validate();
    if (!(beta > 0.0)) throw DomainError("beta must be > 0");
    if (!(p.mu() < 1.0)) return DickePhase::normal;
    return beta > critical_beta(p) ? DickePhase::superradiant : DickePhase::normal;
}

double solve_eta(const DickeParams& p, double beta) {
    if (at_critical(p, beta)) return 1.0;
    if (phase_at(p, beta) == DickePhase::normal) {
        std::ostringstream msg;
        msg << "eta is defined only below T_c (beta = " << beta << ", mu = " << p.mu() << ")";
        throw PhaseError(msg.str());
    }
    const double mu = p.mu();
    const auto f = [&](double eta) { return eta * mu - std::tanh(0.5 * beta * p.epsilon * eta); };
    return numerics::find_root(f, 1.0, 1.0 / mu, 1e-15).x;
}

double dicke_phi(const DickeParams& p, double beta, double z) {
    const double u = 0.5 * beta * std::sqrt(p.epsilon * p.epsilon + 16.0 * p.gbar * p.gbar * z * z);
    // ln 2cosh(u) = |u| + log1p(exp(-2|u|))
    return -beta * p.omega * z * z + std::abs(u) + std::log1p(std::exp(-2.0 * std::abs(u)));
}

double dicke_phi_zz(const DickeParams& p, double beta, double z) {
    const double g2 = p.gbar * p.gbar;
    const double r = std::sqrt(p.epsilon * p.epsilon + 16.0 * g2 * z * z);
    const double u = 0.5 * beta * r;
    const double du = 8.0 * beta * g2 * z / r;
    const double d2u = 8.0 * beta * g2 * p.epsilon * p.epsilon / (r * r * r);
    const double sech = stable_sech(u);
    return -2.0 * beta * p.omega + sech * sech * du * du + std::tanh(u) * d2u;
}

LaplaceResult laplace_partition(const DickeParams& p, double beta) {
    LaplaceResult r;
    r.phase = phase_at(p, beta);
    if (r.phase == DickePhase::superradiant) {
        r.eta = solve_eta(p, beta);
        r.z0 = p.epsilon * std::sqrt(r.eta * r.eta - 1.0) / (4.0 * p.gbar);
    }
    r.phi = dicke_phi(p, beta, r.z0);
    r.phi_zz = dicke_phi_zz(p, beta, r.z0);
    if (std::abs(r.phi_zz) < 1e-14) {
        std::ostringstream msg;
        msg << "flat saddle: Phi''(z0) = " << r.phi_zz << " at beta = " << beta
            << "; this is the phase boundary";
        if (auto tc = critical_temperature(p)) msg << " (T_c = " << *tc << ")";
        throw NumericalError(msg.str());
    }
    r.ln_z = p.n_spins * r.phi + 0.5 * std::log(2.0 / (beta * p.omega * std::abs(r.phi_zz)));
    return r;
}

ThermalObservables dicke_observables(const DickeParams& p, double beta) {
    p.validate();
    const double n = p.n_spins;
    const DickePhase phase = phase_at(p, beta);
    const double eta = phase == DickePhase::superradiant ? solve_eta(p, beta) : 1.0;
    const double t = std::tanh(0.5 * beta * p.epsilon * eta) / eta;

    ThermalObservables o;
    o.beta = beta;
    o.mean_jz = -0.5 * n * t;
    o.mean_jz2 = 0.25 * n + 0.25 * n * (n - 1.0) * t * t;
    o.var_jz = std::max(0.0, 0.25 * n * (1.0 - t * t));
    try {
        o.ln_z = laplace_partition(p, beta).ln_z;
    } catch (const NumericalError&) {
        o.ln_z = std::numeric_limits<double>::quiet_NaN();
    }
    return o;
}

DickeSnr dicke_snr(const DickeParams& p, double beta) {
    p.validate();
    DickeSnr s;
    s.beta = beta;
    s.phase = phase_at(p, beta);
    s.snr_weak_per_n = weak_snr(1, p.epsilon, beta).snr;
    if (s.phase == DickePhase::normal) {
        s.snr_per_n = s.snr_weak_per_n;
    } else {
        s.eta = solve_eta(p, beta);
        const double g2 = p.gbar * p.gbar;
        const double den = 16.0 * g2 * g2 - p.epsilon * p.epsilon * p.omega * p.omega;
        if (!(den > 0.0)) throw DomainError("superradiant SNR denominator 16 gbar^4 - eps^2 omega^2 <= 0");
        s.snr_per_n = p.omega * p.omega / den;
    }
    s.delta_per_n = s.snr_per_n - s.snr_weak_per_n;
    s.snr = p.n_spins * s.snr_per_n;
    return s;
}

namespace {

// (S -+ sqrt(S^2 - P)) / 2 with the small root taken as P / (2 (S + sqrt(S^2 - P))).
HpBranch hp_branch(double s, double disc, double product) {
    HpBranch b;
    const double root = std::sqrt(disc);
    b.plus_sq = 0.5 * (s + root);
    b.minus_sq = 0.5 * product / (s + root);
    b.plus = std::sqrt(b.plus_sq);
    b.stable = b.minus_sq >= 0.0;
    b.minus = b.stable ? std::sqrt(b.minus_sq) : std::numeric_limits<double>::quiet_NaN();
    return b;
}

}  // namespace

HpSpectrum hp_excitations(const DickeParams& p) {
    p.validate();
    const double e = p.epsilon;
    const double w = p.omega;
    const double g2 = p.gbar * p.gbar;

    HpSpectrum out;
    {
        const double s = e * e + w * w;
        const double d = (e * e - w * w) * (e * e - w * w) + 16.0 * g2 * e * w;
        out.normal = hp_branch(s, d, 4.0 * e * w * (e * w - 4.0 * g2));
    }
    const double mu = p.mu();
    if (mu < 1.0) {
        const double ep = e / mu;
        const double s = ep * ep + w * w;
        const double d = (ep * ep - w * w) * (ep * ep - w * w) + 4.0 * e * e * w * w;
        out.superradiant = hp_branch(s, d, 4.0 * w * w * (ep * ep - e * e));
    }
    return out;
}

}  // namespace rcmetro
