#include "rcmetro/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "rcmetro/errors.hpp"

namespace rcmetro {

void ProbeParams::validate() const {
    if (n_spins < 1) throw DomainError("N must be >= 1, got " + std::to_string(n_spins));
    if (!(omega > 0.0)) throw DomainError("omega must be > 0");
    if (!(epsilon >= 0.0)) throw DomainError("epsilon must be >= 0");
    if (!(g >= 0.0)) throw DomainError("g must be >= 0");
}

SpinOperators spin_operators(int two_j) {
    if (two_j < 0) throw DomainError("2J must be a nonnegative integer");
    const int d = two_j + 1;
    const double j = 0.5 * two_j;

    SpinOperators ops;
    ops.jz = Eigen::MatrixXd::Zero(d, d);
    ops.j_plus = Eigen::MatrixXd::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        const double m = -j + k;
        ops.jz(k, k) = m;
        if (k + 1 < d) {
            // <m+1| J+ |m>
            ops.j_plus(k + 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
        }
    }
    const Eigen::MatrixXd j_minus = ops.j_plus.transpose();
    ops.jx = 0.5 * (ops.j_plus + j_minus);
    // Jy = (J+ - J-) / (2i) = i (J- - J+) / 2
    ops.jy_imag = 0.5 * (j_minus - ops.j_plus);
    return ops;
}

namespace {

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

}  // namespace

SectorDecomposition sector_multiplicities(int n_spins) {
    if (n_spins < 1) throw DomainError("N must be >= 1");
    if (n_spins > 60) throw DomainError("sector multiplicities overflow beyond N = 60");
    SectorDecomposition out;
    for (int two_j = n_spins; two_j >= 0; two_j -= 2) {
        const int k = (n_spins - two_j) / 2;
        const auto mult = binomial(n_spins, k) - binomial(n_spins, k - 1);
        out.push_back({two_j, static_cast<long>(mult)});
    }
    return out;
}

BosonOperators boson_operators(int n_max) {
    if (n_max < 1) throw DomainError("n_max must be >= 1");
    const int d = n_max + 1;
    BosonOperators ops;
    ops.annihilation = Eigen::MatrixXd::Zero(d, d);
    ops.number = Eigen::MatrixXd::Zero(d, d);
    for (int n = 0; n < d; ++n) {
        ops.number(n, n) = n;
        if (n + 1 < d) ops.annihilation(n, n + 1) = std::sqrt(static_cast<double>(n + 1));
    }
    ops.a_plus_adag = ops.annihilation + ops.annihilation.transpose();
    return ops;
}

Eigen::MatrixXd embed_spin(const Eigen::MatrixXd& spin_op, const CompositeBasis& basis) {
    const int ds = basis.spin_dim();
    const int df = basis.fock_dim();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(basis.dim(), basis.dim());
    for (int a = 0; a < ds; ++a) {
        for (int b = 0; b < ds; ++b) {
            const double v = spin_op(a, b);
            if (v == 0.0) continue;
            for (int n = 0; n < df; ++n) out(basis.index(a, n), basis.index(b, n)) = v;
        }
    }
    return out;
}

Eigen::MatrixXd embed_fock(const Eigen::MatrixXd& fock_op, const CompositeBasis& basis) {
    const int ds = basis.spin_dim();
    const int df = basis.fock_dim();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(basis.dim(), basis.dim());
    for (int a = 0; a < ds; ++a) {
        out.block(a * df, a * df, df, df) = fock_op;
    }
    return out;
}

namespace detail {

OperatorMatrix assemble_hamiltonian(double epsilon, double omega, double g, int two_j,
                                    int n_max) {
    const CompositeBasis basis{two_j, n_max};
    const int ds = basis.spin_dim();
    const int df = basis.fock_dim();
    const double j = 0.5 * two_j;

    OperatorMatrix h{Eigen::MatrixXd::Zero(basis.dim(), basis.dim()), basis};
    auto& e = h.entries;
    for (int a = 0; a < ds; ++a) {
        const double m = -j + a;
        for (int n = 0; n < df; ++n) e(basis.index(a, n), basis.index(a, n)) = epsilon * m + omega * n;
    }
    // g Jx (a + a^dag): <m+1, n+-1| ... |m, n> = g/2 sqrt(J(J+1) - m(m+1)) sqrt(...)
    for (int a = 0; a + 1 < ds; ++a) {
        const double m = -j + a;
        const double jx = 0.5 * std::sqrt(j * (j + 1.0) - m * (m + 1.0));
        for (int n = 0; n < df; ++n) {
            if (n + 1 < df) {
                const double v = g * jx * std::sqrt(static_cast<double>(n + 1));
                const int r = basis.index(a + 1, n + 1);
                const int c = basis.index(a, n);
                e(r, c) = v;
                e(c, r) = v;
            }
            if (n > 0) {
                const double v = g * jx * std::sqrt(static_cast<double>(n));
                const int r = basis.index(a + 1, n - 1);
                const int c = basis.index(a, n);
                e(r, c) = v;
                e(c, r) = v;
            }
        }
    }
    return h;
}

}  // namespace detail

OperatorMatrix build_mapped_hamiltonian(const ProbeParams& p, int two_j, int n_max,
                                        std::size_t dimension_cap) {
    p.validate();
    if (two_j < 0 || two_j > p.n_spins || (p.n_spins - two_j) % 2 != 0) {
        throw DomainError("2J = " + std::to_string(two_j) + " is not a sector of N = " +
                          std::to_string(p.n_spins) + " spins");
    }
    if (n_max < 1) throw DomainError("n_max must be >= 1");
    const std::size_t dim =
        static_cast<std::size_t>(two_j + 1) * static_cast<std::size_t>(n_max + 1);
    if (dim > dimension_cap) {
        throw ResourceError("composite dimension " + std::to_string(dim) + " exceeds cap " +
                            std::to_string(dimension_cap));
    }
    return detail::assemble_hamiltonian(p.epsilon, p.omega, p.g, two_j, n_max);
}

}  // namespace rcmetro
