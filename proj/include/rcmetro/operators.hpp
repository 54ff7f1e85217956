#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace rcmetro {

/// Parameters of the probe + reaction-coordinate composite
///   H = eps Jz + omega a^dag a + g Jx (a^dag + a)
/// in angular-frequency units (hbar = k_B = 1).
struct ProbeParams {
    int n_spins = 1;
    double epsilon = 1.0;
    double omega = 1.0;
    double g = 0.0;

    /// Throws DomainError unless N >= 1, omega > 0, epsilon >= 0, g >= 0.
    void validate() const;
};

/// One total-spin sector J = two_j / 2 and how many times it occurs in the
/// 2^N product space.
struct SpinSector {
    int two_j = 1;
    long multiplicity = 1;

    double j() const { return 0.5 * two_j; }
    int dim() const { return two_j + 1; }
};

using SectorDecomposition = std::vector<SpinSector>;

/// Composite basis |m, n> with the spin index slow and the Fock index fast:
/// index = (m + J) * (n_max + 1) + n, m = -J ... J ascending.
struct CompositeBasis {
    int two_j = 1;
    int n_max = 0;

    int spin_dim() const { return two_j + 1; }
    int fock_dim() const { return n_max + 1; }
    int dim() const { return spin_dim() * fock_dim(); }
    int index(int spin_index, int n) const { return spin_index * fock_dim() + n; }
};

struct OperatorMatrix {
    Eigen::MatrixXd entries;
    CompositeBasis basis;

    int dim() const { return static_cast<int>(entries.rows()); }
};

/// Spin-J matrices in the |J, m> basis, m ascending. Jy is complex; it is
/// returned as the real antisymmetric matrix jy_imag with Jy = i * jy_imag.
struct SpinOperators {
    Eigen::MatrixXd jx;
    Eigen::MatrixXd jy_imag;
    Eigen::MatrixXd jz;
    Eigen::MatrixXd j_plus;
};

struct BosonOperators {
    Eigen::MatrixXd a_plus_adag;
    Eigen::MatrixXd number;
    Eigen::MatrixXd annihilation;
};

inline constexpr std::size_t kDefaultDimensionCap = 20000;

/// Throws DomainError if two_j < 0.
SpinOperators spin_operators(int two_j);

/// Multiplicities C(N, N/2 - J) - C(N, N/2 - J - 1), largest J first.
SectorDecomposition sector_multiplicities(int n_spins);

/// Truncated single-mode operators on Fock states 0 ... n_max.
BosonOperators boson_operators(int n_max);

/// spin_op (x) 1_fock in the composite basis.
Eigen::MatrixXd embed_spin(const Eigen::MatrixXd& spin_op, const CompositeBasis& basis);

/// 1_spin (x) fock_op in the composite basis.
Eigen::MatrixXd embed_fock(const Eigen::MatrixXd& fock_op, const CompositeBasis& basis);

/// Mapped composite Hamiltonian restricted to one spin sector. Validates the
/// parameters, requires two_j <= N and matching parity, and throws
/// ResourceError if the dimension exceeds dimension_cap.
OperatorMatrix build_mapped_hamiltonian(const ProbeParams& p, int two_j, int n_max,
                                        std::size_t dimension_cap = kDefaultDimensionCap);

namespace detail {
// No parameter validation: used for finite-difference stencils where epsilon
// may be shifted below zero.
OperatorMatrix assemble_hamiltonian(double epsilon, double omega, double g, int two_j,
                                    int n_max);
}  // namespace detail

}  // namespace rcmetro
