#include <cmath>

#include "doctest.h"
#include "gen.hpp"
#include "oracle_values.hpp"
#include "rcmetro/errors.hpp"
#include "rcmetro/operators.hpp"
#include "rcmetro/thermal.hpp"

using namespace rcmetro;

TEST_SUITE("operators") {

TEST_CASE("spin one-half matrices") {
    const auto s = spin_operators(1);
    CHECK(s.jz(0, 0) == -0.5);
    CHECK(s.jz(1, 1) == 0.5);
    CHECK(s.jx(0, 1) == 0.5);
    CHECK(s.jx(1, 0) == 0.5);
    CHECK(s.jx(0, 0) == 0.0);
}

TEST_CASE("spin one ladder elements") {
    const auto s = spin_operators(2);
    CHECK(s.jx(0, 1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(s.jx(1, 2) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(s.jx(0, 2) == 0.0);
}

TEST_CASE("negative 2J is rejected") { CHECK_THROWS_AS(spin_operators(-1), DomainError); }

TEST_CASE("commutator [Jx, Im Jy] on every J up to 4") {
    for (int two_j = 0; two_j <= 8; ++two_j) {
        CAPTURE(two_j);
        const auto s = spin_operators(two_j);
        const Eigen::MatrixXd& b = s.jy_imag;  // Jy = i B
        // [Jx, Jy] = i Jz  =>  [Jx, B] = Jz
        CHECK((s.jx * b - b * s.jx - s.jz).cwiseAbs().maxCoeff() <= 1e-13);
        // with B' = i Jy = -B the same identity reads [Jx, B'] = -Jz
        const Eigen::MatrixXd bp = -b;
        CHECK((s.jx * bp - bp * s.jx + s.jz).cwiseAbs().maxCoeff() <= 1e-13);
        CHECK((b + b.transpose()).cwiseAbs().maxCoeff() == 0.0);
        // Casimir: Jx^2 - B^2 + Jz^2 = J(J+1)
        const double j = 0.5 * two_j;
        const Eigen::MatrixXd c = s.jx * s.jx - b * b + s.jz * s.jz;
        CHECK((c - j * (j + 1.0) * Eigen::MatrixXd::Identity(two_j + 1, two_j + 1)).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("boson operators") {
    const auto b1 = boson_operators(1);
    CHECK(b1.a_plus_adag(0, 1) == 1.0);
    CHECK(b1.a_plus_adag(1, 0) == 1.0);
    CHECK(b1.a_plus_adag(0, 0) == 0.0);
    const auto b2 = boson_operators(2);
    CHECK(b2.a_plus_adag(0, 1) == 1.0);
    CHECK(b2.a_plus_adag(1, 2) == std::sqrt(2.0));
    CHECK(b2.number.diagonal()(0) == 0.0);
    CHECK(b2.number.diagonal()(1) == 1.0);
    CHECK(b2.number.diagonal()(2) == 2.0);
    CHECK_THROWS_AS(boson_operators(0), DomainError);
}

TEST_CASE("[a, a^dag] = 1 below the cutoff") {
    for (int n_max : {1, 2, 5, 17}) {
        const auto b = boson_operators(n_max);
        const Eigen::MatrixXd& a = b.annihilation;
        const Eigen::MatrixXd c = a * a.transpose() - a.transpose() * a;
        const Eigen::MatrixXd inner = c.topLeftCorner(n_max, n_max);
        CHECK((inner - Eigen::MatrixXd::Identity(n_max, n_max)).cwiseAbs().maxCoeff() < 1e-13);
        CHECK((b.number - a.transpose() * a).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("sector multiplicities match brute-force J^2 spectra") {
    const auto check = [](int n, const auto& ref, int count) {
        const auto s = sector_multiplicities(n);
        REQUIRE(static_cast<int>(s.size()) == count);
        for (int i = 0; i < count; ++i) {
            CHECK(s[i].two_j == ref[i][0]);
            CHECK(s[i].multiplicity == ref[i][1]);
        }
    };
    check(2, oracle::kSectors2, 2);
    check(3, oracle::kSectors3, 2);
    check(4, oracle::kSectors4, 3);
    const auto one = sector_multiplicities(1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].two_j == 1);
    CHECK(one[0].multiplicity == 1);
}

TEST_CASE("sector dimensions sum to 2^N") {
    for (int n = 1; n <= 12; ++n) {
        long total = 0;
        for (const auto& s : sector_multiplicities(n)) total += s.multiplicity * (s.two_j + 1);
        CHECK(total == (1L << n));
    }
}

TEST_CASE("mapped Hamiltonian is exactly symmetric with the composite dimension") {
    gen::Rng r(11);
    for (int i = 0; i < 20; ++i) {
        ProbeParams p{r.integer(1, 4), r.uniform(0, 2), r.uniform(0.5, 2), r.uniform(0, 1)};
        const int n_max = r.integer(1, 12);
        for (const auto& s : sector_multiplicities(p.n_spins)) {
            const auto h = build_mapped_hamiltonian(p, s.two_j, n_max);
            CHECK(h.dim() == (s.two_j + 1) * (n_max + 1));
            CHECK(h.entries == h.entries.transpose());
        }
    }
}

TEST_CASE("decoupled spectrum") {
    const ProbeParams p{1, 0.7, 1.3, 0.0};
    const auto es = eigendecompose(build_mapped_hamiltonian(p, 1, 1));
    CHECK(es.eigenvalues(0) == doctest::Approx(-0.35));
    CHECK(es.eigenvalues(1) == doctest::Approx(0.35));
    CHECK(es.eigenvalues(2) == doctest::Approx(1.3 - 0.35));
    CHECK(es.eigenvalues(3) == doctest::Approx(1.3 + 0.35));
}

TEST_CASE("displaced-oscillator ground energy at eps = 0") {
    const ProbeParams p{1, 0.0, 1.0, 0.5};
    const auto es = eigendecompose(build_mapped_hamiltonian(p, 1, 60));
    CHECK(std::abs(es.eigenvalues(0) - (-p.g * p.g / (4.0 * p.omega))) < 1e-8);
    CHECK(std::abs(es.eigenvalues(0) - oracle::kPolaronGround_g05) < 1e-12);
}

TEST_CASE("embedding follows spin-slow, Fock-fast ordering") {
    const CompositeBasis basis{2, 3};
    CHECK(basis.index(1, 2) == 1 * 4 + 2);
    const auto jz = embed_spin(spin_operators(2).jz, basis);
    CHECK(jz(basis.index(2, 3), basis.index(2, 3)) == 1.0);
    const auto nb = embed_fock(boson_operators(3).number, basis);
    CHECK(nb(basis.index(0, 3), basis.index(0, 3)) == 3.0);
}

TEST_CASE("argument checks") {
    CHECK_THROWS_AS((ProbeParams{0, 1, 1, 0}.validate()), DomainError);
    CHECK_THROWS_AS((ProbeParams{1, -1, 1, 0}.validate()), DomainError);
    CHECK_THROWS_AS((ProbeParams{1, 1, 0, 0}.validate()), DomainError);
    CHECK_THROWS_AS((ProbeParams{1, 1, 1, -0.1}.validate()), DomainError);
    CHECK_THROWS_AS(build_mapped_hamiltonian({2, 1, 1, 0.1}, 1, 4), DomainError);  // 2J = 1 is not a sector of N = 2
    CHECK_THROWS_AS(build_mapped_hamiltonian({2, 1, 1, 0.1}, 2, 10, 20), ResourceError);
    CHECK_THROWS_AS(sector_multiplicities(0), DomainError);
}

}
