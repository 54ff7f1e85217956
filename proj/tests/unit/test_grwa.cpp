#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "gen.hpp"
#include "grwa_fixtures.hpp"
#include "oracle_values.hpp"
#include "rcmetro/errors.hpp"
#include "rcmetro/grwa.hpp"
#include "rcmetro/numerics.hpp"
#include "rcmetro/thermal.hpp"

using namespace rcmetro;

namespace {

std::vector<double> exact_levels(const ProbeParams& p, int two_j, int n_max) {
    const auto es = eigendecompose(build_mapped_hamiltonian(p, two_j, n_max));
    return {es.eigenvalues.data(), es.eigenvalues.data() + es.eigenvalues.size()};
}

double worst_level_error(const ProbeParams& p, int count) {
    const double lam = solve_lambda(p.epsilon, p.omega, p.g).lambda;
    const auto approx = grwa_levels(build_grwa_blocks(p, lam, 40, SectorMode::maximal), p.n_spins);
    const auto exact = exact_levels(p, p.n_spins, 60);
    // relative to max(|E|, omega): levels can sit at zero (N = 2, eps = omega)
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        worst = std::max(worst, std::abs(approx[i] - exact[i]) / std::max(std::abs(exact[i]), p.omega));
    }
    return worst;
}

}  // namespace

TEST_SUITE("grwa") {

TEST_CASE("F coefficients") {
    for (const auto& row : oracle::kFCoeff) {
        const double f = coefficient_F(int(row[0]), int(row[1]), row[2]);
        CAPTURE(row[0]);
        CAPTURE(row[1]);
        CHECK(std::abs(f - row[3]) <= 1e-12 * std::max(1.0, std::abs(row[3])));
    }
    CHECK(coefficient_F(0, 0, 0.7) == doctest::Approx(std::exp(-0.245)).epsilon(1e-15));
    for (int m = 0; m < 10; ++m) {
        CHECK(coefficient_F(0, m, 0.0) == 1.0);
        CHECK(coefficient_F(1, m, 0.0) == 0.0);
    }
    CHECK_THROWS_AS(coefficient_F(-1, 0, 0.5), DomainError);
}

TEST_CASE("lambda root and closed form") {
    const auto s = solve_lambda(1.0, 1.0, 0.5);
    CHECK(std::abs(s.lambda - oracle::kLambdaRoot_e1_g05) < 1e-12);
    CHECK(std::abs(lambda_equation(s.lambda, 1.0, 1.0, 0.5)) < 1e-12);
    CHECK(std::abs(lambda_closed_form(1.0, 1.0, 0.5) - oracle::kLambdaClosed_e1_g05) < 1e-15);
    CHECK(std::abs(solve_lambda(2.0, 1.0, 0.9).lambda - oracle::kLambdaRoot_e2_g09) < 1e-12);
    // hand value: lambda0 = 0.25, 0.5 / (1 + exp(-1/32))
    CHECK(lambda_closed_form(1.0, 1.0, 0.5) == doctest::Approx(0.5 / (1.0 + std::exp(-1.0 / 32.0))).epsilon(1e-15));
    CHECK(solve_lambda(1.0, 1.0, 0.0).lambda == 0.0);
    CHECK(solve_lambda(0.0, 1.0, 0.7).lambda == doctest::Approx(0.7).epsilon(1e-12));
    CHECK_THROWS_AS(solve_lambda(1.0, 0.0, 0.5), DomainError);
    CHECK_THROWS_AS(solve_lambda(1.0, 1.0, -0.5), DomainError);
}

TEST_CASE("lambda is the variational minimum") {
    gen::Rng r(5);
    for (int i = 0; i < 20; ++i) {
        const double eps = r.uniform(0.1, 3.0), g = r.uniform(0.01, 1.0);
        const int n = r.integer(1, 6);
        const double lam = solve_lambda(eps, 1.0, g).lambda;
        const double e0 = grwa_ground_energy(n, eps, 1.0, g, lam);
        for (int k = -20; k <= 20; ++k) {
            CHECK(e0 <= grwa_ground_energy(n, eps, 1.0, g, lam + 0.01 * k) + 1e-14);
        }
    }
}

TEST_CASE("lambda derivatives") {
    gen::Rng r(6);
    for (int i = 0; i < 20; ++i) {
        const double eps = r.uniform(0.1, 3.0), g = r.uniform(0.01, 1.0);
        const double lam = solve_lambda(eps, 1.0, g).lambda;
        const double di = dlambda_implicit(eps, 1.0, g, lam);
        const double fd = numerics::richardson_derivative(
            [&](double e) { return solve_lambda(e, 1.0, g).lambda; }, eps, 1e-3);
        CHECK(std::abs(di - fd) <= 1e-7 * std::abs(fd));
        CHECK(di < 0.0);
        const double dc = dlambda_closed_form(eps, 1.0, g);
        const double fdc = numerics::richardson_derivative(
            [&](double e) { return lambda_closed_form(e, 1.0, g); }, eps, 1e-3);
        CHECK(std::abs(dc - fdc) <= 1e-8 * std::abs(fdc));
        CHECK(dc < 0.0);
    }
}

TEST_CASE("ground energy values") {
    const double lam = solve_lambda(1.0, 1.0, 0.3).lambda;
    CHECK(std::abs(grwa_ground_energy(1, 1.0, 1.0, 0.3, lam) - oracle::kGrwaGround_N1_e1_g03) < 1e-13);
    CHECK(std::abs(grwa_ground_energy(3, 1.0, 1.0, 0.3, lam) - oracle::kGrwaGround_N3_e1_g03) < 1e-13);
    CHECK(grwa_ground_energy(2, 1.0, 1.0, 0.0, 0.0) == -1.0);
}

TEST_CASE("blocks match the explicit small-N forms") {
    gen::Rng r(77);
    for (int trial = 0; trial < 25; ++trial) {
        const fixtures::GrwaInputs in{r.uniform(0.05, 3.0), r.uniform(0.3, 2.0), r.uniform(0.0, 1.5),
                                      r.uniform(0.0, 1.5)};
        const int n_max = 12;
        for (int n = 1; n <= 3; ++n) {
            const ProbeParams p{n, in.epsilon, in.omega, in.g};
            const auto blocks = build_grwa_blocks(p, in.lambda, n_max, SectorMode::maximal);
            REQUIRE(blocks.size() == std::size_t(n_max + 1));
            CHECK(blocks[0].matrix.rows() == 1);
            CHECK(std::abs(blocks[0].matrix(0, 0) - grwa_ground_energy(n, in.epsilon, in.omega, in.g, in.lambda)) < 1e-12);
            for (int k = 1; k <= n_max; ++k) {
                const Eigen::MatrixXd want = n == 1 ? fixtures::n1_block(in, k)
                                             : n == 2 ? fixtures::n2_block(in, k)
                                                      : fixtures::n3_block(in, k);
                const auto& got = blocks[k].matrix;
                CAPTURE(n);
                CAPTURE(k);
                REQUIRE(got.rows() == want.rows());
                CHECK((got - want).cwiseAbs().maxCoeff() < 1e-12);
                CHECK(blocks[k].excitation_index == k - 1);
            }
        }
    }
}

TEST_CASE("block bookkeeping") {
    const ProbeParams p{4, 1.0, 1.0, 0.2};
    const auto blocks = build_grwa_blocks(p, 0.1, 10);
    // sectors 2J = 4, 2, 0 with 11 blocks each
    CHECK(blocks.size() == 33);
    std::size_t states = 0;
    for (const auto& b : blocks) {
        CHECK(b.labels.size() == std::size_t(b.matrix.rows()));
        CHECK((b.matrix - b.matrix.transpose()).cwiseAbs().maxCoeff() == 0.0);
        for (const auto& [m, n] : b.labels) CHECK((m + 0.5 * b.two_j) + n == doctest::Approx(b.excitation_index + 1));
        states += b.matrix.rows();
    }
    // block k holds min(k, 2J) + 1 states: 45 + 30 + 11
    CHECK(states == 86);
    CHECK(build_grwa_blocks(p, 0.1, 10, SectorMode::maximal).size() == 11);
}

TEST_CASE("decoupled blocks are diagonal") {
    const ProbeParams p{3, 0.8, 1.0, 0.0};
    for (const auto& b : build_grwa_blocks(p, 0.0, 8)) {
        for (int r = 0; r < b.matrix.rows(); ++r) {
            const auto [m, n] = b.labels[r];
            CHECK(b.matrix(r, r) == doctest::Approx(n + 0.8 * m).epsilon(1e-14));
            for (int c = 0; c < b.matrix.cols(); ++c) {
                if (c != r) CHECK(b.matrix(r, c) == 0.0);
            }
        }
    }
}

TEST_CASE("levels against oracle values") {
    const ProbeParams p{1, 1.0, 1.0, 0.3};
    const double lam = solve_lambda(1.0, 1.0, 0.3).lambda;
    const auto lv = grwa_levels(build_grwa_blocks(p, lam, 20), 1);
    for (int i = 0; i < 6; ++i) {
        CHECK(std::abs(lv[i] - oracle::kGrwaLevels_N1_g03[i]) < 1e-12);
        CHECK(std::abs(lv[i] / oracle::kExactLevels_N1_g03[i] - 1.0) < 0.05);
    }
}

TEST_CASE("levels approach exact diagonalization as g -> 0") {
    for (int n = 1; n <= 3; ++n) {
        double prev = 1e300;
        for (double g : {0.5, 0.3, 0.1, 0.02}) {
            const double err = worst_level_error({n, 1.0, 1.0, g}, 6);
            CAPTURE(n);
            CAPTURE(g);
            CHECK(err <= prev);
            prev = err;
        }
        CHECK(prev < 1e-3);
    }
    CHECK(worst_level_error({1, 1.0, 1.0, 0.5}, 6) < 0.05);
    CHECK(worst_level_error({2, 1.0, 1.0, 0.5}, 6) < 0.05);
}

TEST_CASE("low-temperature partition limit is the ground energy") {
    for (int n = 1; n <= 4; ++n) {
        const ProbeParams p{n, 1.0, 1.0, 0.2};
        const double lam = solve_lambda(1.0, 1.0, 0.2).lambda;
        const auto part = grwa_partition(build_grwa_blocks(p, lam, 20), 1e4);
        const double e_g = grwa_ground_energy(n, 1.0, 1.0, 0.2, lam);
        CHECK(std::abs(-part.ln_z / 1e4 - e_g) < 1e-8);
        CHECK(part.min_energy == doctest::Approx(e_g).epsilon(1e-12));
        CHECK_FALSE(part.truncated);
    }
    const ProbeParams p{1, 1.0, 1.0, 0.2};
    CHECK(grwa_partition(build_grwa_blocks(p, 0.1, 3), 0.05).truncated);
    CHECK_THROWS_AS(grwa_partition(build_grwa_blocks(p, 0.1, 3), 0.0), DomainError);
}

TEST_CASE("GRWA thermodynamics reduce to the decoupled spins") {
    for (int n = 1; n <= 3; ++n) {
        const ProbeParams p{n, 1.0, 1.0, 1e-4};
        const double beta = 3.0;
        const auto o = grwa_observables(p, beta, 30);
        CHECK(std::abs(o.mean_jz + 0.5 * n * std::tanh(0.5 * beta)) < 1e-6);
        const double weak = n * beta * beta / (2.0 + 2.0 * std::cosh(beta));
        CHECK(std::abs(o.snr / weak - 1.0) < 1e-4);
    }
}

TEST_CASE("ground-energy curvature") {
    for (int n = 4; n <= 6; ++n) {
        for (double eps = 0.1; eps <= 3.0; eps += 0.29) {
            const auto d = ground_energy_derivs({n, eps, 1.0, 0.05}, CurvatureSource::implicit);
            CHECK(d.d2e_deps2 < 0.0);
            CHECK(std::abs(d.d2e_deps2 - d.d2e_fd) <= 1e-3 * std::abs(d.d2e_fd));
        }
    }
    const auto d = ground_energy_derivs({1, 1.0, 1.0, 0.3}, CurvatureSource::implicit);
    CHECK(d.de_deps == doctest::Approx(-0.5 * std::exp(-0.5 * d.lambda * d.lambda)));
    CHECK_THROWS_AS(ground_energy_derivs({1, 1.0, 1.0, 0.8}, CurvatureSource::closed_form), NumericalError);
    CHECK_NOTHROW(ground_energy_derivs({1, 1.0, 1.0, 0.8}, CurvatureSource::closed_form, 0.0));
}

TEST_CASE("asymptotic SNR shapes") {
    const auto d1 = ground_energy_derivs({1, 1.0, 1.0, 0.4}, CurvatureSource::implicit);
    CHECK(asymptotic_snr(1, d1, 20.0) == asymptotic_snr(1, d1, 60.0));
    CHECK(asymptotic_snr(1, d1, 20.0) > 0.0);
    CHECK(asymptotic_snr(1, d1, 20.0, 2.5) == doctest::Approx(2.5 * asymptotic_snr(1, d1, 20.0)));
    const auto d2 = ground_energy_derivs({2, 1.0, 1.0, 0.3}, CurvatureSource::implicit);
    CHECK(asymptotic_snr(2, d2, 60.0) == doctest::Approx(3.0 * asymptotic_snr(2, d2, 20.0)));
    CHECK(asymptotic_snr(2, d2, 20.0) > 0.0);
    CHECK_THROWS_AS(asymptotic_snr(2, d2, 0.0), DomainError);
    GroundEnergyDerivs flat = d1;
    flat.de_deps = 0.5;
    CHECK_THROWS_AS(asymptotic_snr(1, flat, 1.0), DomainError);
}

}
