#include <doctest.h>

#include <numbers>

#include "nlrabi/criticality.hpp"
#include "nlrabi/wavefunction.hpp"

using namespace nlrabi;

namespace {

TruncationSpec trunc16() {
    TruncationSpec t;
    t.n_start = 16;
    return t;
}

}  // namespace

TEST_SUITE_BEGIN("wavefunction");

TEST_CASE("hermite basis at the origin") {
    const Eigen::VectorXd phi = hermite_basis(4, 0.0);
    CHECK(phi[0] == doctest::Approx(std::pow(std::numbers::pi, -0.25)).epsilon(1e-12));
    CHECK(phi[0] == doctest::Approx(0.751126).epsilon(1e-6));
    CHECK(phi[1] == 0.0);  // odd function
    CHECK(phi[3] == 0.0);
}

TEST_CASE("hermite functions are orthonormal under quadrature") {
    // trapezoid oracle on [-12, 12]; the n,m <= 20 states live well inside
    const int points = 4801;
    const double a = -12.0, b = 12.0;
    const double dx = (b - a) / (points - 1);
    const int n_max = 21;
    Eigen::MatrixXd overlap = Eigen::MatrixXd::Zero(n_max, n_max);
    for (int i = 0; i < points; ++i) {
        const double w = (i == 0 || i == points - 1) ? 0.5 : 1.0;
        const Eigen::VectorXd phi = hermite_basis(n_max, a + i * dx);
        overlap += (w * dx) * phi * phi.transpose();
    }
    for (int n = 0; n < n_max; ++n)
        for (int m = 0; m < n_max; ++m)
            CHECK(std::abs(overlap(n, m) - (n == m ? 1.0 : 0.0)) < 1e-8);
}

TEST_CASE("hermite underflow at large |x| is benign") {
    const Eigen::VectorXd phi = hermite_basis(8, 30.0);
    for (int n = 0; n < 8; ++n) CHECK(std::isfinite(phi[n]));
}

TEST_CASE("decoupled ground state is the sigma_x = -1 gaussian") {
    const ModelParams p{0.1, 1.0, 0.0, 0.0, 0.0};
    const ConvergedGround ground = converge_ground(p, trunc16(), 2);
    const PositionWave wave = position_wave_default(ground);

    CHECK(wave.x_s == doctest::Approx(std::sqrt(1.0 / 0.2)).epsilon(1e-12));
    CHECK(wave.weight_up == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(wave.weight_down == doctest::Approx(0.5).epsilon(1e-9));

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Eigen::Index i = 0; i < wave.xs.size(); i += 40) {
        const double phi0 = hermite_basis(1, wave.xs[i])[0];
        CHECK(std::abs(wave.psi_up[i]) == doctest::Approx(phi0 * inv_sqrt2).epsilon(1e-8));
        // opposite spin components carry opposite signs (sigma_x eigenvalue -1)
        CHECK(wave.psi_up[i] * wave.psi_down[i] <= 0.0);
    }
}

TEST_CASE("parity mirror at eps = g2 = 0: |psi_up(x)| = |psi_down(-x)|") {
    const double g_s = 0.5 * std::sqrt(0.1);
    const ModelParams p{0.1, 1.0, 1.2 * g_s, 0.0, 0.0};
    const ConvergedGround ground = converge_ground(p, trunc16(), 2);
    const PositionWave wave = position_wave_default(ground);
    const Eigen::Index n = wave.xs.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        // grid is symmetric, so index n-1-i sits at -x
        CHECK(std::abs(wave.psi_up[i]) ==
              doctest::Approx(std::abs(wave.psi_down[n - 1 - i])).epsilon(1e-8));
    }
}

TEST_CASE("beyond g_s the up component displaces left, down right") {
    const double g_s = 0.5 * std::sqrt(0.1);
    const ModelParams p{0.1, 1.0, 2.0 * g_s, 0.0, 0.0};
    const ConvergedGround ground = converge_ground(p, trunc16(), 2);
    const PositionWave wave = position_wave_default(ground);

    Eigen::Index i_up = 0, i_down = 0;
    wave.psi_up.cwiseAbs().maxCoeff(&i_up);
    wave.psi_down.cwiseAbs().maxCoeff(&i_down);
    CHECK(wave.xs[i_up] < 0.0);
    CHECK(wave.xs[i_down] > 0.0);
    CHECK(wave.xs[i_up] == doctest::Approx(-wave.xs[i_down]).epsilon(1e-6));
    // semiclassical displacement sqrt(2) g1 sqrt(1 - (g_s/g1)^4)/omega
    const double x0 = std::sqrt(2.0) * p.g1 * std::sqrt(1.0 - std::pow(g_s / p.g1, 4)) / 0.1;
    CHECK(std::abs(wave.xs[i_down] - x0) < 0.05 * x0);
}

TEST_CASE("weight transfer above the first-order transition (g2 = 0.75 g_t)") {
    const double g_s = 0.5 * std::sqrt(0.1);
    // transition at 0.6614 g_s; just above it the lower branch takes over
    const ModelParams p{0.1, 1.0, 0.7 * g_s, 0.75 * 0.05, 0.0};
    const ConvergedGround ground = converge_ground(p, trunc16(), 2);
    const PositionWave wave = position_wave_default(ground);
    CHECK(wave.weight_down >= 0.9);
    CHECK(wave.weight_up + wave.weight_down == doctest::Approx(1.0).epsilon(1e-6));
    // frozen regression value (dense Fock-norm oracle)
    CHECK(wave.weight_down == doctest::Approx(0.974477).epsilon(1e-4));
}

TEST_CASE("grid refinement stability") {
    const double g_s = 0.5 * std::sqrt(0.1);
    const ModelParams p{0.1, 1.0, 0.9 * g_s, 0.02, 0.0};
    const ConvergedGround ground = converge_ground(p, trunc16(), 2);
    const double x_s = std::sqrt(1.0 / 0.2);
    const PositionWave coarse = position_wave(ground, -4 * x_s, 4 * x_s, 801);
    const PositionWave fine = position_wave(ground, -4 * x_s, 4 * x_s, 1601);
    CHECK(std::abs(coarse.weight_up - fine.weight_up) < 1e-8);
    CHECK(std::abs(coarse.weight_down - fine.weight_down) < 1e-8);
}

TEST_CASE("too-narrow grids are rejected") {
    const double g_s = 0.5 * std::sqrt(0.1);
    const ModelParams p{0.1, 1.0, 2.0 * g_s, 0.0, 0.0};
    const ConvergedGround ground = converge_ground(p, trunc16(), 2);
    CHECK_THROWS_AS(position_wave(ground, -1.0, 1.0, 101), GridTooNarrow);
}

TEST_SUITE_END();
