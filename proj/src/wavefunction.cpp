#include "nlrabi/wavefunction.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace nlrabi {

Eigen::VectorXd hermite_basis(int n_max, double x) {
    if (n_max < 1) throw DomainError("hermite_basis: n_max must be >= 1");
    Eigen::VectorXd phi(n_max);
    phi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    if (n_max == 1) return phi;
    phi[1] = std::sqrt(2.0) * x * phi[0];
    for (int n = 1; n + 1 < n_max; ++n) {
        phi[n + 1] = std::sqrt(2.0 / (n + 1)) * x * phi[n] -
                     std::sqrt(static_cast<double>(n) / (n + 1)) * phi[n - 1];
    }
    return phi;
}

PositionWave position_wave(const ConvergedGround& ground, double x_min, double x_max,
                           int n_points) {
    if (!ground.converged)
        throw DomainError("position_wave: ground bundle is not converged");
    if (!(x_min < x_max)) throw DomainError("position_wave: need x_min < x_max");
    if (n_points < 2) throw DomainError("position_wave: need n_points >= 2");

    const Eigen::Index n_c = ground.n_c_final;
    const Eigen::VectorXd& c = ground.eigen.vectors.col(0);

    PositionWave out;
    out.xs.resize(n_points);
    out.psi_up.resize(n_points);
    out.psi_down.resize(n_points);

    for (int i = 0; i < n_points; ++i) {
        const double x = x_min + (x_max - x_min) * static_cast<double>(i) / (n_points - 1);
        out.xs[i] = x;
        const Eigen::VectorXd phi = hermite_basis(static_cast<int>(n_c), x);
        double up = 0.0, down = 0.0;
        for (Eigen::Index n = 0; n < n_c; ++n) {
            up += c[2 * n] * phi[n];
            down += c[2 * n + 1] * phi[n];
        }
        out.psi_up[i] = up;
        out.psi_down[i] = down;
    }

    const double dx = (x_max - x_min) / (n_points - 1);
    const auto trapezoid_sq = [&](const Eigen::VectorXd& v) {
        double s = 0.5 * (v[0] * v[0] + v[n_points - 1] * v[n_points - 1]);
        for (int i = 1; i + 1 < n_points; ++i) s += v[i] * v[i];
        return s * dx;
    };
    out.weight_up = trapezoid_sq(out.psi_up);
    out.weight_down = trapezoid_sq(out.psi_down);

    const double g_s = 0.5 * std::sqrt(ground.params.omega * ground.params.big_omega);
    out.x_s = std::sqrt(2.0) * g_s / ground.params.omega;

    const double total = out.weight_up + out.weight_down;
    if (std::abs(total - 1.0) > 1e-6) {
        std::ostringstream os;
        os << "position_wave: total weight " << total << " misses 1 by more than 1e-6; "
           << "grid [" << x_min << ", " << x_max << "] does not span the state";
        throw GridTooNarrow(os.str());
    }
    return out;
}

PositionWave position_wave_default(const ConvergedGround& ground) {
    const ModelParams& p = ground.params;
    const double g_s = 0.5 * std::sqrt(p.omega * p.big_omega);
    const double x_s = std::sqrt(2.0) * g_s / p.omega;

    // Symmetry-broken branches sit near the semiclassical minima, displaced
    // and widened by the two-photon softening omega - 2|g2|; the window must
    // hold the branch center plus its squeezed width or the normalization
    // check rejects the grid.
    const double soft = p.omega - 2.0 * std::abs(p.g2);
    const double x_disp = std::sqrt(2.0) * std::abs(p.g1) / soft;
    const double sigma =
        std::sqrt(0.5 * std::sqrt((p.omega + 2.0 * std::abs(p.g2)) / soft));
    const double half = std::max(4.0 * x_s, x_disp + 6.0 * sigma + 2.0);

    const double dx = 8.0 * x_s / 800.0;  // keep the 801-point density of the 4 x_s window
    const int n_points = 1 + static_cast<int>(std::ceil(2.0 * half / dx));
    return position_wave(ground, -half, half, n_points);
}

}  // namespace nlrabi
