#ifndef NLRABI_WAVEFUNCTION_HPP
#define NLRABI_WAVEFUNCTION_HPP

#include "nlrabi/spectra.hpp"

namespace nlrabi {

// Ground state projected on position space, one real amplitude per spin
// component. Positions are dimensionless (oscillator-length units); x_s =
// sqrt(2) g_s / omega is the displacement scale of the symmetry-broken
// branches.
struct PositionWave {
    Eigen::VectorXd xs;
    Eigen::VectorXd psi_up;
    Eigen::VectorXd psi_down;
    double x_s = 0.0;
    double weight_up = 0.0;    // quadrature of psi_up^2
    double weight_down = 0.0;
};

// Orthonormal oscillator eigenfunctions phi_0(x)..phi_{n_max-1}(x) via the
// stable recursion phi_{n+1} = sqrt(2/(n+1)) x phi_n - sqrt(n/(n+1)) phi_{n-1}.
// Underflow to 0 at large |x| is allowed.
Eigen::VectorXd hermite_basis(int n_max, double x);

// psi_s(x) = sum_n c_{n,s} phi_n(x) on a uniform grid. Throws GridTooNarrow
// when the total weight misses 1 by more than 1e-6 (grid does not span the
// state).
PositionWave position_wave(const ConvergedGround& ground, double x_min, double x_max,
                           int n_points);

// Default grid: [-4 x_s, 4 x_s] at 801 points, widened (same spacing) when
// the semiclassical branch displacement or the two-photon squeezing of the
// state would spill past it.
PositionWave position_wave_default(const ConvergedGround& ground);

}  // namespace nlrabi

#endif
