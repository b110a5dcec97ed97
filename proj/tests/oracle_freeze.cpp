// Regenerates the frozen regression numbers quoted in the tests, via the
// independent dense-oracle routes where those exist. Not registered with
// ctest; run manually when the frozen values need re-deriving.
#include <iostream>

#include "nlrabi/criticality.hpp"
#include "nlrabi/sweep.hpp"
#include "nlrabi/wavefunction.hpp"
#include "oracle.hpp"

using namespace nlrabi;

int main() {
    std::cout.precision(12);
    const double g_s = 0.15811388300841897;
    const double g_t = 0.05;

    {
        // fine dense scan of the omega = 0.1, g2 = 0 QFI curve (oracle route)
        double best_q = 0.0, best_x = 0.0;
        for (int i = 0; i <= 120; ++i) {
            const double g1 = (0.5 + 1.5 * i / 120.0) * g_s;
            const double q = oracle::qfi_sum(oracle::dense_hamiltonian(0.1, 1.0, g1, 0, 0, 220),
                                             oracle::dense_generator(1.0, 220, true));
            if (q > best_q) {
                best_q = q;
                best_x = g1;
            }
        }
        std::cout << "fig1a omega=0.1 g2=0 oracle peak: qfi " << best_q << " at g1 "
                  << best_x << " = " << best_x / g_s << " g_s\n";
    }

    {
        // near-degenerate linear point: upper bound on the gap (oracle route)
        const double d = oracle::gap(oracle::dense_hamiltonian(0.01, 1.0, 1.3 * 0.05, 0, 0, 768));
        std::cout << "omega=0.01 g1=1.3gs dense-oracle gap: " << d << " (gap/omega "
                  << d / 0.01 << ")\n";
    }

    TruncationSpec t;
    {
        // converged cutoff at the g2 = 0.8 g_t dip (production policy)
        const ModelParams p{0.1, 1.0, 0.6 * g_s, 0.8 * g_t, 0.0};
        const ConvergedGround g = converge_ground(p, t, 2);
        std::cout << "dip point: n_start " << g.history.front().n_c << ", n_c_final "
                  << g.n_c_final << ", E0 " << g.e0() << ", gap " << g.gap() << "\n";
    }

    {
        // weight transfer just above the transition (Fock-norm oracle)
        const ModelParams p{0.1, 1.0, 0.7 * g_s, 0.75 * g_t, 0.0};
        const auto s = oracle::dense_spectrum(
            oracle::dense_hamiltonian(p.omega, p.big_omega, p.g1, p.g2, p.eps, 300));
        double down = 0.0;
        for (int n = 0; n < 300; ++n) down += s.vectors(2 * n + 1, 0) * s.vectors(2 * n + 1, 0);
        std::cout << "weight_down oracle at g1=0.7gs, g2=0.75gt: " << down << "\n";
        const PositionWave wave = position_wave_default(converge_ground(p, t, 2));
        std::cout << "weight_down production: " << wave.weight_down << "\n";
    }

    {
        // displaced-state peak position vs the semiclassical displacement
        const ModelParams p{0.1, 1.0, 2.0 * g_s, 0.0, 0.0};
        const PositionWave wave = position_wave_default(converge_ground(p, t, 2));
        Eigen::Index imax = 0;
        wave.psi_down.cwiseAbs().maxCoeff(&imax);
        const double x0 =
            std::sqrt(2.0) * p.g1 * std::sqrt(1.0 - std::pow(g_s / p.g1, 4)) / 0.1;
        std::cout << "displaced peak x " << wave.xs[imax] << " vs semiclassical " << x0 << "\n";
    }

    {
        // preparation times at the QFI peaks (production route, tight quadrature)
        GapCache cache;
        const ModelParams lin{0.1, 1.0, 0.0, 0.0, 0.0};
        const ModelParams nl{0.1, 1.0, 0.0, 0.8 * g_t, 0.0};
        const PeakResult peak_lin = locate_qfi_peak(lin, ParameterId::g1_over_bigomega,
                                                    0.3 * g_s, 2.2 * g_s, 1e-3 * g_s, t);
        const PeakResult peak_nl = locate_qfi_peak(nl, ParameterId::g1_over_bigomega,
                                                   0.3 * g_s, 2.2 * g_s, 1e-3 * g_s, t);
        std::cout << "peak linear: g_m " << peak_lin.g_m << " (" << peak_lin.g_m / g_s
                  << " g_s), qfi " << peak_lin.qfi_max << "\n";
        std::cout << "peak nonlinear: g_m " << peak_nl.g_m << " (" << peak_nl.g_m / g_s
                  << " g_s), qfi " << peak_nl.qfi_max << "\n";
        const PrepTimeResult t_lin = prep_time(lin, peak_lin.g_m, t, 1e-8, &cache);
        const PrepTimeResult t_nl = prep_time(nl, peak_nl.g_m, t, 1e-8, &cache);
        std::cout << "T(g_m) linear: " << t_lin.value << " (err " << t_lin.quad_error
                  << ", evals " << t_lin.evaluations.size() << ")\n";
        std::cout << "T(g_m) nonlinear: " << t_nl.value << " (err " << t_nl.quad_error
                  << ", evals " << t_nl.evaluations.size() << ")\n";
    }

    return 0;
}
