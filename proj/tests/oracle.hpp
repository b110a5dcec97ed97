// Independent brute-force oracles for the dual-route checks. This support
// code deliberately rebuilds matrices element by element and calls raw Eigen
// solvers, avoiding nlrabi::SymmetricOperator, the Lanczos path, and the
// truncation controller, so that a bug in those cannot hide here.
#ifndef NLRABI_TESTS_ORACLE_HPP
#define NLRABI_TESTS_ORACLE_HPP

#include <Eigen/Dense>
#include <cmath>

namespace oracle {

inline Eigen::MatrixXd dense_hamiltonian(double omega, double big_omega, double g1, double g2,
                                         double eps, int n_c) {
    const int dim = 2 * n_c;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 0; n < n_c; ++n) {
        for (int t = 0; t < 2; ++t) {
            const double s = t == 0 ? 1.0 : -1.0;
            const int i = 2 * n + t;
            h(i, i) = omega * n - s * eps;
            if (n + 1 < n_c) {
                const int j = 2 * (n + 1) + t;
                h(i, j) = h(j, i) = s * g1 * std::sqrt(n + 1.0);
            }
            if (n + 2 < n_c) {
                const int j = 2 * (n + 2) + t;
                h(i, j) = h(j, i) = s * g2 * std::sqrt(n + 1.0) * std::sqrt(n + 2.0);
            }
        }
        h(2 * n, 2 * n + 1) = h(2 * n + 1, 2 * n) = 0.5 * big_omega;
    }
    return h;
}

inline Eigen::MatrixXd dense_generator(double big_omega, int n_c, bool wrt_g1) {
    const int dim = 2 * n_c;
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dim, dim);
    if (wrt_g1) {
        for (int n = 0; n + 1 < n_c; ++n)
            for (int t = 0; t < 2; ++t) {
                const double s = t == 0 ? 1.0 : -1.0;
                const int i = 2 * n + t, j = 2 * (n + 1) + t;
                g(i, j) = g(j, i) = s * big_omega * std::sqrt(n + 1.0);
            }
    } else {
        for (int n = 0; n < n_c; ++n) {
            g(2 * n, 2 * n) = -big_omega;
            g(2 * n + 1, 2 * n + 1) = big_omega;
        }
    }
    return g;
}

struct Spectrum {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};

inline Spectrum dense_spectrum(const Eigen::MatrixXd& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    return {es.eigenvalues(), es.eigenvectors()};
}

inline double gap(const Eigen::MatrixXd& h) {
    const Eigen::VectorXd w = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h)
                                  .eigenvalues();
    return w[1] - w[0];
}

// Full-spectrum perturbative QFI, 4 sum |<n|G|0>|^2 / (E_n - E_0)^2.
inline double qfi_sum(const Eigen::MatrixXd& h, const Eigen::MatrixXd& g) {
    const Spectrum s = dense_spectrum(h);
    const Eigen::VectorXd amps = s.vectors.transpose() * (g * s.vectors.col(0));
    double sum = 0.0;
    for (Eigen::Index n = 1; n < amps.size(); ++n) {
        const double d = s.values[n] - s.values[0];
        sum += (amps[n] / d) * (amps[n] / d);
    }
    return 4.0 * sum;
}

}  // namespace oracle

#endif
