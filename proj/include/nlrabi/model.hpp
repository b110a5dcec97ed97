#ifndef NLRABI_MODEL_HPP
#define NLRABI_MODEL_HPP

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <map>

#include "nlrabi/errors.hpp"

namespace nlrabi {

// The five Hamiltonian energies. All share one arbitrary unit; only ratios
// are physical. The CLI defaults big_omega = 1.
struct ModelParams {
    double omega = 0.1;      // mode frequency, > 0
    double big_omega = 1.0;  // qubit splitting, > 0
    double g1 = 0.0;         // linear coupling
    double g2 = 0.0;         // two-photon coupling, |g2| < omega/2
    double eps = 0.0;        // spin bias

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// Fock-space cutoff policy for the truncation-convergence controller.
// n_start == 0 means "auto": 32 * ceil(1/(1 - |g2|/g_t)) capped at n_max.
struct TruncationSpec {
    int n_start = 0;
    int n_max = 2048;
    double growth = 2.0;
    double rtol = 1e-8;

    friend bool operator==(const TruncationSpec&, const TruncationSpec&) = default;
};

// Parameters the QFI can be taken with respect to. The dimensionless
// estimation parameter is lambda = g1/big_omega or eps/big_omega, with
// big_omega held fixed.
enum class ParameterId { g1_over_bigomega, eps_over_bigomega };

// Real symmetric operator on the truncated Fock (x) spin basis, stored as
// upper diagonals. Basis index = 2n + (spin up ? 0 : 1), n in [0, n_c),
// spin quantized along sigma_z. Symmetry is exact by construction: only
// the upper triangle is stored.
class SymmetricOperator {
  public:
    explicit SymmetricOperator(Eigen::Index dim);

    Eigen::Index dim() const { return dim_; }

    // k-th superdiagonal (k >= 0), length dim - k. Created zero-filled on
    // first access.
    Eigen::VectorXd& band(Eigen::Index k);
    const Eigen::VectorXd& band(Eigen::Index k) const;
    bool has_band(Eigen::Index k) const { return bands_.count(k) > 0; }

    // Symmetric element lookup (zero off the stored bands).
    double entry(Eigen::Index i, Eigen::Index j) const;

    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
    Eigen::MatrixXd dense() const;
    Eigen::SparseMatrix<double> sparse() const;

    // Infinity norm (max absolute row sum); the residual and degeneracy
    // thresholds are relative to this.
    double inf_norm() const;

    Eigen::Index nonzero_count() const;

    const std::map<Eigen::Index, Eigen::VectorXd>& bands() const { return bands_; }

  private:
    Eigen::Index dim_;
    std::map<Eigen::Index, Eigen::VectorXd> bands_;
};

// Throws CollapseRegime or NonPositiveFrequency if the ModelParams
// invariants fail; |g2| == omega/2 is rejected (truncated results do not
// converge at the collapse point).
void validate_params(const ModelParams& p);

// Throws DomainError if the TruncationSpec invariants fail (n_start == 0 is
// allowed and means "auto").
void validate_truncation(const TruncationSpec& t);

// Hamiltonian in the |n> (x) |s> basis, dim = 2 n_c. Nonzero elements, with
// s = +1 (up) / -1 (down):
//   <n,s|H|n,s>    = omega n - s eps
//   <n+1,s|H|n,s>  = s g1 sqrt(n+1)
//   <n+2,s|H|n,s>  = s g2 sqrt((n+1)(n+2))
//   <n,up|H|n,down> = big_omega / 2
SymmetricOperator build_hamiltonian(const ModelParams& p, Eigen::Index n_c);

// dH/dlambda at fixed big_omega: big_omega sigma_z (a^dag + a) for
// lambda = g1/big_omega, -big_omega sigma_z for lambda = eps/big_omega.
SymmetricOperator build_generator(ParameterId which, const ModelParams& p, Eigen::Index n_c);

// Value of the estimation parameter lambda for the given params.
double lambda_of(const ModelParams& p, ParameterId which);

// Params with the knob behind `which` set to lambda * big_omega.
ModelParams with_lambda(ModelParams p, ParameterId which, double lambda);

}  // namespace nlrabi

#endif
