#ifndef NLRABI_SPECTRA_HPP
#define NLRABI_SPECTRA_HPP

#include <vector>

#include "nlrabi/model.hpp"

namespace nlrabi {

// Sorted eigenpairs of a SymmetricOperator. Vectors are the columns of
// `vectors`, orthonormal, with the deterministic sign convention: each
// vector's entry of largest magnitude (lowest index wins ties) is positive.
struct EigenSet {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // column i pairs with values[i]
    Eigen::Index n_c = 0;     // Fock cutoff used (dim / 2)
};

struct RefinementRound {
    Eigen::Index n_c;
    double e0;
    double gap;
};

// Ground-state bundle produced by the truncation controller.
struct ConvergedGround {
    ModelParams params;
    EigenSet eigen;  // lowest k pairs at n_c_final
    Eigen::Index n_c_final = 0;
    bool converged = false;
    std::vector<RefinementRound> history;

    double e0() const { return eigen.values[0]; }
    double gap() const { return eigen.values[1] - eigen.values[0]; }
};

struct TruncationExhausted : Error {
    TruncationExhausted(const std::string& msg, ConvergedGround partial)
        : Error(ErrorCategory::numerical, msg), partial(std::move(partial)) {}
    ConvergedGround partial;  // converged == false, history filled
};

// Relative residual target the solvers aim for; the EigenSet contract is
// ||H v - E v|| <= 1e-9 * inf_norm(H), one order looser.
inline constexpr double kResidualRtol = 1e-10;

// Default cap on the dense backend (matrix dimension, = 2 n_c).
inline constexpr Eigen::Index kDenseCapDefault = 4096;

// All eigenpairs via the dense backend. Throws DimensionTooLarge above the
// cap.
EigenSet eigs_full(const SymmetricOperator& h, Eigen::Index dense_cap = kDenseCapDefault);

// Lowest k eigenpairs via shift-invert Lanczos with full
// reorthogonalization. Requires 1 <= k <= dim/4. Throws NoConvergence with
// iteration diagnostics if residuals stall.
EigenSet eigs_lowest(const SymmetricOperator& h, Eigen::Index k);

// Auto cutoff: 32 * ceil(1/(1 - |g2|/g_t)) capped at n_max. The cutoff
// requirement grows as the collapse point |g2| -> g_t is approached.
int default_n_start(const ModelParams& p, int n_max);

// Refines the cutoff n_start, n_start*growth, ... until E0 and the gap are
// stable to t.rtol between consecutive rounds:
//   |dE0|/max(|E0|, omega) < rtol  and  |dGap|/max(gap, 1e-14*omega) < rtol.
// Throws TruncationExhausted (carrying the partial bundle) if n_max is
// reached unconverged.
ConvergedGround converge_ground(const ModelParams& p, const TruncationSpec& t,
                                Eigen::Index k = 2);

}  // namespace nlrabi

#endif
