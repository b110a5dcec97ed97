#include "nlrabi/spectra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

namespace nlrabi {

namespace {

// Deterministic pseudo-random unit vector (splitmix64). No std::*_distribution:
// those are implementation-defined, and repeated runs must be bit-identical.
Eigen::VectorXd deterministic_unit_vector(Eigen::Index dim, std::uint64_t salt) {
    Eigen::VectorXd v(dim);
    std::uint64_t x = salt * 0xd1342543de82ef95ULL;
    for (Eigen::Index i = 0; i < dim; ++i) {
        x += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z = z ^ (z >> 31);
        v[i] = static_cast<double>(z >> 11) * 0x1.0p-53 - 0.5;
    }
    v.normalize();
    return v;
}

// Entry of largest magnitude (lowest index wins ties) is made positive.
void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
    Eigen::Index imax = 0;
    double amax = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        if (a > amax) {
            amax = a;
            imax = i;
        }
    }
    if (v[imax] < 0.0) v = -v;
}

// Gershgorin lower bound on the spectrum of a banded symmetric operator.
double gershgorin_lower_bound(const SymmetricOperator& h) {
    const Eigen::Index dim = h.dim();
    Eigen::VectorXd offsum = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
    for (const auto& [k, v] : h.bands()) {
        const Eigen::Index len = dim - k;
        if (k == 0) {
            diag = v;
        } else {
            offsum.head(len) += v.cwiseAbs();
            offsum.tail(len) += v.cwiseAbs();
        }
    }
    return (diag - offsum).minCoeff();
}

EigenSet take_lowest(const EigenSet& full, Eigen::Index k) {
    EigenSet out;
    out.values = full.values.head(k);
    out.vectors = full.vectors.leftCols(k);
    out.n_c = full.n_c;
    return out;
}

}  // namespace

EigenSet eigs_full(const SymmetricOperator& h, Eigen::Index dense_cap) {
    if (h.dim() > dense_cap) {
        std::ostringstream os;
        os << "eigs_full: dim " << h.dim() << " exceeds dense cap " << dense_cap;
        throw DimensionTooLarge(os.str());
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.dense());
    if (es.info() != Eigen::Success)
        throw NoConvergence("eigs_full: dense eigensolver failed", 0,
                            std::numeric_limits<double>::quiet_NaN());

    EigenSet out;
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors();
    out.n_c = h.dim() / 2;
    for (Eigen::Index i = 0; i < out.vectors.cols(); ++i) fix_sign(out.vectors.col(i));
    return out;
}

EigenSet eigs_lowest(const SymmetricOperator& h, Eigen::Index k) {
    const Eigen::Index dim = h.dim();
    if (k < 1 || k > dim / 4) throw DomainError("eigs_lowest: need 1 <= k <= dim/4");

    const double scale = std::max(h.inf_norm(), std::numeric_limits<double>::min());
    const double res_tol = kResidualRtol * scale;

    // Shift strictly below the spectrum so H - sigma I is positive definite;
    // the lowest eigenvalues of H become the dominant ones of the inverse.
    const double sigma = gershgorin_lower_bound(h) - 0.01 * scale;

    Eigen::SparseMatrix<double> shifted = h.sparse();
    for (Eigen::Index i = 0; i < dim; ++i) shifted.coeffRef(i, i) -= sigma;
    shifted.makeCompressed();
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(shifted);
    if (ldlt.info() != Eigen::Success)
        throw NoConvergence("eigs_lowest: shifted factorization failed", 0,
                            std::numeric_limits<double>::quiet_NaN());

    const Eigen::Index m_max = std::min<Eigen::Index>(dim, std::max<Eigen::Index>(8 * k + 80, 160));
    Eigen::MatrixXd basis(dim, m_max);
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m_max);
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(m_max);

    basis.col(0) = deterministic_unit_vector(dim, 1);
    int fresh_injections = 0;
    double best_res = std::numeric_limits<double>::infinity();

    const Eigen::Index check_min = std::min<Eigen::Index>(std::max<Eigen::Index>(2 * k, 8), m_max);

    for (Eigen::Index j = 0; j < m_max; ++j) {
        Eigen::VectorXd w = ldlt.solve(basis.col(j));
        alpha[j] = basis.col(j).dot(w);
        // Full reorthogonalization, twice.
        const auto v_used = basis.leftCols(j + 1);
        w -= v_used * (v_used.transpose() * w);
        w -= v_used * (v_used.transpose() * w);
        const double b = w.norm();

        const Eigen::Index m = j + 1;
        const bool at_end = (m == m_max) || (m == dim);
        if ((m >= check_min && m % 4 == 0) || at_end || dim <= 16) {
            // Ritz pairs of the inverse operator; largest theta <-> lowest E.
            Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
            for (Eigen::Index i = 0; i < m; ++i) {
                tri(i, i) = alpha[i];
                if (i + 1 < m) {
                    tri(i, i + 1) = beta[i];
                    tri(i + 1, i) = beta[i];
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tes(tri);
            if (tes.info() == Eigen::Success && m >= k) {
                Eigen::MatrixXd ritz = basis.leftCols(m) * tes.eigenvectors().rightCols(k);
                Eigen::VectorXd vals(k);
                double worst = 0.0;
                for (Eigen::Index c = 0; c < k; ++c) {
                    ritz.col(c).normalize();
                    vals[c] = ritz.col(c).dot(h.apply(ritz.col(c)));
                    const double res = (h.apply(ritz.col(c)) - vals[c] * ritz.col(c)).norm();
                    worst = std::max(worst, res);
                }
                best_res = std::min(best_res, worst);
                if (worst <= res_tol) {
                    // Columns come out with theta ascending, i.e. E descending.
                    EigenSet out;
                    out.values.resize(k);
                    out.vectors.resize(dim, k);
                    for (Eigen::Index c = 0; c < k; ++c) {
                        out.values[c] = vals[k - 1 - c];
                        out.vectors.col(c) = ritz.col(k - 1 - c);
                        fix_sign(out.vectors.col(c));
                    }
                    out.n_c = dim / 2;
                    return out;
                }
            }
            if (at_end) break;
        }

        if (b <= 1e-13) {
            // Krylov space exhausted; continue with a fresh orthogonal direction.
            Eigen::VectorXd f = deterministic_unit_vector(dim, 2 + fresh_injections++);
            f -= v_used * (v_used.transpose() * f);
            f -= v_used * (v_used.transpose() * f);
            const double fb = f.norm();
            if (fb < 1e-10 || m >= std::min(m_max, dim)) break;
            beta[j] = 0.0;
            if (m < m_max) basis.col(m) = f / fb;
        } else {
            beta[j] = b;
            if (m < m_max) basis.col(m) = w / b;
        }
    }

    std::ostringstream os;
    os << "eigs_lowest: residuals stalled at " << best_res << " (target " << res_tol
       << ") after " << m_max << " Lanczos steps, dim " << dim;
    throw NoConvergence(os.str(), static_cast<int>(m_max), best_res);
}

int default_n_start(const ModelParams& p, int n_max) {
    validate_params(p);
    const double ratio = std::abs(p.g2) / (0.5 * p.omega);
    const double suggested = 32.0 * std::ceil(1.0 / (1.0 - ratio));
    if (suggested > static_cast<double>(n_max)) return n_max;
    return std::max(4, static_cast<int>(suggested));
}

ConvergedGround converge_ground(const ModelParams& p, const TruncationSpec& t, Eigen::Index k) {
    validate_params(p);
    validate_truncation(t);
    if (k < 1) throw DomainError("converge_ground: k must be >= 1");
    k = std::max<Eigen::Index>(k, 2);  // convergence is judged on (E0, gap)

    TruncationSpec ts = t;
    if (ts.n_start == 0) ts.n_start = default_n_start(p, ts.n_max);

    int n_c = std::max<int>(ts.n_start, static_cast<int>(2 * k));
    if (n_c > ts.n_max) n_c = ts.n_max;

    const auto eval = [&](int n) -> EigenSet {
        const SymmetricOperator h = build_hamiltonian(p, n);
        if (h.dim() <= 256) return take_lowest(eigs_full(h, 256), k);
        return eigs_lowest(h, k);
    };

    ConvergedGround out;
    out.params = p;

    EigenSet prev = eval(n_c);
    out.history.push_back({n_c, prev.values[0], prev.values[1] - prev.values[0]});

    while (true) {
        if (n_c >= ts.n_max) {
            out.eigen = std::move(prev);
            out.n_c_final = n_c;
            out.converged = false;
            std::ostringstream os;
            os << "converge_ground: unconverged at n_max = " << ts.n_max << " (rtol " << ts.rtol
               << ", " << out.history.size() << " rounds)";
            throw TruncationExhausted(os.str(), out);
        }
        const int n_next =
            std::min<int>(ts.n_max, static_cast<int>(std::ceil(n_c * ts.growth)));
        EigenSet cur = eval(n_next);
        const double e0 = cur.values[0];
        const double gap = cur.values[1] - cur.values[0];
        out.history.push_back({n_next, e0, gap});

        const double de0 = std::abs(e0 - prev.values[0]) / std::max(std::abs(e0), p.omega);
        const double dgap = std::abs(gap - (prev.values[1] - prev.values[0])) /
                            std::max(gap, 1e-14 * p.omega);
        if (de0 < ts.rtol && dgap < ts.rtol) {
            out.eigen = std::move(cur);
            out.n_c_final = n_next;
            out.converged = true;
            return out;
        }
        prev = std::move(cur);
        n_c = n_next;
    }
}

}  // namespace nlrabi
