#include "nlrabi/model.hpp"

#include <cmath>
#include <sstream>

namespace nlrabi {

SymmetricOperator::SymmetricOperator(Eigen::Index dim) : dim_(dim) {
    if (dim < 1) throw DomainError("SymmetricOperator: dim must be positive");
}

Eigen::VectorXd& SymmetricOperator::band(Eigen::Index k) {
    if (k < 0 || k >= dim_) throw DomainError("SymmetricOperator: band offset out of range");
    auto it = bands_.find(k);
    if (it == bands_.end())
        it = bands_.emplace(k, Eigen::VectorXd::Zero(dim_ - k)).first;
    return it->second;
}

const Eigen::VectorXd& SymmetricOperator::band(Eigen::Index k) const {
    return bands_.at(k);
}

double SymmetricOperator::entry(Eigen::Index i, Eigen::Index j) const {
    const Eigen::Index lo = std::min(i, j), k = std::abs(i - j);
    auto it = bands_.find(k);
    if (it == bands_.end()) return 0.0;
    return it->second[lo];
}

Eigen::VectorXd SymmetricOperator::apply(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(dim_);
    for (const auto& [k, v] : bands_) {
        const Eigen::Index len = dim_ - k;
        if (k == 0) {
            y.array() += v.array() * x.array();
        } else {
            y.head(len).array() += v.array() * x.tail(len).array();
            y.tail(len).array() += v.array() * x.head(len).array();
        }
    }
    return y;
}

Eigen::MatrixXd SymmetricOperator::dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_, dim_);
    for (const auto& [k, v] : bands_) {
        for (Eigen::Index i = 0; i < dim_ - k; ++i) {
            m(i, i + k) = v[i];
            m(i + k, i) = v[i];
        }
    }
    return m;
}

Eigen::SparseMatrix<double> SymmetricOperator::sparse() const {
    std::vector<Eigen::Triplet<double>> trips;
    for (const auto& [k, v] : bands_)
        for (Eigen::Index i = 0; i < dim_ - k; ++i)
            if (v[i] != 0.0 || k == 0) {
                trips.emplace_back(i, i + k, v[i]);
                if (k != 0) trips.emplace_back(i + k, i, v[i]);
            }
    Eigen::SparseMatrix<double> m(dim_, dim_);
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
}

double SymmetricOperator::inf_norm() const {
    Eigen::VectorXd rowsum = Eigen::VectorXd::Zero(dim_);
    for (const auto& [k, v] : bands_) {
        const Eigen::Index len = dim_ - k;
        if (k == 0) {
            rowsum += v.cwiseAbs();
        } else {
            rowsum.head(len) += v.cwiseAbs();
            rowsum.tail(len) += v.cwiseAbs();
        }
    }
    return rowsum.size() > 0 ? rowsum.maxCoeff() : 0.0;
}

Eigen::Index SymmetricOperator::nonzero_count() const {
    Eigen::Index n = 0;
    for (const auto& [k, v] : bands_)
        for (Eigen::Index i = 0; i < v.size(); ++i)
            if (v[i] != 0.0) n += (k == 0) ? 1 : 2;
    return n;
}

void validate_params(const ModelParams& p) {
    if (!(p.omega > 0.0) || !(p.big_omega > 0.0)) {
        std::ostringstream os;
        os << "frequencies must be positive: omega = " << p.omega
           << ", big_omega = " << p.big_omega;
        throw NonPositiveFrequency(os.str());
    }
    if (std::abs(p.g2) >= 0.5 * p.omega) {
        std::ostringstream os;
        os << "|g2| = " << std::abs(p.g2) << " >= omega/2 = " << 0.5 * p.omega
           << ": spectral collapse, Hamiltonian unbounded below";
        throw CollapseRegime(os.str());
    }
}

void validate_truncation(const TruncationSpec& t) {
    if (t.n_start != 0 && t.n_start < 4)
        throw DomainError("TruncationSpec: n_start must be >= 4 (or 0 for auto)");
    if (t.n_max < std::max(t.n_start, 4))
        throw DomainError("TruncationSpec: n_max must be >= n_start");
    if (!(t.growth > 1.0)) throw DomainError("TruncationSpec: growth must be > 1");
    if (!(t.rtol > 0.0)) throw DomainError("TruncationSpec: rtol must be > 0");
}

SymmetricOperator build_hamiltonian(const ModelParams& p, Eigen::Index n_c) {
    validate_params(p);
    if (n_c < 2) throw DomainError("build_hamiltonian: n_c must be >= 2");

    const Eigen::Index dim = 2 * n_c;
    SymmetricOperator h(dim);

    Eigen::VectorXd& diag = h.band(0);
    Eigen::VectorXd& flip = h.band(1);  // sigma_x block, even rows only
    for (Eigen::Index n = 0; n < n_c; ++n) {
        for (Eigen::Index t = 0; t < 2; ++t) {
            const double s = (t == 0) ? 1.0 : -1.0;
            diag[2 * n + t] = p.omega * static_cast<double>(n) - s * p.eps;
        }
        flip[2 * n] = 0.5 * p.big_omega;
    }

    Eigen::VectorXd& lin = h.band(2);  // a^dag + a within each spin block
    for (Eigen::Index i = 0; i + 2 < dim; ++i) {
        const double s = (i % 2 == 0) ? 1.0 : -1.0;
        lin[i] = s * p.g1 * std::sqrt(static_cast<double>(i / 2 + 1));
    }

    if (dim > 4) {  // two-photon band has no room below n_c = 3
        Eigen::VectorXd& quad = h.band(4);  // (a^dag)^2 + a^2
        for (Eigen::Index i = 0; i + 4 < dim; ++i) {
            const double s = (i % 2 == 0) ? 1.0 : -1.0;
            const Eigen::Index n = i / 2;
            quad[i] = s * p.g2 * std::sqrt(static_cast<double>((n + 1) * (n + 2)));
        }
    }
    return h;
}

SymmetricOperator build_generator(ParameterId which, const ModelParams& p, Eigen::Index n_c) {
    if (n_c < 2) throw DomainError("build_generator: n_c must be >= 2");
    const Eigen::Index dim = 2 * n_c;
    SymmetricOperator g(dim);

    switch (which) {
        case ParameterId::g1_over_bigomega: {
            Eigen::VectorXd& lin = g.band(2);
            for (Eigen::Index n = 0; n + 1 < n_c; ++n) {
                const double amp = p.big_omega * std::sqrt(static_cast<double>(n + 1));
                lin[2 * n] = amp;       // spin up, s = +1
                lin[2 * n + 1] = -amp;  // spin down
            }
            break;
        }
        case ParameterId::eps_over_bigomega: {
            Eigen::VectorXd& diag = g.band(0);
            for (Eigen::Index n = 0; n < n_c; ++n) {
                diag[2 * n] = -p.big_omega;
                diag[2 * n + 1] = p.big_omega;
            }
            break;
        }
        default:
            throw UnsupportedParameter("build_generator: unsupported parameter id");
    }
    return g;
}

double lambda_of(const ModelParams& p, ParameterId which) {
    switch (which) {
        case ParameterId::g1_over_bigomega:
            return p.g1 / p.big_omega;
        case ParameterId::eps_over_bigomega:
            return p.eps / p.big_omega;
    }
    throw UnsupportedParameter("lambda_of: unsupported parameter id");
}

ModelParams with_lambda(ModelParams p, ParameterId which, double lambda) {
    switch (which) {
        case ParameterId::g1_over_bigomega:
            p.g1 = lambda * p.big_omega;
            return p;
        case ParameterId::eps_over_bigomega:
            p.eps = lambda * p.big_omega;
            return p;
    }
    throw UnsupportedParameter("with_lambda: unsupported parameter id");
}

}  // namespace nlrabi
