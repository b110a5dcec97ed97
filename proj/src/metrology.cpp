#include "nlrabi/metrology.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace nlrabi {

namespace {

// The EigenSet residual contract is 1e-9 * inf_norm(H); the ground state
// derivative is ill-defined once the gap sinks to 10x that.
double degenerate_gap_threshold(double h_inf_norm) { return 10.0 * 1e-9 * h_inf_norm; }

Eigen::VectorXd ground_vector_at(const ModelParams& p, Eigen::Index n_c) {
    const SymmetricOperator h = build_hamiltonian(p, n_c);
    if (h.dim() <= 256) return eigs_full(h, 256).vectors.col(0);
    return eigs_lowest(h, 1).vectors.col(0);
}

double relative_difference(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(b), 1e-12);
}

}  // namespace

QfiEstimate qfi_overlap(const ConvergedGround& ground, ParameterId which, double delta) {
    if (!(delta > 0.0)) throw DomainError("qfi_overlap: delta must be positive");

    const ModelParams& p = ground.params;
    const Eigen::Index n_c = ground.n_c_final;
    const double scale = build_hamiltonian(p, n_c).inf_norm();
    if (ground.gap() < degenerate_gap_threshold(scale)) {
        std::ostringstream os;
        os << "qfi_overlap: gap " << ground.gap() << " below degeneracy threshold "
           << degenerate_gap_threshold(scale) << "; ground-state derivative ill-defined";
        throw DegenerateGround(os.str());
    }

    const double lambda0 = lambda_of(p, which);
    const Eigen::VectorXd psi0 = ground.eigen.vectors.col(0);

    std::map<std::int64_t, Eigen::VectorXd> neighbor;  // keyed on offset/delta steps
    const auto psi_at_offset = [&](double off) -> const Eigen::VectorXd& {
        const std::int64_t key = std::llround(off / kMinOverlapStep * 16.0);
        auto it = neighbor.find(key);
        if (it == neighbor.end()) {
            const ModelParams q = with_lambda(p, which, lambda0 + off);
            validate_params(q);
            it = neighbor.emplace(key, ground_vector_at(q, n_c)).first;
        }
        return it->second;
    };

    // 1 - |<a|b>| = min_sign ||a -+ b||^2 / 2 for real unit vectors. The
    // difference norm keeps full relative precision where the plain dot
    // product would round 1 - |o| ~ I d^2/8 down into absolute-epsilon noise.
    const auto deficit = [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
        const double o = a.dot(b);
        return 0.5 * (o >= 0.0 ? (a - b).squaredNorm() : (a + b).squaredNorm());
    };

    // Symmetrized fidelity form, 4 [(1 - |<psi0|psi(+d)>|) + (1 - |<psi(-d)|psi0>|)] / d^2.
    const auto estimate = [&](double d) -> double {
        const double dp = deficit(psi0, psi_at_offset(d));
        const double dm = deficit(psi_at_offset(-d), psi0);
        return 4.0 * (dp + dm) / (d * d);
    };

    double d = delta;
    double at_step = estimate(d);
    double at_half = estimate(d / 2.0);
    bool step_converged = relative_difference(at_step, at_half) < 1e-3;
    while (!step_converged && d / 4.0 >= kMinOverlapStep) {
        d /= 2.0;
        at_step = at_half;
        at_half = estimate(d / 2.0);
        step_converged = relative_difference(at_step, at_half) < 1e-3;
    }

    const double richardson = (4.0 * at_half - at_step) / 3.0;

    QfiEstimate out;
    out.value = std::max(richardson, 0.0);
    out.lambda = lambda0;
    out.method = QfiMethod::overlap;
    out.step = d;
    out.n_c = n_c;
    out.diagnostics = QfiDiagnostics{at_step, at_half, richardson, step_converged};
    return out;
}

QfiEstimate qfi_overlap(const ModelParams& p, ParameterId which, double delta,
                        const TruncationSpec& t) {
    return qfi_overlap(converge_ground(p, t, 2), which, delta);
}

QfiEstimate qfi_sum_rule(const ConvergedGround& ground, ParameterId which,
                         Eigen::Index dense_cap) {
    const ModelParams& p = ground.params;
    const Eigen::Index n_c = ground.n_c_final;

    const SymmetricOperator h = build_hamiltonian(p, n_c);
    const EigenSet full = eigs_full(h, dense_cap);
    const double gap = full.values[1] - full.values[0];
    if (gap < degenerate_gap_threshold(h.inf_norm())) {
        std::ostringstream os;
        os << "qfi_sum_rule: gap " << gap << " below degeneracy threshold";
        throw DegenerateGround(os.str());
    }

    const SymmetricOperator gen = build_generator(which, p, n_c);
    const Eigen::VectorXd amps = full.vectors.transpose() * gen.apply(full.vectors.col(0));

    double sum = 0.0;
    for (Eigen::Index n = 1; n < amps.size(); ++n) {
        const double denom = full.values[n] - full.values[0];
        sum += (amps[n] / denom) * (amps[n] / denom);
    }

    QfiEstimate out;
    out.value = 4.0 * sum;
    out.lambda = lambda_of(p, which);
    out.method = QfiMethod::sum_rule;
    out.step = 0.0;
    out.n_c = n_c;
    return out;
}

QfiEstimate qfi_sum_rule(const ModelParams& p, ParameterId which, const TruncationSpec& t,
                         Eigen::Index dense_cap) {
    return qfi_sum_rule(converge_ground(p, t, 2), which, dense_cap);
}

double gap(const ModelParams& p, const TruncationSpec& t) {
    return converge_ground(p, t, 2).gap();
}

GapCache::Key GapCache::make_key(const ModelParams& p, std::int64_t lambda_key) {
    return Key{std::bit_cast<std::uint64_t>(p.omega), std::bit_cast<std::uint64_t>(p.big_omega),
               std::bit_cast<std::uint64_t>(p.g2), std::bit_cast<std::uint64_t>(p.eps),
               lambda_key};
}

std::optional<double> GapCache::lookup(const ModelParams& p, std::int64_t lambda_key) const {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto it = cache_.find(make_key(p, lambda_key));
    if (it == cache_.end()) return std::nullopt;
    return it->second;
}

void GapCache::insert(const ModelParams& p, std::int64_t lambda_key, double gap) {
    std::lock_guard<std::mutex> lock(mutex_);
    cache_[make_key(p, lambda_key)] = gap;  // last write wins
}

namespace {

struct QuadState {
    int evals = 0;
    int budget = 0;
    double value = 0.0;
    double err = 0.0;
};

}  // namespace

PrepTimeResult prep_time(const ModelParams& p, double lambda_end, const TruncationSpec& t,
                         double quad_rtol, GapCache* cache, int max_gap_evals) {
    if (lambda_end < 0.0) throw DomainError("prep_time: lambda_end must be >= 0");
    if (!(quad_rtol > 0.0)) throw DomainError("prep_time: quad_rtol must be positive");

    PrepTimeResult out;
    out.lambda_end = lambda_end;
    if (lambda_end == 0.0) return out;

    GapCache local;
    GapCache* memo = cache ? cache : &local;

    QuadState qs;
    qs.budget = max_gap_evals;
    std::map<std::int64_t, double> seen;  // records each sampled lambda once

    // Memoized integrand 1/gap(lambda); lambda quantized at 1e-12 so adaptive
    // subdivision reuses samples.
    const auto integrand = [&](double lam) -> double {
        const std::int64_t key = std::llround(lam * 1e12);
        double g;
        if (const auto hit = memo->lookup(p, key)) {
            g = *hit;
        } else {
            if (qs.evals >= qs.budget)
                throw QuadratureStalled("prep_time: gap evaluation budget exceeded "
                                        "(near-zero gap on the path?)",
                                        qs.evals);
            ++qs.evals;
            const ModelParams q = with_lambda(p, ParameterId::g1_over_bigomega, lam);
            g = converge_ground(q, t, 2).gap();
            memo->insert(p, key, g);
        }
        if (seen.emplace(key, g).second) out.evaluations.emplace_back(lam, g);
        if (!(g > 0.0) || !std::isfinite(g)) {
            std::ostringstream os;
            os << "prep_time: gap " << g << " at lambda " << lam << " not integrable";
            throw QuadratureStalled(os.str(), qs.evals);
        }
        return 1.0 / g;
    };

    const auto simpson = [](double a, double b, double fa, double fm, double fb) {
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    };

    const double fa0 = integrand(0.0);
    const double fm0 = integrand(lambda_end / 2.0);
    const double fb0 = integrand(lambda_end);
    const double s0 = simpson(0.0, lambda_end, fa0, fm0, fb0);
    const double atol0 = quad_rtol * std::abs(s0);

    // Depth-limited adaptive Simpson, processed left to right (deterministic
    // accumulation order).
    const std::function<void(double, double, double, double, double, double, double, int)>
        refine = [&](double a, double b, double fa, double fm, double fb, double s, double atol,
                     int depth) {
            const double m = 0.5 * (a + b);
            const double lm = 0.5 * (a + m);
            const double rm = 0.5 * (m + b);
            const double fl = integrand(lm);
            const double fr = integrand(rm);
            const double sl = simpson(a, m, fa, fl, fm);
            const double sr = simpson(m, b, fm, fr, fb);
            const double diff = sl + sr - s;
            if (depth <= 0 || std::abs(diff) <= 15.0 * atol) {
                qs.value += sl + sr + diff / 15.0;
                qs.err += std::abs(diff) / 15.0;
                return;
            }
            refine(a, m, fa, fl, fm, sl, 0.5 * atol, depth - 1);
            refine(m, b, fm, fr, fb, sr, 0.5 * atol, depth - 1);
        };
    refine(0.0, lambda_end, fa0, fm0, fb0, s0, atol0, 48);

    out.value = qs.value;
    out.quad_error = qs.err;
    return out;
}

}  // namespace nlrabi
