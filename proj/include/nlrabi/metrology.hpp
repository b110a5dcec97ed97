#ifndef NLRABI_METROLOGY_HPP
#define NLRABI_METROLOGY_HPP

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "nlrabi/spectra.hpp"

namespace nlrabi {

enum class QfiMethod { overlap, sum_rule };

struct QfiDiagnostics {
    double at_step;       // symmetrized estimate at the accepted step
    double at_half_step;  // same at step/2
    double richardson;    // (4 I(d/2) - I(d)) / 3
    bool step_converged;  // pair agreed to 1e-3 relative before the floor
};

struct QfiEstimate {
    double value = 0.0;   // clamped to >= 0
    double lambda = 0.0;  // g1/bigOmega or eps/bigOmega at the evaluation point
    QfiMethod method = QfiMethod::overlap;
    double step = 0.0;    // finite-difference delta (overlap method only)
    Eigen::Index n_c = 0;
    std::optional<QfiDiagnostics> diagnostics;
};

struct PrepTimeResult {
    double value = 0.0;  // lower bound T, in units of 1/energy
    double lambda_start = 0.0;
    double lambda_end = 0.0;
    double quad_error = 0.0;
    std::vector<std::pair<double, double>> evaluations;  // (lambda, gap)
};

// Default and floor for the overlap-method finite-difference step. The step
// is auto-halved while the Richardson pair disagrees by more than 1e-3
// relative; the floor keeps it above eigensolver noise.
inline constexpr double kDefaultOverlapStep = 1e-4;
inline constexpr double kMinOverlapStep = 1e-7;

// Ground states at lambda-d, lambda, lambda+d with matched n_c, then
// I = 8(1 - |<psi(lambda)|psi(lambda+d)>|)/d^2 symmetrized over the two
// one-sided overlaps, Richardson-extrapolated over (d, d/2). Throws
// DegenerateGround when the gap at lambda is below 10x the solver residual
// scale.
QfiEstimate qfi_overlap(const ModelParams& p, ParameterId which, double delta,
                        const TruncationSpec& t);
QfiEstimate qfi_overlap(const ConvergedGround& ground, ParameterId which, double delta);

// I = 4 sum_{n>0} |<n|dH/dlambda|0>|^2 / (E_n - E_0)^2 over the full
// truncated spectrum.
QfiEstimate qfi_sum_rule(const ModelParams& p, ParameterId which, const TruncationSpec& t,
                         Eigen::Index dense_cap = kDenseCapDefault);
QfiEstimate qfi_sum_rule(const ConvergedGround& ground, ParameterId which,
                         Eigen::Index dense_cap = kDenseCapDefault);

// Gap E1 - E0 at converged truncation.
double gap(const ModelParams& p, const TruncationSpec& t);

// Memo cache for gap evaluations along adiabatic paths; shared across
// concurrent prep_time calls (identical keys produce identical values, so
// last-write-wins inserts are safe). Keys cover the model parameters and the
// quantized path variable but not the truncation policy: do not share one
// cache across calls with different TruncationSpecs.
class GapCache {
  public:
    std::optional<double> lookup(const ModelParams& p, std::int64_t lambda_key) const;
    void insert(const ModelParams& p, std::int64_t lambda_key, double gap);

  private:
    struct Key {
        std::uint64_t omega, big_omega, g2, eps;
        std::int64_t lambda_q;
        auto operator<=>(const Key&) const = default;
    };
    static Key make_key(const ModelParams& p, std::int64_t lambda_key);

    mutable std::mutex mutex_;
    std::map<Key, double> cache_;
};

// Adaptive quadrature of 1/gap(lambda) over lambda = g1/bigOmega in
// [0, lambda_end] to relative error quad_rtol. Each gap evaluation runs the
// truncation controller and is memoized (lambda quantized at 1e-12).
// Throws QuadratureStalled when the evaluation budget is exceeded — the
// critical-slowing-down signal of a near-zero gap on the path.
PrepTimeResult prep_time(const ModelParams& p, double lambda_end, const TruncationSpec& t,
                         double quad_rtol, GapCache* cache = nullptr,
                         int max_gap_evals = 4000);

}  // namespace nlrabi

#endif
