#include "nlrabi/sweep.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "nlrabi/config.hpp"
#include "nlrabi/criticality.hpp"
#include "nlrabi/wavefunction.hpp"

namespace nlrabi {

std::vector<double> axis_values(const AxisSpec& axis) {
    std::vector<double> vals(axis.n_steps);
    if (axis.scale == AxisScale::linear) {
        for (int i = 0; i < axis.n_steps; ++i)
            vals[i] = axis.min + (axis.max - axis.min) * static_cast<double>(i) /
                                     (axis.n_steps - 1);
    } else {
        const double lmin = std::log(axis.min);
        const double lmax = std::log(axis.max);
        for (int i = 0; i < axis.n_steps; ++i)
            vals[i] = std::exp(lmin + (lmax - lmin) * static_cast<double>(i) /
                                          (axis.n_steps - 1));
    }
    return vals;
}

ModelParams params_at(const SweepSpec& spec, const std::vector<double>& coords) {
    ModelParams raw = spec.base;
    for (size_t a = 0; a < spec.axes.size(); ++a) {
        switch (spec.axes[a].param) {
            case AxisParam::g1: raw.g1 = coords[a]; break;
            case AxisParam::g2: raw.g2 = coords[a]; break;
            case AxisParam::eps: raw.eps = coords[a]; break;
            case AxisParam::omega: raw.omega = coords[a]; break;
        }
    }
    // omega and big_omega are always raw energies; couplings may be in
    // critical units of the point's own scales.
    ModelParams p = raw;
    if (p.omega > 0.0 && p.big_omega > 0.0) {
        const auto [g_s, g_t] = critical_scales(p.omega, p.big_omega);
        if (spec.g1_unit == ValueUnit::critical) p.g1 = raw.g1 * g_s;
        if (spec.g2_unit == ValueUnit::critical) p.g2 = raw.g2 * g_t;
        if (spec.eps_unit == ValueUnit::critical) p.eps = raw.eps * p.big_omega;
    }
    return p;
}

namespace {

std::vector<std::vector<double>> grid_coords(const SweepSpec& spec) {
    std::vector<std::vector<double>> axes;
    for (const auto& a : spec.axes) axes.push_back(axis_values(a));

    std::vector<std::vector<double>> coords;
    if (axes.empty()) {
        coords.push_back({});
    } else if (axes.size() == 1) {
        for (double v : axes[0]) coords.push_back({v});
    } else {
        for (double v0 : axes[0])
            for (double v1 : axes[1]) coords.push_back({v0, v1});
    }
    return coords;
}

bool has_quantity(const SweepSpec& spec, Quantity q) {
    for (Quantity s : spec.quantities)
        if (s == q) return true;
    return false;
}

std::string error_tag(const Error& e) {
    if (dynamic_cast<const TruncationExhausted*>(&e)) return "TruncationExhausted";
    if (dynamic_cast<const DegenerateGround*>(&e)) return "DegenerateGround";
    if (dynamic_cast<const NoConvergence*>(&e)) return "NoConvergence";
    if (dynamic_cast<const DimensionTooLarge*>(&e)) return "DimensionTooLarge";
    if (dynamic_cast<const QuadratureStalled*>(&e)) return "QuadratureStalled";
    if (dynamic_cast<const BiasNeedsNonlinearity*>(&e)) return "BiasNeedsNonlinearity";
    if (dynamic_cast<const NoInteriorPeak*>(&e)) return "NoInteriorPeak";
    if (dynamic_cast<const GridTooNarrow*>(&e)) return "GridTooNarrow";
    if (dynamic_cast<const CollapseRegime*>(&e)) return "CollapseRegime";
    if (dynamic_cast<const NonPositiveFrequency*>(&e)) return "NonPositiveFrequency";
    return "Error";
}

struct ColumnPlan {
    std::vector<std::string> names;
    bool qfi_overlap = false;
    bool qfi_sum = false;
    bool want_ratio = false;  // QFI/(T*bigOmega) column
};

ColumnPlan plan_columns(const SweepSpec& spec) {
    ColumnPlan plan;
    plan.qfi_overlap = spec.qfi_method != QfiMethodChoice::sum_rule;
    plan.qfi_sum = spec.qfi_method != QfiMethodChoice::overlap;

    plan.names = {"omega", "big_omega", "g1", "g2", "eps"};
    for (Quantity q : spec.quantities) {
        switch (q) {
            case Quantity::gap:
                plan.names.push_back("gap");
                break;
            case Quantity::qfi_g1:
                if (plan.qfi_overlap) plan.names.push_back("qfi_g1_overlap");
                if (plan.qfi_sum) plan.names.push_back("qfi_g1_sum");
                break;
            case Quantity::qfi_eps:
                if (plan.qfi_overlap) plan.names.push_back("qfi_eps_overlap");
                if (plan.qfi_sum) plan.names.push_back("qfi_eps_sum");
                break;
            case Quantity::prep_time:
                plan.names.push_back("prep_time");
                plan.names.push_back("prep_time_err");
                break;
            case Quantity::peak:
                plan.names.push_back("peak_g1");
                plan.names.push_back("peak_qfi");
                break;
            case Quantity::boundary:
                plan.names.push_back("g1_crit");
                plan.names.push_back("eps_crit");
                break;
            case Quantity::wavefunction_weights:
                plan.names.push_back("weight_up");
                plan.names.push_back("weight_down");
                break;
        }
    }
    plan.want_ratio = has_quantity(spec, Quantity::prep_time) &&
                      (has_quantity(spec, Quantity::peak) || has_quantity(spec, Quantity::qfi_g1));
    if (plan.want_ratio) plan.names.push_back("qfi_over_t");
    plan.names.push_back("n_c");
    plan.names.push_back("converged");
    return plan;
}

struct RowResult {
    std::vector<double> values;
    std::string error;
};

class PointEvaluator {
  public:
    PointEvaluator(const SweepSpec& spec, const ColumnPlan& plan, GapCache& cache)
        : spec_(spec), plan_(plan), cache_(cache) {}

    RowResult evaluate(const ModelParams& p) const {
        RowResult out;
        std::map<std::string, double> col;
        const double nan = std::nan("");
        for (const auto& name : plan_.names) col[name] = nan;
        col["omega"] = p.omega;
        col["big_omega"] = p.big_omega;
        col["g1"] = p.g1;
        col["g2"] = p.g2;
        col["eps"] = p.eps;

        std::string err;
        const auto tag = [&err](const std::string& what, const Error& e) {
            if (!err.empty()) err += ";";
            err += what + ":" + error_tag(e);
        };

        const bool needs_ground =
            has_quantity(spec_, Quantity::gap) || has_quantity(spec_, Quantity::qfi_g1) ||
            has_quantity(spec_, Quantity::qfi_eps) ||
            has_quantity(spec_, Quantity::wavefunction_weights);

        ConvergedGround ground;
        bool have_ground = false;
        if (needs_ground) {
            try {
                ground = converge_ground(p, spec_.trunc, 2);
                have_ground = true;
            } catch (const TruncationExhausted& e) {
                ground = e.partial;
                have_ground = true;
                tag("ground", e);
            } catch (const Error& e) {
                tag("ground", e);
            }
            if (have_ground) {
                col["n_c"] = static_cast<double>(ground.n_c_final);
                col["converged"] = ground.converged ? 1.0 : 0.0;
            }
        }

        double qfi_for_ratio = nan;
        for (Quantity q : spec_.quantities) {
            switch (q) {
                case Quantity::gap:
                    if (have_ground) col["gap"] = ground.gap();
                    break;
                case Quantity::qfi_g1:
                case Quantity::qfi_eps: {
                    if (!have_ground) break;
                    const bool is_g1 = (q == Quantity::qfi_g1);
                    const ParameterId which = is_g1 ? ParameterId::g1_over_bigomega
                                                    : ParameterId::eps_over_bigomega;
                    const std::string base = is_g1 ? "qfi_g1" : "qfi_eps";
                    if (plan_.qfi_overlap) {
                        try {
                            const QfiEstimate est = qfi_overlap(ground, which, spec_.delta);
                            col[base + "_overlap"] = est.value;
                            if (is_g1 && std::isnan(qfi_for_ratio)) qfi_for_ratio = est.value;
                        } catch (const Error& e) {
                            tag(base + "_overlap", e);
                        }
                    }
                    if (plan_.qfi_sum) {
                        try {
                            const QfiEstimate est = qfi_sum_rule(ground, which);
                            col[base + "_sum"] = est.value;
                            if (is_g1 && std::isnan(qfi_for_ratio)) qfi_for_ratio = est.value;
                        } catch (const Error& e) {
                            tag(base + "_sum", e);
                        }
                    }
                    break;
                }
                case Quantity::peak: {
                    try {
                        const auto [g_s, g_t] = critical_scales(p.omega, p.big_omega);
                        const PeakResult peak = locate_qfi_peak(
                            p, ParameterId::g1_over_bigomega, spec_.peak_lo * g_s,
                            spec_.peak_hi * g_s, spec_.peak_xtol * g_s, spec_.trunc);
                        col["peak_g1"] = peak.g_m;
                        col["peak_qfi"] = peak.qfi_max;
                        qfi_for_ratio = peak.qfi_max;  // ratio prefers the peak QFI
                    } catch (const Error& e) {
                        tag("peak", e);
                    }
                    break;
                }
                case Quantity::prep_time: {
                    try {
                        // With a peak requested, T is taken at g_m (Fig. 2c/d
                        // semantics); otherwise at the point's own g1.
                        double lambda_end = p.g1 / p.big_omega;
                        if (has_quantity(spec_, Quantity::peak)) {
                            if (std::isnan(col["peak_g1"])) break;  // peak failed; tagged there
                            lambda_end = col["peak_g1"] / p.big_omega;
                        }
                        const PrepTimeResult pt =
                            prep_time(p, lambda_end, spec_.trunc, spec_.quad_rtol, &cache_);
                        col["prep_time"] = pt.value;
                        col["prep_time_err"] = pt.quad_error;
                    } catch (const Error& e) {
                        tag("prep_time", e);
                    }
                    break;
                }
                case Quantity::boundary: {
                    try {
                        col["g1_crit"] = critical_g1(p.omega, p.big_omega, p.g2, p.eps);
                    } catch (const Error& e) {
                        tag("g1_crit", e);
                    }
                    try {
                        col["eps_crit"] = critical_eps(p.omega, p.big_omega, p.g1, p.g2);
                    } catch (const Error& e) {
                        tag("eps_crit", e);
                    }
                    break;
                }
                case Quantity::wavefunction_weights: {
                    if (!have_ground || !ground.converged) break;
                    try {
                        const PositionWave wave = position_wave_default(ground);
                        col["weight_up"] = wave.weight_up;
                        col["weight_down"] = wave.weight_down;
                    } catch (const Error& e) {
                        tag("wavefunction_weights", e);
                    }
                    break;
                }
            }
        }

        if (plan_.want_ratio && !std::isnan(col["prep_time"]) && !std::isnan(qfi_for_ratio) &&
            col["prep_time"] > 0.0)
            col["qfi_over_t"] = qfi_for_ratio / (col["prep_time"] * p.big_omega);

        out.values.reserve(plan_.names.size());
        for (const auto& name : plan_.names) out.values.push_back(col[name]);
        out.error = err;
        return out;
    }

  private:
    const SweepSpec& spec_;
    const ColumnPlan& plan_;
    GapCache& cache_;
};

}  // namespace

void validate_spec(const SweepSpec& spec) {
    if (spec.axes.empty() || spec.axes.size() > 2)
        throw InvalidSpec("sweep spec: need 1 or 2 axes");
    for (const auto& a : spec.axes) {
        if (a.n_steps < 2) throw InvalidSpec("sweep spec: each axis needs n_steps >= 2");
        if (a.scale == AxisScale::log && (a.min <= 0.0 || a.max <= 0.0))
            throw InvalidSpec("sweep spec: log axis needs positive bounds");
    }
    if (spec.axes.size() == 2 && spec.axes[0].param == spec.axes[1].param)
        throw InvalidSpec("sweep spec: axes must vary distinct parameters");
    if (spec.workers < 1) throw InvalidSpec("sweep spec: workers must be >= 1");
    if (!(spec.delta > 0.0)) throw InvalidSpec("sweep spec: delta must be positive");
    if (!(spec.quad_rtol > 0.0)) throw InvalidSpec("sweep spec: quad_rtol must be positive");
    if (has_quantity(spec, Quantity::peak) &&
        !(0.0 <= spec.peak_lo && spec.peak_lo < spec.peak_hi))
        throw InvalidSpec("sweep spec: need 0 <= peak_lo < peak_hi");
    try {
        validate_truncation(spec.trunc);
    } catch (const Error& e) {
        throw InvalidSpec(std::string("sweep spec: ") + e.what());
    }

    // Every grid point must satisfy the model invariants before execution.
    const auto coords = grid_coords(spec);
    for (size_t i = 0; i < coords.size(); ++i) {
        try {
            validate_params(params_at(spec, coords[i]));
        } catch (const Error& e) {
            std::ostringstream os;
            os << "sweep spec: grid point " << i << " invalid: " << e.what();
            throw InvalidSpec(os.str());
        }
    }
}

SweepTable run_sweep(const SweepSpec& spec) {
    validate_spec(spec);

    const ColumnPlan plan = plan_columns(spec);
    const auto coords = grid_coords(spec);
    const size_t n_rows = coords.size();

    GapCache cache;
    const PointEvaluator evaluator(spec, plan, cache);

    std::vector<RowResult> results(n_rows);
    std::atomic<size_t> next{0};
    const auto work = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= n_rows) return;
            try {
                results[i] = evaluator.evaluate(params_at(spec, coords[i]));
            } catch (const Error& e) {
                results[i].values.assign(plan.names.size(), std::nan(""));
                results[i].error = std::string("point:") + error_tag(e);
            } catch (const std::exception&) {
                results[i].values.assign(plan.names.size(), std::nan(""));
                results[i].error = "point:Error";
            }
        }
    };

    const int n_workers = static_cast<int>(
        std::min<size_t>(static_cast<size_t>(spec.workers), std::max<size_t>(n_rows, 1)));
    if (n_workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    SweepTable table;
    table.meta.version = kVersion;
    {
        std::istringstream echo(emit_config(spec));
        std::string line;
        while (std::getline(echo, line)) table.meta.spec_echo.push_back(line);
    }
    table.columns = plan.names;
    table.rows.reserve(n_rows);
    table.row_errors.reserve(n_rows);
    for (auto& r : results) {
        table.rows.push_back(std::move(r.values));
        table.row_errors.push_back(std::move(r.error));
    }
    return table;
}

}  // namespace nlrabi
