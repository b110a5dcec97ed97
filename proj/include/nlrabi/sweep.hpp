#ifndef NLRABI_SWEEP_HPP
#define NLRABI_SWEEP_HPP

#include <string>
#include <vector>

#include "nlrabi/metrology.hpp"
#include "nlrabi/table.hpp"

namespace nlrabi {

enum class AxisParam { g1, g2, eps, omega };
enum class AxisScale { linear, log };

struct AxisSpec {
    AxisParam param = AxisParam::g1;
    double min = 0.0;
    double max = 0.0;
    int n_steps = 2;
    AxisScale scale = AxisScale::linear;

    friend bool operator==(const AxisSpec&, const AxisSpec&) = default;
};

enum class Quantity { qfi_g1, qfi_eps, gap, prep_time, peak, boundary, wavefunction_weights };
enum class QfiMethodChoice { overlap, sum_rule, both };

// Coupling values (base and axis) may be given in critical units:
// g1 in units of g_s, g2 in units of g_t, eps in units of big_omega. That
// keeps ratios like g2/g_t fixed while an omega axis varies the scales.
enum class ValueUnit { energy, critical };

struct SweepSpec {
    ModelParams base{};
    std::vector<AxisSpec> axes;        // 1 or 2
    std::vector<Quantity> quantities;  // may be empty (params-only table)
    TruncationSpec trunc{};
    QfiMethodChoice qfi_method = QfiMethodChoice::overlap;
    int workers = 1;
    double delta = kDefaultOverlapStep;  // overlap-method step
    double quad_rtol = 1e-4;             // prep_time quadrature tolerance
    double peak_lo = 0.25;               // peak bracket, units of g_s
    double peak_hi = 2.5;
    double peak_xtol = 1e-4;             // units of g_s
    ValueUnit g1_unit = ValueUnit::energy;
    ValueUnit g2_unit = ValueUnit::energy;
    ValueUnit eps_unit = ValueUnit::energy;

    friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

// Grid coordinates along one axis (linear or log spacing, inclusive ends).
std::vector<double> axis_values(const AxisSpec& axis);

// Resolved raw-energy params at a grid point (axis values applied, critical
// units scaled out).
ModelParams params_at(const SweepSpec& spec, const std::vector<double>& coords);

// Throws InvalidSpec if the spec invariants fail or any grid point violates
// the model invariants (checked before execution).
void validate_spec(const SweepSpec& spec);

// Evaluates every requested quantity at every grid point, row-major over the
// axes, distributing points across `workers` threads. Output is
// deterministic and independent of worker count; per-point failures land in
// the row's error tag, never abort the sweep.
SweepTable run_sweep(const SweepSpec& spec);

// Name helpers shared by the config parser and the CLI.
std::string to_string(AxisParam p);
std::string to_string(AxisScale s);
std::string to_string(Quantity q);
std::string to_string(QfiMethodChoice m);
std::string to_string(ValueUnit u, AxisParam p);

}  // namespace nlrabi

#endif
