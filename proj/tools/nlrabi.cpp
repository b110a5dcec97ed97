// Command-line front end: spectrum, qfi, gap, prep-time, boundary, peak,
// wavefunction, and sweep subcommands over the nonlinear biased Rabi model.
//
// Exit codes: 0 success, 2 invalid input, 3 numerical failure, 4 I/O.

#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "nlrabi/config.hpp"
#include "nlrabi/criticality.hpp"
#include "nlrabi/sweep.hpp"
#include "nlrabi/wavefunction.hpp"

namespace {

using namespace nlrabi;

struct CommonOpts {
    std::string config_path;
    std::optional<double> omega, big_omega, g1, g2, eps;
    std::optional<int> ncut, nmax;
    std::optional<double> rtol;
    std::optional<int> workers;
    std::string out_path;
    std::string format = "csv";
    bool format_given = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "config file (keys mirror flags; flags override)");
    cmd->add_option("--omega", o.omega, "mode frequency omega");
    cmd->add_option("--big-omega", o.big_omega, "qubit splitting Omega (default 1)");
    cmd->add_option("--g1", o.g1, "linear coupling");
    cmd->add_option("--g2", o.g2, "two-photon coupling (|g2| < omega/2)");
    cmd->add_option("--eps", o.eps, "spin bias");
    cmd->add_option("--ncut", o.ncut, "initial Fock cutoff (0 = auto)");
    cmd->add_option("--nmax", o.nmax, "hard cutoff cap");
    cmd->add_option("--rtol", o.rtol, "truncation convergence tolerance");
    cmd->add_option("--workers", o.workers, "worker threads for sweeps");
    cmd->add_option("--out", o.out_path, "output path (default stdout)");
    cmd->add_option("--format", o.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->each([&o](const std::string&) { o.format_given = true; });
}

// Config file first, then flag overrides.
CliConfig resolve(const CommonOpts& o) {
    CliConfig cfg;
    if (!o.config_path.empty()) cfg = parse_config(o.config_path);
    if (o.omega) cfg.spec.base.omega = *o.omega;
    if (o.big_omega) cfg.spec.base.big_omega = *o.big_omega;
    if (o.g1) cfg.spec.base.g1 = *o.g1;
    if (o.g2) cfg.spec.base.g2 = *o.g2;
    if (o.eps) cfg.spec.base.eps = *o.eps;
    if (o.ncut) cfg.spec.trunc.n_start = *o.ncut;
    if (o.nmax) cfg.spec.trunc.n_max = *o.nmax;
    if (o.rtol) cfg.spec.trunc.rtol = *o.rtol;
    if (o.workers) cfg.spec.workers = *o.workers;
    if (!o.out_path.empty()) cfg.out_path = o.out_path;
    if (o.format_given) cfg.format = (o.format == "json") ? TableFormat::json : TableFormat::csv;
    return cfg;
}

// Resolve critical units on the base params (sweep grids do this per point).
ModelParams resolved_base(const CliConfig& cfg) {
    return params_at(cfg.spec, {});
}

SweepTable single_row_table(const std::vector<std::string>& names,
                            const std::vector<double>& values) {
    SweepTable t;
    t.columns = names;
    t.rows.push_back(values);
    t.row_errors.push_back("");
    return t;
}

void output(const CliConfig& cfg, const SweepTable& table) {
    if (cfg.out_path.empty()) {
        // Bare stdout: plain name = value lines for single rows, CSV otherwise.
        if (table.rows.size() == 1) {
            for (size_t c = 0; c < table.columns.size(); ++c)
                std::cout << table.columns[c] << " = " << format_double(table.rows[0][c])
                          << "\n";
            return;
        }
        emit(table, cfg.format, "-");
        return;
    }
    emit(table, cfg.format, cfg.out_path);
}

int run_spectrum(const CommonOpts& o, int k) {
    const CliConfig cfg = resolve(o);
    const ModelParams p = resolved_base(cfg);
    const ConvergedGround ground = converge_ground(p, cfg.spec.trunc, k);
    std::vector<std::string> names = {"omega", "big_omega", "g1", "g2", "eps"};
    std::vector<double> values = {p.omega, p.big_omega, p.g1, p.g2, p.eps};
    for (int i = 0; i < k; ++i) {
        names.push_back("e" + std::to_string(i));
        values.push_back(ground.eigen.values[i]);
    }
    names.insert(names.end(), {"n_c", "converged"});
    values.insert(values.end(),
                  {static_cast<double>(ground.n_c_final), ground.converged ? 1.0 : 0.0});
    output(cfg, single_row_table(names, values));
    return 0;
}

int run_qfi(const CommonOpts& o, const std::string& param, const std::string& method,
            double delta) {
    const CliConfig cfg = resolve(o);
    const ModelParams p = resolved_base(cfg);
    const ParameterId which = (param == "eps") ? ParameterId::eps_over_bigomega
                                               : ParameterId::g1_over_bigomega;
    const ConvergedGround ground = converge_ground(p, cfg.spec.trunc, 2);

    std::vector<std::string> names = {"omega", "big_omega", "g1", "g2", "eps", "lambda"};
    std::vector<double> values = {p.omega, p.big_omega, p.g1,
                                  p.g2,    p.eps,       lambda_of(p, which)};
    if (method == "overlap" || method == "both") {
        const QfiEstimate est = qfi_overlap(ground, which, delta);
        names.insert(names.end(), {"qfi_overlap", "step"});
        values.insert(values.end(), {est.value, est.step});
    }
    if (method == "sum" || method == "both") {
        const QfiEstimate est = qfi_sum_rule(ground, which);
        names.push_back("qfi_sum");
        values.push_back(est.value);
    }
    names.insert(names.end(), {"n_c", "converged"});
    values.insert(values.end(),
                  {static_cast<double>(ground.n_c_final), ground.converged ? 1.0 : 0.0});
    output(cfg, single_row_table(names, values));
    return 0;
}

int run_gap(const CommonOpts& o) {
    const CliConfig cfg = resolve(o);
    const ModelParams p = resolved_base(cfg);
    const ConvergedGround ground = converge_ground(p, cfg.spec.trunc, 2);
    output(cfg, single_row_table(
                    {"omega", "big_omega", "g1", "g2", "eps", "gap", "e0", "e1", "n_c",
                     "converged"},
                    {p.omega, p.big_omega, p.g1, p.g2, p.eps, ground.gap(), ground.e0(),
                     ground.eigen.values[1], static_cast<double>(ground.n_c_final),
                     ground.converged ? 1.0 : 0.0}));
    return 0;
}

int run_prep_time(const CommonOpts& o, std::optional<double> lambda_end, double quad_rtol) {
    const CliConfig cfg = resolve(o);
    const ModelParams p = resolved_base(cfg);
    const double lend = lambda_end ? *lambda_end : p.g1 / p.big_omega;
    const PrepTimeResult pt = prep_time(p, lend, cfg.spec.trunc, quad_rtol);
    output(cfg, single_row_table({"omega", "big_omega", "g1", "g2", "eps", "lambda_end",
                                  "prep_time", "quad_error", "gap_evals"},
                                 {p.omega, p.big_omega, p.g1, p.g2, p.eps, lend, pt.value,
                                  pt.quad_error, static_cast<double>(pt.evaluations.size())}));
    return 0;
}

int run_boundary(const CommonOpts& o) {
    const CliConfig cfg = resolve(o);
    const ModelParams p = resolved_base(cfg);
    const auto [g_s, g_t] = critical_scales(p.omega, p.big_omega);
    std::vector<std::string> names = {"omega", "big_omega", "g1", "g2", "eps", "g_s", "g_t"};
    std::vector<double> values = {p.omega, p.big_omega, p.g1, p.g2, p.eps, g_s, g_t};
    names.push_back("g1_crit");
    values.push_back(critical_g1(p.omega, p.big_omega, p.g2, p.eps));
    if (p.g2 != 0.0) {
        names.push_back("eps_crit");
        values.push_back(critical_eps(p.omega, p.big_omega, p.g1, p.g2));
    }
    output(cfg, single_row_table(names, values));
    return 0;
}

int run_peak(const CommonOpts& o, std::optional<double> lo, std::optional<double> hi,
             std::optional<double> xtol, const std::string& param) {
    const CliConfig cfg = resolve(o);
    const ModelParams p = resolved_base(cfg);
    const auto [g_s, g_t] = critical_scales(p.omega, p.big_omega);
    const ParameterId which = (param == "eps") ? ParameterId::eps_over_bigomega
                                               : ParameterId::g1_over_bigomega;
    const double blo = lo ? *lo : cfg.spec.peak_lo * g_s;
    const double bhi = hi ? *hi : cfg.spec.peak_hi * g_s;
    const double bxtol = xtol ? *xtol : cfg.spec.peak_xtol * g_s;
    const PeakResult peak = locate_qfi_peak(p, which, blo, bhi, bxtol, cfg.spec.trunc);
    output(cfg, single_row_table({"omega", "big_omega", "g2", "eps", "bracket_lo", "bracket_hi",
                                  "g_m", "qfi_max", "evaluations"},
                                 {p.omega, p.big_omega, p.g2, p.eps, peak.bracket_lo,
                                  peak.bracket_hi, peak.g_m, peak.qfi_max,
                                  static_cast<double>(peak.evaluations)}));
    return 0;
}

int run_wavefunction(const CommonOpts& o, std::optional<double> xmin, std::optional<double> xmax,
                     int points) {
    const CliConfig cfg = resolve(o);
    const ModelParams p = resolved_base(cfg);
    const ConvergedGround ground = converge_ground(p, cfg.spec.trunc, 2);

    PositionWave wave;
    if (xmin && xmax)
        wave = position_wave(ground, *xmin, *xmax, points);
    else
        wave = position_wave_default(ground);

    SweepTable t;
    t.columns = {"x", "psi_up", "psi_down"};
    for (Eigen::Index i = 0; i < wave.xs.size(); ++i) {
        t.rows.push_back({wave.xs[i], wave.psi_up[i], wave.psi_down[i]});
        t.row_errors.emplace_back();
    }
    t.meta.spec_echo = {"x_s = " + format_double(wave.x_s),
                        "weight_up = " + format_double(wave.weight_up),
                        "weight_down = " + format_double(wave.weight_down),
                        "n_c = " + std::to_string(ground.n_c_final)};
    if (cfg.out_path.empty())
        emit(t, cfg.format, "-");
    else
        emit(t, cfg.format, cfg.out_path);
    return 0;
}

int run_sweep_cmd(const CommonOpts& o) {
    const CliConfig cfg = resolve(o);
    if (cfg.spec.axes.empty())
        throw InvalidSpec("sweep: no axes given (use a config file with axis1/axis2)");
    const SweepTable table = run_sweep(cfg.spec);
    if (cfg.out_path.empty())
        emit(table, cfg.format, "-");
    else
        emit(table, cfg.format, cfg.out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonlinear biased Rabi model: spectra, QFI, gaps, preparation times"};
    app.require_subcommand(1);

    CommonOpts opts;

    auto* spectrum = app.add_subcommand("spectrum", "lowest eigenvalues at one point");
    int spectrum_k = 2;
    spectrum->add_option("--k", spectrum_k, "number of eigenvalues")->check(CLI::PositiveNumber);
    add_common(spectrum, opts);

    auto* qfi = app.add_subcommand("qfi", "quantum Fisher information at one point");
    std::string qfi_param = "g1", qfi_method = "overlap";
    double qfi_delta = kDefaultOverlapStep;
    qfi->add_option("--param", qfi_param, "g1|eps")->check(CLI::IsMember({"g1", "eps"}));
    qfi->add_option("--method", qfi_method, "overlap|sum|both")
        ->check(CLI::IsMember({"overlap", "sum", "both"}));
    qfi->add_option("--delta", qfi_delta, "finite-difference step");
    add_common(qfi, opts);

    auto* gap_cmd = app.add_subcommand("gap", "energy gap E1 - E0 at one point");
    add_common(gap_cmd, opts);

    auto* prep = app.add_subcommand("prep-time", "adiabatic preparation-time lower bound");
    std::optional<double> prep_lambda_end;
    double prep_quad_rtol = 1e-6;
    prep->add_option("--lambda-end", prep_lambda_end, "sweep end g1/Omega (default: g1/Omega)");
    prep->add_option("--quad-rtol", prep_quad_rtol, "quadrature relative tolerance");
    add_common(prep, opts);

    auto* boundary = app.add_subcommand("boundary", "critical scales and phase boundary");
    add_common(boundary, opts);

    auto* peak = app.add_subcommand("peak", "locate the QFI maximum");
    std::optional<double> peak_lo, peak_hi, peak_xtol;
    std::string peak_param = "g1";
    peak->add_option("--lo", peak_lo, "bracket start (energy)");
    peak->add_option("--hi", peak_hi, "bracket end (energy)");
    peak->add_option("--xtol", peak_xtol, "bracket width target (energy)");
    peak->add_option("--param", peak_param, "g1|eps")->check(CLI::IsMember({"g1", "eps"}));
    add_common(peak, opts);

    auto* wave = app.add_subcommand("wavefunction", "position-space ground-state components");
    std::optional<double> wave_xmin, wave_xmax;
    int wave_points = 801;
    wave->add_option("--xmin", wave_xmin, "grid start (oscillator lengths)");
    wave->add_option("--xmax", wave_xmax, "grid end");
    wave->add_option("--points", wave_points, "grid points")->check(CLI::PositiveNumber);
    add_common(wave, opts);

    auto* sweep = app.add_subcommand("sweep", "grid sweep from a config file");
    add_common(sweep, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (spectrum->parsed()) return run_spectrum(opts, spectrum_k);
        if (qfi->parsed()) return run_qfi(opts, qfi_param, qfi_method, qfi_delta);
        if (gap_cmd->parsed()) return run_gap(opts);
        if (prep->parsed()) return run_prep_time(opts, prep_lambda_end, prep_quad_rtol);
        if (boundary->parsed()) return run_boundary(opts);
        if (peak->parsed()) return run_peak(opts, peak_lo, peak_hi, peak_xtol, peak_param);
        if (wave->parsed()) return run_wavefunction(opts, wave_xmin, wave_xmax, wave_points);
        if (sweep->parsed()) return run_sweep_cmd(opts);
    } catch (const nlrabi::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.category()) {
            case ErrorCategory::invalid_input: return 2;
            case ErrorCategory::numerical: return 3;
            case ErrorCategory::io: return 4;
        }
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
