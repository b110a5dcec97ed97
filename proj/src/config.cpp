#include "nlrabi/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace nlrabi {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

[[noreturn]] void fail(int line, const std::string& msg) {
    std::ostringstream os;
    os << "config line " << line << ": " << msg;
    throw ConfigError(os.str());
}

double parse_double(int line, const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        fail(line, "key '" + key + "': bad number '" + v + "'");
    }
}

int parse_int(int line, const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const int i = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        fail(line, "key '" + key + "': bad integer '" + v + "'");
    }
}

AxisParam parse_axis_param(int line, const std::string& v) {
    if (v == "g1") return AxisParam::g1;
    if (v == "g2") return AxisParam::g2;
    if (v == "eps") return AxisParam::eps;
    if (v == "omega") return AxisParam::omega;
    fail(line, "unknown axis parameter '" + v + "' (want g1|g2|eps|omega)");
}

AxisScale parse_axis_scale(int line, const std::string& v) {
    if (v == "linear") return AxisScale::linear;
    if (v == "log") return AxisScale::log;
    fail(line, "unknown axis scale '" + v + "' (want linear|log)");
}

Quantity parse_quantity(int line, const std::string& v) {
    if (v == "qfi_g1") return Quantity::qfi_g1;
    if (v == "qfi_eps") return Quantity::qfi_eps;
    if (v == "gap") return Quantity::gap;
    if (v == "prep_time") return Quantity::prep_time;
    if (v == "peak") return Quantity::peak;
    if (v == "boundary") return Quantity::boundary;
    if (v == "wavefunction_weights") return Quantity::wavefunction_weights;
    fail(line, "unknown quantity '" + v + "'");
}

ValueUnit parse_unit(int line, const std::string& key, const std::string& v) {
    if (v == "energy") return ValueUnit::energy;
    if (v == "gs" || v == "gt" || v == "bigomega") return ValueUnit::critical;
    fail(line, "key '" + key + "': unknown unit '" + v + "'");
}

AxisSpec parse_axis(int line, const std::string& v) {
    const auto toks = split_ws(v);
    if (toks.size() != 4 && toks.size() != 5)
        fail(line, "axis wants '<param> <min> <max> <steps> [linear|log]', got '" + v + "'");
    AxisSpec a;
    a.param = parse_axis_param(line, toks[0]);
    a.min = parse_double(line, "axis min", toks[1]);
    a.max = parse_double(line, "axis max", toks[2]);
    a.n_steps = parse_int(line, "axis steps", toks[3]);
    a.scale = toks.size() == 5 ? parse_axis_scale(line, toks[4]) : AxisScale::linear;
    return a;
}

}  // namespace

std::string to_string(AxisParam p) {
    switch (p) {
        case AxisParam::g1: return "g1";
        case AxisParam::g2: return "g2";
        case AxisParam::eps: return "eps";
        case AxisParam::omega: return "omega";
    }
    return "?";
}

std::string to_string(AxisScale s) {
    return s == AxisScale::linear ? "linear" : "log";
}

std::string to_string(Quantity q) {
    switch (q) {
        case Quantity::qfi_g1: return "qfi_g1";
        case Quantity::qfi_eps: return "qfi_eps";
        case Quantity::gap: return "gap";
        case Quantity::prep_time: return "prep_time";
        case Quantity::peak: return "peak";
        case Quantity::boundary: return "boundary";
        case Quantity::wavefunction_weights: return "wavefunction_weights";
    }
    return "?";
}

std::string to_string(QfiMethodChoice m) {
    switch (m) {
        case QfiMethodChoice::overlap: return "overlap";
        case QfiMethodChoice::sum_rule: return "sum";
        case QfiMethodChoice::both: return "both";
    }
    return "?";
}

std::string to_string(ValueUnit u, AxisParam p) {
    if (u == ValueUnit::energy) return "energy";
    switch (p) {
        case AxisParam::g1: return "gs";
        case AxisParam::g2: return "gt";
        case AxisParam::eps: return "bigomega";
        default: return "energy";
    }
}

CliConfig parse_config_text(const std::string& text) {
    CliConfig cfg;
    SweepSpec& spec = cfg.spec;

    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    AxisSpec axis1, axis2;
    bool have_axis1 = false, have_axis2 = false;

    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected 'key = value', got '" + raw + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(lineno, "empty key");
        if (value.empty()) fail(lineno, "key '" + key + "': empty value");

        if (key == "omega") spec.base.omega = parse_double(lineno, key, value);
        else if (key == "big_omega") spec.base.big_omega = parse_double(lineno, key, value);
        else if (key == "g1") spec.base.g1 = parse_double(lineno, key, value);
        else if (key == "g2") spec.base.g2 = parse_double(lineno, key, value);
        else if (key == "eps") spec.base.eps = parse_double(lineno, key, value);
        else if (key == "g1_unit") spec.g1_unit = parse_unit(lineno, key, value);
        else if (key == "g2_unit") spec.g2_unit = parse_unit(lineno, key, value);
        else if (key == "eps_unit") spec.eps_unit = parse_unit(lineno, key, value);
        else if (key == "ncut") spec.trunc.n_start = parse_int(lineno, key, value);
        else if (key == "nmax") spec.trunc.n_max = parse_int(lineno, key, value);
        else if (key == "growth") spec.trunc.growth = parse_double(lineno, key, value);
        else if (key == "rtol") spec.trunc.rtol = parse_double(lineno, key, value);
        else if (key == "delta") spec.delta = parse_double(lineno, key, value);
        else if (key == "quad_rtol") spec.quad_rtol = parse_double(lineno, key, value);
        else if (key == "workers") spec.workers = parse_int(lineno, key, value);
        else if (key == "peak_lo") spec.peak_lo = parse_double(lineno, key, value);
        else if (key == "peak_hi") spec.peak_hi = parse_double(lineno, key, value);
        else if (key == "peak_xtol") spec.peak_xtol = parse_double(lineno, key, value);
        else if (key == "qfi_method") {
            if (value == "overlap") spec.qfi_method = QfiMethodChoice::overlap;
            else if (value == "sum") spec.qfi_method = QfiMethodChoice::sum_rule;
            else if (value == "both") spec.qfi_method = QfiMethodChoice::both;
            else fail(lineno, "qfi_method wants overlap|sum|both, got '" + value + "'");
        } else if (key == "quantities") {
            spec.quantities.clear();
            std::stringstream qs(value);
            std::string tok;
            while (std::getline(qs, tok, ',')) {
                tok = trim(tok);
                if (!tok.empty()) spec.quantities.push_back(parse_quantity(lineno, tok));
            }
        } else if (key == "axis1") {
            axis1 = parse_axis(lineno, value);
            have_axis1 = true;
        } else if (key == "axis2") {
            axis2 = parse_axis(lineno, value);
            have_axis2 = true;
        } else if (key == "out") {
            cfg.out_path = value;
        } else if (key == "format") {
            if (value == "csv") cfg.format = TableFormat::csv;
            else if (value == "json") cfg.format = TableFormat::json;
            else fail(lineno, "format wants csv|json, got '" + value + "'");
        } else {
            fail(lineno, "unknown key '" + key + "'");
        }
    }

    if (have_axis2 && !have_axis1) throw ConfigError("config: axis2 given without axis1");
    if (have_axis1) spec.axes.push_back(axis1);
    if (have_axis2) spec.axes.push_back(axis2);
    return cfg;
}

CliConfig parse_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("parse_config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

std::string emit_config(const SweepSpec& spec) {
    std::ostringstream os;
    os << "omega = " << format_double(spec.base.omega) << "\n";
    os << "big_omega = " << format_double(spec.base.big_omega) << "\n";
    os << "g1 = " << format_double(spec.base.g1) << "\n";
    os << "g2 = " << format_double(spec.base.g2) << "\n";
    os << "eps = " << format_double(spec.base.eps) << "\n";
    os << "g1_unit = " << to_string(spec.g1_unit, AxisParam::g1) << "\n";
    os << "g2_unit = " << to_string(spec.g2_unit, AxisParam::g2) << "\n";
    os << "eps_unit = " << to_string(spec.eps_unit, AxisParam::eps) << "\n";
    os << "ncut = " << spec.trunc.n_start << "\n";
    os << "nmax = " << spec.trunc.n_max << "\n";
    os << "growth = " << format_double(spec.trunc.growth) << "\n";
    os << "rtol = " << format_double(spec.trunc.rtol) << "\n";
    os << "qfi_method = " << to_string(spec.qfi_method) << "\n";
    os << "delta = " << format_double(spec.delta) << "\n";
    os << "quad_rtol = " << format_double(spec.quad_rtol) << "\n";
    os << "workers = " << spec.workers << "\n";
    os << "peak_lo = " << format_double(spec.peak_lo) << "\n";
    os << "peak_hi = " << format_double(spec.peak_hi) << "\n";
    os << "peak_xtol = " << format_double(spec.peak_xtol) << "\n";
    if (!spec.quantities.empty()) {
        os << "quantities = ";
        for (size_t i = 0; i < spec.quantities.size(); ++i) {
            if (i) os << ", ";
            os << to_string(spec.quantities[i]);
        }
        os << "\n";
    }
    for (size_t i = 0; i < spec.axes.size(); ++i) {
        const AxisSpec& a = spec.axes[i];
        os << "axis" << (i + 1) << " = " << to_string(a.param) << " " << format_double(a.min)
           << " " << format_double(a.max) << " " << a.n_steps << " " << to_string(a.scale)
           << "\n";
    }
    return os.str();
}

std::string emit_config(const CliConfig& config) {
    std::string out = emit_config(config.spec);
    if (!config.out_path.empty()) out += "out = " + config.out_path + "\n";
    out += std::string("format = ") + (config.format == TableFormat::csv ? "csv" : "json") + "\n";
    return out;
}

}  // namespace nlrabi
