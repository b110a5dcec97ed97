#include "nlrabi/criticality.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "nlrabi/metrology.hpp"

namespace nlrabi {

CriticalScales critical_scales(double omega, double big_omega) {
    if (!(omega > 0.0) || !(big_omega > 0.0)) {
        std::ostringstream os;
        os << "critical_scales: omega = " << omega << ", big_omega = " << big_omega
           << " must both be positive";
        throw NonPositiveFrequency(os.str());
    }
    return {0.5 * std::sqrt(omega * big_omega), 0.5 * omega};
}

double critical_g1(double omega, double big_omega, double g2, double eps) {
    const auto [g_s, g_t] = critical_scales(omega, big_omega);
    if (std::abs(g2) >= g_t) {
        std::ostringstream os;
        os << "critical_g1: |g2| = " << std::abs(g2) << " >= g_t = " << g_t;
        throw CollapseRegime(os.str());
    }
    const double ratio = g2 / g_t;
    const double root = std::sqrt(1.0 - ratio * ratio);
    if (eps == 0.0) return g_s * root;
    if (g2 == 0.0)
        throw BiasNeedsNonlinearity("critical_g1: biased boundary requires g2 != 0");
    return g_s * (1.0 + g_t * eps / (g2 * big_omega)) * root;
}

double critical_eps(double omega, double big_omega, double g1, double g2) {
    const auto [g_s, g_t] = critical_scales(omega, big_omega);
    if (g2 == 0.0)
        throw BiasNeedsNonlinearity("critical_eps: requires g2 != 0");
    if (std::abs(g2) >= g_t) {
        std::ostringstream os;
        os << "critical_eps: |g2| = " << std::abs(g2) << " >= g_t = " << g_t;
        throw CollapseRegime(os.str());
    }
    const double ratio = g2 / g_t;
    const double root = std::sqrt(1.0 - ratio * ratio);
    return ratio * (g1 / (g_s * root) - 1.0) * big_omega;
}

namespace {

constexpr int kCoarsePoints = 32;

ModelParams with_knob(ModelParams p, ParameterId which, double value) {
    switch (which) {
        case ParameterId::g1_over_bigomega:
            p.g1 = value;
            return p;
        case ParameterId::eps_over_bigomega:
            p.eps = value;
            return p;
    }
    throw UnsupportedParameter("locate_qfi_peak: unsupported parameter id");
}

}  // namespace

PeakResult locate_qfi_peak(const ModelParams& p, ParameterId which, double lo, double hi,
                           double xtol, const TruncationSpec& t) {
    if (!(lo < hi)) throw DomainError("locate_qfi_peak: need lo < hi");
    if (!(xtol > 0.0)) throw DomainError("locate_qfi_peak: xtol must be positive");

    int evaluations = 0;
    const double neg_inf = -std::numeric_limits<double>::infinity();
    const auto eval = [&](double x) -> double {
        ++evaluations;
        try {
            return qfi_overlap(with_knob(p, which, x), which, kDefaultOverlapStep, t).value;
        } catch (const DegenerateGround&) {
            return neg_inf;  // effectively degenerate point; the peak sits elsewhere
        } catch (const TruncationExhausted&) {
            return neg_inf;
        } catch (const NoConvergence&) {
            return neg_inf;
        }
    };

    std::vector<double> xs(kCoarsePoints), fs(kCoarsePoints);
    for (int i = 0; i < kCoarsePoints; ++i) {
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / (kCoarsePoints - 1);
        fs[i] = eval(xs[i]);
    }
    int ibest = 0;
    for (int i = 1; i < kCoarsePoints; ++i)
        if (fs[i] > fs[ibest]) ibest = i;
    if (fs[ibest] == neg_inf)
        throw NoInteriorPeak("locate_qfi_peak: QFI not computable anywhere in bracket");
    if (ibest == 0 || ibest == kCoarsePoints - 1) {
        std::ostringstream os;
        os << "locate_qfi_peak: maximum at bracket edge x = " << xs[ibest];
        throw NoInteriorPeak(os.str());
    }

    double a = xs[ibest - 1], b = xs[ibest + 1];
    double x_best = xs[ibest], f_best = fs[ibest];

    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = eval(x1);
    double f2 = eval(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = eval(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = eval(x1);
        }
        if (f1 > f_best) {
            f_best = f1;
            x_best = x1;
        }
        if (f2 > f_best) {
            f_best = f2;
            x_best = x2;
        }
    }

    return PeakResult{x_best, f_best, a, b, evaluations};
}

}  // namespace nlrabi
