#ifndef NLRABI_CRITICALITY_HPP
#define NLRABI_CRITICALITY_HPP

#include "nlrabi/model.hpp"

namespace nlrabi {

// g_s = sqrt(omega * big_omega)/2: critical linear coupling of the
// slow-resonator second-order transition at g2 = 0.
// g_t = omega/2: the two-photon coupling where the spectrum collapses.
struct CriticalScales {
    double g_s;
    double g_t;
};

CriticalScales critical_scales(double omega, double big_omega);

// Critical linear coupling. Zero-bias branch g_s sqrt(1 - g2^2/g_t^2)
// (defined even at g2 = 0, where it reduces to g_s); the biased branch
// g_s [1 + g_t eps/(g2 big_omega)] sqrt(1 - g2^2/g_t^2) requires g2 != 0.
double critical_g1(double omega, double big_omega, double g2, double eps);

// Critical bias eps_c = (g2/g_t)[g1/(g_s sqrt(1 - g2^2/g_t^2)) - 1] big_omega.
// Exact algebraic inverse of critical_g1 in eps.
double critical_eps(double omega, double big_omega, double g1, double g2);

struct PeakResult {
    double g_m;           // knob value with maximal QFI
    double qfi_max;
    double bracket_lo;    // final search interval
    double bracket_hi;
    int evaluations;
};

// Maximizes the QFI for `which` over the corresponding physical knob
// (g1 for lambda = g1/bigOmega, eps for lambda = eps/bigOmega) inside
// [lo, hi]: a 32-point coarse scan picks the best interior cell, then
// golden-section refinement runs until the bracket is narrower than xtol.
// Points where the QFI is not computable (degenerate ground, exhausted
// truncation) are skipped by the scan. Throws NoInteriorPeak if the
// maximum sits at a bracket edge.
PeakResult locate_qfi_peak(const ModelParams& p, ParameterId which, double lo, double hi,
                           double xtol, const TruncationSpec& t);

}  // namespace nlrabi

#endif
