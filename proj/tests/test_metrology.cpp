#include <doctest.h>

#include "nlrabi/metrology.hpp"
#include "oracle.hpp"

using namespace nlrabi;

namespace {

const ModelParams kDecoupled{0.1, 1.0, 0.0, 0.0, 0.0};

TruncationSpec trunc16() {
    TruncationSpec t;
    t.n_start = 16;
    return t;
}

// At the decoupled point the generator couples |0,-x> to exactly one state,
// |1,+x> for the g1 parameter (denominator omega + Omega) and |0,+x> for the
// eps parameter (denominator Omega):
//   I_g1 = 4 Omega^2/(omega+Omega)^2 = 400/121,  I_eps = 4.
constexpr double kDecoupledQfiG1 = 400.0 / 121.0;
constexpr double kDecoupledQfiEps = 4.0;

}  // namespace

TEST_SUITE_BEGIN("metrology");

TEST_CASE("decoupled-point QFI, overlap method") {
    const QfiEstimate g1 =
        qfi_overlap(kDecoupled, ParameterId::g1_over_bigomega, kDefaultOverlapStep, trunc16());
    CHECK(std::abs(g1.value - kDecoupledQfiG1) < 1e-6);
    CHECK(g1.method == QfiMethod::overlap);
    CHECK(g1.n_c >= 16);
    REQUIRE(g1.diagnostics.has_value());
    CHECK(g1.diagnostics->step_converged);

    const QfiEstimate eps =
        qfi_overlap(kDecoupled, ParameterId::eps_over_bigomega, kDefaultOverlapStep, trunc16());
    CHECK(std::abs(eps.value - kDecoupledQfiEps) < 1e-6);
}

TEST_CASE("decoupled-point QFI, sum rule (single analytic term)") {
    const QfiEstimate g1 = qfi_sum_rule(kDecoupled, ParameterId::g1_over_bigomega, trunc16());
    CHECK(std::abs(g1.value - kDecoupledQfiG1) < 1e-12);
    const QfiEstimate eps = qfi_sum_rule(kDecoupled, ParameterId::eps_over_bigomega, trunc16());
    CHECK(std::abs(eps.value - kDecoupledQfiEps) < 1e-12);
}

TEST_CASE("sum rule matches the independent dense oracle off the decoupled point") {
    const double g_s = 0.5 * std::sqrt(0.1);
    const ModelParams p{0.1, 1.0, 0.9 * g_s, 0.02, 0.05};
    const ConvergedGround ground = converge_ground(p, trunc16(), 2);
    const QfiEstimate est = qfi_sum_rule(ground, ParameterId::g1_over_bigomega);

    const int n_c = static_cast<int>(ground.n_c_final);
    const double ref = oracle::qfi_sum(
        oracle::dense_hamiltonian(p.omega, p.big_omega, p.g1, p.g2, p.eps, n_c),
        oracle::dense_generator(p.big_omega, n_c, true));
    CHECK(est.value == doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("overlap and sum rule agree to 1e-3 (subset of the standard grid)") {
    const double g_s = 0.5 * std::sqrt(0.1);
    const double g_t = 0.05;
    for (double rel_g1 : {0.5, 1.1}) {
        for (double rel_g2 : {0.0, 0.75}) {
            const ModelParams p{0.1, 1.0, rel_g1 * g_s, rel_g2 * g_t, 0.0};
            const ConvergedGround ground = converge_ground(p, trunc16(), 2);
            const double a =
                qfi_overlap(ground, ParameterId::g1_over_bigomega, kDefaultOverlapStep).value;
            const double b = qfi_sum_rule(ground, ParameterId::g1_over_bigomega).value;
            CHECK(std::abs(a - b) / b < 1e-3);
        }
    }
}

TEST_CASE("QFI is gauge invariant under eigenvector sign flips") {
    const double g_s = 0.5 * std::sqrt(0.1);
    const ModelParams p{0.1, 1.0, 0.8 * g_s, 0.02, 0.0};
    ConvergedGround ground = converge_ground(p, trunc16(), 2);
    const double ref =
        qfi_overlap(ground, ParameterId::g1_over_bigomega, kDefaultOverlapStep).value;
    const double ref_sum = qfi_sum_rule(ground, ParameterId::g1_over_bigomega).value;

    ground.eigen.vectors.col(0) *= -1.0;  // flip the input gauge
    const double flipped =
        qfi_overlap(ground, ParameterId::g1_over_bigomega, kDefaultOverlapStep).value;
    const double flipped_sum = qfi_sum_rule(ground, ParameterId::g1_over_bigomega).value;
    CHECK(flipped == ref);
    CHECK(flipped_sum == ref_sum);
}

TEST_CASE("degenerate ground is refused") {
    // omega = 0.01, g1 = 1.3 g_s, g2 = 0: the gap is below numerical
    // resolution (two parity branches), so the QFI derivative is undefined.
    const double g_s = 0.05;
    const ModelParams p{0.01, 1.0, 1.3 * g_s, 0.0, 0.0};
    const SymmetricOperator h = build_hamiltonian(p, 512);
    const EigenSet full = eigs_full(h);
    ConvergedGround ground;
    ground.params = p;
    ground.eigen.values = full.values.head(2);
    ground.eigen.vectors = full.vectors.leftCols(2);
    ground.eigen.n_c = 512;
    ground.n_c_final = 512;
    ground.converged = true;
    CHECK_THROWS_AS(qfi_overlap(ground, ParameterId::g1_over_bigomega, 1e-4), DegenerateGround);
    CHECK_THROWS_AS(qfi_sum_rule(ground, ParameterId::g1_over_bigomega), DegenerateGround);
}

TEST_CASE("gap at the decoupled point is omega") {
    CHECK(gap(kDecoupled, trunc16()) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("gap stays finite across the transition for g2 = 0.8 g_t") {
    const double g_s = 0.5 * std::sqrt(0.1);
    TruncationSpec t;
    for (double rel : {0.0, 0.5, 0.6, 0.75, 1.0, 1.5}) {
        const ModelParams p{0.1, 1.0, rel * g_s, 0.04, 0.0};
        CHECK(gap(p, t) > 0.0);
    }
}

TEST_CASE("prep_time at lambda_end = 0") {
    const PrepTimeResult r = prep_time(kDecoupled, 0.0, trunc16(), 1e-6);
    CHECK(r.value == 0.0);
    CHECK(r.evaluations.empty());
}

TEST_CASE("prep_time constant-gap limit: T -> lambda_end/omega") {
    const double lend = 1e-3;
    const PrepTimeResult r = prep_time(kDecoupled, lend, trunc16(), 1e-8);
    CHECK(r.value == doctest::Approx(lend / 0.1).epsilon(1e-3));
    // integrand positive: T >= range / max gap over samples
    double max_gap = 0.0;
    for (const auto& [lam, g] : r.evaluations) max_gap = std::max(max_gap, g);
    CHECK(r.value >= lend / max_gap - 1e-15);
}

TEST_CASE("prep_time is monotone in lambda_end") {
    TruncationSpec t;
    GapCache cache;
    const double g_s = 0.5 * std::sqrt(0.1);
    const ModelParams p{0.1, 1.0, 0.0, 0.04, 0.0};
    const double t1 = prep_time(p, 0.5 * g_s, t, 1e-5, &cache).value;
    const double t2 = prep_time(p, 1.0 * g_s, t, 1e-5, &cache).value;
    CHECK(t1 >= 0.0);
    CHECK(t1 <= t2);
}

TEST_CASE("prep_time is deterministic and cache-neutral") {
    TruncationSpec t;
    const double g_s = 0.5 * std::sqrt(0.1);
    const ModelParams p{0.1, 1.0, 0.0, 0.04, 0.0};
    const PrepTimeResult a = prep_time(p, 0.4 * g_s, t, 1e-5);
    const PrepTimeResult b = prep_time(p, 0.4 * g_s, t, 1e-5);
    CHECK(a.value == b.value);  // bitwise
    CHECK(a.evaluations == b.evaluations);

    GapCache warm;
    prep_time(p, 0.4 * g_s, t, 1e-5, &warm);         // warm the cache
    const PrepTimeResult c = prep_time(p, 0.4 * g_s, t, 1e-5, &warm);
    CHECK(c.value == a.value);
    CHECK(c.evaluations == a.evaluations);
}

TEST_CASE("prep_time stalls on a tiny budget") {
    TruncationSpec t;
    const ModelParams p{0.1, 1.0, 0.0, 0.04, 0.0};
    CHECK_THROWS_AS(prep_time(p, 0.5, t, 1e-10, nullptr, 3), QuadratureStalled);
}

TEST_SUITE_END();
