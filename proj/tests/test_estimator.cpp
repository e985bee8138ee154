#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qleak/errors.hpp"
#include "qleak/estimator.hpp"
#include "qleak/families.hpp"
#include "qleak/leakage.hpp"

using namespace qleak;

namespace {

double rabi_period(const HermitianOperator& H) {
    return 2.0 * std::numbers::pi / analytic_peaks(H).primary_omega();
}

PeakStats analytic_stats(const HermitianOperator& H) {
    const PeakSet ps = analytic_peaks(H);
    return {ps.h0, ps.primary_height(), 0.0, 0.0};
}

}  // namespace

TEST_CASE("estimate: noiseless analytic peaks reproduce published intervals") {
    const LeakageEstimate en = estimate(analytic_stats(family("Hn")));
    CHECK(std::abs(en.eps_low - 3.9754e-4) < 5e-8);
    CHECK(std::abs(en.eps_high - 3.9762e-4) < 5e-8);
    CHECK(en.d_eps_low == 0.0);
    CHECK(en.d_eps_high == 0.0);

    const LeakageEstimate em = estimate(analytic_stats(family("Hm")));
    CHECK(std::abs(em.eps_low - 0.0497) < 5e-5);
    CHECK(std::abs(em.eps_high - 0.0511) < 5e-5);
}

TEST_CASE("estimate: perfect confinement limit") {
    const LeakageEstimate est = estimate({0.6, 0.2, 0.0, 1e-3});
    CHECK(est.eps_low == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(est.eps_high == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(est.d_eps_low == doctest::Approx(1.5e-3).epsilon(1e-10));
    CHECK(est.d_eps_high == doctest::Approx(1.5e-3).epsilon(1e-10));
}

TEST_CASE("estimate: clamping and undefined flags, never silent") {
    // Noise pushed h0 + 2 h01 above 1: lower bound clamps to zero.
    const LeakageEstimate clamped = estimate({0.62, 0.2, 0.0, 1e-3});
    CHECK(clamped.eps_low == 0.0);
    CHECK(clamped.eps_low_clamped);

    // Radicand negative: upper bound undefined, flagged.
    const LeakageEstimate undef = estimate({0.4, 0.02, 0.0, 1e-3});
    CHECK_FALSE(undef.eps_high_defined);
    CHECK(std::isnan(undef.eps_high));
    CHECK(undef.eps_low > 0.0);

    CHECK_THROWS_AS(estimate({1.2, 0.1, 0.0, 0.0}), OutOfRangePeaks);
    CHECK_THROWS_AS(estimate({0.5, -0.1, 0.0, 0.0}), OutOfRangePeaks);
}

TEST_CASE("significance_confinement: limits") {
    LeakageEstimate noiseless;
    noiseless.d_eps_low = 0.0;
    CHECK(significance_confinement(noiseless, 1e-6));
    CHECK_FALSE(significance_confinement(noiseless, 0.0));

    LeakageEstimate noisy;
    noisy.d_eps_low = 1e-3;
    CHECK_FALSE(significance_confinement(noisy, 5e-3));  // 5e-3 < 6e-3
    CHECK(significance_confinement(noisy, 7e-3));
}

TEST_CASE("run_pipeline: ideal traces recover analytic bounds") {
    const HermitianOperator Hn = family("Hn");
    const RabiTrace tr = ideal_trace(Hn, default_plan(rabi_period(Hn), 0));
    const PipelineResult res = run_pipeline(tr);
    // The secondary tones are not grid-aligned, so their sidelobes perturb
    // the DC/primary channels by ~h_sec; that limits even the ideal-trace
    // pipeline to a few 1e-5 of the analytic bound.
    CHECK(std::abs(res.est.eps_high - 3.9762e-4) < 5e-5);
    // The "noise" floor of an ideal trace is Hn's own secondary leakage
    // peaks (heights ~ |c_2|^2 scale), orders below the sampled-trace floor.
    CHECK(res.est.dh < 1e-4);
}

TEST_CASE("run_pipeline: sampled traces cover the analytic value") {
    const HermitianOperator Hb = family("Hb");
    const double eps_u = analytic_bounds(analytic_peaks(Hb)).second;
    CHECK(eps_u == doctest::Approx(7.374811e-4).epsilon(1e-5));

    const EigenSystem es = eigendecompose(Hb);
    int covered = 0;
    const int runs = 20;
    for (std::uint64_t seed = 0; seed < runs; ++seed) {
        const RabiTrace tr =
            sample_trace(es, default_plan(rabi_period(Hb), 1024, seed));
        const PipelineResult res = run_pipeline(tr);
        REQUIRE(res.est.eps_high_defined);
        if (std::abs(res.est.eps_high - eps_u) <= 3.0 * res.est.d_eps_high) {
            ++covered;
        }
    }
    CHECK(covered >= runs - 1);
}

TEST_CASE("gamma_for_leakage: inverts the family leakage") {
    for (const double eps : {1e-3, 8e-3}) {
        const double g = gamma_for_leakage("H3", eps);
        CHECK(exact_leakage(family("H3", g)) ==
              doctest::Approx(eps).epsilon(1e-6));
    }
}

TEST_CASE("validation_campaign: small smoke run") {
    CampaignOptions opts;
    const ValidationStats stats = validation_campaign(50, 1024, 42, opts);
    REQUIRE(stats.trials.size() == 50);
    CHECK(stats.ratio >= 0.9);
    CHECK(stats.mean_delta_d > 0.0);
    for (const auto& t : stats.trials) {
        CHECK(t.dim >= 2);
        CHECK(t.dim <= 10);
        CHECK(t.eps_analytic >= 0.0);
    }
    // Deterministic reruns.
    const ValidationStats again = validation_campaign(50, 1024, 42, opts);
    CHECK(again.ratio == stats.ratio);
    CHECK(again.trials[17].eps_high == stats.trials[17].eps_high);
}

TEST_CASE("distance_study: noiseless limit has zero distance") {
    // With huge Ne the projection noise is negligible and every run lands on
    // the analytic bound.
    const HermitianOperator Ha = family("Ha");
    CampaignOptions opts;
    const ValidationStats stats = distance_study(Ha, 5, 1 << 20, 7, opts);
    for (const auto& t : stats.trials) {
        CHECK(t.distance < 2e-4);
    }
    CHECK(stats.ratio == 1.0);
}

TEST_CASE("efficiency_curve: detects leakage with finite budget on H3") {
    EfficiencyOptions opts;
    opts.seeds = 5;
    opts.ne_max = 1 << 14;
    opts.base_seed = 3;
    const double g = gamma_for_leakage("H3", 8e-3);
    const auto points =
        efficiency_curve("H3", {g}, Method::kBoth, opts);
    REQUIRE(points.size() == 1);
    CHECK(points[0].eps_analytic == doctest::Approx(8e-3).epsilon(1e-5));
    // Both methods reach significance well inside the cap at this leakage.
    CHECK(points[0].ne_confinement > 0);
    CHECK(points[0].ne_third_peak > 0);
    // The paper's H3 ordering: the third peak needs fewer measurements.
    CHECK(points[0].ne_third_peak <= points[0].ne_confinement);
}
