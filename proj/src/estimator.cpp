#include "qleak/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "qleak/errors.hpp"
#include "qleak/families.hpp"
#include "qleak/leakage.hpp"
#include "qleak/parallel.hpp"
#include "qleak/rng.hpp"

namespace qleak {

LeakageEstimate estimate(const PeakStats& stats) {
    if (stats.h0 < 0.0 || stats.h0 > 1.0 || stats.h01 < 0.0 ||
        stats.h01 > 1.0) {
        throw OutOfRangePeaks("estimate: peak heights must lie in [0, 1]");
    }
    LeakageEstimate est;
    est.h0 = stats.h0;
    est.h01 = stats.h01;
    est.dh = stats.noise_sd;

    const double s = stats.h0 + 2.0 * stats.h01;
    if (s > 1.0) {
        est.eps_low = 0.0;
        est.eps_low_clamped = true;
    } else {
        est.eps_low = 1.0 - std::sqrt(s);
    }
    est.d_eps_low = (s > 0.0) ? 3.0 * stats.noise_sd / (2.0 * std::sqrt(s))
                              : std::numeric_limits<double>::infinity();

    const double r = 2.0 * stats.h0 + 4.0 * stats.h01 - 1.0;
    if (r <= 0.0) {
        est.eps_high_defined = false;
        est.eps_high = std::numeric_limits<double>::quiet_NaN();
        est.d_eps_high = std::numeric_limits<double>::quiet_NaN();
    } else {
        est.eps_high = 0.5 * (1.0 - std::sqrt(r));
        est.d_eps_high = 3.0 * stats.noise_sd / (2.0 * std::sqrt(r));
    }
    return est;
}

bool significance_confinement(const LeakageEstimate& est,
                              double eps_l_analytic) {
    return eps_l_analytic - 6.0 * est.d_eps_low > 0.0;
}

PipelineResult run_pipeline(const RabiTrace& trace, int guard) {
    PipelineResult out;
    out.spectrum = dft(phase_match(trace), guard);
    out.est = estimate(peak_stats(out.spectrum));
    return out;
}

// ---------------------------------------------------------------- campaigns

double gamma_for_leakage(const std::string& family_name, double eps) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("gamma_for_leakage: eps must be > 0");
    }
    auto leak = [&](double g) {
        return exact_leakage(family(family_name, g));
    };
    double lo = 0.0, hi = 0.01;
    while (leak(hi) < eps) {
        hi *= 2.0;
        if (hi > 4.0) {
            throw std::invalid_argument(
                "gamma_for_leakage: eps unreachable for family " + family_name);
        }
    }
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        (leak(mid) < eps ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

// Channel of the largest analytic secondary peak that is outside the guard
// zones of DC and the primary at the plan's resolution; 0 if none exists.
double admissible_candidate_omega(const PeakSet& peaks, int cycles, int guard,
                                  std::int64_t num_samples) {
    const double omega01 = peaks.primary_omega();
    const double dw = omega01 / static_cast<double>(cycles);
    const auto jp = static_cast<std::int64_t>(cycles);
    const std::int64_t jmax = num_samples / 2;
    const auto [pa, pb] = peaks.primary_pair();

    double best_h = 0.0, best_omega = 0.0;
    for (const auto& p : peaks.pairs) {
        if (p.a == pa && p.b == pb) continue;
        const auto j = static_cast<std::int64_t>(std::llround(p.omega / dw));
        if (j <= guard || std::llabs(j - jp) <= guard || j > jmax) continue;
        if (p.height > best_h) {
            best_h = p.height;
            best_omega = p.omega;
        }
    }
    return best_omega;
}

}  // namespace

std::vector<EfficiencyPoint> efficiency_curve(const std::string& family_name,
                                              const std::vector<double>& gammas,
                                              Method method,
                                              const EfficiencyOptions& opts) {
    const unsigned workers =
        opts.workers == 0 ? default_workers() : opts.workers;
    std::vector<EfficiencyPoint> points(gammas.size());

    for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
        const HermitianOperator H = family(family_name, gammas[gi]);
        const EigenSystem es = eigendecompose(H);
        const PeakSet peaks = analytic_peaks(es);
        const double eps_l_analytic = analytic_bounds(peaks).first;
        const double rabi_period =
            2.0 * std::numbers::pi / peaks.primary_omega();

        EfficiencyPoint pt;
        pt.gamma = gammas[gi];
        pt.eps_analytic = exact_leakage(es);

        const std::int64_t num_samples =
            static_cast<std::int64_t>(opts.cycles) * opts.samples_per_period;
        const double omega_cand = admissible_candidate_omega(
            peaks, opts.cycles, opts.guard, num_samples);

        const bool want_conf = method != Method::kThirdPeak;
        const bool want_third = method != Method::kConfinement;
        bool need_conf = want_conf;
        bool need_third = want_third && omega_cand > 0.0;

        int ne_log = 0;
        for (std::int64_t ne = opts.ne_min;
             ne <= opts.ne_max && (need_conf || need_third); ne *= 2, ++ne_log) {
            std::vector<int> conf_hits(static_cast<std::size_t>(opts.seeds), 0);
            std::vector<int> third_hits(static_cast<std::size_t>(opts.seeds), 0);
            parallel_for(
                static_cast<std::size_t>(opts.seeds), workers,
                [&](std::size_t s) {
                    SamplingPlan plan = default_plan(
                        rabi_period, ne,
                        substream_seed(
                            substream_seed(
                                substream_seed(opts.base_seed, gi),
                                static_cast<std::uint64_t>(ne_log)),
                            s),
                        opts.cycles, opts.samples_per_period);
                    const RabiTrace trace = sample_trace(es, plan);
                    const PipelineResult res = run_pipeline(trace, opts.guard);
                    if (need_conf &&
                        significance_confinement(res.est, eps_l_analytic)) {
                        conf_hits[s] = 1;
                    }
                    if (need_third &&
                        third_peak_test(res.spectrum, omega_cand)) {
                        third_hits[s] = 1;
                    }
                });
            const int conf_total =
                std::accumulate(conf_hits.begin(), conf_hits.end(), 0);
            const int third_total =
                std::accumulate(third_hits.begin(), third_hits.end(), 0);
            if (need_conf && 2 * conf_total > opts.seeds) {
                pt.ne_confinement = ne;
                need_conf = false;
            }
            if (need_third && 2 * third_total > opts.seeds) {
                pt.ne_third_peak = ne;
                need_third = false;
            }
        }
        points[gi] = pt;
    }
    return points;
}

namespace {

TrialRecord run_trial(const EigenSystem& es, double eps_u_analytic, int dim,
                      std::int64_t ne, std::uint64_t trial_seed,
                      const CampaignOptions& opts) {
    const PeakSet peaks = analytic_peaks(es);
    const double rabi_period = 2.0 * std::numbers::pi / peaks.primary_omega();
    SamplingPlan plan = default_plan(rabi_period, ne, trial_seed, opts.cycles,
                                     opts.samples_per_period);
    const RabiTrace trace = sample_trace(es, plan);
    const PipelineResult res = run_pipeline(trace, opts.guard);

    TrialRecord rec;
    rec.seed = trial_seed;
    rec.dim = dim;
    rec.eps_analytic = eps_u_analytic;
    rec.eps_low = res.est.eps_low;
    rec.eps_high = res.est.eps_high;
    rec.d_eps_low = res.est.d_eps_low;
    rec.d_eps_high = res.est.d_eps_high;
    rec.eps_low_clamped = res.est.eps_low_clamped;
    rec.eps_high_defined = res.est.eps_high_defined;
    if (res.est.eps_high_defined) {
        rec.distance = std::abs(res.est.eps_high - eps_u_analytic);
        rec.delta_d = res.est.d_eps_high;
    } else {
        rec.distance = std::numeric_limits<double>::infinity();
        rec.delta_d = 0.0;
    }
    return rec;
}

ValidationStats summarize(std::vector<TrialRecord> trials) {
    ValidationStats stats;
    stats.trials = std::move(trials);
    std::size_t hits = 0;
    double dsum = 0.0;
    for (const auto& t : stats.trials) {
        if (t.distance - 3.0 * t.delta_d <= 0.0) ++hits;
        if (t.eps_high_defined) dsum += t.delta_d;
    }
    stats.ratio = stats.trials.empty()
                      ? 0.0
                      : static_cast<double>(hits) /
                            static_cast<double>(stats.trials.size());
    stats.mean_delta_d =
        stats.trials.empty()
            ? 0.0
            : dsum / static_cast<double>(stats.trials.size());
    return stats;
}

}  // namespace

ValidationStats validation_campaign(int n_trials, std::int64_t ne,
                                    std::uint64_t seed,
                                    const CampaignOptions& opts) {
    const unsigned workers =
        opts.workers == 0 ? default_workers() : opts.workers;
    std::vector<TrialRecord> trials(static_cast<std::size_t>(n_trials));
    parallel_for(static_cast<std::size_t>(n_trials), workers,
                 [&](std::size_t i) {
                     const std::uint64_t hseed =
                         substream_seed(seed, 2 * static_cast<std::uint64_t>(i));
                     const std::uint64_t tseed = substream_seed(
                         seed, 2 * static_cast<std::uint64_t>(i) + 1);
                     const HermitianOperator H =
                         random_leaky_hamiltonian(hseed);
                     const EigenSystem es = eigendecompose(H);
                     const double eps_u_analytic =
                         analytic_bounds(analytic_peaks(es)).second;
                     trials[i] = run_trial(es, eps_u_analytic,
                                           static_cast<int>(H.dim()), ne,
                                           tseed, opts);
                 });
    return summarize(std::move(trials));
}

ValidationStats distance_study(const HermitianOperator& H, int n_runs,
                               std::int64_t ne, std::uint64_t seed,
                               const CampaignOptions& opts) {
    const unsigned workers =
        opts.workers == 0 ? default_workers() : opts.workers;
    const EigenSystem es = eigendecompose(H);
    const double eps_u_analytic = analytic_bounds(analytic_peaks(es)).second;
    std::vector<TrialRecord> trials(static_cast<std::size_t>(n_runs));
    parallel_for(static_cast<std::size_t>(n_runs), workers, [&](std::size_t i) {
        trials[i] = run_trial(es, eps_u_analytic, static_cast<int>(H.dim()),
                              ne, substream_seed(seed, i), opts);
    });
    return summarize(std::move(trials));
}

}  // namespace qleak
