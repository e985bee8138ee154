#include "qleak/sampling.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "qleak/rng.hpp"

namespace qleak {

void SamplingPlan::validate(double rabi_period) const {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("SamplingPlan: dt must be positive finite");
    }
    if (num_samples < 2) {
        throw std::invalid_argument("SamplingPlan: need at least 2 samples");
    }
    if (ensemble_size < 0) {
        throw std::invalid_argument("SamplingPlan: ensemble_size must be >= 0");
    }
    if (rabi_period > 0.0 && dt > rabi_period / 2.0 + 1e-12 * rabi_period) {
        throw std::invalid_argument(
            "SamplingPlan: dt exceeds the Nyquist limit T_Rabi/2");
    }
}

SamplingPlan default_plan(double rabi_period, std::int64_t ensemble_size,
                          std::uint64_t seed, int cycles,
                          int samples_per_period) {
    if (!(rabi_period > 0.0)) {
        throw std::invalid_argument("default_plan: rabi_period must be > 0");
    }
    SamplingPlan plan;
    plan.dt = rabi_period / static_cast<double>(samples_per_period);
    plan.num_samples =
        static_cast<std::int64_t>(cycles) * samples_per_period;
    plan.ensemble_size = ensemble_size;
    plan.seed = seed;
    plan.validate(rabi_period);
    return plan;
}

namespace {

// f(t_k) = |sum_a |c_a|^2 e^{-i lambda_a t_k}|^2, evaluated from the
// eigensystem once per trace.
Eigen::VectorXd ideal_populations(const EigenSystem& es,
                                  const SamplingPlan& plan) {
    const Eigen::Index n = es.eigenvalues.size();
    Eigen::VectorXd w(n);
    for (Eigen::Index a = 0; a < n; ++a) w(a) = std::norm(es.eigenvectors(0, a));

    Eigen::VectorXd p(plan.num_samples);
    for (std::int64_t k = 0; k < plan.num_samples; ++k) {
        const double t = plan.dt * static_cast<double>(k);
        std::complex<double> amp = 0.0;
        for (Eigen::Index a = 0; a < n; ++a) {
            amp += w(a) * std::polar(1.0, -es.eigenvalues(a) * t);
        }
        p(k) = std::min(1.0, std::max(0.0, std::norm(amp)));
    }
    return p;
}

Eigen::VectorXd time_grid(const SamplingPlan& plan) {
    Eigen::VectorXd t(plan.num_samples);
    for (std::int64_t k = 0; k < plan.num_samples; ++k) {
        t(k) = plan.dt * static_cast<double>(k);
    }
    return t;
}

}  // namespace

RabiTrace ideal_trace(const EigenSystem& es, const SamplingPlan& plan) {
    plan.validate();
    RabiTrace tr;
    tr.times = time_grid(plan);
    tr.populations = ideal_populations(es, plan);
    tr.ensemble_size = 0;
    tr.seed = plan.seed;
    return tr;
}

RabiTrace ideal_trace(const HermitianOperator& H, const SamplingPlan& plan) {
    return ideal_trace(eigendecompose(H), plan);
}

RabiTrace sample_trace(const EigenSystem& es, const SamplingPlan& plan) {
    plan.validate();
    if (plan.ensemble_size < 1) {
        throw std::invalid_argument("sample_trace: ensemble_size must be >= 1");
    }
    RabiTrace tr;
    tr.times = time_grid(plan);
    const Eigen::VectorXd f = ideal_populations(es, plan);
    tr.populations.resize(plan.num_samples);
    for (std::int64_t k = 0; k < plan.num_samples; ++k) {
        SplitMix64 gen(substream_seed(plan.seed, static_cast<std::uint64_t>(k)));
        const std::int64_t hits = binomial_draw(gen, plan.ensemble_size, f(k));
        tr.populations(k) = static_cast<double>(hits) /
                            static_cast<double>(plan.ensemble_size);
    }
    tr.ensemble_size = plan.ensemble_size;
    tr.seed = plan.seed;
    return tr;
}

RabiTrace sample_trace(const HermitianOperator& H, const SamplingPlan& plan) {
    return sample_trace(eigendecompose(H), plan);
}

}  // namespace qleak
