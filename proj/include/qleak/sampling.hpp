// sampling.hpp — ideal and projection-noise Rabi traces under the
// restricted measurement model (only |0> is directly detected).

#pragma once

#include <cstdint>
#include <Eigen/Dense>

#include "qleak/eigensystem.hpp"
#include "qleak/hermitian.hpp"

namespace qleak {

// Uniform time grid t_k = k*dt, k = 0..K-1, plus the measurement budget.
struct SamplingPlan {
    double dt = 0.0;                 // time step, > 0
    std::int64_t num_samples = 0;    // K >= 2
    std::int64_t ensemble_size = 0;  // N_e; 0 marks ideal (noiseless)
    std::uint64_t seed = 0;

    double t_ob() const { return dt * static_cast<double>(num_samples); }
    // Throws std::invalid_argument on a bad plan; if a Rabi-period estimate
    // is given, also enforces the Nyquist limit dt <= T/2.
    void validate(double rabi_period = 0.0) const;
};

// Default plan: dt = T_Rabi/80, t_ob = 30*T_Rabi, N_e = 1024. The paper
// fixes t_ob = 30 periods; the per-period density is a knob (see README).
SamplingPlan default_plan(double rabi_period, std::int64_t ensemble_size = 1024,
                          std::uint64_t seed = 0, int cycles = 30,
                          int samples_per_period = 80);

struct RabiTrace {
    Eigen::VectorXd times;
    Eigen::VectorXd populations;     // p_k in [0, 1]
    std::int64_t ensemble_size = 0;  // 0 = ideal
    std::uint64_t seed = 0;
};

// p_k = |<0|U(t_k)|0>|^2 exactly (ensemble_size recorded as 0).
RabiTrace ideal_trace(const HermitianOperator& H, const SamplingPlan& plan);
RabiTrace ideal_trace(const EigenSystem& es, const SamplingPlan& plan);

// p_k = Binomial(N_e, f(t_k)) / N_e with a per-point substream of plan.seed;
// identical seed => identical trace, independent of evaluation order.
RabiTrace sample_trace(const HermitianOperator& H, const SamplingPlan& plan);
RabiTrace sample_trace(const EigenSystem& es, const SamplingPlan& plan);

}  // namespace qleak
