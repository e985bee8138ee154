// spectral.hpp — discrete Fourier analysis of Rabi traces: normalized DFT,
// phase-matching truncation, peak identification, and noise-floor statistics.
//
// Conventions (they matter for the bounds downstream):
//  - F(w_j) = (1/K) sum_k p_k e^{-i w_j t_k} on the one-sided grid
//    w_j = j * 2*pi/t_ob, j = 0..K/2; magnitudes are returned. With this
//    normalization a phase-matched trace has DC channel = h0 and primary
//    channel = h01 exactly (single-sided; the mirror is folded into the
//    "x2" of h0 + 2*h01).
//  - No zero-padding and no mean subtraction: padding redistributes peak
//    mass and the mean carries h0.
//  - Noise statistics exclude DC and the primary peak plus `guard` channels
//    on each side of both (spectral-leakage contamination).

#pragma once

#include <Eigen/Dense>

#include "qleak/sampling.hpp"

namespace qleak {

struct Spectrum {
    Eigen::VectorXd freqs;        // angular, uniformly spaced by resolution
    Eigen::VectorXd amps;         // |F(w_j)| >= 0
    double resolution = 0.0;      // delta omega = 2*pi/t_ob
    int guard = 1;                // guard channels used for noise stats
    int primary_index = 0;        // argmax amplitude excluding DC
    double primary_dc = 0.0;      // amps[0], the h0 channel
    double primary_amp = 0.0;     // amps[primary_index], the h01 channel
    double primary_omega = 0.0;   // freqs[primary_index]
    double noise_mean = 0.0;      // mean of remaining channels
    double noise_sd = 0.0;        // sample sd of remaining channels (delta h)
    bool primary_at_edge = false; // primary landed on the last channel
};

// Full one-sided DFT of a uniformly sampled trace (>= 4 samples).
// Throws NonUniformSampling.
Spectrum dft(const RabiTrace& trace, int guard = 1);

// Phase matching: return the prefix of `trace` (length K' <= K) maximizing
// the trial function
//   P = [2 F(w_p) - F(w_p - dw) - F(w_p + dw)] / [F(w_p - dw) + F(w_p + dw)].
// The scan covers K' in [max(ceil(4T/dt), K - ceil(T/dt)), K]: at least four
// Rabi periods, trimming at most one period off the end (trimming more
// shrinks t_ob and merges secondary peaks into the primary channel, biasing
// the bounds). Ties break toward the smallest K'. Requires the trace to span
// >= 5 Rabi periods (TooShort otherwise).
RabiTrace phase_match(const RabiTrace& trace);

struct PeakStats {
    double h0 = 0.0;
    double h01 = 0.0;
    double noise_mean = 0.0;
    double noise_sd = 0.0;
};

// Convenience accessor for the four numbers the estimator consumes.
PeakStats peak_stats(const Spectrum& spec);

// Third-peak detection: true iff the candidate channel exceeds the noise
// floor by 3*delta_h, with the candidate excluded from the noise statistics
// it is tested against.
//
// Blind mode picks the largest admissible channel (outside the guard zones of
// DC and the primary). Note the caveat: channel magnitudes are Rayleigh-
// distributed under pure noise, so the *maximum* over ~K/2 channels sits near
// 3.4 sigma and the blind test fires on noise almost always. When the
// transition frequency is known (e.g. efficiency studies against a known
// family), pass it as `omega_candidate` to test that single pre-registered
// channel, restoring the intended 3-sigma behavior.
bool third_peak_test(const Spectrum& spec);
bool third_peak_test(const Spectrum& spec, double omega_candidate);

}  // namespace qleak
