// decoherence.hpp — Markovian (Pauli-channel) decoherence of a perfectly
// confined qubit: Bloch-equation evolution, the analytic one-sided Fourier
// spectrum via the resolvent, Lorentzian peak approximations and areas, and
// the maximum-DFT-resolution bound.
//
// Model: H = (d/2)(cos(theta) Z + sin(theta) X) with Lindblad operators
// X, Y, Z at rates Gx, Gy, Gz. Writing rho = I/2 + xX + yY + zZ, the Bloch
// vector S = (x, y, z) obeys dS/dt = A S with the constant matrix A below,
// S(0) = (0, 0, 1/2), and the measured signal is f(t) = 1/2 + z(t).
//
// In the weak-damping regime (d >> G) the spectrum of z consists of a
// half-weight delta at DC plus Lorentzians of width
//   Gamma_alpha = 2 (Gy + Gz + cos^2(theta) (Gx - Gz))      (DC peak)
//   Gamma_beta  = Gx (1 + sin^2 theta) + Gy + Gz (2 - sin^2 theta)  (Rabi peak)

#pragma once

#include <Eigen/Dense>

#include "qleak/sampling.hpp"

namespace qleak {

struct DecoherenceConfig {
    double theta = 0.0;   // Hamiltonian angle, radians
    double gap = 1.0;     // d, Rabi angular frequency scale; > 0
    double gamma_x = 0.0; // Pauli rates, inverse-time units, >= 0
    double gamma_y = 0.0;
    double gamma_z = 0.0;

    double max_rate() const;
    double gamma_alpha() const;  // DC Lorentzian width
    double gamma_beta() const;   // Rabi Lorentzian width
    void validate() const;       // throws std::invalid_argument
};

struct BlochState {
    double x = 0.0, y = 0.0, z = 0.0;
    double time = 0.0;
};

// The printed Bloch matrix: diagonal -2(Gy+Gz), -2(Gx+Gz), -2(Gx+Gy);
// off-diagonals +-d cos(theta), +-d sin(theta).
Eigen::Matrix3d bloch_matrix(const DecoherenceConfig& cfg);

// Exact evolution of the LTI system by matrix-exponential stepping:
// p_k = 1/2 + z(t_k) on t_k = k*dt, k = 0..num_samples-1.
RabiTrace evolve_bloch(const DecoherenceConfig& cfg, std::int64_t num_samples,
                       double dt);

// One-sided Fourier transform of z(t): z-component of -(A - i w I)^{-1} S(0)
// at each frequency. Throws SingularResolvent (possible only at zero damping
// on resonance).
Eigen::VectorXcd analytic_spectrum(const DecoherenceConfig& cfg,
                                   const Eigen::VectorXd& omegas);

struct LorentzianPeaks {
    double gamma_alpha = 0.0;   // width of the DC peak
    double gamma_beta = 0.0;    // width of the +-d peaks
    double amp_dc = 0.0;        // cos^2(theta)/2, DC Lorentzian prefactor
    double amp_rabi = 0.0;      // sin^2(theta)/4, Rabi Lorentzian prefactor
    double dc_delta_weight = 0.5;  // the delta(w)/2 offset, bookkept apart
};

// Weak-damping Lorentzian parameters. Throws RegimeViolation unless
// gap > regime_factor * max rate (default 50: keeps the expansions under 5%).
LorentzianPeaks lorentzian_peaks(const DecoherenceConfig& cfg,
                                 double regime_factor = 50.0);

// Peak areas over an integration half-window eta:
//   h0(eta)  = 1/2 + (cos^2 theta / pi)   * arctan(eta / Gamma_alpha)
//   h01(eta) = (sin^2 theta / (2 pi))     * arctan(eta / Gamma_beta)
// Both approach the decoherence-free heights as eta/Gamma -> inf.
std::pair<double, double> peak_area(const DecoherenceConfig& cfg, double eta);

struct ResolutionBound {
    double domega = 0.0;    // max channel spacing achieving the target
    double dfreq = 0.0;     // domega / 2 pi
    double t_ob_min = 0.0;  // implied minimum observation time 2 pi / domega
};

// Largest DFT channel spacing at which the Lorentzian tails alone keep the
// apparent leakage below zeta: domega = Gamma * tan(pi (1 - 2 zeta)^2 / 2),
// assuming Gamma_alpha ~= Gamma_beta = Gamma. Throws DegenerateTarget unless
// 0 < zeta < 1/2.
//
// Caveat (affects how "respecting the bound" should be read): the bound
// credits the peak channel with the full Lorentzian area within +-domega, but
// a DFT channel of a damped tone only captures (1 - e^{-G t_ob})/(G t_ob) of
// the undamped height — a pi^2/2 larger loss at the boundary. Operating at a
// modest margin inside the bound (t_ob <~ 6.4 zeta / Gamma) keeps the
// end-to-end estimate below zeta.
ResolutionBound max_resolution(double gamma, double zeta);

}  // namespace qleak
