#include "qleak/decoherence.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "qleak/errors.hpp"

namespace qleak {

double DecoherenceConfig::max_rate() const {
    return std::max({gamma_x, gamma_y, gamma_z});
}

double DecoherenceConfig::gamma_alpha() const {
    const double c2 = std::cos(theta) * std::cos(theta);
    return 2.0 * (gamma_y + gamma_z + c2 * (gamma_x - gamma_z));
}

double DecoherenceConfig::gamma_beta() const {
    const double s2 = std::sin(theta) * std::sin(theta);
    return gamma_x * (1.0 + s2) + gamma_y + gamma_z * (2.0 - s2);
}

void DecoherenceConfig::validate() const {
    if (!(gap > 0.0)) {
        throw std::invalid_argument("DecoherenceConfig: gap must be > 0");
    }
    if (gamma_x < 0.0 || gamma_y < 0.0 || gamma_z < 0.0) {
        throw std::invalid_argument("DecoherenceConfig: rates must be >= 0");
    }
}

Eigen::Matrix3d bloch_matrix(const DecoherenceConfig& cfg) {
    cfg.validate();
    const double c = std::cos(cfg.theta);
    const double s = std::sin(cfg.theta);
    Eigen::Matrix3d a;
    a << -2.0 * (cfg.gamma_y + cfg.gamma_z), cfg.gap * c, 0.0,
        -cfg.gap * c, -2.0 * (cfg.gamma_x + cfg.gamma_z), cfg.gap * s,
        0.0, -cfg.gap * s, -2.0 * (cfg.gamma_x + cfg.gamma_y);
    return a;
}

RabiTrace evolve_bloch(const DecoherenceConfig& cfg, std::int64_t num_samples,
                       double dt) {
    if (num_samples < 2 || !(dt > 0.0)) {
        throw std::invalid_argument("evolve_bloch: need K >= 2 and dt > 0");
    }
    const Eigen::Matrix3d step = (bloch_matrix(cfg) * dt).exp();
    Eigen::Vector3d s(0.0, 0.0, 0.5);

    RabiTrace tr;
    tr.times.resize(num_samples);
    tr.populations.resize(num_samples);
    for (std::int64_t k = 0; k < num_samples; ++k) {
        tr.times(k) = dt * static_cast<double>(k);
        tr.populations(k) = 0.5 + s(2);
        s = step * s;
    }
    tr.ensemble_size = 0;
    return tr;
}

Eigen::VectorXcd analytic_spectrum(const DecoherenceConfig& cfg,
                                   const Eigen::VectorXd& omegas) {
    const Eigen::Matrix3d a = bloch_matrix(cfg);
    const Eigen::Vector3cd s0(0.0, 0.0, 0.5);
    Eigen::VectorXcd out(omegas.size());
    for (Eigen::Index i = 0; i < omegas.size(); ++i) {
        Eigen::Matrix3cd m = a.cast<std::complex<double>>();
        m.diagonal().array() -= std::complex<double>(0.0, omegas(i));
        const std::complex<double> det = m.determinant();
        const double scale = m.cwiseAbs().maxCoeff();
        if (std::abs(det) < 1e-12 * scale * scale * scale) {
            throw SingularResolvent(
                "analytic_spectrum: A - i w I singular (zero damping on "
                "resonance)");
        }
        out(i) = (-m.inverse() * s0)(2);
    }
    return out;
}

LorentzianPeaks lorentzian_peaks(const DecoherenceConfig& cfg,
                                 double regime_factor) {
    cfg.validate();
    if (cfg.max_rate() > 0.0 && cfg.gap <= regime_factor * cfg.max_rate()) {
        throw RegimeViolation(
            "lorentzian_peaks: gap must exceed regime_factor * max rate for "
            "the weak-damping expansion");
    }
    LorentzianPeaks lp;
    lp.gamma_alpha = cfg.gamma_alpha();
    lp.gamma_beta = cfg.gamma_beta();
    const double c = std::cos(cfg.theta);
    const double s = std::sin(cfg.theta);
    lp.amp_dc = 0.5 * c * c;
    lp.amp_rabi = 0.25 * s * s;
    lp.dc_delta_weight = 0.5;
    return lp;
}

std::pair<double, double> peak_area(const DecoherenceConfig& cfg, double eta) {
    cfg.validate();
    if (!(eta > 0.0)) {
        throw std::invalid_argument("peak_area: eta must be > 0");
    }
    const double c2 = std::cos(cfg.theta) * std::cos(cfg.theta);
    const double s2 = std::sin(cfg.theta) * std::sin(cfg.theta);
    const double ga = cfg.gamma_alpha();
    const double gb = cfg.gamma_beta();
    // At zero damping the Lorentzians collapse to deltas: full area captured.
    const double at_a =
        ga > 0.0 ? std::atan(eta / ga) : std::numbers::pi / 2.0;
    const double at_b =
        gb > 0.0 ? std::atan(eta / gb) : std::numbers::pi / 2.0;
    const double h0 = 0.5 + c2 / std::numbers::pi * at_a;
    const double h01 = s2 / (2.0 * std::numbers::pi) * at_b;
    return {h0, h01};
}

ResolutionBound max_resolution(double gamma, double zeta) {
    if (!(zeta > 0.0) || zeta >= 0.5) {
        throw DegenerateTarget("max_resolution: zeta must lie in (0, 1/2)");
    }
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("max_resolution: gamma must be > 0");
    }
    const double arg = std::numbers::pi * (1.0 - 2.0 * zeta) *
                       (1.0 - 2.0 * zeta) / 2.0;
    ResolutionBound rb;
    rb.domega = gamma * std::tan(arg);
    rb.dfreq = rb.domega / (2.0 * std::numbers::pi);
    rb.t_ob_min = 2.0 * std::numbers::pi / rb.domega;
    return rb;
}

}  // namespace qleak
