#include "qleak/leakage.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qleak/errors.hpp"

namespace qleak {

double PeakSet::primary_height() const {
    double best = 0.0;
    for (const auto& p : pairs) best = std::max(best, p.height);
    return best;
}

std::pair<int, int> PeakSet::primary_pair() const {
    const Pair* best = nullptr;
    for (const auto& p : pairs) {
        if (best == nullptr || p.height > best->height) best = &p;
    }
    return best != nullptr ? std::pair{best->a, best->b} : std::pair{0, 1};
}

double PeakSet::primary_omega() const {
    const Pair* best = nullptr;
    for (const auto& p : pairs) {
        if (best == nullptr || p.height > best->height) best = &p;
    }
    return best != nullptr ? best->omega : 0.0;
}

PeakSet analytic_peaks(const EigenSystem& es) {
    const Eigen::Index n = es.eigenvalues.size();
    // c_a = <a|0> = conj(A(0,a)); only |c_a|^2 enters.
    Eigen::VectorXd w(n);
    for (Eigen::Index a = 0; a < n; ++a) w(a) = std::norm(es.eigenvectors(0, a));

    PeakSet ps;
    ps.h0 = w.array().square().sum();
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = a + 1; b < n; ++b) {
            ps.pairs.push_back({static_cast<int>(a), static_cast<int>(b),
                                w(a) * w(b),
                                std::abs(es.eigenvalues(b) - es.eigenvalues(a))});
        }
    }
    return ps;
}

PeakSet analytic_peaks(const HermitianOperator& H) {
    return analytic_peaks(eigendecompose(H));
}

double exact_leakage(const EigenSystem& es) {
    const PeakSet ps = analytic_peaks(es);
    const auto [a, b] = ps.primary_pair();
    const double wa = std::norm(es.eigenvectors(0, a));
    const double wb = std::norm(es.eigenvectors(0, b));
    return std::max(0.0, 1.0 - wa - wb);
}

double exact_leakage(const HermitianOperator& H) {
    return exact_leakage(eigendecompose(H));
}

std::pair<double, double> analytic_bounds(const PeakSet& peaks) {
    const double h01 = peaks.primary_height();
    const double s = peaks.h0 + 2.0 * h01;
    const double r = 2.0 * peaks.h0 + 4.0 * h01 - 1.0;
    if (r < 0.0) {
        throw RadicandNegative(
            "analytic_bounds: 2 h0 + 4 h01 - 1 = " + std::to_string(r) +
            " < 0; system too poorly confined for the upper bound");
    }
    const double eps_low = std::max(0.0, 1.0 - std::sqrt(std::min(s, 1.0)));
    const double eps_high = 0.5 * (1.0 - std::sqrt(r));
    return {eps_low, eps_high};
}

}  // namespace qleak
