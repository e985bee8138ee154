#include "qleak/eigensystem.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qleak {

namespace {

using Complex = std::complex<double>;

// Frobenius norm of the strict upper triangle.
double off_diagonal_norm(const Eigen::MatrixXcd& A) {
    double s = 0.0;
    for (Eigen::Index p = 0; p < A.rows(); ++p) {
        for (Eigen::Index q = p + 1; q < A.cols(); ++q) {
            s += std::norm(A(p, q));
        }
    }
    return std::sqrt(s);
}

// One Jacobi rotation zeroing A(p,q); V accumulates the eigenvector basis.
void rotate(Eigen::MatrixXcd& A, Eigen::MatrixXcd& V, Eigen::Index p,
            Eigen::Index q) {
    const Complex g = A(p, q);
    const double absg = std::abs(g);
    if (absg == 0.0) return;

    const double alpha = A(p, p).real();
    const double beta = A(q, q).real();
    const double tau = (beta - alpha) / (2.0 * absg);
    const double sign = (tau >= 0.0) ? 1.0 : -1.0;
    const double t = sign / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const Complex sp = (t * c) * (g / absg);  // rotation's (p,q) entry

    const Eigen::Index n = A.rows();
    // A <- A R (columns p, q), then A <- R^dagger A (rows p, q).
    for (Eigen::Index i = 0; i < n; ++i) {
        const Complex aip = A(i, p);
        const Complex aiq = A(i, q);
        A(i, p) = c * aip - std::conj(sp) * aiq;
        A(i, q) = sp * aip + c * aiq;
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex apj = A(p, j);
        const Complex aqj = A(q, j);
        A(p, j) = c * apj - sp * aqj;
        A(q, j) = std::conj(sp) * apj + c * aqj;
    }
    A(p, q) = 0.0;
    A(q, p) = 0.0;
    A(p, p) = Complex(A(p, p).real(), 0.0);
    A(q, q) = Complex(A(q, q).real(), 0.0);

    for (Eigen::Index i = 0; i < n; ++i) {
        const Complex vip = V(i, p);
        const Complex viq = V(i, q);
        V(i, p) = c * vip - std::conj(sp) * viq;
        V(i, q) = sp * vip + c * viq;
    }
}

// Re-base a degenerate eigenvalue cluster [first, last) by Gram-Schmidt of
// the canonical basis projected onto the cluster subspace, in ascending
// canonical order, so the basis choice is reproducible across inputs that
// differ only by rounding.
void fix_degenerate_cluster(Eigen::MatrixXcd& V, Eigen::Index first,
                            Eigen::Index last) {
    const Eigen::Index n = V.rows();
    const Eigen::Index m = last - first;
    const Eigen::MatrixXcd block = V.middleCols(first, m);
    const Eigen::MatrixXcd proj = block * block.adjoint();  // subspace projector

    std::vector<Eigen::VectorXcd> basis;
    for (Eigen::Index j = 0; j < n && static_cast<Eigen::Index>(basis.size()) < m;
         ++j) {
        Eigen::VectorXcd w = proj.col(j);  // proj * e_j
        for (const auto& b : basis) w -= b.dot(w) * b;
        const double norm = w.norm();
        if (norm > 1e-8) basis.push_back(w / norm);
    }
    if (static_cast<Eigen::Index>(basis.size()) == m) {
        for (Eigen::Index k = 0; k < m; ++k) V.col(first + k) = basis[k];
    }
    // If the canonical sweep failed to span the subspace (pathological
    // rounding), keep the Jacobi basis: still orthonormal and deterministic.
}

// Make the largest-magnitude component of each eigenvector real positive.
void fix_phases(Eigen::MatrixXcd& V) {
    for (Eigen::Index j = 0; j < V.cols(); ++j) {
        Eigen::Index imax = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < V.rows(); ++i) {
            const double a = std::abs(V(i, j));
            if (a > best + 1e-15) {
                best = a;
                imax = i;
            }
        }
        if (best > 0.0) V.col(j) *= std::conj(V(imax, j)) / best;
    }
}

}  // namespace

EigenSystem eigendecompose(const HermitianOperator& H) {
    const Eigen::Index n = H.dim();
    Eigen::MatrixXcd A = H.matrix();
    Eigen::MatrixXcd V = Eigen::MatrixXcd::Identity(n, n);

    const double scale = std::max(1.0, A.norm());
    constexpr int kMaxSweeps = 60;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_norm(A) <= 1e-14 * scale) break;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                if (std::abs(A(p, q)) > 1e-300) rotate(A, V, p, q);
            }
        }
    }

    // Sort ascending with a stable permutation.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) {
                         return A(a, a).real() < A(b, b).real();
                     });

    EigenSystem es;
    es.eigenvalues.resize(n);
    es.eigenvectors.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        es.eigenvalues(j) = A(order[static_cast<std::size_t>(j)],
                              order[static_cast<std::size_t>(j)])
                                .real();
        es.eigenvectors.col(j) = V.col(order[static_cast<std::size_t>(j)]);
    }

    // Deterministic basis inside degenerate clusters, then phase fixing.
    const double deg_tol =
        1e-10 * std::max(1.0, es.eigenvalues.cwiseAbs().maxCoeff());
    Eigen::Index first = 0;
    while (first < n) {
        Eigen::Index last = first + 1;
        while (last < n &&
               es.eigenvalues(last) - es.eigenvalues(last - 1) <= deg_tol) {
            ++last;
        }
        if (last - first > 1) fix_degenerate_cluster(es.eigenvectors, first, last);
        first = last;
    }
    fix_phases(es.eigenvectors);
    return es;
}

Eigen::MatrixXcd propagate(const EigenSystem& es, double t) {
    if (!std::isfinite(t)) {
        throw std::invalid_argument("propagate: t must be finite");
    }
    const Eigen::Index n = es.eigenvalues.size();
    Eigen::VectorXcd phases(n);
    for (Eigen::Index a = 0; a < n; ++a) {
        phases(a) = std::polar(1.0, -es.eigenvalues(a) * t);
    }
    return es.eigenvectors * phases.asDiagonal() * es.eigenvectors.adjoint();
}

Eigen::MatrixXcd propagate(const HermitianOperator& H, double t) {
    return propagate(eigendecompose(H), t);
}

}  // namespace qleak
