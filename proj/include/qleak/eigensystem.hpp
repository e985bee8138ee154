// eigensystem.hpp — deterministic Hermitian eigendecomposition and unitary
// propagation.
//
// The decomposition uses cyclic Jacobi rotations: for the dims handled here
// (<= ~16) simplicity and bit-level determinism matter more than asymptotic
// speed. Eigenvalues are returned ascending; each eigenvector's phase is
// fixed by making its largest-magnitude component real positive, and
// degenerate subspaces are re-based by Gram-Schmidt against the canonical
// basis in ascending index order, so expansion coefficients are reproducible.

#pragma once

#include <Eigen/Dense>

#include "qleak/hermitian.hpp"

namespace qleak {

struct EigenSystem {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXcd eigenvectors; // columns; unitary within 1e-10
};

// Cyclic-Jacobi diagonalization of H. Deterministic for fixed input.
EigenSystem eigendecompose(const HermitianOperator& H);

// U(t) = A exp(-i diag(lambda) t) A^dagger.
Eigen::MatrixXcd propagate(const EigenSystem& es, double t);
Eigen::MatrixXcd propagate(const HermitianOperator& H, double t);

}  // namespace qleak
