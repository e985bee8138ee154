// hermitian.hpp — validated dense Hermitian operator (hbar = 1 units).

#pragma once

#include <Eigen/Dense>

namespace qleak {

// Absolute tolerance for the Hermiticity check.
inline constexpr double kHermiticityTol = 1e-12;

// Dense N x N complex Hermitian matrix; dim >= 2 and
// entries(i,j) == conj(entries(j,i)) within 1e-12 are enforced at
// construction, so downstream code can assume both.
class HermitianOperator {
  public:
    // Throws std::invalid_argument (shape / dim < 2) or NonHermitianInput.
    explicit HermitianOperator(Eigen::MatrixXcd entries);

    Eigen::Index dim() const { return entries_.rows(); }
    const Eigen::MatrixXcd& matrix() const { return entries_; }

  private:
    Eigen::MatrixXcd entries_;
};

}  // namespace qleak
