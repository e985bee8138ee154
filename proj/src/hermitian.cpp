#include "qleak/hermitian.hpp"

#include <stdexcept>
#include <string>

#include "qleak/errors.hpp"

namespace qleak {

HermitianOperator::HermitianOperator(Eigen::MatrixXcd entries)
    : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
        throw std::invalid_argument("HermitianOperator: matrix must be square");
    }
    if (entries_.rows() < 2) {
        throw std::invalid_argument("HermitianOperator: dim must be >= 2");
    }
    const double dev = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (dev > 2.0 * kHermiticityTol) {
        throw NonHermitianInput(
            "HermitianOperator: max |H - H^dagger| = " + std::to_string(dev) +
            " exceeds tolerance");
    }
    // Symmetrize so downstream algebra sees an exactly Hermitian matrix.
    entries_ = 0.5 * (entries_ + entries_.adjoint().eval());
}

}  // namespace qleak
