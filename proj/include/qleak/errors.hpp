// errors.hpp — named error types for the leakage-estimation toolkit.
//
// Every contract violation maps to a distinct exception type so callers (and
// the CLI's exit-code mapping) can distinguish failure modes without string
// matching.

#pragma once

#include <stdexcept>
#include <string>

namespace qleak {

// Input matrix fails the Hermiticity tolerance (1e-12 absolute).
struct NonHermitianInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Upper-bound radicand 2*h0 + 4*h01 - 1 is negative: the system is too
// poorly confined for the bound to apply.
struct RadicandNegative : std::domain_error {
    using std::domain_error::domain_error;
};

// Unrecognized trial-Hamiltonian family name.
struct UnknownFamily : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Trace samples are not uniformly spaced in time.
struct NonUniformSampling : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Trace too short for phase matching (needs >= 5 Rabi periods).
struct TooShort : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Peak heights outside [0, 1] fed to the estimator.
struct OutOfRangePeaks : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// (A - i w I) is numerically singular; only possible at zero damping on
// resonance.
struct SingularResolvent : std::domain_error {
    using std::domain_error::domain_error;
};

// Lorentzian approximation requested outside its validity regime
// (gap <= regime_factor * max rate).
struct RegimeViolation : std::domain_error {
    using std::domain_error::domain_error;
};

// Resolution target zeta outside (0, 1/2).
struct DegenerateTarget : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace qleak
