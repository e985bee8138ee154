// families.hpp — benchmark trial Hamiltonians and the random leaky ensemble.
//
// Fixed matrices: Hm/Hn (3-level, strongly/weakly coupled third level) and
// Ha/Hb (5-level, decoupled / weakly coupled). Parametric family: HN(gamma),
// N = 3..10, formed by truncating the 10-level ladder with energies
// {0, 1, 1.5, 1.7, 1.9, 2.2, 2.5, 2.7, 3, 3.2}, qubit coupling 1 and uniform
// stray coupling gamma from |0> to every higher level.

#pragma once

#include <cstdint>
#include <string>

#include "qleak/hermitian.hpp"

namespace qleak {

// name in {Hm, Hn, Ha, Hb, H3, H4, ..., H10}; gamma is used only by the
// HN(gamma) family. Throws UnknownFamily.
HermitianOperator family(const std::string& name, double gamma = 0.0);

// Random member of the leaky-qubit ensemble: dimension N uniform in [2, 10],
// energies from {0, 1, 1.5, 2, 2.4, 2.5, 2.9, 3, 3.3, 4}, qubit coupling 1,
// stray couplings |0><k| uniform in [0.001, 0.01] — roughly two orders of
// magnitude below the qubit coupling, reproducing the published ensemble's
// mean leakage scale (~2e-4).
HermitianOperator random_leaky_hamiltonian(std::uint64_t seed);

}  // namespace qleak
