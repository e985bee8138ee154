// leakage.hpp — closed-form spectral peak heights and leakage bounds
// computed directly from a Hamiltonian: the brute-force oracle for the
// measured pipeline.
//
// With c_a = (A^dagger |0>)_a the eigenbasis expansion of the initial state,
// the ground-state-return signal has Fourier peak heights
//   h0 = sum_a |c_a|^4   (DC)  and  h_{a,b} = |c_a|^2 |c_b|^2
// at the transition frequencies |lambda_a - lambda_b|, with the conservation
// identity h0 + 2 sum_{a<b} h_{a,b} = 1. The two largest-weight eigenstates
// form the effective qubit; everything else is leakage.

#pragma once

#include <utility>
#include <vector>

#include "qleak/eigensystem.hpp"
#include "qleak/hermitian.hpp"

namespace qleak {

struct PeakSet {
    struct Pair {
        int a = 0;           // eigenstate indices, a < b
        int b = 0;
        double height = 0.0; // h_{a,b} = |c_a|^2 |c_b|^2
        double omega = 0.0;  // |lambda_a - lambda_b|
    };

    double h0 = 0.0;         // DC height, sum |c_a|^4
    std::vector<Pair> pairs; // all a < b, in lexicographic order

    // Largest pair height (the primary Rabi peak h_{0,1} in paper notation).
    double primary_height() const;
    // Indices of the largest pair (the effective qubit eigenstates).
    std::pair<int, int> primary_pair() const;
    // Angular frequency of the largest pair.
    double primary_omega() const;
};

// All analytic peak heights and frequencies for H.
PeakSet analytic_peaks(const HermitianOperator& H);
PeakSet analytic_peaks(const EigenSystem& es);

// Exact subspace leakage: the combined weight of |0> outside the two
// qubit eigenstates, eps = 1 - |c_a|^2 - |c_b|^2 with (a,b) the
// largest-h pair. Zero iff H is block-diagonal over the qubit subspace.
double exact_leakage(const HermitianOperator& H);
double exact_leakage(const EigenSystem& es);

// Bounds from the two primary peaks only:
//   eps_low  = 1 - sqrt(h0 + 2 h01)
//   eps_high = (1 - sqrt(2 h0 + 4 h01 - 1)) / 2
// Exact for three-level systems. Throws RadicandNegative when
// 2 h0 + 4 h01 - 1 < 0 (system too poorly confined for the bound).
std::pair<double, double> analytic_bounds(const PeakSet& peaks);

}  // namespace qleak
