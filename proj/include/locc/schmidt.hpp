#pragma once

// Schmidt decomposition, Schmidt number, and entropy of entanglement across a
// chosen bipartite cut of a multiparty pure state.

#include <vector>

#include "locc/states.hpp"

namespace locc {

// A bipartition of the parties: `left` holds party indices; the complement is
// the right group. Both groups must be non-empty.
struct Cut {
    std::vector<std::size_t> left;
};

struct SchmidtDecomposition {
    Cut cut;
    std::vector<double> coefficients;      // descending, > 0, sum of squares 1
    std::vector<CVector> left_vectors;     // orthonormal, dim = left group dim
    std::vector<CVector> right_vectors;    // orthonormal, dim = right group dim
    std::size_t schmidt_number = 0;        // coefficients retained above eps * largest
};

// Reshapes the amplitudes into a (left group) x (right group) matrix, in the
// same lexicographic order as the state, and runs the SVD.
SchmidtDecomposition schmidt_decompose(const PureState& state, const Cut& cut, double eps = 1e-8);

// -sum lambda^2 ln lambda^2, in nats; lies in [0, ln min(dim_left, dim_right)].
double entanglement_entropy(const PureState& state, const Cut& cut);

// The (left group dim) x (right group dim) flattening matrix of a state.
ComplexMatrix flatten(const PureState& state, const Cut& cut);

// Single-party-vs-rest cut.
Cut single_party_cut(std::size_t party);

}  // namespace locc
