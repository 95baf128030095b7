#pragma once

// Certificates for the least number of product states (tensor rank) of a
// multipartite pure state: flattening lower bounds, the exact 2x2x2
// classifier, and ALS witness search for upper bounds.

#include <optional>
#include <string>

#include "locc/schmidt.hpp"

namespace locc {

struct ProductTerm {
    Complex weight;
    std::vector<CVector> factors;  // one unit vector per party
};

using Witness = std::vector<ProductTerm>;

enum class LowerMethod { Flattening, Exact222 };
enum class UpperMethod { WitnessDecomposition, Exact222, TrivialDim };

struct RankCertificate {
    std::size_t lower_bound = 1;
    std::size_t upper_bound = 1;
    LowerMethod lower_method = LowerMethod::Flattening;
    UpperMethod upper_method = UpperMethod::TrivialDim;
    std::optional<Witness> witness;
};

struct AlsConfig {
    std::size_t restarts = 64;
    std::size_t iters = 500;
    double tol = 1e-8;
    std::uint64_t seed = 1;
};

struct RankConfig {
    double rank_eps = 1e-8;
    AlsConfig als;
};

struct AlsOutcome {
    std::optional<Witness> witness;
    double best_residual = 0.0;  // residual of the best restart, found or not
};

// Max Schmidt number over all single-party-vs-rest cuts (and every two-group
// cut when there are >= 4 parties). A lower bound on tensor rank.
std::size_t flattening_lower_bound(const PureState& state, double eps = 1e-8);

// Exact tensor rank for three qubits: product (1), GHZ class or biseparable
// (2), W class (3). Decided via flattening ranks and the 2x2x2
// hyperdeterminant.
std::size_t exact_rank_2x2x2(const PureState& state, double eps = 1e-8);

// Cayley hyperdeterminant of a 2x2x2 amplitude tensor (degree-4 polynomial);
// nonzero exactly on the GHZ class.
Complex hyperdeterminant_2x2x2(const PureState& state);

// Seeded CP decomposition by alternating least squares. Absence of a witness
// is NOT a proof of rank > target_rank. Restart r uses a seed derived from
// (seed, r) and the first successful restart index wins.
AlsOutcome als_upper_bound(const PureState& state, std::size_t target_rank, const AlsConfig& config);

// Residual || state - sum_t w_t (x)_p v_{t,p} ||_2.
double witness_residual(const PureState& state, const Witness& witness);

// lower = flattening (exact on bipartite and 2x2x2); upper = first target with
// a witness, scanning upward; the computational-basis expansion closes the
// scan at total_dim.
RankCertificate rank_certificate(const PureState& state, const RankConfig& config = {});

const char* to_string(LowerMethod m);
const char* to_string(UpperMethod m);

}  // namespace locc
