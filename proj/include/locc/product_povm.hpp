#pragma once

// Local operator pairs, their completeness relation, the reduction of a
// complete local measurement to rank-one product operators, indication tables,
// and LIIPS counting.

#include <optional>
#include <string>

#include "locc/schmidt.hpp"

namespace locc {

struct LocalOperatorPair {
    ComplexMatrix op_a;  // N_a x N_a
    ComplexMatrix op_b;  // N_b x N_b
};

struct RankOneProductOperator {
    double coefficient;            // > 0
    std::vector<CVector> factors;  // one unit vector per party
};

struct ProductPovm {
    SystemShape shape;
    std::vector<RankOneProductOperator> operators;
};

struct IndicationConflict {
    std::size_t operator_index;
    std::vector<std::size_t> overlapping_states;
};

struct IndicationTable {
    // Per operator: indicated state index, or nullopt when the operator is
    // orthogonal to every ensemble state.
    std::vector<std::optional<std::size_t>> assignment;
    std::vector<std::size_t> liips_per_state;
    bool valid = true;
    std::vector<IndicationConflict> conflicts;
    // Operator/state pairs whose overlap fell in (1e-12, eps): numerically
    // fragile assignments worth flagging.
    std::vector<std::pair<std::size_t, std::size_t>> warnings;
};

struct LiipsCheckEntry {
    std::size_t liips_count;
    std::size_t rank_lower_bound;  // exact Schmidt number when bipartite
    bool satisfied;
};

// || sum_i e_i^2 P_i - I ||_F; the caller picks the tolerance.
double verify_completeness(const ProductPovm& povm);

IndicationTable indication_table(const ProductPovm& povm, const Ensemble& ensemble,
                                 double eps = 1e-8);

// Per-state LIIPS count against the state's least-product-number lower bound.
// Requires a valid indication table.
std::vector<LiipsCheckEntry> liips_check(const ProductPovm& povm, const Ensemble& ensemble,
                                         double eps = 1e-8);

// Polar-decomposes each pair per party, spectrally decomposes the positive
// parts, and emits the cross products of eigenpairs as rank-one operators.
// The input must satisfy sum (A_i (x) B_i)^dag (A_i (x) B_i) = I within 1e-8.
ProductPovm reduce_to_rank_one(const SystemShape& shape,
                               const std::vector<LocalOperatorPair>& pairs, double eps = 1e-8);

// True iff the reduced POVM's indication table is valid and every emitted
// operator indicates either none or the state its parent pair indicated.
// Requires each input pair to annihilate all but at most one ensemble state.
bool indication_preserved_under_reduction(const std::vector<LocalOperatorPair>& pairs,
                                          const Ensemble& ensemble, double eps = 1e-8);

// POVM JSON: { "party_dims": [...], "operators": [ { "coefficient": f,
// "factors": [[[re,im],...], ...] } ] }.
ProductPovm parse_povm(const std::string& document);
std::string serialize_povm(const ProductPovm& povm);

}  // namespace locc
