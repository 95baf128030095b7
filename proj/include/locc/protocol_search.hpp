#pragma once

// Heuristic oracle for sequential projective LOCC protocols on desk-scale
// bipartite ensembles: simulation of a given protocol tree, perfect-
// discrimination verification, and a grid-plus-refinement search for one-way
// protocols (Alice measures, then Bob). Absence of a protocol is never a
// proof of indistinguishability.

#include <map>
#include <memory>
#include <optional>

#include "locc/states.hpp"

namespace locc {

struct ProtocolNode;

// Per measurement outcome: either a follow-up measurement or a terminal
// verdict (ensemble state index).
struct ProtocolBranch {
    std::unique_ptr<ProtocolNode> child;  // null for a leaf
    std::size_t verdict = 0;              // used when child is null
};

struct ProtocolNode {
    std::size_t acting_party = 0;
    std::vector<CVector> basis;  // orthonormal basis of that party's space
    std::vector<ProtocolBranch> branches;  // one per basis vector
};

struct LoccProtocol {
    std::unique_ptr<ProtocolNode> root;
};

struct SearchConfig {
    std::size_t grid_depth = 3;
    std::size_t refine_iters = 30;
    std::uint64_t seed = 1;
};

struct SearchOutcome {
    std::optional<LoccProtocol> protocol;
    double best_defect = 0.0;  // smallest branch-orthogonality defect seen
};

// Born-rule outcome distribution over verdicts; probabilities sum to 1.
std::map<std::size_t, double> simulate(const LoccProtocol& protocol, const PureState& state);

// True iff each ensemble state is mapped to its own verdict with probability
// >= 1 - 1e-8.
bool verify_distinguishes(const LoccProtocol& protocol, const Ensemble& ensemble);

// Grid over Alice's local basis parameters, then halving-interval coordinate
// descent on the branch-orthogonality defect; candidates are tried in grid
// order so the result is deterministic.
SearchOutcome search_one_way(const Ensemble& ensemble, const SearchConfig& config = {});

}  // namespace locc
