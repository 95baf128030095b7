#pragma once

// System shapes, pure states, orthogonal ensembles, the named example catalog,
// and JSON ingestion/serialization.
//
// Basis ordering is lexicographic with the last party's index varying fastest,
// so for a bipartite system |i>_A |j>_B maps to amplitude index i*N_b + j.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "locc/numerics.hpp"

namespace locc {

struct SystemShape {
    std::vector<std::size_t> party_dims;  // each >= 2

    std::size_t total_dim() const {
        std::size_t d = 1;
        for (std::size_t p : party_dims) d *= p;
        return d;
    }
    std::size_t parties() const { return party_dims.size(); }
    bool operator==(const SystemShape&) const = default;
};

struct PureState {
    SystemShape shape;
    CVector amplitudes;  // length total_dim, unit norm
    std::string label;

    PureState() = default;
    PureState(SystemShape s, CVector amps, std::string lbl = "");
};

struct Ensemble {
    std::vector<PureState> states;       // m >= 2, pairwise orthogonal
    std::vector<double> probabilities;   // in (0,1], sum 1

    const SystemShape& shape() const { return states.front().shape; }
    std::size_t size() const { return states.size(); }

    // Validates the Ensemble invariants, throwing NotOrthogonal / NotNormalized
    // / InvalidInput on violation.
    void validate() const;
};

// Builds an ensemble from states with uniform probabilities and validates it.
Ensemble make_ensemble(std::vector<PureState> states,
                       std::vector<double> probabilities = {});

// Parses the ensemble JSON document described in the README. Normalization is
// applied only when each state's norm is within 1e-6 of 1.
Ensemble parse_ensemble(const std::string& document);

// Serializes with 17 significant digits; parse(serialize(e)) reproduces the
// amplitudes exactly.
std::string serialize_ensemble(const Ensemble& ensemble);

// Named fixtures: bell3, bell4, comp_basis, maxent_family, w_triple,
// ghz_w_pair, domino9.
Ensemble catalog(const std::string& name, const std::vector<std::size_t>& params = {});
std::vector<std::string> catalog_names();

// m orthonormal states from seeded Gaussian vectors; bit-for-bit deterministic
// for a fixed seed.
Ensemble random_orthogonal_ensemble(const SystemShape& shape, std::size_t m, std::uint64_t seed);

}  // namespace locc
