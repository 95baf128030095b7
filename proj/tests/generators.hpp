#pragma once

// Seeded fixture generators shared by the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <vector>

#include "locc/product_povm.hpp"
#include "locc/states.hpp"

namespace locc::testgen {

inline ComplexMatrix random_unitary(GaussianSampler& rng, std::size_t n) {
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.next_complex();
    return polar_decompose(g).unitary;
}

struct IndicatingFixture {
    Ensemble ensemble;
    ProductPovm povm;
};

// LIIPS trial generator: a random orthonormal product basis, its indices
// partitioned into blocks, one ensemble state as a random unit vector inside
// each block's span, and the basis projectors as the POVM. Every projector
// then overlaps at most the one state owning its block, so the indication
// table is valid by construction and the trial is non-vacuous.
inline IndicatingFixture indicating_fixture(const SystemShape& shape, std::uint64_t seed) {
    GaussianSampler rng(seed);
    std::size_t na = shape.party_dims[0], nb = shape.party_dims[1], total = na * nb;

    ComplexMatrix ua = random_unitary(rng, na), ub = random_unitary(rng, nb);
    std::vector<CVector> product_basis;
    std::vector<std::pair<CVector, CVector>> factors;
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            CVector a = ua.column(i), b = ub.column(j);
            product_basis.push_back(kron({a, b}));
            factors.emplace_back(std::move(a), std::move(b));
        }

    // Shuffle the basis indices and slice them into 2..total blocks.
    std::vector<std::size_t> perm(total);
    for (std::size_t i = 0; i < total; ++i) perm[i] = i;
    for (std::size_t i = total; i-- > 1;) {
        std::size_t j = static_cast<std::size_t>(std::abs(rng.next()) * 1000.0) % (i + 1);
        std::swap(perm[i], perm[j]);
    }
    std::size_t m = 2 + static_cast<std::size_t>(std::abs(rng.next()) * 100.0) % (total - 1);
    std::vector<std::vector<std::size_t>> blocks(m);
    for (std::size_t i = 0; i < total; ++i) blocks[i % m].push_back(perm[i]);

    std::vector<PureState> states;
    for (const auto& block : blocks) {
        CVector amps(total, Complex(0.0, 0.0));
        for (std::size_t idx : block) {
            Complex c = rng.next_complex();
            // Keep every block coefficient well away from the indication
            // threshold.
            c += c / std::abs(c);
            for (std::size_t k = 0; k < total; ++k) amps[k] += c * product_basis[idx][k];
        }
        normalize(amps);
        states.emplace_back(shape, std::move(amps));
    }

    ProductPovm povm;
    povm.shape = shape;
    for (auto& [a, b] : factors)
        povm.operators.push_back(RankOneProductOperator{1.0, {std::move(a), std::move(b)}});

    return IndicatingFixture{make_ensemble(std::move(states)), std::move(povm)};
}

// Complete local-operator sets built from random product unitaries and
// diagonal filters: four pairs (u (x) diag-filter (x) shared right rotation)
// whose squared filters sum to the identity on each side.
inline std::vector<LocalOperatorPair> random_complete_pairs(const SystemShape& shape,
                                                            std::uint64_t seed) {
    GaussianSampler rng(seed);
    std::size_t na = shape.party_dims[0], nb = shape.party_dims[1];
    ComplexMatrix ra = random_unitary(rng, na), rb = random_unitary(rng, nb);

    auto diag_filters = [&](std::size_t n) {
        ComplexMatrix d(n, n), dc(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            double x = 0.05 + 0.9 * std::abs(std::sin(rng.next()));
            d(i, i) = x;
            dc(i, i) = std::sqrt(1.0 - x * x);
        }
        return std::pair{d, dc};
    };
    auto [da, dac] = diag_filters(na);
    auto [db, dbc] = diag_filters(nb);

    std::vector<LocalOperatorPair> pairs;
    for (int ia = 0; ia < 2; ++ia)
        for (int ib = 0; ib < 2; ++ib) {
            ComplexMatrix fa = ia == 0 ? da : dac;
            ComplexMatrix fb = ib == 0 ? db : dbc;
            pairs.push_back(LocalOperatorPair{random_unitary(rng, na) * fa * ra,
                                              random_unitary(rng, nb) * fb * rb});
        }
    return pairs;
}

// Indicating pair sets: a rotated product basis ensemble plus projective
// pairs onto the same basis, optionally split by a scalar filter so some
// pairs are non-projective while still indicating a single state.
struct IndicatingPairsFixture {
    Ensemble ensemble;
    std::vector<LocalOperatorPair> pairs;
};

inline IndicatingPairsFixture indicating_pairs_fixture(const SystemShape& shape,
                                                       std::uint64_t seed, bool split_filters) {
    GaussianSampler rng(seed);
    std::size_t na = shape.party_dims[0], nb = shape.party_dims[1];
    ComplexMatrix ua = random_unitary(rng, na), ub = random_unitary(rng, nb);

    std::vector<PureState> states;
    std::vector<LocalOperatorPair> pairs;
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            CVector a = ua.column(i), b = ub.column(j);
            states.emplace_back(shape, kron({a, b}));

            ComplexMatrix pa(na, na), pb(nb, nb);
            for (std::size_t r = 0; r < na; ++r)
                for (std::size_t c = 0; c < na; ++c) pa(r, c) = a[r] * std::conj(a[c]);
            for (std::size_t r = 0; r < nb; ++r)
                for (std::size_t c = 0; c < nb; ++c) pb(r, c) = b[r] * std::conj(b[c]);
            if (split_filters) {
                double x = 0.2 + 0.6 * std::abs(std::sin(rng.next()));
                pairs.push_back(LocalOperatorPair{pa * Complex(x, 0.0), pb});
                pairs.push_back(LocalOperatorPair{pa * Complex(std::sqrt(1.0 - x * x), 0.0), pb});
            } else {
                pairs.push_back(LocalOperatorPair{pa, pb});
            }
        }
    return IndicatingPairsFixture{make_ensemble(std::move(states)), std::move(pairs)};
}

}  // namespace locc::testgen
