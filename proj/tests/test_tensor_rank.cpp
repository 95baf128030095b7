#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "locc/states.hpp"
#include "locc/tensor_rank.hpp"

using namespace locc;

namespace {

PureState from_amplitudes(std::vector<std::size_t> dims, CVector amps) {
    normalize(amps);
    return PureState(SystemShape{std::move(dims)}, std::move(amps));
}

PureState ghz() { return from_amplitudes({2, 2, 2}, {1, 0, 0, 0, 0, 0, 0, 1}); }
PureState w_state() { return from_amplitudes({2, 2, 2}, {0, 1, 1, 0, 1, 0, 0, 0}); }

ComplexMatrix random_unitary(GaussianSampler& rng, std::size_t n) {
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.next_complex();
    return polar_decompose(g).unitary;
}

PureState apply_local_qubits(const PureState& st, const std::vector<ComplexMatrix>& us) {
    CVector out(8, Complex(0.0, 0.0));
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            Complex coeff(1.0, 0.0);
            for (int p = 0; p < 3; ++p) coeff *= us[p]((i >> (2 - p)) & 1, (j >> (2 - p)) & 1);
            out[i] += coeff * st.amplitudes[j];
        }
    return PureState(st.shape, std::move(out));
}

// Independent check of the W flattening: each single-party flattening of W is
// an explicit 2x4 matrix whose rank-2 structure can be read off.
std::size_t rank_2x4_oracle(const ComplexMatrix& m) {
    // Gram determinant test on the two rows.
    Complex g00(0, 0), g01(0, 0), g11(0, 0);
    for (std::size_t j = 0; j < 4; ++j) {
        g00 += std::conj(m(0, j)) * m(0, j);
        g01 += std::conj(m(0, j)) * m(1, j);
        g11 += std::conj(m(1, j)) * m(1, j);
    }
    double det = (g00 * g11 - g01 * std::conj(g01)).real();
    if (g00.real() < 1e-20 && g11.real() < 1e-20) return 0;
    return det > 1e-16 ? 2 : 1;
}

}  // namespace

TEST_CASE("flattening lower bounds") {
    CHECK(flattening_lower_bound(from_amplitudes({2, 2, 2}, {1, 0, 0, 0, 0, 0, 0, 0})) == 1);
    CHECK(flattening_lower_bound(ghz()) == 2);

    PureState w = w_state();
    CHECK(flattening_lower_bound(w) == 2);
    for (std::size_t p = 0; p < 3; ++p)
        CHECK(rank_2x4_oracle(flatten(w, single_party_cut(p))) == 2);

    PureState bipartite = from_amplitudes({2, 2}, {1, 0, 0, 1});
    CHECK(flattening_lower_bound(bipartite) == 2);
    CHECK_THROWS_AS(flattening_lower_bound(PureState(SystemShape{{4}}, {1, 0, 0, 0})), Error);
}

TEST_CASE("four-party flattening uses two-group cuts") {
    // |phi+>_{02} (x) |phi+>_{13}: every single-party cut has rank 2 but the
    // {0,1} vs {2,3} cut has rank 4.
    CVector amps(16, Complex(0.0, 0.0));
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) amps[a * 8 + b * 4 + a * 2 + b] = 0.5;
    PureState st(SystemShape{{2, 2, 2, 2}}, std::move(amps));
    CHECK(schmidt_decompose(st, single_party_cut(0)).schmidt_number == 2);
    CHECK(schmidt_decompose(st, Cut{{0, 1}}).schmidt_number == 4);
    CHECK(flattening_lower_bound(st) == 4);
}

TEST_CASE("hyperdeterminant values") {
    CHECK(std::abs(hyperdeterminant_2x2x2(ghz()) - Complex(0.25, 0.0)) < 1e-10);
    CHECK(std::abs(hyperdeterminant_2x2x2(w_state())) < 1e-10);
}

TEST_CASE("exact 2x2x2 rank classification") {
    CHECK(exact_rank_2x2x2(from_amplitudes({2, 2, 2}, {1, 0, 0, 0, 0, 0, 0, 0})) == 1);
    CHECK(exact_rank_2x2x2(ghz()) == 2);
    CHECK(exact_rank_2x2x2(w_state()) == 3);
    // |0> (x) Bell: biseparable with one entangled pair.
    CHECK(exact_rank_2x2x2(from_amplitudes({2, 2, 2}, {1, 0, 0, 1, 0, 0, 0, 0})) == 2);
    CHECK_THROWS_AS(exact_rank_2x2x2(from_amplitudes({2, 2}, {1, 0, 0, 0})), Error);
}

TEST_CASE("exact 2x2x2 rank is invariant under local unitaries") {
    GaussianSampler rng(53);
    std::vector<PureState> fixtures = {ghz(), w_state(),
                                       from_amplitudes({2, 2, 2}, {1, 0, 0, 0, 0, 0, 0, 0}),
                                       from_amplitudes({2, 2, 2}, {1, 0, 0, 1, 0, 0, 0, 0})};
    for (int trial = 0; trial < 100; ++trial) {
        const PureState& st = fixtures[trial % fixtures.size()];
        std::size_t base = exact_rank_2x2x2(st);
        std::vector<ComplexMatrix> us = {random_unitary(rng, 2), random_unitary(rng, 2),
                                         random_unitary(rng, 2)};
        CHECK(exact_rank_2x2x2(apply_local_qubits(st, us)) == base);
    }
}

TEST_CASE("ALS finds the rank-2 GHZ witness") {
    AlsOutcome out = als_upper_bound(ghz(), 2, AlsConfig{});
    REQUIRE(out.witness.has_value());
    CHECK(out.witness->size() == 2);
    CHECK(witness_residual(ghz(), *out.witness) <= 1e-8);
}

TEST_CASE("ALS at full dimension always succeeds") {
    GaussianSampler rng(59);
    CVector amps = rng.complex_vector(8);
    PureState st = from_amplitudes({2, 2, 2}, std::move(amps));
    AlsOutcome out = als_upper_bound(st, 8, AlsConfig{});
    REQUIRE(out.witness.has_value());
    CHECK(witness_residual(st, *out.witness) <= 1e-8);
}

TEST_CASE("ALS cannot reach rank 2 for the W state") {
    AlsOutcome out = als_upper_bound(w_state(), 2, AlsConfig{});
    CHECK_FALSE(out.witness.has_value());
    // W has border rank 2 but rank 3; ALS stalls well away from zero at this
    // tolerance.
    CHECK(out.best_residual > 1e-5);
}

TEST_CASE("rank certificates on the named fixtures") {
    RankConfig config;

    RankCertificate bell = rank_certificate(from_amplitudes({2, 2}, {1, 0, 0, 1}), config);
    CHECK(bell.lower_bound == 2);
    CHECK(bell.upper_bound == 2);
    REQUIRE(bell.witness.has_value());
    CHECK(witness_residual(from_amplitudes({2, 2}, {1, 0, 0, 1}), *bell.witness) <= 1e-6);

    RankCertificate g = rank_certificate(ghz(), config);
    CHECK(g.lower_bound == 2);
    CHECK(g.upper_bound == 2);

    RankCertificate w = rank_certificate(w_state(), config);
    CHECK(w.lower_bound == 3);
    CHECK(w.upper_bound == 3);
    CHECK(w.lower_method == LowerMethod::Exact222);
}

TEST_CASE("bipartite certificates equal the Schmidt number") {
    GaussianSampler rng(61);
    for (int trial = 0; trial < 50; ++trial) {
        PureState st = from_amplitudes({3, 3}, rng.complex_vector(9));
        RankCertificate cert = rank_certificate(st);
        std::size_t schmidt = schmidt_decompose(st, single_party_cut(0)).schmidt_number;
        CHECK(cert.lower_bound == schmidt);
        CHECK(cert.upper_bound == schmidt);
    }
}

TEST_CASE("certificate bounds are ordered with valid witnesses") {
    GaussianSampler rng(67);
    std::vector<std::vector<std::size_t>> shapes = {{2, 2}, {3, 3}, {2, 2, 2}, {2, 2, 2, 2}};
    RankConfig config;
    config.als.restarts = 16;
    config.als.iters = 200;
    for (int trial = 0; trial < 40; ++trial) {
        const auto& dims = shapes[trial % shapes.size()];
        std::size_t total = 1;
        for (auto d : dims) total *= d;
        PureState st = from_amplitudes(dims, rng.complex_vector(total));
        RankCertificate cert = rank_certificate(st, config);
        CHECK(cert.lower_bound >= 1);
        CHECK(cert.lower_bound <= cert.upper_bound);
        CHECK(flattening_lower_bound(st) <= cert.upper_bound);
        if (cert.witness) {
            CHECK(cert.witness->size() == cert.upper_bound);
            CHECK(witness_residual(st, *cert.witness) <= 1e-6);
        }
    }
}

TEST_CASE("ALS restarts are deterministic per seed") {
    AlsConfig config;
    config.restarts = 4;
    config.iters = 50;
    AlsOutcome a = als_upper_bound(w_state(), 2, config);
    AlsOutcome b = als_upper_bound(w_state(), 2, config);
    CHECK(a.best_residual == b.best_residual);
}
