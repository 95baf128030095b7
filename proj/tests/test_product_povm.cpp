#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "generators.hpp"
#include "locc/product_povm.hpp"

using namespace locc;

namespace {

const double kInvRt2 = 1.0 / std::sqrt(2.0);

CVector ket(std::size_t dim, std::size_t idx) {
    CVector v(dim, Complex(0.0, 0.0));
    v[idx] = 1.0;
    return v;
}

CVector plus() { return {kInvRt2, kInvRt2}; }
CVector minus() { return {kInvRt2, -kInvRt2}; }

ProductPovm comp_projectors_2x2() {
    ProductPovm p;
    p.shape = SystemShape{{2, 2}};
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            p.operators.push_back(RankOneProductOperator{1.0, {ket(2, i), ket(2, j)}});
    return p;
}

ProductPovm hadamard_projectors_2x2() {
    ProductPovm p;
    p.shape = SystemShape{{2, 2}};
    for (const auto& a : {plus(), minus()})
        for (const auto& b : {plus(), minus()})
            p.operators.push_back(RankOneProductOperator{1.0, {a, b}});
    return p;
}

Ensemble two_bell() {
    SystemShape shape{{2, 2}};
    std::vector<PureState> states;
    states.emplace_back(shape, CVector{kInvRt2, 0, 0, kInvRt2}, "phi+");
    states.emplace_back(shape, CVector{kInvRt2, 0, 0, -kInvRt2}, "phi-");
    return make_ensemble(std::move(states));
}

ComplexMatrix pair_gram(const LocalOperatorPair& pair) {
    ComplexMatrix ga = pair.op_a.adjoint() * pair.op_a;
    ComplexMatrix gb = pair.op_b.adjoint() * pair.op_b;
    std::size_t na = ga.rows(), nb = gb.rows();
    ComplexMatrix out(na * nb, na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t ip = 0; ip < na; ++ip)
            for (std::size_t j = 0; j < nb; ++j)
                for (std::size_t jp = 0; jp < nb; ++jp)
                    out(i * nb + j, ip * nb + jp) = ga(i, ip) * gb(j, jp);
    return out;
}

ComplexMatrix povm_sum(const ProductPovm& povm, std::size_t begin, std::size_t end) {
    std::size_t dim = povm.shape.total_dim();
    ComplexMatrix acc(dim, dim);
    for (std::size_t k = begin; k < end; ++k) {
        CVector v = kron(povm.operators[k].factors);
        double e2 = povm.operators[k].coefficient * povm.operators[k].coefficient;
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) acc(i, j) += e2 * v[i] * std::conj(v[j]);
    }
    return acc;
}

}  // namespace

TEST_CASE("completeness defect of projective and weighted sets") {
    CHECK(verify_completeness(comp_projectors_2x2()) <= 1e-12);
    CHECK(verify_completeness(hadamard_projectors_2x2()) <= 1e-12);

    // Dropping one projector leaves a rank-one hole of Frobenius norm 1.
    ProductPovm holed = comp_projectors_2x2();
    holed.operators.pop_back();
    CHECK(verify_completeness(holed) == doctest::Approx(1.0).epsilon(1e-12));

    // Mixing both bases at half weight is again complete.
    ProductPovm mixed = comp_projectors_2x2();
    for (auto& op : hadamard_projectors_2x2().operators) mixed.operators.push_back(op);
    for (auto& op : mixed.operators) op.coefficient = kInvRt2;
    CHECK(verify_completeness(mixed) <= 1e-12);
}

TEST_CASE("povm shape and coefficient validation") {
    ProductPovm p = comp_projectors_2x2();
    p.operators[0].coefficient = -1.0;
    CHECK_THROWS_AS(verify_completeness(p), Error);

    ProductPovm q = comp_projectors_2x2();
    q.operators[1].factors[0] = ket(3, 0);
    CHECK_THROWS_AS(verify_completeness(q), Error);
}

TEST_CASE("indication table for a product basis against itself") {
    Ensemble e = catalog("comp_basis");
    IndicationTable t = indication_table(comp_projectors_2x2(), e);
    CHECK(t.valid);
    CHECK(t.conflicts.empty());
    for (std::size_t i = 0; i < 4; ++i) {
        REQUIRE(t.assignment[i].has_value());
        CHECK(*t.assignment[i] == i);
    }
    CHECK(t.liips_per_state == std::vector<std::size_t>{1, 1, 1, 1});
}

TEST_CASE("Hadamard basis indicates the two-Bell ensemble with LIIPS 2") {
    Ensemble e = two_bell();
    IndicationTable t = indication_table(hadamard_projectors_2x2(), e);
    CHECK(t.valid);
    // ++ and -- land on phi+, the cross terms on phi-.
    CHECK(*t.assignment[0] == 0);
    CHECK(*t.assignment[3] == 0);
    CHECK(*t.assignment[1] == 1);
    CHECK(*t.assignment[2] == 1);
    CHECK(t.liips_per_state == std::vector<std::size_t>{2, 2});

    auto entries = liips_check(hadamard_projectors_2x2(), e);
    for (const auto& entry : entries) {
        CHECK(entry.liips_count == 2);
        CHECK(entry.rank_lower_bound == 2);
        CHECK(entry.satisfied);
    }
}

TEST_CASE("computational projectors conflict on bell3") {
    Ensemble e = catalog("bell3");
    IndicationTable t = indication_table(comp_projectors_2x2(), e);
    CHECK_FALSE(t.valid);
    CHECK_FALSE(t.conflicts.empty());
    // |00> overlaps both phi+ and phi-.
    bool found = false;
    for (const auto& c : t.conflicts)
        if (c.operator_index == 0 && c.overlapping_states.size() >= 2) found = true;
    CHECK(found);
    CHECK_THROWS_AS(liips_check(comp_projectors_2x2(), e), Error);
}

TEST_CASE("near-threshold overlaps are reported as warnings") {
    SystemShape shape{{2, 2}};
    double tiny = 1e-10;
    std::vector<PureState> states;
    states.emplace_back(shape, CVector{tiny, std::sqrt(1.0 - tiny * tiny), 0, 0});
    states.emplace_back(shape, CVector{0, 0, 1, 0});
    Ensemble e = make_ensemble(std::move(states));

    ProductPovm p;
    p.shape = shape;
    p.operators.push_back(RankOneProductOperator{1.0, {ket(2, 0), ket(2, 0)}});
    IndicationTable t = indication_table(p, e);
    CHECK(t.valid);
    CHECK_FALSE(t.assignment[0].has_value());
    REQUIRE(t.warnings.size() == 1);
    CHECK(t.warnings[0] == std::pair<std::size_t, std::size_t>{0, 0});
}

TEST_CASE("indication table is permutation independent") {
    Ensemble e = two_bell();
    ProductPovm p = hadamard_projectors_2x2();
    IndicationTable base = indication_table(p, e);
    std::reverse(p.operators.begin(), p.operators.end());
    IndicationTable rev = indication_table(p, e);
    CHECK(rev.valid == base.valid);
    CHECK(rev.liips_per_state == base.liips_per_state);
    for (std::size_t i = 0; i < 4; ++i) CHECK(*rev.assignment[i] == *base.assignment[3 - i]);
}

TEST_CASE("reduction of the identity pair yields four unit projectors") {
    SystemShape shape{{2, 2}};
    std::vector<LocalOperatorPair> pairs = {
        LocalOperatorPair{ComplexMatrix::identity(2), ComplexMatrix::identity(2)}};
    ProductPovm reduced = reduce_to_rank_one(shape, pairs);
    REQUIRE(reduced.operators.size() == 4);
    for (const auto& op : reduced.operators) CHECK(op.coefficient == doctest::Approx(1.0));
    CHECK(verify_completeness(reduced) <= 1e-10);
}

TEST_CASE("reduction preserves projective pairs up to phase") {
    SystemShape shape{{2, 2}};
    std::vector<LocalOperatorPair> pairs;
    for (const auto& a : {plus(), minus()})
        for (const auto& b : {plus(), minus()}) {
            ComplexMatrix pa(2, 2), pb(2, 2);
            for (std::size_t r = 0; r < 2; ++r)
                for (std::size_t c = 0; c < 2; ++c) {
                    pa(r, c) = a[r] * std::conj(a[c]);
                    pb(r, c) = b[r] * std::conj(b[c]);
                }
            pairs.push_back(LocalOperatorPair{pa, pb});
        }
    ProductPovm reduced = reduce_to_rank_one(shape, pairs);
    REQUIRE(reduced.operators.size() == 4);
    ProductPovm expected = hadamard_projectors_2x2();
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(reduced.operators[k].coefficient == doctest::Approx(1.0));
        CVector got = kron(reduced.operators[k].factors);
        CVector want = kron(expected.operators[k].factors);
        CHECK(std::abs(std::abs(inner(got, want)) - 1.0) <= 1e-12);
    }
}

TEST_CASE("reduction emits per-pair operators that reassemble the pair") {
    SystemShape shape{{2, 2}};
    ComplexMatrix da(2, 2), dcomp(2, 2);
    da(0, 0) = 1.0;
    da(1, 1) = 0.5;
    dcomp(1, 1) = std::sqrt(3.0) / 2.0;

    GaussianSampler rng(17);
    ComplexMatrix u = testgen::random_unitary(rng, 2);
    ComplexMatrix v = testgen::random_unitary(rng, 2);
    std::vector<LocalOperatorPair> pairs = {LocalOperatorPair{u * da, v},
                                            LocalOperatorPair{dcomp, ComplexMatrix::identity(2)}};

    ProductPovm reduced = reduce_to_rank_one(shape, pairs);
    // Pair 0 emits 2x2 operators; pair 1's rank-deficient filter emits 1x2.
    REQUIRE(reduced.operators.size() == 6);
    CHECK(verify_completeness(reduced) <= 1e-10);

    ComplexMatrix first = povm_sum(reduced, 0, 4);
    CHECK((first - pair_gram(pairs[0])).frobenius_norm() <= 1e-10);
    ComplexMatrix second = povm_sum(reduced, 4, 6);
    CHECK((second - pair_gram(pairs[1])).frobenius_norm() <= 1e-10);
}

TEST_CASE("reduction rejects incomplete inputs") {
    SystemShape shape{{2, 2}};
    ComplexMatrix half = ComplexMatrix::identity(2) * Complex(0.5, 0.0);
    std::vector<LocalOperatorPair> pairs = {LocalOperatorPair{half, ComplexMatrix::identity(2)}};
    try {
        reduce_to_rank_one(shape, pairs);
        FAIL("expected NotComplete");
    } catch (const Error& ex) {
        CHECK(ex.kind() == ErrorKind::NotComplete);
    }
}

TEST_CASE("random complete pair sets reduce to complete rank-one sets") {
    for (int trial = 0; trial < 40; ++trial) {
        SystemShape shape{{2u + trial % 2, 2u + trial % 3}};
        auto pairs = testgen::random_complete_pairs(shape, 400 + trial);
        ProductPovm reduced = reduce_to_rank_one(shape, pairs);
        CHECK(verify_completeness(reduced) <= 1e-8);
        for (const auto& op : reduced.operators) {
            CHECK(op.coefficient > 0.0);
            for (const auto& f : op.factors)
                CHECK(norm2(f) == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("indication is preserved for projective indicating pairs") {
    Ensemble e = two_bell();
    std::vector<LocalOperatorPair> pairs;
    for (const auto& a : {plus(), minus()})
        for (const auto& b : {plus(), minus()}) {
            ComplexMatrix pa(2, 2), pb(2, 2);
            for (std::size_t r = 0; r < 2; ++r)
                for (std::size_t c = 0; c < 2; ++c) {
                    pa(r, c) = a[r] * std::conj(a[c]);
                    pb(r, c) = b[r] * std::conj(b[c]);
                }
            pairs.push_back(LocalOperatorPair{pa, pb});
        }
    CHECK(indication_preserved_under_reduction(pairs, e));
}

TEST_CASE("indication is preserved for rank-deficient pairs emitting extras") {
    // {|00>, |11>} with pairs (|0><0|, I) and (|1><1|, I): each pair emits two
    // operators, one of which indicates no state at all.
    SystemShape shape{{2, 2}};
    std::vector<PureState> states;
    states.emplace_back(shape, CVector{1, 0, 0, 0});
    states.emplace_back(shape, CVector{0, 0, 0, 1});
    Ensemble e = make_ensemble(std::move(states));

    ComplexMatrix p0(2, 2), p1(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    std::vector<LocalOperatorPair> pairs = {LocalOperatorPair{p0, ComplexMatrix::identity(2)},
                                            LocalOperatorPair{p1, ComplexMatrix::identity(2)}};
    CHECK(indication_preserved_under_reduction(pairs, e));
}

TEST_CASE("pairs overlapping several states are rejected up front") {
    Ensemble e = two_bell();
    // (|+><+|, I) acts nontrivially on both Bell states.
    ComplexMatrix pa(2, 2);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) pa(r, c) = 0.5;
    ComplexMatrix pm = ComplexMatrix::identity(2) + (pa * Complex(-1.0, 0.0));
    std::vector<LocalOperatorPair> pairs = {LocalOperatorPair{pa, ComplexMatrix::identity(2)},
                                            LocalOperatorPair{pm, ComplexMatrix::identity(2)}};
    try {
        indication_preserved_under_reduction(pairs, e);
        FAIL("expected InvalidIndication");
    } catch (const Error& ex) {
        CHECK(ex.kind() == ErrorKind::InvalidIndication);
    }
}

TEST_CASE("indication survives filter splits of projective pairs") {
    for (int trial = 0; trial < 20; ++trial) {
        SystemShape shape{{2, 2u + trial % 2}};
        auto fixture = testgen::indicating_pairs_fixture(shape, 900 + trial, true);
        CHECK(indication_preserved_under_reduction(fixture.pairs, fixture.ensemble));
    }
}

TEST_CASE("product-basis trials satisfy the LIIPS inequalities") {
    for (int trial = 0; trial < 40; ++trial) {
        SystemShape shape = trial % 2 ? SystemShape{{2, 3}} : SystemShape{{2, 2}};
        auto fixture = testgen::indicating_fixture(shape, 2000 + trial);
        CHECK(verify_completeness(fixture.povm) <= 1e-10);

        IndicationTable t = indication_table(fixture.povm, fixture.ensemble);
        REQUIRE(t.valid);
        std::size_t total_liips = 0;
        auto entries = liips_check(fixture.povm, fixture.ensemble);
        for (const auto& entry : entries) {
            CHECK(entry.satisfied);
            CHECK(entry.liips_count >= entry.rank_lower_bound);
            total_liips += entry.liips_count;
        }
        CHECK(total_liips <= shape.total_dim());
    }
}

TEST_CASE("povm serialization round-trips exactly") {
    ProductPovm p = hadamard_projectors_2x2();
    p.operators[2].coefficient = kInvRt2;
    ProductPovm back = parse_povm(serialize_povm(p));
    REQUIRE(back.operators.size() == p.operators.size());
    CHECK(back.shape == p.shape);
    for (std::size_t k = 0; k < p.operators.size(); ++k) {
        CHECK(back.operators[k].coefficient == p.operators[k].coefficient);
        for (std::size_t f = 0; f < 2; ++f)
            for (std::size_t i = 0; i < 2; ++i)
                CHECK(back.operators[k].factors[f][i] == p.operators[k].factors[f][i]);
    }
}

TEST_CASE("povm parse rejects malformed documents") {
    CHECK_THROWS_AS(parse_povm("nope"), Error);
    CHECK_THROWS_AS(parse_povm(R"({"party_dims": [2, 2]})"), Error);
    CHECK_THROWS_AS(
        parse_povm(
            R"({"party_dims": [2,2], "operators": [{"coefficient": 1.0, "factors": [[[1,0]]]}]})"),
        Error);
}
