#include "locc/product_povm.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "locc/tensor_rank.hpp"

namespace locc {

namespace {

CVector product_vector(const RankOneProductOperator& op) { return kron(op.factors); }

void check_povm_shapes(const ProductPovm& povm) {
    for (const auto& op : povm.operators) {
        if (op.factors.size() != povm.shape.parties())
            throw Error(ErrorKind::ShapeMismatch, "operator party count mismatch");
        for (std::size_t p = 0; p < op.factors.size(); ++p)
            if (op.factors[p].size() != povm.shape.party_dims[p])
                throw Error(ErrorKind::ShapeMismatch, "operator factor dimension mismatch");
        if (op.coefficient <= 0.0)
            throw Error(ErrorKind::InvalidInput, "operator coefficient must be positive");
    }
}

// (A (x) B) |psi>, with psi viewed as an N_a x N_b coefficient matrix.
CVector apply_pair(const LocalOperatorPair& pair, const PureState& state) {
    std::size_t na = pair.op_a.rows(), nb = pair.op_b.rows();
    ComplexMatrix m(na, nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) m(i, j) = state.amplitudes[i * nb + j];
    ComplexMatrix bt(nb, nb);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) bt(i, j) = pair.op_b(j, i);
    ComplexMatrix out = pair.op_a * m * bt;
    CVector v(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) v[i * nb + j] = out(i, j);
    return v;
}

double input_completeness_defect(const SystemShape& shape,
                                 const std::vector<LocalOperatorPair>& pairs) {
    std::size_t na = shape.party_dims[0], nb = shape.party_dims[1];
    ComplexMatrix acc_a_total(na * nb, na * nb);
    for (const auto& pair : pairs) {
        if (pair.op_a.rows() != na || pair.op_a.cols() != na || pair.op_b.rows() != nb ||
            pair.op_b.cols() != nb)
            throw Error(ErrorKind::ShapeMismatch, "pair dimensions do not match the shape");
        ComplexMatrix ga = pair.op_a.adjoint() * pair.op_a;
        ComplexMatrix gb = pair.op_b.adjoint() * pair.op_b;
        for (std::size_t i = 0; i < na; ++i)
            for (std::size_t ip = 0; ip < na; ++ip)
                for (std::size_t j = 0; j < nb; ++j)
                    for (std::size_t jp = 0; jp < nb; ++jp)
                        acc_a_total(i * nb + j, ip * nb + jp) += ga(i, ip) * gb(j, jp);
    }
    return (acc_a_total - ComplexMatrix::identity(na * nb)).frobenius_norm();
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

double verify_completeness(const ProductPovm& povm) {
    check_povm_shapes(povm);
    std::size_t dim = povm.shape.total_dim();
    ComplexMatrix acc(dim, dim);
    for (const auto& op : povm.operators) {
        CVector v = product_vector(op);
        double e2 = op.coefficient * op.coefficient;
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) acc(i, j) += e2 * v[i] * std::conj(v[j]);
    }
    return (acc - ComplexMatrix::identity(dim)).frobenius_norm();
}

IndicationTable indication_table(const ProductPovm& povm, const Ensemble& ensemble, double eps) {
    check_povm_shapes(povm);
    if (!(povm.shape == ensemble.shape()))
        throw Error(ErrorKind::ShapeMismatch, "POVM and ensemble shapes differ");

    IndicationTable table;
    std::vector<std::vector<CVector>> per_state_vectors(ensemble.size());
    for (std::size_t i = 0; i < povm.operators.size(); ++i) {
        CVector prod = product_vector(povm.operators[i]);
        std::vector<std::size_t> hits;
        for (std::size_t j = 0; j < ensemble.size(); ++j) {
            double overlap = std::abs(inner(prod, ensemble.states[j].amplitudes));
            if (overlap > eps) hits.push_back(j);
            if (overlap > 1e-12 && overlap <= eps) table.warnings.emplace_back(i, j);
        }
        if (hits.empty()) {
            table.assignment.push_back(std::nullopt);
        } else if (hits.size() == 1) {
            table.assignment.push_back(hits[0]);
            per_state_vectors[hits[0]].push_back(std::move(prod));
        } else {
            table.assignment.push_back(std::nullopt);
            table.valid = false;
            table.conflicts.push_back(IndicationConflict{i, std::move(hits)});
        }
    }
    for (std::size_t j = 0; j < ensemble.size(); ++j)
        table.liips_per_state.push_back(
            per_state_vectors[j].empty() ? 0 : independent_count(per_state_vectors[j], eps));
    return table;
}

std::vector<LiipsCheckEntry> liips_check(const ProductPovm& povm, const Ensemble& ensemble,
                                         double eps) {
    IndicationTable table = indication_table(povm, ensemble, eps);
    if (!table.valid)
        throw Error(ErrorKind::InvalidIndication, "some operator indicates more than one state");

    bool bipartite = ensemble.shape().parties() == 2;
    std::vector<LiipsCheckEntry> out;
    for (std::size_t j = 0; j < ensemble.size(); ++j) {
        std::size_t bound =
            bipartite
                ? schmidt_decompose(ensemble.states[j], single_party_cut(0), eps).schmidt_number
                : flattening_lower_bound(ensemble.states[j], eps);
        std::size_t count = table.liips_per_state[j];
        out.push_back(LiipsCheckEntry{count, bound, count >= bound});
    }
    return out;
}

ProductPovm reduce_to_rank_one(const SystemShape& shape,
                               const std::vector<LocalOperatorPair>& pairs, double eps) {
    if (shape.parties() != 2)
        throw Error(ErrorKind::UnsupportedShape, "pair reduction is bipartite");
    double defect = input_completeness_defect(shape, pairs);
    if (defect > 1e-8)
        throw Error(ErrorKind::NotComplete,
                    "input completeness defect " + std::to_string(defect));

    ProductPovm out;
    out.shape = shape;
    for (const auto& pair : pairs) {
        PolarResult pol_a = polar_decompose(pair.op_a);
        PolarResult pol_b = polar_decompose(pair.op_b);
        auto spec_a = spectral_decompose_positive(pol_a.positive, eps);
        auto spec_b = spectral_decompose_positive(pol_b.positive, eps);
        for (const auto& [c, phi] : spec_a)
            for (const auto& [d, eta] : spec_b)
                out.operators.push_back(RankOneProductOperator{c * d, {phi, eta}});
    }
    return out;
}

bool indication_preserved_under_reduction(const std::vector<LocalOperatorPair>& pairs,
                                          const Ensemble& ensemble, double eps) {
    const SystemShape& shape = ensemble.shape();
    if (shape.parties() != 2)
        throw Error(ErrorKind::UnsupportedShape, "pair reduction is bipartite");
    double defect = input_completeness_defect(shape, pairs);
    if (defect > 1e-8)
        throw Error(ErrorKind::NotComplete, "input completeness defect " + std::to_string(defect));

    // Pair-level indication: each pair may act nontrivially on at most one
    // ensemble state.
    std::vector<std::optional<std::size_t>> parent(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        std::vector<std::size_t> hits;
        for (std::size_t j = 0; j < ensemble.size(); ++j)
            if (norm2(apply_pair(pairs[i], ensemble.states[j])) > eps) hits.push_back(j);
        if (hits.size() > 1)
            throw Error(ErrorKind::InvalidIndication,
                        "input pair " + std::to_string(i) + " overlaps multiple states");
        if (!hits.empty()) parent[i] = hits[0];
    }

    // Reduce pair by pair so each emitted operator keeps its parentage.
    ProductPovm reduced;
    reduced.shape = shape;
    std::vector<std::optional<std::size_t>> emitted_parent;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        PolarResult pol_a = polar_decompose(pairs[i].op_a);
        PolarResult pol_b = polar_decompose(pairs[i].op_b);
        auto spec_a = spectral_decompose_positive(pol_a.positive, eps);
        auto spec_b = spectral_decompose_positive(pol_b.positive, eps);
        for (const auto& [c, phi] : spec_a)
            for (const auto& [d, eta] : spec_b) {
                reduced.operators.push_back(RankOneProductOperator{c * d, {phi, eta}});
                emitted_parent.push_back(parent[i]);
            }
    }

    IndicationTable table = indication_table(reduced, ensemble, eps);
    if (!table.valid) return false;
    for (std::size_t i = 0; i < reduced.operators.size(); ++i) {
        if (!table.assignment[i]) continue;  // indicating none is allowed
        if (!emitted_parent[i] || *table.assignment[i] != *emitted_parent[i]) return false;
    }
    return true;
}

ProductPovm parse_povm(const std::string& document) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(document);
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorKind::ParseError, ex.what());
    }
    try {
        ProductPovm povm;
        for (const auto& d : doc.at("party_dims"))
            povm.shape.party_dims.push_back(d.get<std::size_t>());
        for (const auto& jop : doc.at("operators")) {
            RankOneProductOperator op;
            op.coefficient = jop.at("coefficient").get<double>();
            for (const auto& jfac : jop.at("factors")) {
                CVector f;
                for (const auto& pair : jfac) f.emplace_back(pair[0].get<double>(), pair[1].get<double>());
                op.factors.push_back(std::move(f));
            }
            povm.operators.push_back(std::move(op));
        }
        check_povm_shapes(povm);
        return povm;
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorKind::ParseError, ex.what());
    }
}

std::string serialize_povm(const ProductPovm& povm) {
    std::ostringstream out;
    out << "{\n  \"party_dims\": [";
    for (std::size_t i = 0; i < povm.shape.party_dims.size(); ++i)
        out << (i ? ", " : "") << povm.shape.party_dims[i];
    out << "],\n  \"operators\": [\n";
    for (std::size_t i = 0; i < povm.operators.size(); ++i) {
        const auto& op = povm.operators[i];
        out << "    {\"coefficient\": " << fmt17(op.coefficient) << ", \"factors\": [";
        for (std::size_t p = 0; p < op.factors.size(); ++p) {
            out << (p ? ", " : "") << "[";
            for (std::size_t k = 0; k < op.factors[p].size(); ++k)
                out << (k ? ", " : "") << "[" << fmt17(op.factors[p][k].real()) << ", "
                    << fmt17(op.factors[p][k].imag()) << "]";
            out << "]";
        }
        out << "]}" << (i + 1 < povm.operators.size() ? "," : "") << "\n";
    }
    out << "  ]\n}\n";
    return out.str();
}

}  // namespace locc
