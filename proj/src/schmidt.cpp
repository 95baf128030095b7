#include "locc/schmidt.hpp"

#include <algorithm>
#include <cmath>

namespace locc {

namespace {

// Validates the cut and returns (left parties, right parties) in ascending order.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_parties(
    const SystemShape& shape, const Cut& cut) {
    std::size_t k = shape.parties();
    std::vector<bool> in_left(k, false);
    for (std::size_t p : cut.left) {
        if (p >= k) throw Error(ErrorKind::InvalidCut, "party index out of range");
        if (in_left[p]) throw Error(ErrorKind::InvalidCut, "duplicate party in cut");
        in_left[p] = true;
    }
    std::vector<std::size_t> left, right;
    for (std::size_t p = 0; p < k; ++p) (in_left[p] ? left : right).push_back(p);
    if (left.empty() || right.empty())
        throw Error(ErrorKind::InvalidCut, "both cut groups must be non-empty");
    return {left, right};
}

}  // namespace

Cut single_party_cut(std::size_t party) { return Cut{{party}}; }

ComplexMatrix flatten(const PureState& state, const Cut& cut) {
    auto [left, right] = split_parties(state.shape, cut);
    const auto& dims = state.shape.party_dims;

    std::size_t dl = 1, dr = 1;
    for (std::size_t p : left) dl *= dims[p];
    for (std::size_t p : right) dr *= dims[p];

    // Per-party digit decomposition (last party fastest), regrouped into a row
    // index over the left parties and a column index over the right parties,
    // each keeping the original party order.
    std::size_t k = dims.size();
    ComplexMatrix m(dl, dr);
    std::vector<std::size_t> digits(k);
    for (std::size_t idx = 0; idx < state.amplitudes.size(); ++idx) {
        std::size_t rem = idx;
        for (std::size_t p = k; p-- > 0;) {
            digits[p] = rem % dims[p];
            rem /= dims[p];
        }
        std::size_t row = 0, col = 0;
        for (std::size_t p : left) row = row * dims[p] + digits[p];
        for (std::size_t p : right) col = col * dims[p] + digits[p];
        m(row, col) = state.amplitudes[idx];
    }
    return m;
}

SchmidtDecomposition schmidt_decompose(const PureState& state, const Cut& cut, double eps) {
    SvdResult s = svd(flatten(state, cut));

    SchmidtDecomposition out;
    out.cut = cut;
    double largest = s.singular_values.empty() ? 0.0 : s.singular_values[0];
    for (std::size_t j = 0; j < s.singular_values.size(); ++j) {
        double lambda = s.singular_values[j];
        if (lambda <= eps * largest) break;  // sorted descending
        out.coefficients.push_back(lambda);
        out.left_vectors.push_back(s.left.column(j));
        // Conjugate the right singular vector so the flattening reconstructs as
        // M[r,c] = sum_k lambda_k L_k[r] R_k[c].
        CVector r = s.right.column(j);
        for (auto& e : r) e = std::conj(e);
        out.right_vectors.push_back(std::move(r));
    }
    out.schmidt_number = out.coefficients.size();
    return out;
}

double entanglement_entropy(const PureState& state, const Cut& cut) {
    SchmidtDecomposition d = schmidt_decompose(state, cut);
    double e = 0.0;
    for (double lambda : d.coefficients) {
        double p = lambda * lambda;
        if (p > 0.0) e -= p * std::log(p);
    }
    return std::max(e, 0.0);
}

}  // namespace locc
