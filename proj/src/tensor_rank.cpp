#include "locc/tensor_rank.hpp"

#include <algorithm>
#include <cmath>

namespace locc {

namespace {

std::vector<std::size_t> digits_of(std::size_t idx, const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> d(dims.size());
    for (std::size_t p = dims.size(); p-- > 0;) {
        d[p] = idx % dims[p];
        idx /= dims[p];
    }
    return d;
}

std::uint64_t derive_seed(std::uint64_t seed, std::size_t restart) {
    // splitmix64 over (seed + restart) keeps restarts independent and the
    // whole run reproducible.
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (restart + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Solve x G = c for each row of C, i.e. B = C * pinv(G), with G r x r.
ComplexMatrix right_solve_pinv(const ComplexMatrix& c, const ComplexMatrix& g) {
    SvdResult s = svd(g);
    double cutoff = s.singular_values.empty() ? 0.0 : 1e-12 * s.singular_values[0];
    // pinv(G) = V * diag(1/sigma) * U^dagger
    ComplexMatrix vinv = s.right;
    for (std::size_t j = 0; j < s.singular_values.size(); ++j) {
        double inv = s.singular_values[j] > cutoff ? 1.0 / s.singular_values[j] : 0.0;
        for (std::size_t i = 0; i < vinv.rows(); ++i) vinv(i, j) *= inv;
    }
    return c * (vinv * s.left.adjoint());
}

}  // namespace

const char* to_string(LowerMethod m) {
    return m == LowerMethod::Flattening ? "flattening" : "exact_222";
}

const char* to_string(UpperMethod m) {
    switch (m) {
        case UpperMethod::WitnessDecomposition: return "witness_decomposition";
        case UpperMethod::Exact222: return "exact_222";
        case UpperMethod::TrivialDim: return "trivial_dim";
    }
    return "?";
}

std::size_t flattening_lower_bound(const PureState& state, double eps) {
    std::size_t k = state.shape.parties();
    if (k < 2) throw Error(ErrorKind::NotMultipartite, "flattening needs >= 2 parties");

    std::vector<Cut> cuts;
    if (k < 4) {
        for (std::size_t p = 0; p + (k == 2 ? 1 : 0) < k; ++p) cuts.push_back(single_party_cut(p));
    } else {
        // All two-group cuts: subsets containing party 0, excluding the full set.
        for (std::size_t mask = 1; mask < (1ull << k); mask += 2) {
            if (mask == (1ull << k) - 1) continue;
            Cut cut;
            for (std::size_t p = 0; p < k; ++p)
                if (mask & (1ull << p)) cut.left.push_back(p);
            cuts.push_back(std::move(cut));
        }
    }

    std::size_t best = 1;
    for (const auto& cut : cuts)
        best = std::max(best, schmidt_decompose(state, cut, eps).schmidt_number);
    return best;
}

Complex hyperdeterminant_2x2x2(const PureState& state) {
    if (state.shape.party_dims != std::vector<std::size_t>{2, 2, 2})
        throw Error(ErrorKind::ShapeMismatch, "hyperdeterminant needs a 2x2x2 state");
    auto t = [&](int i, int j, int k) { return state.amplitudes[i * 4 + j * 2 + k]; };
    Complex det =
        t(0, 0, 0) * t(0, 0, 0) * t(1, 1, 1) * t(1, 1, 1) +
        t(0, 0, 1) * t(0, 0, 1) * t(1, 1, 0) * t(1, 1, 0) +
        t(0, 1, 0) * t(0, 1, 0) * t(1, 0, 1) * t(1, 0, 1) +
        t(1, 0, 0) * t(1, 0, 0) * t(0, 1, 1) * t(0, 1, 1) -
        2.0 * (t(0, 0, 0) * t(0, 0, 1) * t(1, 1, 0) * t(1, 1, 1) +
               t(0, 0, 0) * t(0, 1, 0) * t(1, 0, 1) * t(1, 1, 1) +
               t(0, 0, 0) * t(1, 0, 0) * t(0, 1, 1) * t(1, 1, 1) +
               t(0, 0, 1) * t(0, 1, 0) * t(1, 0, 1) * t(1, 1, 0) +
               t(0, 0, 1) * t(1, 0, 0) * t(0, 1, 1) * t(1, 1, 0) +
               t(0, 1, 0) * t(1, 0, 0) * t(0, 1, 1) * t(1, 0, 1)) +
        4.0 * (t(0, 0, 0) * t(0, 1, 1) * t(1, 0, 1) * t(1, 1, 0) +
               t(0, 0, 1) * t(0, 1, 0) * t(1, 0, 0) * t(1, 1, 1));
    return det;
}

std::size_t exact_rank_2x2x2(const PureState& state, double eps) {
    if (state.shape.party_dims != std::vector<std::size_t>{2, 2, 2})
        throw Error(ErrorKind::ShapeMismatch, "exact rank classifier needs a 2x2x2 state");
    std::size_t r0 = schmidt_decompose(state, single_party_cut(0), eps).schmidt_number;
    std::size_t r1 = schmidt_decompose(state, single_party_cut(1), eps).schmidt_number;
    std::size_t r2 = schmidt_decompose(state, single_party_cut(2), eps).schmidt_number;
    if (r0 == 1 && r1 == 1 && r2 == 1) return 1;
    if (std::abs(hyperdeterminant_2x2x2(state)) > 1e-10) return 2;  // GHZ class
    if (r0 == 1 || r1 == 1 || r2 == 1) return 2;                    // one entangled pair
    return 3;                                                       // W class
}

double witness_residual(const PureState& state, const Witness& witness) {
    CVector recon(state.amplitudes.size(), Complex(0.0, 0.0));
    for (const auto& term : witness) {
        CVector prod = kron(term.factors);
        for (std::size_t i = 0; i < recon.size(); ++i) recon[i] += term.weight * prod[i];
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < recon.size(); ++i)
        acc += std::norm(state.amplitudes[i] - recon[i]);
    return std::sqrt(acc);
}

AlsOutcome als_upper_bound(const PureState& state, std::size_t target_rank, const AlsConfig& config) {
    if (target_rank < 1) throw Error(ErrorKind::InvalidInput, "target rank must be >= 1");
    const auto& dims = state.shape.party_dims;
    std::size_t k = dims.size(), total = state.amplitudes.size(), r = target_rank;

    // Precompute per-index digit vectors once; total <= 64 so this is tiny.
    std::vector<std::vector<std::size_t>> digits(total);
    for (std::size_t idx = 0; idx < total; ++idx) digits[idx] = digits_of(idx, dims);

    AlsOutcome outcome;
    outcome.best_residual = norm2(state.amplitudes);

    for (std::size_t restart = 0; restart < config.restarts; ++restart) {
        GaussianSampler rng(derive_seed(config.seed, restart));
        std::vector<ComplexMatrix> factors(k);
        for (std::size_t p = 0; p < k; ++p) {
            factors[p] = ComplexMatrix(dims[p], r);
            for (std::size_t t = 0; t < r; ++t) {
                CVector col = rng.complex_vector(dims[p]);
                normalize(col);
                for (std::size_t i = 0; i < dims[p]; ++i) factors[p](i, t) = col[i];
            }
        }
        std::vector<double> weights(r, 1.0);

        auto residual = [&]() {
            double acc = 0.0;
            for (std::size_t idx = 0; idx < total; ++idx) {
                Complex recon(0.0, 0.0);
                for (std::size_t t = 0; t < r; ++t) {
                    Complex prod = weights[t];
                    for (std::size_t p = 0; p < k; ++p) prod *= factors[p](digits[idx][p], t);
                    recon += prod;
                }
                acc += std::norm(state.amplitudes[idx] - recon);
            }
            return std::sqrt(acc);
        };

        double res = residual();
        for (std::size_t it = 0; it < config.iters && res > config.tol * 0.1; ++it) {
            for (std::size_t p = 0; p < k; ++p) {
                // Gram of the Khatri-Rao of the other factors: Hadamard product
                // of their unit-column Grams.
                ComplexMatrix gram(r, r);
                for (std::size_t t = 0; t < r; ++t)
                    for (std::size_t u = 0; u < r; ++u) {
                        Complex g(1.0, 0.0);
                        for (std::size_t q = 0; q < k; ++q) {
                            if (q == p) continue;
                            Complex dot(0.0, 0.0);
                            for (std::size_t i = 0; i < dims[q]; ++i)
                                dot += std::conj(factors[q](i, t)) * factors[q](i, u);
                            g *= dot;
                        }
                        gram(t, u) = std::conj(g);
                    }

                // C[i_p, t] = sum over the other indices of s * conj(prod of
                // the other factors).
                ComplexMatrix c(dims[p], r);
                for (std::size_t idx = 0; idx < total; ++idx) {
                    Complex s = state.amplitudes[idx];
                    if (s == Complex(0.0, 0.0)) continue;
                    for (std::size_t t = 0; t < r; ++t) {
                        Complex prod(1.0, 0.0);
                        for (std::size_t q = 0; q < k; ++q) {
                            if (q == p) continue;
                            prod *= std::conj(factors[q](digits[idx][q], t));
                        }
                        c(digits[idx][p], t) += s * prod;
                    }
                }

                ComplexMatrix b = right_solve_pinv(c, gram);
                for (std::size_t t = 0; t < r; ++t) {
                    double n = 0.0;
                    for (std::size_t i = 0; i < dims[p]; ++i) n += std::norm(b(i, t));
                    n = std::sqrt(n);
                    if (n < 1e-300) {
                        for (std::size_t i = 0; i < dims[p]; ++i) factors[p](i, t) = (i == 0);
                        weights[t] = 0.0;
                    } else {
                        for (std::size_t i = 0; i < dims[p]; ++i) factors[p](i, t) = b(i, t) / n;
                        weights[t] = n;
                    }
                }
            }
            res = residual();
        }

        outcome.best_residual = std::min(outcome.best_residual, res);
        if (res <= config.tol) {
            Witness w;
            for (std::size_t t = 0; t < r; ++t) {
                ProductTerm term;
                term.weight = weights[t];
                for (std::size_t p = 0; p < k; ++p) term.factors.push_back(factors[p].column(t));
                w.push_back(std::move(term));
            }
            outcome.witness = std::move(w);
            return outcome;  // smallest restart index wins
        }
    }
    return outcome;
}

namespace {

Witness trivial_basis_witness(const PureState& state) {
    const auto& dims = state.shape.party_dims;
    Witness w;
    for (std::size_t idx = 0; idx < state.amplitudes.size(); ++idx) {
        Complex a = state.amplitudes[idx];
        if (std::abs(a) == 0.0) continue;
        ProductTerm term;
        term.weight = a;
        auto d = digits_of(idx, dims);
        for (std::size_t p = 0; p < dims.size(); ++p) {
            CVector e(dims[p], Complex(0.0, 0.0));
            e[d[p]] = 1.0;
            term.factors.push_back(std::move(e));
        }
        w.push_back(std::move(term));
    }
    return w;
}

}  // namespace

RankCertificate rank_certificate(const PureState& state, const RankConfig& config) {
    std::size_t k = state.shape.parties();
    if (k < 2) throw Error(ErrorKind::NotMultipartite, "rank certificate needs >= 2 parties");

    RankCertificate cert;

    if (k == 2) {
        // Bipartite is exact: the Schmidt decomposition is itself an optimal
        // witness.
        SchmidtDecomposition d = schmidt_decompose(state, single_party_cut(0), config.rank_eps);
        cert.lower_bound = cert.upper_bound = d.schmidt_number;
        cert.lower_method = LowerMethod::Flattening;
        cert.upper_method = UpperMethod::WitnessDecomposition;
        Witness w;
        for (std::size_t j = 0; j < d.schmidt_number; ++j)
            w.push_back(ProductTerm{d.coefficients[j], {d.left_vectors[j], d.right_vectors[j]}});
        cert.witness = std::move(w);
        return cert;
    }

    bool three_qubits = state.shape.party_dims == std::vector<std::size_t>{2, 2, 2};
    if (three_qubits) {
        cert.lower_bound = exact_rank_2x2x2(state, config.rank_eps);
        cert.lower_method = LowerMethod::Exact222;
    } else {
        cert.lower_bound = flattening_lower_bound(state, config.rank_eps);
        cert.lower_method = LowerMethod::Flattening;
    }

    std::size_t total = state.shape.total_dim();
    for (std::size_t target = cert.lower_bound; target < total; ++target) {
        AlsOutcome out = als_upper_bound(state, target, config.als);
        if (out.witness) {
            cert.upper_bound = target;
            cert.upper_method = UpperMethod::WitnessDecomposition;
            cert.witness = std::move(out.witness);
            return cert;
        }
        if (three_qubits && target == cert.lower_bound) {
            // The classifier is exact; the ALS miss only costs us the witness.
            cert.upper_bound = cert.lower_bound;
            cert.upper_method = UpperMethod::Exact222;
            return cert;
        }
    }

    Witness trivial = trivial_basis_witness(state);
    cert.upper_bound = std::max<std::size_t>(trivial.size(), cert.lower_bound);
    cert.upper_method = UpperMethod::TrivialDim;
    if (trivial.size() >= cert.lower_bound) cert.witness = std::move(trivial);
    return cert;
}

}  // namespace locc
