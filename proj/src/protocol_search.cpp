#include "locc/protocol_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace locc {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kBranchOrthTol = 1e-8;
constexpr double kSurviveTol = 1e-9;  // branch probability below this is noise

// Projects party `party` onto `bvec`: returns the branch probability and the
// renormalized post-measurement state (party collapsed onto bvec).
std::pair<double, CVector> project(const CVector& amps, const std::vector<std::size_t>& dims,
                                   std::size_t party, const CVector& bvec) {
    std::size_t stride = 1;
    for (std::size_t p = party + 1; p < dims.size(); ++p) stride *= dims[p];
    std::size_t dp = dims[party];
    std::size_t outer = amps.size() / (stride * dp);

    CVector contracted(amps.size() / dp, Complex(0.0, 0.0));
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t i = 0; i < dp; ++i)
            for (std::size_t s = 0; s < stride; ++s)
                contracted[o * stride + s] += std::conj(bvec[i]) * amps[(o * dp + i) * stride + s];

    double prob = 0.0;
    for (const auto& c : contracted) prob += std::norm(c);
    CVector post(amps.size(), Complex(0.0, 0.0));
    if (prob > 1e-30) {
        double inv = 1.0 / std::sqrt(prob);
        for (std::size_t o = 0; o < outer; ++o)
            for (std::size_t i = 0; i < dp; ++i)
                for (std::size_t s = 0; s < stride; ++s)
                    post[(o * dp + i) * stride + s] = bvec[i] * contracted[o * stride + s] * inv;
    }
    return {prob, std::move(post)};
}

void simulate_node(const ProtocolNode& node, const CVector& amps,
                   const std::vector<std::size_t>& dims, double weight,
                   std::map<std::size_t, double>& dist) {
    if (node.acting_party >= dims.size())
        throw Error(ErrorKind::ShapeMismatch, "acting party out of range");
    for (std::size_t k = 0; k < node.basis.size(); ++k) {
        if (node.basis[k].size() != dims[node.acting_party])
            throw Error(ErrorKind::ShapeMismatch, "basis vector dimension mismatch");
        auto [prob, post] = project(amps, dims, node.acting_party, node.basis[k]);
        if (prob <= 1e-30) continue;
        const ProtocolBranch& branch = node.branches.at(k);
        if (branch.child)
            simulate_node(*branch.child, post, dims, weight * prob, dist);
        else
            dist[branch.verdict] += weight * prob;
    }
}

}  // namespace

std::map<std::size_t, double> simulate(const LoccProtocol& protocol, const PureState& state) {
    if (!protocol.root) throw Error(ErrorKind::InvalidInput, "protocol has no root");
    std::map<std::size_t, double> dist;
    simulate_node(*protocol.root, state.amplitudes, state.shape.party_dims, 1.0, dist);
    return dist;
}

bool verify_distinguishes(const LoccProtocol& protocol, const Ensemble& ensemble) {
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        auto dist = simulate(protocol, ensemble.states[i]);
        auto it = dist.find(i);
        if (it == dist.end() || it->second < 1.0 - 1e-8) return false;
    }
    return true;
}

namespace {

// --- Alice basis parameterization -------------------------------------------
//
// n = 2 uses two angles directly; n = 3, 4 chain Givens rotations
// over all index pairs (two angles per pair) applied to the identity.

std::size_t param_count(std::size_t n) { return n == 2 ? 2 : n * (n - 1); }

std::vector<CVector> basis_from_params(std::size_t n, const std::vector<double>& params) {
    if (n == 2) {
        double th = params[0], ph = params[1];
        double c = std::cos(th), s = std::sin(th);
        Complex e = std::polar(1.0, ph);
        return {{c, e * s}, {-std::conj(e) * s, c}};
    }
    ComplexMatrix u = ComplexMatrix::identity(n);
    std::size_t idx = 0;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) {
            double c = std::cos(params[idx]), s = std::sin(params[idx]);
            Complex e = std::polar(1.0, params[idx + 1]);
            idx += 2;
            for (std::size_t r = 0; r < n; ++r) {
                Complex up = u(r, p), uq = u(r, q);
                u(r, p) = c * up - s * std::conj(e) * uq;
                u(r, q) = s * e * up + c * uq;
            }
        }
    std::vector<CVector> basis;
    for (std::size_t j = 0; j < n; ++j) basis.push_back(u.column(j));
    return basis;
}

// Bob's conditional (unnormalized) vectors per Alice outcome and state.
std::vector<std::vector<CVector>> conditional_states(const Ensemble& ensemble,
                                                     const std::vector<CVector>& alice_basis) {
    std::size_t na = ensemble.shape().party_dims[0], nb = ensemble.shape().party_dims[1];
    std::vector<std::vector<CVector>> cond(alice_basis.size());
    for (std::size_t k = 0; k < alice_basis.size(); ++k) {
        cond[k].resize(ensemble.size());
        for (std::size_t i = 0; i < ensemble.size(); ++i) {
            CVector beta(nb, Complex(0.0, 0.0));
            for (std::size_t a = 0; a < na; ++a)
                for (std::size_t b = 0; b < nb; ++b)
                    beta[b] += std::conj(alice_basis[k][a]) * ensemble.states[i].amplitudes[a * nb + b];
            cond[k][i] = std::move(beta);
        }
    }
    return cond;
}

// Sum of squared pairwise overlaps of the conditional vectors; zero exactly
// when every branch is pairwise orthogonal.
double branch_defect(const Ensemble& ensemble, const std::vector<double>& params) {
    auto basis = basis_from_params(ensemble.shape().party_dims[0], params);
    auto cond = conditional_states(ensemble, basis);
    double defect = 0.0;
    for (const auto& branch : cond)
        for (std::size_t i = 0; i < branch.size(); ++i)
            for (std::size_t j = i + 1; j < branch.size(); ++j)
                defect += std::norm(inner(branch[i], branch[j]));
    return defect;
}

std::optional<LoccProtocol> build_one_way(const Ensemble& ensemble,
                                          const std::vector<double>& params) {
    std::size_t nb = ensemble.shape().party_dims[1];
    auto basis = basis_from_params(ensemble.shape().party_dims[0], params);
    auto cond = conditional_states(ensemble, basis);

    auto root = std::make_unique<ProtocolNode>();
    root->acting_party = 0;
    root->basis = basis;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        std::vector<std::size_t> survivors;
        for (std::size_t i = 0; i < ensemble.size(); ++i)
            if (norm2(cond[k][i]) * norm2(cond[k][i]) > kSurviveTol) survivors.push_back(i);

        ProtocolBranch branch;
        if (survivors.empty()) {
            branch.verdict = 0;  // unreachable branch
        } else {
            // Gram-Schmidt over the survivors' conditional vectors; a clash
            // (dependent survivors) means this Alice basis is not a solution.
            std::vector<CVector> bob_basis;
            for (std::size_t i : survivors) {
                CVector v = cond[k][i];
                for (const auto& u : bob_basis) {
                    Complex ov = inner(u, v);
                    for (std::size_t b = 0; b < nb; ++b) v[b] -= ov * u[b];
                }
                double n = norm2(v);
                if (n * n < kSurviveTol) return std::nullopt;
                for (auto& e : v) e /= n;
                bob_basis.push_back(std::move(v));
            }
            for (std::size_t cand = 0; cand < nb && bob_basis.size() < nb; ++cand) {
                CVector v(nb, Complex(0.0, 0.0));
                v[cand] = 1.0;
                for (const auto& u : bob_basis) {
                    Complex ov = inner(u, v);
                    for (std::size_t b = 0; b < nb; ++b) v[b] -= ov * u[b];
                }
                double n = norm2(v);
                if (n > 0.5) {
                    for (auto& e : v) e /= n;
                    bob_basis.push_back(std::move(v));
                }
            }

            auto bob = std::make_unique<ProtocolNode>();
            bob->acting_party = 1;
            bob->basis = std::move(bob_basis);
            for (std::size_t b = 0; b < bob->basis.size(); ++b) {
                ProtocolBranch leaf;
                leaf.verdict = b < survivors.size() ? survivors[b] : survivors[0];
                bob->branches.push_back(std::move(leaf));
            }
            branch.child = std::move(bob);
        }
        root->branches.push_back(std::move(branch));
    }
    return LoccProtocol{std::move(root)};
}

}  // namespace

SearchOutcome search_one_way(const Ensemble& ensemble, const SearchConfig& config) {
    const SystemShape& shape = ensemble.shape();
    if (shape.parties() != 2)
        throw Error(ErrorKind::UnsupportedShape, "one-way search is bipartite");
    std::size_t na = shape.party_dims[0];
    if (na > 4) throw Error(ErrorKind::UnsupportedShape, "Alice dimension must be <= 4");

    std::size_t side = (1ull << config.grid_depth) + 1;
    std::size_t np = param_count(na);

    // Candidate parameter sets, in a fixed order.
    std::vector<std::vector<double>> candidates;
    if (na == 2) {
        double dth = (kPi / 2.0) / static_cast<double>(side - 1);
        double dph = (2.0 * kPi) / static_cast<double>(side - 1);
        for (std::size_t i = 0; i < side; ++i)
            for (std::size_t j = 0; j < side; ++j)
                candidates.push_back({i * dth, j * dph});
    } else {
        GaussianSampler rng(config.seed);
        for (std::size_t c = 0; c < side * side; ++c) {
            std::vector<double> p(np);
            for (auto& x : p) x = std::abs(rng.next()) * kPi;
            candidates.push_back(std::move(p));
        }
    }

    SearchOutcome outcome;
    outcome.best_defect = std::numeric_limits<double>::infinity();
    std::vector<double> defects(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        defects[c] = branch_defect(ensemble, candidates[c]);
        outcome.best_defect = std::min(outcome.best_defect, defects[c]);
    }

    auto attempt = [&](const std::vector<double>& params) -> bool {
        auto protocol = build_one_way(ensemble, params);
        if (!protocol) return false;
        if (!verify_distinguishes(*protocol, ensemble)) return false;
        outcome.protocol = std::move(protocol);
        return true;
    };

    // Direct grid hits first, in grid order.
    for (std::size_t c = 0; c < candidates.size(); ++c)
        if (defects[c] <= kBranchOrthTol && attempt(candidates[c])) return outcome;

    // Otherwise refine the most promising starts by halving-interval
    // coordinate descent.
    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return defects[a] < defects[b]; });
    std::size_t starts = std::min<std::size_t>(12, order.size());
    double h0 = kPi / static_cast<double>(side - 1);

    for (std::size_t s = 0; s < starts; ++s) {
        std::vector<double> params = candidates[order[s]];
        double best = defects[order[s]];
        // Compass search: keep the step while any coordinate improves, halve
        // when a full sweep stalls.
        double h = h0;
        std::size_t rounds = 0;
        while (h > 1e-13 && rounds < config.refine_iters * 20) {
            ++rounds;
            bool improved = false;
            for (std::size_t d = 0; d < np; ++d) {
                for (double step : {h, -h}) {
                    std::vector<double> trial = params;
                    trial[d] += step;
                    double v = branch_defect(ensemble, trial);
                    if (v < best) {
                        best = v;
                        params = std::move(trial);
                        improved = true;
                    }
                }
            }
            if (!improved) h *= 0.5;
        }
        outcome.best_defect = std::min(outcome.best_defect, best);
        if (best <= kBranchOrthTol && attempt(params)) return outcome;
    }
    return outcome;
}

}  // namespace locc
