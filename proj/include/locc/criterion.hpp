#pragma once

// The necessary condition for LOCC distinguishability: if the sum of the
// least-product-number lower bounds of the ensemble members exceeds the total
// Hilbert-space dimension, the ensemble is certified LOCC-indistinguishable.
// The check is sound for indistinguishability only; it never claims
// distinguishability.

#include "locc/tensor_rank.hpp"

namespace locc {

enum class Verdict { CertifiedLoccIndistinguishable, Inconclusive };

struct CriterionReport {
    std::vector<std::pair<std::string, RankCertificate>> per_state;
    std::size_t sum_lower = 0;
    std::size_t sum_upper = 0;
    std::size_t total_dim = 0;
    Verdict verdict = Verdict::Inconclusive;
};

CriterionReport check(const Ensemble& ensemble, const RankConfig& config = {});

inline const char* to_string(Verdict v) {
    return v == Verdict::CertifiedLoccIndistinguishable ? "CertifiedLoccIndistinguishable"
                                                        : "Inconclusive";
}

}  // namespace locc
