#include "locc/criterion.hpp"

namespace locc {

CriterionReport check(const Ensemble& ensemble, const RankConfig& config) {
    CriterionReport report;
    report.total_dim = ensemble.shape().total_dim();
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        const PureState& st = ensemble.states[i];
        RankCertificate cert = rank_certificate(st, config);
        report.sum_lower += cert.lower_bound;
        report.sum_upper += cert.upper_bound;
        std::string label = st.label.empty() ? "state_" + std::to_string(i) : st.label;
        report.per_state.emplace_back(std::move(label), std::move(cert));
    }
    // Only lower bounds feed the verdict, so a heuristic upper-bound miss can
    // never fabricate a certificate.
    report.verdict = report.sum_lower > report.total_dim
                         ? Verdict::CertifiedLoccIndistinguishable
                         : Verdict::Inconclusive;
    return report;
}

}  // namespace locc
