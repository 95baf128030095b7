#include "locc/info_bounds.hpp"

#include <cmath>

namespace locc {

InfoBoundReport bounds(const Ensemble& ensemble, const Cut& cut, double output_entanglement) {
    if (output_entanglement < 0.0)
        throw Error(ErrorKind::InvalidInput, "output entanglement must be >= 0");
    InfoBoundReport report;
    report.total_dim_log = std::log(static_cast<double>(ensemble.shape().total_dim()));
    for (std::size_t i = 0; i < ensemble.size(); ++i)
        report.average_entanglement +=
            ensemble.probabilities[i] * entanglement_entropy(ensemble.states[i], cut);
    report.output_entanglement = output_entanglement;
    report.bound_basic = report.total_dim_log - report.average_entanglement;
    report.bound_refined = report.bound_basic - report.output_entanglement;
    return report;
}

}  // namespace locc
