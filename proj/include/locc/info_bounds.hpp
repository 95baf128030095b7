#pragma once

// Upper bounds on the locally accessible information of an ensemble:
//   bound_basic   = ln(total_dim) - E
//   bound_refined = ln(total_dim) - E - E_f
// where E is the probability-weighted average entanglement entropy across the
// chosen cut and E_f (the average entanglement of the measurement outputs) is
// supplied by the caller. Values are in nats.

#include "locc/schmidt.hpp"

namespace locc {

struct InfoBoundReport {
    double total_dim_log = 0.0;       // ln(total_dim)
    double average_entanglement = 0.0;  // E
    double output_entanglement = 0.0;   // E_f, caller-supplied
    double bound_basic = 0.0;
    double bound_refined = 0.0;
};

InfoBoundReport bounds(const Ensemble& ensemble, const Cut& cut, double output_entanglement = 0.0);

}  // namespace locc
