#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "renewal/bounds.hpp"
#include "renewal/dominator.hpp"
#include "renewal/first_return.hpp"
#include "renewal/pipeline.hpp"
#include "renewal/simulator.hpp"

namespace renewal {

// Flat object carrying every intermediate of the bound computation.
nlohmann::json bound_report_json(const BoundReport& report);

// Same, with the Condition A certificate folded in as cert_* fields.
nlohmann::json bound_report_json(const BoundReport& report,
                                 const RenewalFloorReport& cert);

nlohmann::json estimate_json(const SimEstimate& est);
nlohmann::json summary_json(const SimSummary& summary);
nlohmann::json verify_json(const VerifyReport& report);

// Fixed-width decimal repr used in every CSV cell.
std::string csv_double(double v);

// columns: chain,n,g_n,G_n,u_n
void write_laws_csv(std::ostream& out, int chain, const FirstReturnLaw& law,
                    const RenewalSequence& seq, bool header);

// columns: n,f_n,g_hat_n,G_hat_n
void write_dominant_csv(std::ostream& out, const DominatingLaw& law);

// columns: rep,theta0_1,theta0_2,T,tau_stop,censored (unresolved cells empty)
void write_per_rep_csv(std::ostream& out, const std::vector<RepRecord>& records);

// Two-column key,value rendering of a flat JSON object.
void write_flat_csv(std::ostream& out, const nlohmann::json& doc);

}  // namespace renewal
