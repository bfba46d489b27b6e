#include "renewal/serialize.hpp"

#include <cstdio>

namespace renewal {

using nlohmann::json;

json bound_report_json(const BoundReport& report) {
  json doc{
      {"gamma0", report.gamma0},
      {"c", report.c},
      {"p_max", report.p_max},
      {"p", report.p},
      {"mu1_hat", report.moments.mu1_hat},
      {"mu1_series", report.moments.diag.mu1_series},
      {"mu2_hat", report.moments.mu2_hat},
      {"mu2_series", report.moments.diag.mu2_series},
      {"mu2_printed", report.moments.diag.mu2_printed},
      {"mu2_gf", report.moments.diag.mu2_gf},
      {"mu2_cs_floor", report.moments.diag.cs_floor},
      {"mu2_printed_matches_series", report.moments.diag.printed_matches_series},
      {"mu2_printed_above_floor", report.moments.diag.printed_above_floor},
      {"mu2_gf_matches_series", report.moments.diag.gf_matches_series},
      {"series_terms", report.moments.diag.series_terms},
      {"series_tail_bound", report.moments.diag.series_tail_bound},
      {"gamma", report.gamma},
      {"gamma_computed", report.gamma_computed},
      {"n0", report.n0},
      {"M", report.M},
      {"e_theta1", report.e_theta1.value},
      {"e_theta1_residual", report.e_theta1.residual},
      {"e_theta1_complete", report.e_theta1.complete},
      {"e_theta2", report.e_theta2.value},
      {"e_theta2_residual", report.e_theta2.residual},
      {"e_theta2_complete", report.e_theta2.complete},
      {"bound_general", report.bound_general},
  };
  doc["gamma_override"] =
      report.gamma_override ? json(*report.gamma_override) : json(nullptr);
  doc["bound_start_at_zero"] = report.bound_start_at_zero ? json(*report.bound_start_at_zero) : json(nullptr);
  return doc;
}

json bound_report_json(const BoundReport& report, const RenewalFloorReport& cert) {
  json doc = bound_report_json(report);
  doc["cert_min_u"] = cert.min_u;
  doc["cert_argmin_t"] = cert.argmin_t;
  doc["cert_argmin_n"] = cert.argmin_n;
  doc["cert_argmin_chain"] = cert.argmin_chain;
  doc["cert_t_max"] = cert.t_max;
  doc["cert_n_max"] = cert.n_max;
  doc["cert_pass"] = cert.pass;
  return doc;
}

json estimate_json(const SimEstimate& est) {
  return json{{"n", est.n},
              {"mean", est.mean},
              {"std_error", est.std_error},
              {"ci95", json::array({est.ci_lo, est.ci_hi})},
              {"censored", est.censored}};
}

json summary_json(const SimSummary& summary) {
  json tails = json::array();
  for (const TailPoint& pt : summary.tail_tau)
    tails.push_back({{"n", pt.n}, {"p", pt.p_hat}, {"std_error", pt.std_error}});

  json excess1 = json::array(), excess2 = json::array();
  for (std::size_t i = 0; i < summary.probe_times.size(); ++i) {
    json e1 = estimate_json(summary.mean_R_1[i]);
    e1["m"] = summary.probe_times[i];
    excess1.push_back(std::move(e1));
    json e2 = estimate_json(summary.mean_R_2[i]);
    e2["m"] = summary.probe_times[i];
    excess2.push_back(std::move(e2));
  }

  return json{{"n_reps", summary.n_reps},
              {"seed", summary.seed},
              {"horizon", summary.horizon},
              {"n0", summary.n0},
              {"ET", estimate_json(summary.ET)},
              {"e_theta0_1", estimate_json(summary.e_theta0_1)},
              {"e_theta0_2", estimate_json(summary.e_theta0_2)},
              {"tau_tail", std::move(tails)},
              {"excess_chain1", std::move(excess1)},
              {"excess_chain2", std::move(excess2)},
              {"censored_reps", summary.censored_reps},
              {"censoring_rate", summary.censoring_rate},
              {"censoring_ok", summary.censoring_ok},
              {"decomp_checked", summary.decomp_checked},
              {"decomp_violations", summary.decomp_violations}};
}

json verify_json(const VerifyReport& report) {
  json checks = json::array();
  for (const VerifyCheck& check : report.checks)
    checks.push_back(
        {{"name", check.name}, {"pass", check.pass}, {"evidence", check.evidence}});
  return json{{"pass", report.pass},
              {"checks", std::move(checks)},
              {"bound", bound_report_json(report.bound, report.cert)},
              {"simulation", summary_json(report.sim)}};
}

std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_laws_csv(std::ostream& out, int chain, const FirstReturnLaw& law,
                    const RenewalSequence& seq, bool header) {
  if (header) out << "chain,n,g_n,G_n,u_n\n";
  const std::size_t n_max = std::min(law.g.size(), seq.u.size());
  for (std::size_t n = 0; n < n_max; ++n) {
    out << chain << ',' << n << ',' << csv_double(n == 0 ? 0.0 : law.g[n]) << ','
        << csv_double(law.G[n]) << ',' << csv_double(seq.u[n]) << '\n';
  }
}

void write_dominant_csv(std::ostream& out, const DominatingLaw& law) {
  out << "n,f_n,g_hat_n,G_hat_n\n";
  for (std::size_t n = 0; n < law.f.size(); ++n)
    out << n << ',' << csv_double(law.f[n]) << ',' << csv_double(law.g_hat[n]) << ','
        << csv_double(law.G_hat[n]) << '\n';
}

void write_per_rep_csv(std::ostream& out, const std::vector<RepRecord>& records) {
  out << "rep,theta0_1,theta0_2,T,tau_stop,censored\n";
  for (std::size_t r = 0; r < records.size(); ++r) {
    const RepRecord& rec = records[r];
    out << r << ',';
    if (rec.theta0_1 >= 0) out << rec.theta0_1;
    out << ',';
    if (rec.theta0_2 >= 0) out << rec.theta0_2;
    out << ',';
    if (rec.T >= 0) out << rec.T;
    out << ',';
    if (rec.tau_stop >= 0) out << rec.tau_stop;
    out << ',' << (rec.censored ? 1 : 0) << '\n';
  }
}

void write_flat_csv(std::ostream& out, const json& doc) {
  out << "key,value\n";
  for (const auto& [key, value] : doc.items()) out << key << ',' << value.dump() << '\n';
}

}  // namespace renewal
