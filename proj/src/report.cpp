#include "adlab/report.hpp"

namespace adlab::report {

json envelope(const std::string& kind, json config, json result) {
  json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["kind"] = kind;
  j["config"] = std::move(config);
  j["result"] = std::move(result);
  return j;
}

json complex_vector(const CVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back({v[i].real(), v[i].imag()});
  return out;
}

json real_vector(const RVector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

json residual_row(const ResidualRow& row) {
  json cells = json::array();
  for (const auto& c : row.cells) cells.push_back({{"generator", c.generator}, {"delta", c.delta}});
  return {{"class", row.signal_class}, {"cells", cells}, {"matched", row.matched}, {"tie", row.tie}};
}

json residual_table(const ResidualReport& table) {
  json rows = json::array();
  for (const auto& r : table.rows) rows.push_back(residual_row(r));
  return {{"rows", rows}, {"tie_tolerance", table.tie_tolerance}};
}

json match_result(const MatchResult& m) {
  return {{"basis", m.basis},
          {"lambda_min", m.solution.lambda_min},
          {"delta", m.delta},
          {"coeffs", real_vector(m.solution.coeffs)},
          {"degenerate", m.solution.degenerate},
          {"eigenspace_dim", m.solution.eigenspace.cols()},
          {"eigenvalues", real_vector(m.solution.eigenvalues)},
          {"interpretation", m.interpretation},
          {"interpretation_distance", m.interpretation_distance},
          {"timings", {{"assembly_seconds", m.assembly_seconds}, {"solve_seconds", m.solve_seconds}}}};
}

json estimate(const AveragedEstimate& est) {
  return {{"group", est.group_name},
          {"M", est.op.dim()},
          {"trace", est.op.trace()},
          {"eigenvalues", real_vector(est.eigenvalues)},
          {"rank", rank_of_signal_estimate(est)}};
}

json convergence(const ConvergenceResult& r) {
  return {{"sizes", r.sizes},
          {"errors", r.errors},
          {"sup_errors", r.sup_errors},
          {"slope", r.slope},
          {"intercept", r.intercept},
          {"fit_residual", r.fit_residual},
          {"fit_valid", r.fit_valid}};
}

json uncertainty(const UncertaintyResult& r) {
  return {{"delta_t", r.delta_t},
          {"delta_omega", r.delta_omega},
          {"product", r.product},
          {"edge_energy_time", r.edge_energy_time},
          {"edge_energy_freq", r.edge_energy_freq},
          {"grid_artifact", r.grid_artifact}};
}

json commutator(const CommutatorCheck& c) {
  return {{"stencil", to_string(c.stencil)},
          {"interior_deviation", c.interior_deviation},
          {"boundary_deviation", c.boundary_deviation}};
}

json replacement(const ReplacementSweep& s) {
  json points = json::array();
  for (const auto& p : s.points) {
    points.push_back({{"snr_db", p.snr_db}, {"mean_alignment", p.mean_alignment}, {"std_alignment", p.std_alignment}});
  }
  return {{"M", s.M},
          {"bin", s.bin},
          {"trials", s.trials},
          {"seed", s.seed},
          {"noiseless_alignment", s.noiseless_alignment},
          {"random_baseline", s.random_baseline},
          {"points", points}};
}

json cross_term(const CrossTermDecay& c) {
  return {{"trial_counts", c.trial_counts}, {"replicates", c.replicates}, {"norms", c.norms}, {"slope", c.slope}, {"fit_residual", c.fit_residual}};
}

json noise_floor(const NoiseFloorReport& r) {
  return {{"exploratory", true},
          {"M", r.M},
          {"trials", r.trials},
          {"seed", r.seed},
          {"sigma2", r.sigma2},
          {"coefficients",
           {{"scales", r.scales},
            {"mean", r.coefficient_mean},
            {"expected", r.coefficient_expected},
            {"max_z", r.coefficient_max_z},
            {"flat", r.coefficient_flat}}},
          {"affine",
           {{"dilations", r.dilations},
            {"omega", r.omega},
            {"diagonal", r.affine_diagonal},
            {"slope", r.affine_slope},
            {"reference_slope", 1.0},
            {"fit_residual", r.affine_fit_residual},
            {"band", {r.band_lo, r.band_hi}},
            {"omega_scaling_observed", r.omega_scaling_observed}}},
          {"cyclic", {{"diagonal", r.cyclic_diagonal}, {"max_z", r.cyclic_max_z}, {"flat", r.cyclic_flat}}},
          {"note", r.note}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace adlab::report
