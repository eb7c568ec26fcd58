#include "adlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "adlab/errors.hpp"
#include "adlab/estimator.hpp"
#include "adlab/gevp.hpp"
#include "adlab/io.hpp"
#include "adlab/report.hpp"
#include "adlab/residual.hpp"
#include "adlab/selftest.hpp"
#include "adlab/studies.hpp"
#include "adlab/transforms.hpp"
#include "adlab/wavelet.hpp"

namespace adlab::cli {
namespace {

using report::json;

// Options shared by several subcommands. Unset optionals fall back to
// subcommand-specific defaults at dispatch time.
struct Options {
  std::string kind;
  std::string model = "stationary";
  std::string signal_kind = "noise";
  std::string signal_path;
  std::string covariance_path;
  std::string group = "cyclic";
  std::string basis = "circulant-hermitian";
  std::vector<std::string> generators{"shift", "logdiag", "chirpshift"};
  std::string wavelet = "mexican-hat";
  std::string stencil = "spectral";
  std::string out_path;
  std::string json_path;
  std::string csv_path;

  Index M = 64;
  std::optional<double> dt;
  double hurst = 0.7;
  double beta = 0.02;
  double width = 0.1;
  double sigma2 = 1.0;
  std::optional<double> origin;
  double center = 0.5;
  double chirp_rate = 0.0;
  double frequency = 0.0;
  Index bin = 5;

  double a0 = 2.0;
  int octaves = 5;
  int voices = 8;

  std::vector<std::string> tones{"1:3.3", "0.6:7.7"};
  std::vector<Index> sizes{64, 128, 256, 512};
  double duration = 1.0;
  double band_edge = 16.0;

  Index commutator_m = 256;
  std::vector<double> snr{-20, -10, 0, 10, 20, 30};
  std::vector<int> counts{16, 64, 256, 1024};
  double crossterm_snr = 0.0;
  int trials = 100;
  std::optional<std::uint64_t> seed;
};

void emit_json(const Options& o, const json& j, std::ostream& out) {
  if (!o.json_path.empty()) io::write_text(o.json_path, report::dump(j), out);
}

bool quiet(const Options& o) { return o.json_path == "-" || o.csv_path == "-"; }

std::uint64_t require_seed(const Options& o, const std::string& cmd) {
  if (!o.seed) throw InvalidInput(cmd + " is randomized and needs an explicit --seed");
  return *o.seed;
}

std::string format_sci(double v, int digits = 6) {
  std::ostringstream ss;
  ss << std::scientific << std::setprecision(digits) << v;
  return ss.str();
}

Tone parse_tone(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw InvalidInput("tone '" + s + "' is not amplitude:frequency");
  try {
    return Tone{Complex(std::stod(s.substr(0, colon)), 0.0), std::stod(s.substr(colon + 1))};
  } catch (const std::logic_error&) {
    throw InvalidInput("tone '" + s + "' is not amplitude:frequency");
  }
}

// ---------------------------------------------------------------------------

int cmd_gen(const Options& o, std::ostream& out) {
  const double dt = o.dt.value_or(1.0 / static_cast<double>(o.M));
  if (o.kind == "covariance") {
    HermitianOperator R = [&] {
      Fig3Config cfg;
      cfg.M = o.M;
      cfg.dt = dt;
      cfg.hurst = o.hurst;
      cfg.beta = o.beta;
      cfg.width = o.width;
      cfg.sigma2 = o.sigma2;
      cfg.origin = o.origin.value_or(0.0);
      if (o.model == "stationary") return fig3_stationary_covariance(cfg);
      if (o.model == "self-similar") return fig3_fbm_covariance(cfg);
      if (o.model == "chirp") return fig3_chirp_covariance(cfg);
      throw InvalidInput("unknown model '" + o.model + "' (stationary, self-similar, chirp)");
    }();
    io::save_matrix(o.out_path, R.matrix());
    out << "wrote " << o.model << " covariance M=" << o.M << " to " << o.out_path << "\n";
    return 0;
  }
  if (o.kind != "signal") throw InvalidInput("--kind must be covariance or signal");

  const Signal x = [&] {
    if (o.signal_kind == "noise") return white_noise(o.M, o.sigma2, require_seed(o, "gen --signal noise"), dt);
    if (o.signal_kind == "exponential") return grid_exponential(o.M, o.bin, dt);
    if (o.signal_kind == "gaussian") {
      const double T = static_cast<double>(o.M) * dt;
      return gaussian_pulse(o.M, dt, o.center * T, o.width * T, o.chirp_rate);
    }
    if (o.signal_kind == "tone") {
      ToneSignal s;
      s.duration = static_cast<double>(o.M) * dt;
      s.tones = {Tone{Complex(1.0, 0.0), o.frequency}};
      return s.sample(o.M);
    }
    if (o.signal_kind == "impulse") {
      CVector v = CVector::Zero(o.M);
      v[o.bin % o.M] = 1.0;
      return Signal(v, dt);
    }
    throw InvalidInput("unknown signal '" + o.signal_kind + "' (noise, exponential, gaussian, tone, impulse)");
  }();
  const Signal placed(x.samples(), x.dt(), o.origin.value_or(0.0));
  io::save_signal(o.out_path, placed);
  out << "wrote " << o.signal_kind << " signal M=" << o.M << " to " << o.out_path << "\n";
  return 0;
}

int cmd_estimate(const Options& o, std::ostream& out) {
  const Signal x = io::load_signal(o.signal_path);
  const GroupRep G = group_by_name(o.group, x.size());
  const AveragedEstimate est = group_averaged_estimate(x, G);
  json cfg{{"signal", o.signal_path}, {"group", o.group}, {"M", x.size()}, {"dt", x.dt()}};
  emit_json(o, report::envelope("estimate", cfg, report::estimate(est)), out);
  if (!o.csv_path.empty()) {
    std::ostringstream ss;
    io::write_matrix(ss, est.op.matrix());
    io::write_text(o.csv_path, ss.str(), out);
  }
  if (!quiet(o)) {
    out << "group " << o.group << " |G|=" << G.order() << " rank=" << rank_of_signal_estimate(est) << "\n";
    for (Index i = 0; i < est.eigenvalues.size(); ++i) out << "  " << format_sci(est.eigenvalues[i]) << "\n";
  }
  return 0;
}

int cmd_transform(const Options& o, std::ostream& out) {
  const Signal x = io::load_signal(o.signal_path);
  json cfg{{"signal", o.signal_path}, {"kind", o.kind}, {"M", x.size()}, {"dt", x.dt()}};
  json result;
  std::ostringstream csv;

  if (o.kind == "periodogram" || o.kind == "dct" || o.kind == "autocorr") {
    CVector values;
    if (o.kind == "periodogram") values = periodogram(x).cast<Complex>();
    if (o.kind == "dct") values = dct_spectrum(x).cast<Complex>();
    if (o.kind == "autocorr") values = autocorrelation(x);
    if (o.kind == "autocorr") {
      result["values"] = report::complex_vector(values);
    } else {
      result["values"] = report::real_vector(values.real());
    }
    const RMatrix row = values.real().transpose();
    if (o.kind == "autocorr") {
      io::write_grid(csv, CMatrix(values.transpose()), "series", "lag");
    } else {
      io::write_grid(csv, row, "series", o.kind == "dct" ? "dct-index" : "frequency-bin");
    }
  } else if (o.kind == "ambiguity") {
    const AmbiguitySurface A = ambiguity(x);
    // Rows are doppler bins, columns delay bins.
    const CMatrix grid = A.values.transpose();
    io::write_grid(csv, grid, "doppler", "delay");
    result = {{"dt", A.dt}, {"df", A.df}, {"energy", A.values.squaredNorm()},
              {"moyal_ratio", A.values.squaredNorm() / (x.energy() * x.energy())}};
  } else if (o.kind == "scalogram") {
    const Wavelet psi = wavelet_by_name(o.wavelet);
    const auto scales = log_scales(o.a0 * x.dt(), o.octaves, o.voices);
    const Scalogram S = scalogram(x, psi, scales, o.voices);
    io::write_grid(csv, S.values, "scale", "time");
    cfg.update({{"wavelet", o.wavelet}, {"a0", o.a0}, {"octaves", o.octaves}, {"voices", o.voices}});
    result = {{"scales", S.scales},
              {"max_norm_deviation", S.max_norm_deviation},
              {"norms_within_tolerance", S.norms_within_tolerance}};
  } else if (o.kind == "reconstruct") {
    const Wavelet psi = wavelet_by_name(o.wavelet);
    const Reconstruction r = calderon_reconstruct(x, psi, o.a0 * x.dt(), o.octaves, o.voices);
    io::write_signal(csv, r.signal);
    cfg.update({{"wavelet", o.wavelet}, {"a0", o.a0}, {"octaves", o.octaves}, {"voices", o.voices}});
    result = {{"relative_error", r.relative_error},
              {"in_band", r.in_band},
              {"tolerance", kReconstructionInBandTolerance},
              {"calderon_constant", r.constant.value},
              {"calderon_error_estimate", r.constant.error_estimate}};
  } else {
    throw InvalidInput("unknown transform '" + o.kind + "'");
  }

  emit_json(o, report::envelope("transform", cfg, result), out);
  if (!o.csv_path.empty()) io::write_text(o.csv_path, csv.str(), out);
  if (!quiet(o)) out << o.kind << " of M=" << x.size() << " signal done\n";
  return 0;
}

GeneratorOptions generator_options(const Options& o, Index M) {
  return {o.beta, o.dt.value_or(1.0 / static_cast<double>(M)), o.origin.value_or(0.0)};
}

int cmd_classify(const Options& o, std::ostream& out) {
  const HermitianOperator R(io::load_matrix(o.covariance_path));
  const GeneratorOptions gopts = generator_options(o, R.dim());
  std::vector<GeneratorBundle> candidates;
  for (const auto& name : o.generators) candidates.push_back(generator_by_name(name, R.dim(), gopts));
  const ResidualRow row = classify("input", R, candidates);
  json cfg{{"covariance", o.covariance_path}, {"generators", o.generators}, {"M", R.dim()},
           {"beta", gopts.beta},           {"dt", gopts.dt},              {"origin", gopts.origin}};
  emit_json(o, report::envelope("classify", cfg, report::residual_row(row)), out);
  if (!quiet(o)) {
    for (const auto& c : row.cells) out << std::setw(12) << c.generator << "  " << format_sci(c.delta) << "\n";
    out << "matched " << row.matched << (row.tie ? " (tie)" : "") << "\n";
  }
  return 0;
}

int cmd_fig3(const Options& o, std::ostream& out) {
  Fig3Config cfg;
  cfg.M = o.M;
  cfg.hurst = o.hurst;
  cfg.beta = o.beta;
  cfg.dt = o.dt.value_or(1.0 / static_cast<double>(o.M));
  cfg.width = o.width;
  cfg.sigma2 = o.sigma2;
  cfg.origin = o.origin.value_or(0.0);
  const auto t0 = std::chrono::steady_clock::now();
  const ResidualReport table = fig3_table(cfg);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json config{{"M", cfg.M},         {"hurst", cfg.hurst},   {"beta", cfg.beta},    {"dt", cfg.dt},
              {"width", cfg.width}, {"sigma2", cfg.sigma2}, {"origin", cfg.origin}};
  json result = report::residual_table(table);
  result["seconds"] = seconds;
  emit_json(o, report::envelope("fig3", config, result), out);

  if (!o.csv_path.empty()) {
    std::ostringstream ss;
    ss << "class";
    for (const auto& c : table.rows.front().cells) ss << ',' << c.generator;
    ss << ",matched\n";
    for (const auto& r : table.rows) {
      ss << r.signal_class;
      for (const auto& c : r.cells) ss << ',' << io::format_double(c.delta);
      ss << ',' << r.matched << '\n';
    }
    io::write_text(o.csv_path, ss.str(), out);
  }
  if (!quiet(o)) {
    out << std::setw(14) << "class";
    for (const auto& c : table.rows.front().cells) out << std::setw(14) << c.generator;
    out << "  matched\n";
    for (const auto& r : table.rows) {
      out << std::setw(14) << r.signal_class;
      for (const auto& c : r.cells) out << std::setw(14) << format_sci(c.delta, 4);
      out << "  " << r.matched << "\n";
    }
  }
  return 0;
}

int cmd_match(const Options& o, std::ostream& out) {
  const HermitianOperator R(io::load_matrix(o.covariance_path));
  const BasisOptions bopts{o.beta, o.dt.value_or(1.0 / static_cast<double>(R.dim())), o.origin.value_or(0.0)};
  const MatchResult m = match_group(R, o.basis, bopts);
  json cfg{{"covariance", o.covariance_path}, {"basis", o.basis}, {"M", R.dim()},
           {"beta", bopts.beta},              {"dt", bopts.dt},   {"origin", bopts.origin}};
  emit_json(o, report::envelope("match", cfg, report::match_result(m)), out);
  if (!quiet(o)) {
    out << "basis " << o.basis << " d=" << m.solution.coeffs.size() << "\n"
        << "lambda_min " << format_sci(m.solution.lambda_min) << "  delta " << format_sci(m.delta)
        << (m.solution.degenerate ? "  (degenerate)" : "") << "\n"
        << "interpretation " << m.interpretation << " (distance " << format_sci(m.interpretation_distance, 3)
        << ")\n";
  }
  return 0;
}

int cmd_converge(const Options& o, std::ostream& out) {
  ToneSignal s;
  for (const auto& t : o.tones) s.tones.push_back(parse_tone(t));
  s.duration = o.duration;
  s.band_edge = o.band_edge;
  const ConvergenceResult r = discretization_study(s, o.sizes);
  json cfg{{"tones", o.tones}, {"sizes", o.sizes}, {"duration", o.duration}, {"band_edge", o.band_edge}};
  emit_json(o, report::envelope("converge", cfg, report::convergence(r)), out);
  if (!o.csv_path.empty()) {
    std::ostringstream ss;
    ss << "M,error,sup_error\n";
    for (std::size_t i = 0; i < r.sizes.size(); ++i) {
      ss << r.sizes[i] << ',' << io::format_double(r.errors[i]) << ',' << io::format_double(r.sup_errors[i]) << '\n';
    }
    io::write_text(o.csv_path, ss.str(), out);
  }
  if (!quiet(o)) {
    for (std::size_t i = 0; i < r.sizes.size(); ++i) {
      out << std::setw(6) << r.sizes[i] << "  " << format_sci(r.errors[i]) << "\n";
    }
    out << "slope " << r.slope << " (residual " << format_sci(r.fit_residual, 2) << ")\n";
  }
  return 0;
}

int cmd_uncertainty(const Options& o, std::ostream& out) {
  json cfg;
  Signal x = [&] {
    if (!o.signal_path.empty()) {
      cfg["signal"] = o.signal_path;
      return io::load_signal(o.signal_path);
    }
    const double dt = o.dt.value_or(1.0 / static_cast<double>(o.M));
    const double T = static_cast<double>(o.M) * dt;
    cfg.update({{"M", o.M}, {"dt", dt}, {"center", o.center}, {"width", o.width}, {"chirp_rate", o.chirp_rate}});
    return gaussian_pulse(o.M, dt, o.center * T, o.width * T, o.chirp_rate);
  }();
  const DerivativeStencil stencil = [&] {
    if (o.stencil == "spectral") return DerivativeStencil::spectral;
    if (o.stencil == "central") return DerivativeStencil::central;
    throw InvalidInput("unknown stencil '" + o.stencil + "' (spectral, central)");
  }();
  cfg.update({{"commutator_m", o.commutator_m}, {"stencil", o.stencil}});

  const UncertaintyResult u = uncertainty_check(x);
  const CommutatorCheck c = commutator_generator_check(o.commutator_m, 1.0, stencil);
  json result{{"uncertainty", report::uncertainty(u)}, {"commutator", report::commutator(c)}};
  emit_json(o, report::envelope("uncertainty", cfg, result), out);
  if (!quiet(o)) {
    out << "dt_spread " << format_sci(u.delta_t) << "  domega_spread " << format_sci(u.delta_omega)
        << "  product " << io::format_double(u.product) << (u.grid_artifact ? "  (grid artifact)" : "") << "\n"
        << "commutator[" << o.stencil << "] interior " << format_sci(c.interior_deviation, 3) << "  boundary "
        << format_sci(c.boundary_deviation, 3) << "\n";
  }
  return 0;
}

int cmd_replacement(const Options& o, std::ostream& out) {
  const std::uint64_t seed = require_seed(o, "replacement");
  const Signal s = grid_exponential(o.M, o.bin);
  const ReplacementSweep sweep = replacement_snr_sweep(s, o.snr, o.trials, seed);
  const CrossTermDecay cross = cross_term_decay(s, o.crossterm_snr, o.counts, seed);
  json cfg{{"M", o.M},        {"bin", o.bin},       {"snr_db", o.snr}, {"trials", o.trials},
           {"seed", seed},    {"counts", o.counts}, {"crossterm_snr_db", o.crossterm_snr}};
  json result{{"sweep", report::replacement(sweep)}, {"cross_term", report::cross_term(cross)}};
  emit_json(o, report::envelope("replacement", cfg, result), out);
  if (!o.csv_path.empty()) {
    std::ostringstream ss;
    ss << "snr_db,mean_alignment,std_alignment\n";
    for (const auto& p : sweep.points) {
      ss << io::format_double(p.snr_db) << ',' << io::format_double(p.mean_alignment) << ','
         << io::format_double(p.std_alignment) << '\n';
    }
    io::write_text(o.csv_path, ss.str(), out);
  }
  if (!quiet(o)) {
    for (const auto& p : sweep.points) {
      out << std::setw(8) << p.snr_db << " dB  " << format_sci(p.mean_alignment) << " +- "
          << format_sci(p.std_alignment, 2) << "\n";
    }
    out << "cross-term slope " << cross.slope << "\n";
  }
  return 0;
}

int cmd_noisefloor(const Options& o, std::ostream& out) {
  const std::uint64_t seed = require_seed(o, "noisefloor");
  const auto scales = log_scales(o.a0, o.octaves, o.voices);
  const NoiseFloorReport r = affine_noise_floor_experiment(o.M, scales, o.trials, seed);
  json cfg{{"M", o.M},           {"a0", o.a0},         {"octaves", o.octaves},
           {"voices", o.voices}, {"trials", o.trials}, {"seed", seed}};
  emit_json(o, report::envelope("noisefloor", cfg, report::noise_floor(r)), out);
  if (!o.csv_path.empty()) {
    std::ostringstream ss;
    ss << "omega,affine_diagonal,cyclic_diagonal\n";
    for (std::size_t k = 0; k < r.omega.size(); ++k) {
      ss << io::format_double(r.omega[k]) << ',' << io::format_double(r.affine_diagonal[k]) << ','
         << io::format_double(r.cyclic_diagonal[k + 1]) << '\n';
    }
    io::write_text(o.csv_path, ss.str(), out);
  }
  if (!quiet(o)) {
    out << "cyclic floor flat: " << (r.cyclic_flat ? "yes" : "no") << " (max z " << r.cyclic_max_z << ")\n"
        << "per-scale coefficient power flat: " << (r.coefficient_flat ? "yes" : "no") << " (max z "
        << r.coefficient_max_z << ")\n"
        << "affine diagonal slope vs |omega|: " << r.affine_slope << " (exploratory, reference 1.0)\n";
  }
  return 0;
}

int cmd_selftest(const Options& o, std::ostream& out, std::ostream& err) {
  const auto checks = run_selftest(o.seed.value_or(20240601));
  json arr = json::array();
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.passed;
    arr.push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"tolerance", c.tolerance}});
  }
  emit_json(o, report::envelope("selftest", {{"seed", o.seed.value_or(20240601)}},
                                {{"checks", arr}, {"passed", all}}),
            out);
  if (!quiet(o)) {
    for (const auto& c : checks) {
      out << (c.passed ? "PASS " : "FAIL ") << c.name << "  " << format_sci(c.value, 2) << "\n";
    }
  }
  if (!all) {
    err << "SelfTestFailure: " << std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.passed; })
        << " check(s) failed\n";
    return 1;
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"adlab: group-averaged estimators, commutativity residuals and transform selection"};
  app.require_subcommand(1);
  Options o;

  const auto add_json = [&](CLI::App* c) {
    c->add_option("--json", o.json_path, "Write the JSON report here ('-' for stdout)");
  };
  const auto add_csv = [&](CLI::App* c, const std::string& what) { c->add_option("--csv", o.csv_path, what); };
  const auto add_grid = [&](CLI::App* c) {
    c->add_option("--dt", o.dt, "Sample spacing (default 1/M)");
    c->add_option("--origin", o.origin, "Time of the first sample (default 0)");
  };

  auto* gen = app.add_subcommand("gen", "Write a model covariance or a test signal as CSV");
  gen->add_option("--kind", o.kind, "covariance | signal")->required();
  gen->add_option("--model", o.model, "stationary | self-similar | chirp");
  gen->add_option("--signal", o.signal_kind, "noise | exponential | gaussian | tone | impulse");
  gen->add_option("--m", o.M, "Grid size")->check(CLI::Range(Index{2}, Index{1} << 20));
  add_grid(gen);
  gen->add_option("--hurst", o.hurst);
  gen->add_option("--beta", o.beta);
  gen->add_option("--width", o.width, "Envelope width (covariance: seconds; signal: fraction of T)");
  gen->add_option("--sigma2", o.sigma2);
  gen->add_option("--center", o.center, "Pulse centre as a fraction of T");
  gen->add_option("--chirp-rate", o.chirp_rate);
  gen->add_option("--frequency", o.frequency, "Tone frequency in Hz");
  gen->add_option("--bin", o.bin, "DFT bin (exponential) or index (impulse)");
  gen->add_option("--seed", o.seed);
  gen->add_option("--out", o.out_path)->required();

  auto* estimate = app.add_subcommand("estimate", "Group-averaged estimator and its spectrum");
  estimate->add_option("--signal", o.signal_path)->required();
  estimate->add_option("--group", o.group, "trivial | cyclic | dihedral | reversal | tf-lattice");
  add_json(estimate);
  add_csv(estimate, "Write the estimator matrix CSV here");

  auto* transform = app.add_subcommand("transform", "Classical transforms of a signal");
  transform->add_option("--kind", o.kind, "periodogram | dct | autocorr | ambiguity | scalogram | reconstruct")
      ->required();
  transform->add_option("--signal", o.signal_path)->required();
  transform->add_option("--wavelet", o.wavelet, "mexican-hat | morlet | gaussian");
  transform->add_option("--a0", o.a0, "Smallest scale in samples");
  transform->add_option("--octaves", o.octaves);
  transform->add_option("--voices", o.voices);
  add_json(transform);
  add_csv(transform, "Write the output grid or signal CSV here");

  auto* classify_cmd = app.add_subcommand("classify", "Commutativity residual of a covariance per generator");
  classify_cmd->add_option("--covariance", o.covariance_path)->required();
  classify_cmd->add_option("--generators", o.generators, "Comma-separated: shift, logdiag, chirpshift")
      ->delimiter(',');
  classify_cmd->add_option("--beta", o.beta);
  add_grid(classify_cmd);
  add_json(classify_cmd);

  auto* fig3 = app.add_subcommand("fig3", "Residual table for the three signal classes");
  fig3->add_option("--m", o.M)->check(CLI::Range(Index{16}, Index{4096}));
  fig3->add_option("--hurst", o.hurst);
  fig3->add_option("--beta", o.beta);
  fig3->add_option("--width", o.width);
  fig3->add_option("--sigma2", o.sigma2);
  add_grid(fig3);
  add_json(fig3);
  add_csv(fig3, "Write the table as CSV here");

  auto* match = app.add_subcommand("match", "Blind group matching by the double-commutator GEVP");
  match->add_option("--covariance", o.covariance_path)->required();
  match->add_option("--basis", o.basis, "circulant-hermitian | diagonal-real | chirp-circulant | full-hermitian");
  match->add_option("--beta", o.beta);
  add_grid(match);
  add_json(match);

  auto* converge = app.add_subcommand("converge", "Discretization convergence study");
  converge->add_option("--tone", o.tones, "amplitude:frequency, repeatable")->delimiter(',');
  converge->add_option("--sizes", o.sizes)->delimiter(',');
  converge->add_option("--duration", o.duration);
  converge->add_option("--band-edge", o.band_edge);
  add_json(converge);
  add_csv(converge, "Write error curves here");

  auto* uncertainty = app.add_subcommand("uncertainty", "Time-frequency spread and generator commutator check");
  uncertainty->add_option("--signal", o.signal_path, "Signal CSV (default: Gaussian pulse)");
  uncertainty->add_option("--m", o.M);
  uncertainty->add_option("--dt", o.dt);
  uncertainty->add_option("--center", o.center, "Pulse centre as a fraction of T");
  uncertainty->add_option("--width", o.width, "Pulse width as a fraction of T");
  uncertainty->add_option("--chirp-rate", o.chirp_rate);
  uncertainty->add_option("--commutator-m", o.commutator_m)->check(CLI::Range(Index{32}, Index{4096}));
  uncertainty->add_option("--stencil", o.stencil, "spectral | central");
  add_json(uncertainty);

  auto* replacement = app.add_subcommand("replacement", "Signal-subspace alignment versus SNR");
  replacement->add_option("--m", o.M);
  replacement->add_option("--bin", o.bin);
  replacement->add_option("--snr", o.snr, "SNR levels in dB")->delimiter(',');
  replacement->add_option("--trials", o.trials);
  replacement->add_option("--counts", o.counts, "Trial counts for the cross-term decay")->delimiter(',');
  replacement->add_option("--crossterm-snr", o.crossterm_snr);
  replacement->add_option("--seed", o.seed);
  add_json(replacement);
  add_csv(replacement, "Write the alignment curve here");

  auto* noisefloor = app.add_subcommand("noisefloor", "White-noise floor under affine and cyclic averaging");
  noisefloor->add_option("--m", o.M);
  noisefloor->add_option("--a0", o.a0);
  noisefloor->add_option("--octaves", o.octaves);
  noisefloor->add_option("--voices", o.voices);
  noisefloor->add_option("--trials", o.trials);
  noisefloor->add_option("--seed", o.seed);
  add_json(noisefloor);
  add_csv(noisefloor, "Write the Fourier diagonals here");

  auto* selftest = app.add_subcommand("selftest", "Run the invariant suite");
  selftest->add_option("--seed", o.seed);
  add_json(selftest);

  // Subcommand defaults that differ from the shared ones.
  uncertainty->preparse_callback([&](std::size_t) {
    o.M = 512;
    o.center = 0.5;
    o.width = 1.0 / 32.0;
  });
  noisefloor->preparse_callback([&](std::size_t) {
    o.M = 256;
    o.octaves = 4;  // keeps every atom clear of its periodic images
    o.voices = 4;
    o.trials = 200;
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*gen) return cmd_gen(o, out);
    if (*estimate) return cmd_estimate(o, out);
    if (*transform) return cmd_transform(o, out);
    if (*classify_cmd) return cmd_classify(o, out);
    if (*fig3) return cmd_fig3(o, out);
    if (*match) return cmd_match(o, out);
    if (*converge) return cmd_converge(o, out);
    if (*uncertainty) return cmd_uncertainty(o, out);
    if (*replacement) return cmd_replacement(o, out);
    if (*noisefloor) return cmd_noisefloor(o, out);
    if (*selftest) return cmd_selftest(o, out, err);
  } catch (const Error& e) {
    err << e.name() << ": " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace adlab::cli
