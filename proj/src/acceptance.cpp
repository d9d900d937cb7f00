#include "bouncer/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "airy_reference.hpp"
#include "bouncer/classical.hpp"
#include "bouncer/eigenbasis.hpp"
#include "bouncer/format.hpp"
#include "bouncer/gridprop.hpp"
#include "bouncer/qdyn.hpp"
#include "bouncer/units.hpp"
#include "bouncer/wigner.hpp"

namespace bouncer {
namespace {

constexpr double kPi = std::numbers::pi;

// Reference ladder: the parameter set of the occupation-ladder figure.
constexpr double kEpsilon = 0.228;
constexpr double kOmega0 = 1.205;
constexpr double kQ = 0.5;
constexpr double kTFinal = 175.0;
constexpr int kLevels = 40;
constexpr double kDt = 1e-3;
constexpr double kSnapshotHz[] = {338.0, 248.0, 136.0};

DriveProgram ladder_program(double t_final = kTFinal, double q = kQ) {
  return {kEpsilon, OptimalChirpSchedule{kOmega0, q}, t_final};
}

Check within(std::string what, double value, double lo, double hi, const std::string& unit = "") {
  const std::string u = unit.empty() ? "" : " " + unit;
  return {std::move(what), value, "in [" + fmt_double(lo) + ", " + fmt_double(hi) + "]" + u,
          value >= lo && value <= hi};
}

Check below(std::string what, double value, double limit) {
  return {std::move(what), value, "< " + fmt_double(limit), value < limit};
}

Check above(std::string what, double value, double limit) {
  return {std::move(what), value, ">= " + fmt_double(limit), value >= limit};
}

Check flag(std::string what, bool ok, const std::string& expectation) {
  return {std::move(what), ok ? 1.0 : 0.0, expectation, ok};
}

double to_ms(double t, const ScaledUnits& s) { return 1e3 * convert(t, Quantity::Time, Direction::ToSI, s); }

struct LadderRun {
  EigenBasis basis;
  DriveProgram program;
  PropagationResult result;
  ScaledUnits scales;
};

LadderRun run_ladder() {
  LadderRun run;
  run.basis = build_basis(kLevels);
  run.program = ladder_program();
  run.scales = derive_scales(PhysicalConstants{});
  PropagationOptions o;
  o.dt = kDt;
  o.sample_every = 100;
  for (double hz : kSnapshotHz) {
    const double w = convert(hz, Quantity::FrequencyHertz, Direction::ToScaled, run.scales);
    o.snapshot_times.push_back(time_at_omega(run.program, w));
  }
  run.result = propagate(run.basis, run.program, eigenstate(run.basis, 1), o);
  return run;
}

// Compressed sequence of the most-occupied level over the samples.
std::vector<int> argmax_sequence(const std::vector<ObservableRecord>& records) {
  std::vector<int> seq;
  for (const auto& r : records) {
    Eigen::Index k = 0;
    r.occupations.maxCoeff(&k);
    const int level = static_cast<int>(k) + 1;
    if (seq.empty() || seq.back() != level) seq.push_back(level);
  }
  return seq;
}

CriterionResult criterion_ladder(const LadderRun& run) {
  CriterionResult c{2, "occupation ladder", {}};
  const auto& recs = run.result.records;
  double peak = 0.0;
  for (const auto& r : recs) peak = std::max(peak, r.occupations(1));
  c.checks.push_back(above("P_2 peak", peak, 0.60));
  double jump = -1.0;
  for (const auto& r : recs) {
    if (r.occupations(1) > r.occupations(0)) {
      jump = r.t;
      break;
    }
  }
  c.checks.push_back(within("first time P_2 > P_1 [ms]", to_ms(jump, run.scales), 7.0, 13.0));
  const std::vector<int> seq = argmax_sequence(recs);
  bool ordered = seq.size() >= 4;
  for (std::size_t i = 0; ordered && i < 4; ++i) ordered = seq[i] == static_cast<int>(i) + 1;
  std::string shown;
  for (std::size_t i = 0; i < std::min<std::size_t>(seq.size(), 6); ++i) {
    shown += (i ? "," : "") + std::to_string(seq[i]);
  }
  c.checks.push_back(flag("most occupied level sequence starts " + shown, ordered, "1,2,3,4 in order"));
  return c;
}

CriterionResult criterion_timing(const LadderRun& run) {
  CriterionResult c{3, "timing", {}};
  const double w3 = convert(136.0, Quantity::FrequencyHertz, Direction::ToScaled, run.scales);
  const double t3 = time_at_omega(run.program, w3);
  c.checks.push_back(within("omega_d reaches 2 pi x 136 Hz at t [ms] (scaled t " + fmt_double(t3) + ")",
                            to_ms(t3, run.scales), 73.0, 95.0));
  double t_n = -1.0;
  for (const auto& r : run.result.records) {
    if (r.mean_n > 8.5) {
      t_n = r.t;
      break;
    }
  }
  c.checks.push_back(within("<n> first exceeds 8.5 at t [ms] (scaled t " + fmt_double(t_n) + ")",
                            t_n < 0.0 ? -1.0 : to_ms(t_n, run.scales), 73.0, 95.0));
  return c;
}

CriterionResult criterion_classical_limit(const LadderRun& run) {
  CriterionResult c{4, "classical limit of <H0>", {}};
  const double w200 = convert(200.0, Quantity::FrequencyHertz, Direction::ToScaled, run.scales);
  std::vector<const ObservableRecord*> region;
  for (const auto& r : run.result.records) {
    if (r.omega_d <= w200) region.push_back(&r);
  }
  double worst = 0.0;
  for (const auto* r : region) {
    worst = std::max(worst, std::fabs(r->mean_energy / classical_energy(r->omega_d) - 1.0));
  }
  c.checks.push_back(below("max |<H0> / (pi^2 / (8 omega_d^2)) - 1| below 200 Hz", worst, 0.15));

  // Delta n averaged over eight equal time bins; each bin may dip below its
  // predecessor by at most 0.1 (sampling noise), and the band must grow overall.
  constexpr int kBins = 8;
  std::vector<double> sum(kBins, 0.0);
  std::vector<int> count(kBins, 0);
  if (region.size() >= static_cast<std::size_t>(kBins)) {
    const double t0 = region.front()->t;
    const double span = region.back()->t - t0;
    for (const auto* r : region) {
      const int b = std::min(kBins - 1, static_cast<int>((r->t - t0) / span * kBins));
      sum[b] += r->width_n;
      ++count[b];
    }
  }
  double worst_dip = 0.0;
  bool ok = region.size() >= static_cast<std::size_t>(kBins);
  std::vector<double> mean(kBins, 0.0);
  for (int b = 0; ok && b < kBins; ++b) {
    ok = count[b] > 0;
    if (ok) mean[b] = sum[b] / count[b];
    if (ok && b > 0) worst_dip = std::max(worst_dip, mean[b - 1] - mean[b]);
  }
  c.checks.push_back(below("largest bin-to-bin decrease of Delta n", ok ? worst_dip : 1e9, 0.1 + 1e-15));
  c.checks.push_back(flag("Delta n grows from " + fmt_double(mean.front()) + " to " + fmt_double(mean.back()),
                          ok && mean.back() > mean.front(), "last bin > first bin"));
  return c;
}

CriterionResult criterion_wigner(const LadderRun& run) {
  CriterionResult c{8, "Wigner identities", {}};
  const double dx = 0.025, x_max = 40.0;
  const auto& snaps = run.result.snapshots;
  for (std::size_t k = 0; k < snaps.size(); ++k) {
    const QuantumState& s = snaps[k];
    const WignerGrid w = wigner_of_state(run.basis, s, dx, x_max);
    const Eigen::VectorXcd psi = wavefunction_on_grid(run.basis, s, w.xs);
    const Eigen::VectorXd mref = momentum_density(run.basis, s, w.ps, x_max);
    const WignerDiagnostics d = diagnose(w, psi, &mref);
    const std::string tag = fmt_double(kSnapshotHz[k]) + " Hz: ";
    c.checks.push_back(below(tag + "position marginal error", d.position_marginal_error, 1e-4));
    c.checks.push_back(below(tag + "momentum marginal error", d.momentum_marginal_error, 1e-4));
    c.checks.push_back(below(tag + "|integral W - 1|", std::fabs(d.total - 1.0), 1e-4));
    c.checks.push_back(below(tag + "|2 pi integral W^2 - 1|", std::fabs(d.purity - 1.0), 1e-3));
    c.checks.push_back(below(tag + "max |W| * pi", d.max_abs * kPi, 1.0 + 1e-12));
    if (k + 1 == snaps.size()) c.checks.push_back(below(tag + "min W", d.min_value, 0.0));
  }
  if (snaps.size() != 3) c.checks.push_back(flag("snapshot count", false, "3"));
  return c;
}

double final_p2_grid(double x_max, int n_points, double dt, const EigenBasis& basis) {
  const GridSpec spec{x_max, n_points, dt};
  const DriveProgram p = ladder_program(20.0);
  const GridResult r = propagate_grid(init_from_level(basis, 1, spec), p, spec, 20.0, basis,
                                      static_cast<int>(std::lround(20.0 / dt)));
  return r.records.back().occupations(1);
}

}  // namespace

bool CriterionResult::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& k) { return k.pass; });
}

void print_result(std::ostream& out, const CriterionResult& r, bool verbose) {
  out << "criterion " << r.id << ' ' << (r.pass() ? "PASS" : "FAIL") << ' ' << r.title << '\n';
  if (!verbose) return;
  for (const auto& k : r.checks) {
    out << "    [" << (k.pass ? "ok" : "FAIL") << "] " << k.what << " = " << fmt_double(k.value) << " ("
        << k.bound << ")\n";
  }
}

CriterionResult criterion_eigenstructure() {
  CriterionResult c{1, "eigenstructure", {}};
  const EigenBasis b = build_basis(10);
  double worst = 0.0;
  for (int n = 0; n < 10; ++n) worst = std::max(worst, std::fabs(b.zeros(n) - airy_ref::kZeros[n].lambda));
  c.checks.push_back(below("max |lambda_n - reference|, n <= 10", worst, 1e-10));
  const ScaledUnits s = derive_scales(PhysicalConstants{});
  auto pev = [&](double e) { return convert(e, Quantity::Energy, Direction::ToSI, s) / kPicoElectronVolt; };
  c.checks.push_back(within("E_1 [peV]", pev(b.energies(0)), 1.40, 1.42));
  c.checks.push_back(within("E_10 [peV]", pev(b.energies(9)), 7.65, 7.75));
  const double hz = convert(b.energies(1) - b.energies(0), Quantity::FrequencyHertz, Direction::ToSI, s);
  c.checks.push_back(within("omega_12 / 2 pi [Hz]", hz, 253.0, 255.0));
  return c;
}

CriterionResult criterion_resonance_width() {
  CriterionResult c{5, "semiclassical width", {}};
  const ResonanceWidth w = resonance_width(kEpsilon, 0.7);
  c.checks.push_back(within("Delta n at omega_d = 0.7", w.delta_n, 4.0, 6.0));
  // I_n = n - 1/4 for the hard-wall linear potential.
  c.checks.push_back(within("level of I_bar (I_bar + 1/4)", w.action_bar + 0.25, 2.5, 3.5));
  return c;
}

CriterionResult criterion_oracle_equivalence() {
  CriterionResult c{6, "spectral and grid oracles", {}};
  const EigenBasis basis = build_basis(kLevels);
  const DriveProgram short_run = ladder_program(20.0);
  PropagationOptions po;
  po.dt = kDt;
  po.sample_every = 100;
  const PropagationResult spec = propagate(basis, short_run, eigenstate(basis, 1), po);
  const GridSpec gs{80.0, 4096, kDt};
  const GridResult grid = propagate_grid(init_from_level(basis, 1, gs), short_run, gs, 20.0, basis, 100);
  double worst = 0.0;
  const std::size_t n = std::min(spec.records.size(), grid.records.size());
  bool aligned = spec.records.size() == grid.records.size();
  for (std::size_t i = 0; i < n; ++i) {
    aligned = aligned && std::fabs(spec.records[i].t - grid.records[i].t) < 1e-9;
    worst = std::max(worst, (spec.records[i].occupations.head(5) - grid.records[i].occupations.head(5))
                                .cwiseAbs()
                                .maxCoeff());
  }
  c.checks.push_back(flag("sample times aligned", aligned, "identical"));
  c.checks.push_back(below("max |P_n(spectral) - P_n(grid)|, n <= 5, t <= 20", worst, 1e-3));

  const double p1 = final_p2_grid(40.0, 1023, 4e-3, basis);
  const double p2 = final_p2_grid(40.0, 2047, 2e-3, basis);
  const double p3 = final_p2_grid(40.0, 4095, 1e-3, basis);
  const double order = std::log2(std::fabs(p1 - p2) / std::fabs(p2 - p3));
  c.checks.push_back(within("grid self-convergence order (final P_2, dx and dt halved)", order, 1.7, 2.3));

  const DriveProgram full = ladder_program();
  const QuantumState g = eigenstate(basis, 1);
  PropagationResult r[3];
  const double steps[3] = {2e-3, 1e-3, 5e-4};
  for (int i = 0; i < 3; ++i) {
    PropagationOptions o;
    o.dt = steps[i];
    o.sample_every = 1000000;
    r[i] = propagate(basis, full, g, o);
  }
  c.checks.push_back(below("spectral norm drift at dt = 1e-3, t = 175", r[1].max_norm_drift, 1e-6));
  const double drift_ratio = r[1].max_norm_drift / r[2].max_norm_drift;
  c.checks.push_back(above("norm drift ratio under dt halving (16 for 4th order)", drift_ratio, 11.3));
  const double e1 = (r[0].final_state.coeffs - r[1].final_state.coeffs).norm();
  const double e2 = (r[1].final_state.coeffs - r[2].final_state.coeffs).norm();
  c.checks.push_back(within("spectral solution convergence order", std::log2(e1 / e2), 3.5, 4.5));
  return c;
}

CriterionResult criterion_threshold() {
  CriterionResult c{7, "autoresonance threshold and free bouncer", {}};
  SingleResonanceOptions so;
  const DriveProgram locked = ladder_program(kTFinal, 0.5);
  const auto a = simulate_single_resonance(locked, resonant_start(locked), so);
  c.checks.push_back(below("max |Phi - pi|, chirp at 0.5 x bound", a.max_phase_deviation, kPi));
  c.checks.push_back(below("max |Omega - omega_d| / omega_d, chirp at 0.5 x bound", a.max_relative_detuning, 0.1));
  const DriveProgram fast = ladder_program(kTFinal, 2.0);
  const auto b = simulate_single_resonance(fast, resonant_start(fast), so);
  c.checks.push_back(above("max |Phi - pi|, chirp at 2 x bound", b.max_phase_deviation, kPi));

  // Free bouncer dropped from x = 1: H0 = 1/2, period 4.
  BouncerOptions bo;
  bo.dt = 1e-3;
  bo.sample_every = 1;
  const DriveProgram free_fall{0.0, ConstantSchedule{1.0}, 401.0};
  const BouncerResult fr = simulate_bouncer(free_fall, {0.0, 1.0, 0.0}, bo);
  double drift = 0.0;
  for (const auto& p : fr.trajectory) drift = std::max(drift, std::fabs(bouncer_energy(p) - 0.5));
  c.checks.push_back(above("bounces", static_cast<double>(fr.bounce_times.size()), 100.0));
  c.checks.push_back(below("max |H0 - 1/2| over the bounces", drift, 1e-8));
  double worst = 0.0;
  for (double action : {0.1, 1.0, 10.0}) {
    const double period = 2.0 * kPi / frequency_of_action(action);
    const PhasePoint start = orbit_point(action, 0.0);
    const DriveProgram p{0.0, ConstantSchedule{1.0}, 12.5 * period};
    BouncerOptions o;
    o.dt = period / 2000.0;
    o.sample_every = 1000000;
    const BouncerResult r = simulate_bouncer(p, {0.0, start.x, start.p}, o);
    const auto& bt = r.bounce_times;
    const double measured = (bt.back() - bt.front()) / static_cast<double>(bt.size() - 1);
    worst = std::max(worst, std::fabs(measured / period - 1.0));
  }
  c.checks.push_back(below("max relative period error vs 2 pi / Omega(I), I = 0.1, 1, 10", worst, 1e-6));
  return c;
}

CriterionResult criterion_unit_arithmetic() {
  CriterionResult c{9, "unit arithmetic", {}};
  const ScaledUnits s = derive_scales(PhysicalConstants{});
  const EigenBasis b = build_basis(2);
  const double l0 = convert(kEpsilon, Quantity::Length, Direction::ToSI, s) * 1e6;
  const double g0 = convert(kEpsilon * kOmega0 * kOmega0, Quantity::Acceleration, Direction::ToSI, s);
  const double w12 = b.energies(1) - b.energies(0);
  const double g12 = convert(kEpsilon * w12 * w12, Quantity::Acceleration, Direction::ToSI, s);
  c.checks.push_back(within("L0 [um]", l0, 1.34 * 0.99, 1.34 * 1.01));
  c.checks.push_back(within("gamma(0) [m/s^2]", g0, 6.48 * 0.99, 6.48 * 1.01));
  c.checks.push_back(within("gamma_12 [m/s^2]", g12, 3.41 * 0.99, 3.41 * 1.01));
  return c;
}

std::vector<CriterionResult> run_acceptance(std::ostream* out) {
  std::vector<CriterionResult> all;
  auto emit = [&](CriterionResult r) {
    if (out != nullptr) print_result(*out, r);
    all.push_back(std::move(r));
  };
  emit(criterion_eigenstructure());
  const LadderRun run = run_ladder();
  emit(criterion_ladder(run));
  emit(criterion_timing(run));
  emit(criterion_classical_limit(run));
  emit(criterion_resonance_width());
  emit(criterion_oracle_equivalence());
  emit(criterion_threshold());
  emit(criterion_wigner(run));
  emit(criterion_unit_arithmetic());
  return all;
}

CriterionResult verify_config(const ExperimentConfig& config, double t_max) {
  config.validate();
  CriterionResult c{0, "config " + config.name, {}};
  DriveProgram program = config.program;
  if (t_max > 0.0) program.t_final = std::min(program.t_final, t_max);
  const EigenBasis basis = build_basis(config.n_basis);
  PropagationOptions o;
  o.dt = config.dt;
  o.sample_every = config.sample_every;
  o.abort_norm_drift = config.abort_norm_drift;
  o.truncation_guard = config.truncation_guard;
  const QuantumState start = eigenstate(basis, config.initial_level);
  PropagationResult r;
  try {
    r = propagate(basis, program, start, o);
  } catch (const SolverAbort& e) {
    c.checks.push_back(flag(std::string("propagation: ") + e.what(), false, "completes"));
    return c;
  }
  c.checks.push_back(below("norm drift up to t = " + fmt_double(program.t_final), r.max_norm_drift, 1e-6));
  if (program.epsilon == 0.0) {
    const ObservableRecord first = r.records.front();
    double dp = 0.0, de = 0.0;
    for (const auto& rec : r.records) {
      dp = std::max(dp, (rec.occupations - first.occupations).cwiseAbs().maxCoeff());
      de = std::max(de, std::fabs(rec.mean_energy - first.mean_energy));
    }
    c.checks.push_back(below("max |P_n(t) - P_n(0)| with eps = 0", dp, 1e-10));
    c.checks.push_back(below("max |<H0>(t) - <H0>(0)| with eps = 0", de, 1e-10));
  }
  const auto* chirp = std::get_if<OptimalChirpSchedule>(&config.program.schedule);
  const bool reference = chirp != nullptr && config.program.epsilon == kEpsilon && chirp->q == kQ &&
                         chirp->omega0 == kOmega0 && config.initial_level == 1;
  if (reference) {
    const ScaledUnits s = derive_scales(config.constants);
    double peak = 0.0, jump = -1.0;
    for (const auto& rec : r.records) {
      peak = std::max(peak, rec.occupations(1));
      if (jump < 0.0 && rec.occupations(1) > rec.occupations(0)) jump = rec.t;
    }
    c.checks.push_back(above("P_2 peak", peak, 0.60));
    c.checks.push_back(within("first time P_2 > P_1 [ms]", jump < 0.0 ? -1.0 : to_ms(jump, s), 7.0, 13.0));
  }
  return c;
}

CriterionResult verify_eigenbasis(int n_levels) {
  CriterionResult c{0, "eigenbasis", {}};
  const EigenBasis b = build_basis(n_levels);
  double zero_err = 0.0, ai_at_zero = 0.0;
  for (const auto& z : airy_ref::kZeros) {
    if (z.n > n_levels) continue;
    zero_err = std::max(zero_err, std::fabs(b.zeros(z.n - 1) - z.lambda));
  }
  for (int n = 0; n < n_levels; ++n) ai_at_zero = std::max(ai_at_zero, std::fabs(airy_eval(b.zeros(n)).ai));
  c.checks.push_back(below("max |lambda_n - reference|", zero_err, 1e-10));
  c.checks.push_back(below("max |Ai(lambda_n)|", ai_at_zero, 1e-10));
  double closed = 0.0, asym = 0.0;
  for (int m = 1; m <= n_levels; ++m) {
    for (int n = 1; n <= n_levels; ++n) {
      closed = std::max(closed, std::fabs(b.dipole(m - 1, n - 1) - dipole_closed_form(b, m, n)));
      asym = std::max(asym, std::fabs(b.dipole(m - 1, n - 1) - b.dipole(n - 1, m - 1)));
    }
  }
  c.checks.push_back(below("max |X_mn - closed form|", closed, 1e-8));
  c.checks.push_back(below("max |X_mn - X_nm|", asym, 1e-14));
  c.checks.push_back(within("X_11", b.dipole(0, 0), 1.558738 - 1e-6, 1.558738 + 1e-6));
  c.checks.push_back(within("|X_12|", std::fabs(b.dipole(0, 1)), 0.6531791 - 1e-6, 0.6531791 + 1e-6));
  const ScaledUnits s = derive_scales(PhysicalConstants{});
  const double e1 = convert(b.energies(0), Quantity::Energy, Direction::ToSI, s) / kPicoElectronVolt;
  c.checks.push_back(within("E_1 [peV]", e1, 1.40, 1.42));
  return c;
}

}  // namespace bouncer
