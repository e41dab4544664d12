// topobell: command-line front end for the topological-phase singlet
// simulator. Subcommands emit machine-readable CSV or JSON-line rows; see
// README.md for the column schemas.

#include "topobell/topobell.hpp"

#include "record_writer.hpp"

#include <CLI11.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

namespace {

using Real = double;
using topobell::Arm;
using topobell::ChshSettings;
using topobell::MeasurementSetting;
using topobell::PhaseModel;
using topobell::State4;
using topobell::cli::FieldValue;
using topobell::cli::Record;
using topobell::cli::RecordWriter;

constexpr Real kPi = std::numbers::pi_v<Real>;
constexpr Real kSelfCheckTol = 1e-9;

const CLI::Validator Finite(
    [](std::string& input) -> std::string {
      double value = 0;
      try {
        value = std::stod(input);
      } catch (...) {
        return "value '" + input + "' is not a number";
      }
      if (!std::isfinite(value)) return "value must be finite";
      return {};
    },
    "FINITE");

struct ModelOptions {
  std::string kind = "ac";
  std::string arm = "left";
  Real phase = 0;
  Real mu = 1, lambda_e = 0;
  Real e_charge = 1, flux = 0;
  Real d_moment = 1, lambda_b = 0;
  Real g_charge = 1, flux_e = 0;
  CLI::Option* phase_opt = nullptr;
  std::vector<CLI::Option*> factor_opts;
};

void add_kind_options(CLI::App* cmd, ModelOptions& mo) {
  cmd->add_option("--model", mo.kind, "phase model: ab, ac, hmw, dual-ab, berry")
      ->check(CLI::IsMember({"ab", "ac", "hmw", "dual-ab", "berry"}))
      ->capture_default_str();
  cmd->add_option("--arm", mo.arm, "arm the phase acts on: left, right")
      ->check(CLI::IsMember({"left", "right"}))
      ->capture_default_str();
}

void add_phase_options(CLI::App* cmd, ModelOptions& mo) {
  mo.phase_opt =
      cmd->add_option("--phase", mo.phase,
                      "composite phase parameter (e*Phi, 2*mu*lambda, 2*d*lambda_B, "
                      "g*Phi_E, or delta); overrides factor flags")
          ->check(Finite);
  mo.factor_opts = {
      cmd->add_option("--mu", mo.mu, "AC dipole moment")->check(Finite),
      cmd->add_option("--lambda", mo.lambda_e, "AC line charge density")->check(Finite),
      cmd->add_option("--e", mo.e_charge, "AB electron charge")->check(Finite),
      cmd->add_option("--phi", mo.flux, "AB enclosed flux")->check(Finite),
      cmd->add_option("--d", mo.d_moment, "HMW electric dipole moment")->check(Finite),
      cmd->add_option("--lambda-b", mo.lambda_b, "HMW magnetic charge density")->check(Finite),
      cmd->add_option("--g", mo.g_charge, "dual-AB magnetic charge")->check(Finite),
      cmd->add_option("--phi-e", mo.flux_e, "dual-AB electric flux")->check(Finite),
  };
}

Arm parse_arm(const std::string& arm) {
  return arm == "right" ? Arm::right : Arm::left;
}

PhaseModel<Real> model_from_composite(const std::string& kind, Real phase) {
  if (kind == "ab") return topobell::AbModel<Real>{1, phase};
  if (kind == "dual-ab") return topobell::DualAbModel<Real>{1, phase};
  if (kind == "ac") return topobell::AcModel<Real>{1, phase / 2};
  if (kind == "hmw") return topobell::HmwModel<Real>{1, phase / 2};
  return topobell::BerryReducedModel<Real>{phase};
}

PhaseModel<Real> build_model(const ModelOptions& mo) {
  bool factors_given = false;
  for (const auto* opt : mo.factor_opts)
    if (opt->count() > 0) factors_given = true;
  if (mo.phase_opt != nullptr && mo.phase_opt->count() > 0) {
    if (factors_given)
      std::cerr << "warning: --phase overrides the physical factor flags\n";
    return model_from_composite(mo.kind, mo.phase);
  }
  if (mo.kind == "ab") return topobell::AbModel<Real>{mo.e_charge, mo.flux};
  if (mo.kind == "dual-ab") return topobell::DualAbModel<Real>{mo.g_charge, mo.flux_e};
  if (mo.kind == "ac") return topobell::AcModel<Real>{mo.mu, mo.lambda_e};
  if (mo.kind == "hmw") return topobell::HmwModel<Real>{mo.d_moment, mo.lambda_b};
  return topobell::BerryReducedModel<Real>{mo.phase};
}

struct AngleOptions {
  std::string preset = "bell";
  Real alpha = 0, beta = kPi / 4, alpha_p = 3 * kPi / 4, beta_p = kPi / 2;
  std::vector<CLI::Option*> custom_opts;
};

void add_angle_options(CLI::App* cmd, AngleOptions& ao, bool with_preset) {
  if (with_preset)
    cmd->add_option("--angles", ao.preset,
                    "angle set: bell (alias: paper) or custom")
        ->check(CLI::IsMember({"bell", "paper", "custom"}))
        ->capture_default_str();
  ao.custom_opts = {
      cmd->add_option("--alpha", ao.alpha, "left setting alpha")->check(Finite),
      cmd->add_option("--beta", ao.beta, "right setting beta")->check(Finite),
      cmd->add_option("--alpha-p", ao.alpha_p, "left setting alpha'")->check(Finite),
      cmd->add_option("--beta-p", ao.beta_p, "right setting beta'")->check(Finite),
  };
}

// Returns false (after diagnosing) when custom was requested but the four
// angles are not all present.
bool resolve_settings(const AngleOptions& ao, ChshSettings<Real>& out) {
  if (ao.preset == "custom") {
    for (const auto* opt : ao.custom_opts)
      if (opt->count() == 0) {
        std::cerr << "error: --angles custom requires --alpha, --beta, "
                     "--alpha-p and --beta-p\n";
        return false;
      }
  }
  out = ChshSettings<Real>(ao.alpha, ao.beta, ao.alpha_p, ao.beta_p);
  return true;
}

RecordWriter::Format parse_format(const std::string& format) {
  return format == "json" ? RecordWriter::Format::json : RecordWriter::Format::csv;
}

void add_format_option(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

// ---------------------------------------------------------------------------
// scan: S as a function of the swept composite phase

struct ScanOptions {
  ModelOptions model;
  AngleOptions angles;
  Real phase_min = 0, phase_max = 2 * kPi;
  int steps = 128;
  bool with_optimized = false;
  int grid_resolution = 24;
  int refinement_iters = 40;
  std::string format = "csv";
};

int run_scan(const ScanOptions& o) {
  if (o.steps < 2) {
    std::cerr << "error: --steps must be >= 2\n";
    return 2;
  }
  if (!(o.phase_min < o.phase_max)) {
    std::cerr << "error: --phase-min must be smaller than --phase-max\n";
    return 2;
  }
  ChshSettings<Real> settings;
  if (!resolve_settings(o.angles, settings)) return 2;
  const Arm arm = parse_arm(o.model.arm);

  RecordWriter writer(std::cout, parse_format(o.format));
  for (int i = 0; i < o.steps; ++i) {
    const Real phase =
        o.phase_min + (o.phase_max - o.phase_min) * Real(i) / Real(o.steps - 1);
    const PhaseModel<Real> model = model_from_composite(o.model.kind, phase);
    const State4<Real> state = topobell::evolve(topobell::singlet<Real>(), model, arm);
    Record row{
        {"phase", phase},
        {"s_closed_form", topobell::s_closed_form(settings, topobell::relative_phase(model))},
        {"s_projector", topobell::s_function(state, settings)},
    };
    if (o.with_optimized)
      row.emplace_back("s_optimized",
                       topobell::maximize_s(model, arm, o.grid_resolution,
                                            o.refinement_iters)
                           .s_value);
    writer.write(row);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// chsh: single S evaluation, closed form and projector pipeline side by side

struct ChshOptions {
  ModelOptions model;
  AngleOptions angles;
  std::string format = "csv";
};

int run_chsh(const ChshOptions& o) {
  ChshSettings<Real> settings;
  if (!resolve_settings(o.angles, settings)) return 2;
  const PhaseModel<Real> model = build_model(o.model);
  const Arm arm = parse_arm(o.model.arm);
  const State4<Real> state = topobell::evolve(topobell::singlet<Real>(), model, arm);

  const Real s_projector = topobell::s_function(state, settings);
  const Real s_closed = topobell::s_closed_form(settings, topobell::relative_phase(model));
  const Real difference = s_projector - s_closed;
  const auto angles = settings.angles();

  RecordWriter writer(std::cout, parse_format(o.format));
  writer.write(Record{
      {"alpha", angles[0]},
      {"beta", angles[1]},
      {"alpha_p", angles[2]},
      {"beta_p", angles[3]},
      {"phase", topobell::composite_phase(model)},
      {"s_closed_form", s_closed},
      {"s_projector", s_projector},
      {"difference", difference},
  });
  if (std::abs(difference) > kSelfCheckTol) {
    std::cerr << "error: closed-form and projector S values disagree beyond "
              << topobell::cli::format_real(kSelfCheckTol) << '\n';
    return 3;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// eigs: interaction Hamiltonian, spectrum, eigenvectors, analytic fidelity

struct EigsOptions {
  std::string effect = "ab";
  Real a_mag = 1, theta = 0, e_charge = 1, flux = 0;
  Real e_tilde = 1, mu = 1, lambda_e = 0;
  int spin_sign = 1;
  std::string format = "csv";
};

int run_eigs(const EigsOptions& o) {
  topobell::Operator2<Real> h;
  Real effective_theta = o.theta;
  if (o.effect == "ab") {
    h = topobell::h_ab(topobell::AbFieldConfig<Real>{o.a_mag, o.theta, o.e_charge, o.flux});
  } else {
    const topobell::PlanarDiracConfig<Real> rep{o.spin_sign, 0};
    h = topobell::h_ac(topobell::AcFieldConfig<Real>{o.e_tilde, o.theta, o.mu, o.lambda_e}, rep);
    if (o.spin_sign == -1) effective_theta = kPi - o.theta;
  }
  const auto pairs = topobell::eig_hermitian_2x2(h);
  const auto analytic = topobell::analytic_eigenstates(effective_theta);

  RecordWriter writer(std::cout, parse_format(o.format));
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& v = pairs[k].vector;
    const Real fid_up = std::norm(analytic.up.dot(v));
    const Real fid_down = std::norm(analytic.down.dot(v));
    writer.write(Record{
        {"index", std::uint64_t(k)},
        {"eigenvalue", pairs[k].value},
        {"v0_re", v(0).real()},
        {"v0_im", v(0).imag()},
        {"v1_re", v(1).real()},
        {"v1_im", v(1).imag()},
        {"match", std::string(fid_up >= fid_down ? "up" : "down")},
        {"fidelity", std::max(fid_up, fid_down)},
        {"h00_re", h(0, 0).real()},
        {"h00_im", h(0, 0).imag()},
        {"h01_re", h(0, 1).real()},
        {"h01_im", h(0, 1).imag()},
        {"h10_re", h(1, 0).real()},
        {"h10_im", h(1, 0).imag()},
        {"h11_re", h(1, 1).real()},
        {"h11_im", h(1, 1).imag()},
    });
  }
  return 0;
}

// ---------------------------------------------------------------------------
// mc: seeded Monte Carlo sampling against the analytic probabilities

struct McOptions {
  ModelOptions model;
  AngleOptions angles;
  std::string mode = "counts";
  Real alpha = 0, beta = 0;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  std::string format = "csv";
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* beta_opt = nullptr;
};

int run_mc(const McOptions& o) {
  const PhaseModel<Real> model = build_model(o.model);
  const Arm arm = parse_arm(o.model.arm);
  RecordWriter writer(std::cout, parse_format(o.format));

  if (o.mode == "counts") {
    topobell::SampleConfig<Real> cfg;
    cfg.seed = o.seed;
    cfg.n_samples = o.samples;
    cfg.model = model;
    cfg.arm = arm;
    const topobell::AnglePair<Real> pair{MeasurementSetting<Real>(o.alpha),
                                         MeasurementSetting<Real>(o.beta)};
    cfg.settings = pair;
    const auto counts = topobell::sample_outcomes(cfg);
    const auto& block = counts.pairs.front();

    const State4<Real> state = topobell::evolve(topobell::singlet<Real>(), model, arm);
    const auto analytic = topobell::joint_probabilities(state, pair.a, pair.b).as_array();
    static const std::array<std::string, 4> labels{"uu", "ud", "du", "dd"};
    for (std::size_t i = 0; i < 4; ++i) {
      const Real freq = block.frequency(i);
      const Real se = std::sqrt(analytic[i] * (1 - analytic[i]) / Real(o.samples));
      const Real diff = freq - analytic[i];
      const Real z = diff == 0 ? 0 : diff / se;
      writer.write(Record{
          {"outcome", labels[i]},
          {"count", block.counts[i]},
          {"frequency", freq},
          {"analytic_p", analytic[i]},
          {"std_error", se},
          {"z", z},
      });
    }
    return 0;
  }

  // mode == "chsh": empirical S from four independent batches
  ChshSettings<Real> settings;
  if (!resolve_settings(o.angles, settings)) return 2;
  topobell::SampleConfig<Real> cfg;
  cfg.seed = o.seed;
  cfg.n_samples = o.samples;
  cfg.model = model;
  cfg.arm = arm;
  cfg.settings = settings;
  const auto est = topobell::empirical_s(cfg);
  const State4<Real> state = topobell::evolve(topobell::singlet<Real>(), model, arm);
  const Real s_analytic = topobell::s_function(state, settings);
  const Real diff = est.value - s_analytic;
  writer.write(Record{
      {"s_empirical", est.value},
      {"std_error", est.std_error},
      {"s_analytic", s_analytic},
      {"z", diff == 0 ? 0 : diff / est.std_error},
  });
  return 0;
}

// ---------------------------------------------------------------------------
// optimize: maximize S over the four angles

struct OptimizeOptions {
  ModelOptions model;
  int grid_resolution = 24;
  int refinement_iters = 40;
  std::string format = "csv";
};

int run_optimize(const OptimizeOptions& o) {
  if (o.grid_resolution < 8) {
    std::cerr << "error: --grid-resolution must be >= 8\n";
    return 2;
  }
  if (o.refinement_iters < 1) {
    std::cerr << "error: --refinement-iters must be >= 1\n";
    return 2;
  }
  const PhaseModel<Real> model = build_model(o.model);
  const Arm arm = parse_arm(o.model.arm);
  const auto report =
      topobell::maximize_s(model, arm, o.grid_resolution, o.refinement_iters);
  const State4<Real> state = topobell::evolve(topobell::singlet<Real>(), model, arm);
  const Real s_bell = topobell::s_function(state, topobell::bell_angles<Real>());
  const auto angles = report.settings.angles();

  RecordWriter writer(std::cout, parse_format(o.format));
  writer.write(Record{
      {"phase", report.phase},
      {"s_optimized", report.s_value},
      {"alpha", angles[0]},
      {"beta", angles[1]},
      {"alpha_p", angles[2]},
      {"beta_p", angles[3]},
      {"s_bell_angles", s_bell},
  });
  return 0;
}

// ---------------------------------------------------------------------------
// probabilities / correlate: one settings pair, projector vs closed form

struct PairOptions {
  ModelOptions model;
  Real alpha = 0, beta = 0;
  std::string format = "csv";
};

int run_probabilities(const PairOptions& o) {
  const PhaseModel<Real> model = build_model(o.model);
  const Arm arm = parse_arm(o.model.arm);
  const State4<Real> state = topobell::evolve(topobell::singlet<Real>(), model, arm);
  const MeasurementSetting<Real> a(o.alpha), b(o.beta);
  const auto p = topobell::joint_probabilities(state, a, b);
  const auto closed =
      topobell::joint_probabilities_closed_form(a, b, topobell::relative_phase(model));

  RecordWriter writer(std::cout, parse_format(o.format));
  writer.write(Record{
      {"alpha", a.angle()},
      {"beta", b.angle()},
      {"phase", topobell::composite_phase(model)},
      {"p_uu", p.p_uu},
      {"p_ud", p.p_ud},
      {"p_du", p.p_du},
      {"p_dd", p.p_dd},
      {"p_uu_closed", closed.p_uu},
      {"p_ud_closed", closed.p_ud},
      {"p_du_closed", closed.p_du},
      {"p_dd_closed", closed.p_dd},
  });
  return 0;
}

int run_correlate(const PairOptions& o) {
  const PhaseModel<Real> model = build_model(o.model);
  const Arm arm = parse_arm(o.model.arm);
  const State4<Real> state = topobell::evolve(topobell::singlet<Real>(), model, arm);
  const MeasurementSetting<Real> a(o.alpha), b(o.beta);
  const Real e_projector = topobell::correlation(state, a, b);
  const Real e_closed =
      topobell::correlation_closed_form(a, b, topobell::relative_phase(model));

  RecordWriter writer(std::cout, parse_format(o.format));
  writer.write(Record{
      {"alpha", a.angle()},
      {"beta", b.angle()},
      {"phase", topobell::composite_phase(model)},
      {"e_projector", e_projector},
      {"e_closed_form", e_closed},
      {"difference", e_projector - e_closed},
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"topobell: topological phases on entangled spin-1/2 pairs"};
  app.require_subcommand(1);

  ScanOptions scan;
  auto* scan_cmd = app.add_subcommand(
      "scan", "sweep the composite phase and tabulate the CHSH S function");
  add_kind_options(scan_cmd, scan.model);
  scan_cmd->add_option("--phase-min", scan.phase_min, "sweep start")
      ->check(Finite)->capture_default_str();
  scan_cmd->add_option("--phase-max", scan.phase_max, "sweep end")
      ->check(Finite)->capture_default_str();
  scan_cmd->add_option("--steps", scan.steps, "number of sweep points (>= 2)")
      ->capture_default_str();
  add_angle_options(scan_cmd, scan.angles, true);
  scan_cmd->add_flag("--with-optimized", scan.with_optimized,
                     "append the angle-optimized S column");
  scan_cmd->add_option("--grid-resolution", scan.grid_resolution,
                       "optimizer grid points per axis")->capture_default_str();
  scan_cmd->add_option("--refinement-iters", scan.refinement_iters,
                       "optimizer refinement rounds")->capture_default_str();
  add_format_option(scan_cmd, scan.format);

  ChshOptions chsh;
  auto* chsh_cmd = app.add_subcommand(
      "chsh", "evaluate S once, closed form against the projector pipeline");
  add_kind_options(chsh_cmd, chsh.model);
  add_phase_options(chsh_cmd, chsh.model);
  add_angle_options(chsh_cmd, chsh.angles, true);
  add_format_option(chsh_cmd, chsh.format);

  EigsOptions eigs;
  auto* eigs_cmd = app.add_subcommand(
      "eigs", "interaction Hamiltonian spectrum and analytic-state fidelities");
  eigs_cmd->add_option("--effect", eigs.effect, "interaction: ab or ac")
      ->check(CLI::IsMember({"ab", "ac"}))->capture_default_str();
  eigs_cmd->add_option("--A", eigs.a_mag, "gauge potential magnitude")
      ->check(Finite)->capture_default_str();
  eigs_cmd->add_option("--theta", eigs.theta, "field direction angle")
      ->check(Finite)->capture_default_str();
  eigs_cmd->add_option("--e", eigs.e_charge, "electron charge")
      ->check(Finite)->capture_default_str();
  eigs_cmd->add_option("--E", eigs.e_tilde, "rotated field magnitude")
      ->check(Finite)->capture_default_str();
  eigs_cmd->add_option("--mu", eigs.mu, "magnetic dipole moment")
      ->check(Finite)->capture_default_str();
  eigs_cmd->add_option("--s", eigs.spin_sign, "representation sign, +1 or -1")
      ->check(CLI::IsMember({-1, 1}))->capture_default_str();
  add_format_option(eigs_cmd, eigs.format);

  McOptions mc;
  auto* mc_cmd = app.add_subcommand(
      "mc", "seeded Monte Carlo sampling of measurement outcomes");
  add_kind_options(mc_cmd, mc.model);
  add_phase_options(mc_cmd, mc.model);
  mc_cmd->add_option("--mode", mc.mode, "counts (one settings pair) or chsh")
      ->check(CLI::IsMember({"counts", "chsh"}))->capture_default_str();
  mc.alpha_opt = mc_cmd->add_option("--alpha", mc.alpha, "left setting")
      ->check(Finite)->capture_default_str();
  mc.beta_opt = mc_cmd->add_option("--beta", mc.beta, "right setting")
      ->check(Finite)->capture_default_str();
  add_angle_options(mc_cmd, mc.angles, true);
  mc_cmd->add_option("--samples", mc.samples, "samples per settings pair (>= 1)")
      ->check(CLI::PositiveNumber)->capture_default_str();
  mc_cmd->add_option("--seed", mc.seed, "generator seed")->capture_default_str();
  add_format_option(mc_cmd, mc.format);

  OptimizeOptions optimize;
  auto* optimize_cmd = app.add_subcommand(
      "optimize", "maximize S over the four measurement angles");
  add_kind_options(optimize_cmd, optimize.model);
  add_phase_options(optimize_cmd, optimize.model);
  optimize_cmd->add_option("--grid-resolution", optimize.grid_resolution,
                           "grid points per axis (>= 8)")->capture_default_str();
  optimize_cmd->add_option("--refinement-iters", optimize.refinement_iters,
                           "refinement rounds (>= 1)")->capture_default_str();
  add_format_option(optimize_cmd, optimize.format);

  PairOptions probabilities;
  auto* probabilities_cmd = app.add_subcommand(
      "probabilities", "joint outcome probabilities at one settings pair");
  add_kind_options(probabilities_cmd, probabilities.model);
  add_phase_options(probabilities_cmd, probabilities.model);
  probabilities_cmd->add_option("--alpha", probabilities.alpha, "left setting")
      ->check(Finite)->capture_default_str();
  probabilities_cmd->add_option("--beta", probabilities.beta, "right setting")
      ->check(Finite)->capture_default_str();
  add_format_option(probabilities_cmd, probabilities.format);

  PairOptions correlate;
  auto* correlate_cmd = app.add_subcommand(
      "correlate", "two-arm correlation at one settings pair");
  add_kind_options(correlate_cmd, correlate.model);
  add_phase_options(correlate_cmd, correlate.model);
  correlate_cmd->add_option("--alpha", correlate.alpha, "left setting")
      ->check(Finite)->capture_default_str();
  correlate_cmd->add_option("--beta", correlate.beta, "right setting")
      ->check(Finite)->capture_default_str();
  add_format_option(correlate_cmd, correlate.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (scan_cmd->parsed()) return run_scan(scan);
    if (chsh_cmd->parsed()) return run_chsh(chsh);
    if (eigs_cmd->parsed()) return run_eigs(eigs);
    if (mc_cmd->parsed()) return run_mc(mc);
    if (optimize_cmd->parsed()) return run_optimize(optimize);
    if (probabilities_cmd->parsed()) return run_probabilities(probabilities);
    if (correlate_cmd->parsed()) return run_correlate(correlate);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
