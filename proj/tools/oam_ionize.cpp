// oam-ionize: selection rules, quadrature checks, hydrogen simulations and
// spectral analysis for atoms driven by Laguerre-Gaussian pulses.

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "oamion/analysis/compliance.hpp"
#include "oamion/analysis/decomposition.hpp"
#include "oamion/analysis/observables.hpp"
#include "oamion/analysis/spectrum.hpp"
#include "oamion/angular/selection_rules.hpp"
#include "oamion/beam/vector_potential.hpp"
#include "oamion/config/run_config.hpp"
#include "oamion/oracle/sphere_quadrature.hpp"
#include "oamion/pipeline.hpp"
#include "oamion/tdse/checkpoint.hpp"
#include "oamion/tdse/ground_state.hpp"

namespace fs = std::filesystem;
using namespace oamion;

namespace {

enum ExitCode { kOk = 0, kFailed = 1, kUsage = 2, kBlowup = 3 };

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void apply_threads(int threads) {
  if (threads <= 0) {
    if (const char* env = std::getenv("OAM_IONIZE_THREADS")) threads = std::atoi(env);
  }
  if (threads > 0) omp_set_num_threads(threads);
}

std::vector<angular::HamiltonianPart> parts_for(const std::string& name) {
  using angular::HamiltonianPart;
  if (name == "all") return {HamiltonianPart::HI, HamiltonianPart::HII, HamiltonianPart::HIIStatic};
  if (name == "both") return {HamiltonianPart::HI, HamiltonianPart::HII};
  return {angular::parse_hamiltonian_part(name)};
}

std::vector<angular::Polarization> polarizations_for(const std::string& name) {
  if (name == "all") {
    return {angular::Polarization::linear_x(), angular::Polarization::linear_y(), angular::Polarization::circular_left(),
            angular::Polarization::circular_right()};
  }
  return {angular::Polarization::parse(name)};
}

int cmd_derive_rules(int ell, const std::string& pol, const std::string& part, bool json) {
  nlohmann::json list = nlohmann::json::array();
  for (auto p : parts_for(part)) {
    const auto rules = angular::derive_selection_rules(ell, angular::Polarization::parse(pol), p);
    if (json) {
      list.push_back(nlohmann::json::parse(rules.to_json()));
    } else {
      std::cout << rules.describe() << '\n';
    }
  }
  if (json) std::cout << list.dump(2) << '\n';
  return kOk;
}

int cmd_oracle_verify(int ell_min, int ell_max, int l_max, const std::string& pol, const std::string& part,
                      const std::string& out_path) {
  nlohmann::json reports = nlohmann::json::array();
  bool ok = true;
  const auto start = std::chrono::steady_clock::now();
  for (int ell = ell_min; ell <= ell_max; ++ell) {
    for (const auto& polarization : polarizations_for(pol)) {
      for (auto p : parts_for(part)) {
        const auto rules = angular::derive_selection_rules(ell, polarization, p);
        const int extra = p == angular::HamiltonianPart::HI ? std::abs(ell) + 1 : 2 * std::abs(ell);
        const auto quad = oracle::SphereQuadrature::for_degree(l_max, extra);
        const auto report = oracle::verify_rule_set(rules, l_max, quad);
        const bool pass = report.verified() && report.missing_classes.empty();
        ok = ok && pass;
        std::cerr << (pass ? "ok   " : "FAIL ") << "ell=" << ell << " pol=" << polarization.name()
                  << " part=" << angular::to_string(p) << " tuples=" << report.tuples_scanned
                  << " disagreements=" << report.disagreements.size() << " unresolved=" << report.unresolved.size()
                  << " missing_classes=" << report.missing_classes.size() << '\n';
        reports.push_back(nlohmann::json::parse(report.to_json()));
      }
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "oracle-verify: " << (ok ? "verified" : "DISAGREEMENT") << " in " << seconds << " s\n";
  const nlohmann::json out = {{"verified", ok}, {"l_max", l_max}, {"reports", reports}};
  if (out_path.empty()) {
    std::cout << out.dump(2) << '\n';
  } else {
    write_file(out_path, out.dump(2) + "\n");
  }
  return ok ? kOk : kFailed;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir_flag, int checkpoint_every_flag) {
  config::RunConfig cfg = config::load_run_config(config_path);
  if (!out_dir_flag.empty()) cfg.output.directory = out_dir_flag;
  if (checkpoint_every_flag >= 0) cfg.output.checkpoint_every = checkpoint_every_flag;
  const fs::path out_dir = cfg.output.directory;
  fs::create_directories(out_dir);
  write_file(out_dir / "run.cfg", config::serialize(cfg));

  pipeline::PipelineOptions options;
  options.checkpoint_every = cfg.output.checkpoint_every;
  options.checkpoint_path = out_dir / "checkpoint.bin";
  options.spectra_every_record = cfg.output.spectrum;
  if (cfg.output.projection_series) {
    fs::create_directories(out_dir / "projections");
    options.observer = [&](const tdse::TrajectoryPoint& p, const tdse::Wavefunction& psi,
                           const tdse::Wavefunction& ground) {
      const auto split = analysis::split_excited(psi, ground);
      char name[64];
      std::snprintf(name, sizeof name, "step_%08lld.csv", static_cast<long long>(p.step));
      write_file(out_dir / "projections" / name,
                 "# t=" + std::to_string(p.t) + "\n" + analysis::xy_projection(split.excited).to_csv());
    };
  }
  options.progress = [](const tdse::TrajectoryPoint& p, const pipeline::ComplianceSample* s) {
    std::cerr << "t=" << p.t << " pop_ground=" << p.pop_ground << " norm=" << p.norm << " Lz=" << p.L.z;
    if (s) std::cerr << " forbidden=" << s->forbidden_fraction();
    std::cerr << '\n';
  };

  pipeline::SimulationReport report;
  try {
    report = pipeline::simulate(cfg, options);
  } catch (const tdse::NumericalBlowup& e) {
    write_file(out_dir / "diagnostic.json", e.diagnostic_json() + "\n");
    std::cerr << "error: " << e.what() << '\n';
    return kBlowup;
  }

  if (cfg.output.final_state) {
    tdse::write_checkpoint(out_dir / "ground.bin", {report.ground.psi, report.run.plan.t_begin, 0});
    tdse::write_checkpoint(out_dir / "final.bin",
                           {report.run.psi, report.run.plan.t_end, report.run.plan.n_steps});
  }
  if (cfg.output.trajectory) {
    write_file(out_dir / "trajectory.csv", report.run.trajectory.to_csv());
    write_file(out_dir / "trajectory_full.csv", report.run.trajectory.to_csv_extended());
  }
  if (cfg.output.spectrum) {
    write_file(out_dir / "spectrum.json", report.final_spectrum.to_json() + "\n");
    write_file(out_dir / "spectrum.csv", report.final_spectrum.to_csv());
    write_file(out_dir / "compliance.json", report.final_compliance.to_json() + "\n");
    write_file(out_dir / "compliance_series.csv", report.compliance_csv());
  }
  if (cfg.output.projection) {
    write_file(out_dir / "projection.csv", report.excited_projection.to_csv());
    write_file(out_dir / "radial_histogram.csv", report.excited_histogram.to_csv());
  }
  write_file(out_dir / "summary.json", report.summary_json() + "\n");
  std::cout << report.summary_json() << '\n';
  return kOk;
}

struct AnalyzeArgs {
  std::string state;
  std::string ground;
  std::string config;
  std::string out_dir = "analysis";
  std::optional<int> ell;
  std::optional<std::string> pol;
  std::optional<int> l_max;
  std::optional<int> n_radial;
  std::optional<double> r_max;
  std::optional<int> order;
};

int cmd_analyze(const AnalyzeArgs& args) {
  config::RunConfig cfg;
  if (!args.config.empty()) cfg = config::load_run_config(args.config);
  const tdse::Checkpoint state = tdse::read_checkpoint(args.state);
  if (!args.config.empty() && !(state.psi.grid() == cfg.grid)) {
    throw std::runtime_error("state grid does not match the grid of " + args.config);
  }
  if (args.ell) cfg.beam.ell = *args.ell;
  if (args.pol) cfg.beam.pol = angular::Polarization::parse(*args.pol);
  if (args.l_max) cfg.analysis.l_max = *args.l_max;
  if (args.n_radial) cfg.analysis.n_radial = *args.n_radial;
  if (args.r_max) cfg.analysis.r_max = *args.r_max;
  if (args.order) cfg.analysis.closure_order = *args.order;

  tdse::Wavefunction ground;
  if (!args.ground.empty()) {
    ground = tdse::read_checkpoint(args.ground).psi;
  } else {
    std::cerr << "relaxing the ground state on the state's grid\n";
    ground = tdse::init_ground_state(state.psi.grid(), cfg.prop).psi;
  }
  tdse::require_same_grid(state.psi, ground);

  analysis::SphericalSpectrum spectrum;
  analysis::ComplianceReport compliance;
  pipeline::compliance_sample(cfg, state.psi, ground, state.t, &spectrum, &compliance);
  const analysis::ExcitedSplit split = analysis::split_excited(state.psi, ground);

  const fs::path out_dir = args.out_dir;
  fs::create_directories(out_dir);
  write_file(out_dir / "spectrum.json", spectrum.to_json() + "\n");
  write_file(out_dir / "spectrum.csv", spectrum.to_csv());
  write_file(out_dir / "compliance.json", compliance.to_json() + "\n");
  write_file(out_dir / "projection.csv", analysis::xy_projection(split.excited).to_csv());

  std::cout << "t = " << state.t << "  |alpha|^2 = " << std::norm(split.alpha)
            << "  excited norm = " << split.excited.norm_squared() << "  forbidden fraction = "
            << compliance.forbidden_fraction() << '\n';
  int shown = 0;
  for (const auto& [index, p] : spectrum.ranked()) {
    if (shown++ == 10) break;
    std::cout << "  (" << index.L << ", " << index.M << ")  " << p << (compliance.closure.contains(index) ? "" : "  forbidden")
              << '\n';
  }
  return kOk;
}

struct ProbeArgs {
  std::string config;
  std::string out;
  int ell = 1;
  std::string pol = "linear-x";
  std::optional<double> amplitude;
  std::string model = "near-origin";
  int n_cyc = 3;
  std::vector<double> point{20.0, 0.0, 0.0};
  std::optional<double> t0;
  std::optional<double> t1;
  int samples = 1000;
};

int cmd_field_probe(const ProbeArgs& args) {
  beam::PulseConfig pulse;
  if (!args.config.empty()) {
    pulse = config::load_run_config(args.config).beam;
  } else {
    pulse.ell = args.ell;
    pulse.pol = angular::Polarization::parse(args.pol);
    pulse.model = beam::parse_beam_model(args.model);
    pulse.n_cyc = args.n_cyc;
    if (args.amplitude) pulse.amplitude = *args.amplitude;
    pulse.validate();
  }
  if (args.samples < 2) throw std::invalid_argument("--samples must be at least 2");
  const Vec3 r{args.point[0], args.point[1], args.point[2]};
  const double z = r.z + pulse.atom_displacement.z;
  const double t0 = args.t0.value_or(pulse.window_start(z));
  const double t1 = args.t1.value_or(pulse.window_end(z));
  std::ostringstream os;
  os.precision(12);
  os << "t,Ax,Ay,Ex,Ey\n";
  for (int s = 0; s < args.samples; ++s) {
    const double t = t0 + (t1 - t0) * s / (args.samples - 1);
    const beam::FieldSample f = beam::field(r, t, pulse);
    os << t << ',' << f.A.x << ',' << f.A.y << ',' << f.E.x << ',' << f.E.y << '\n';
  }
  if (args.out.empty()) {
    std::cout << os.str();
  } else {
    write_file(args.out, os.str());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Selection rules, quadrature checks and TDSE runs for hydrogen in Laguerre-Gaussian pulses"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads (default: OAM_IONIZE_THREADS or the runtime default)");
  app.fallthrough();

  auto* derive = app.add_subcommand("derive-rules", "Print the selection rules of each interaction term");
  int d_ell = 1;
  std::string d_pol = "linear-x";
  std::string d_part = "both";
  bool d_json = false;
  derive->add_option("--ell", d_ell, "Beam winding number")->required();
  derive->add_option("--pol", d_pol, "linear-x, linear-y, circ-left or circ-right")->required();
  derive->add_option("--part", d_part, "HI, HII, HII-static, both or all");
  derive->add_flag("--json", d_json, "Emit JSON instead of a table");

  auto* verify = app.add_subcommand("oracle-verify", "Check the rules against direct sphere quadrature");
  int v_ell_min = -3;
  int v_ell_max = 3;
  int v_l_max = 8;
  std::string v_pol = "all";
  std::string v_part = "both";
  std::string v_out;
  verify->add_option("--ell-min", v_ell_min);
  verify->add_option("--ell-max", v_ell_max);
  verify->add_option("--l-max", v_l_max, "Largest L of the initial and final harmonics");
  verify->add_option("--pol", v_pol, "Polarization name or 'all'");
  verify->add_option("--part", v_part, "HI, HII, HII-static, both or all");
  verify->add_option("--out", v_out, "Write the JSON report here instead of stdout");

  auto* simulate = app.add_subcommand("simulate", "Run one simulation from a config file");
  std::string s_config;
  std::string s_out_dir;
  int s_checkpoint_every = -1;
  simulate->add_option("--config", s_config, "Run configuration")->required()->check(CLI::ExistingFile);
  simulate->add_option("--out-dir", s_out_dir, "Overrides output.directory");
  simulate->add_option("--checkpoint-every", s_checkpoint_every, "Overrides output.checkpoint_every");

  auto* analyze = app.add_subcommand("analyze", "Spectrum, compliance and projection of a saved state");
  AnalyzeArgs a;
  analyze->add_option("--state", a.state, "State checkpoint")->required()->check(CLI::ExistingFile);
  analyze->add_option("--ground", a.ground, "Ground-state checkpoint (relaxed anew when absent)")
      ->check(CLI::ExistingFile);
  analyze->add_option("--config", a.config, "Run configuration supplying beam and analysis settings")
      ->check(CLI::ExistingFile);
  analyze->add_option("--out-dir", a.out_dir);
  analyze->add_option("--ell", a.ell);
  analyze->add_option("--pol", a.pol);
  analyze->add_option("--l-max", a.l_max);
  analyze->add_option("--n-radial", a.n_radial);
  analyze->add_option("--r-max", a.r_max);
  analyze->add_option("--order", a.order, "Closure order");

  auto* probe = app.add_subcommand("field-probe", "Dump A and E at one point over the pulse as CSV");
  ProbeArgs p;
  probe->add_option("--config", p.config, "Take the beam from a run configuration")->check(CLI::ExistingFile);
  probe->add_option("--out", p.out, "CSV path (default stdout)");
  probe->add_option("--ell", p.ell);
  probe->add_option("--pol", p.pol);
  probe->add_option("--amplitude", p.amplitude);
  probe->add_option("--model", p.model, "near-origin or full");
  probe->add_option("--n-cyc", p.n_cyc);
  probe->add_option("--point", p.point, "x y z in au")->expected(3);
  probe->add_option("--t0", p.t0);
  probe->add_option("--t1", p.t1);
  probe->add_option("--samples", p.samples);

  CLI11_PARSE(app, argc, argv);
  apply_threads(threads);

  try {
    if (*derive) return cmd_derive_rules(d_ell, d_pol, d_part, d_json);
    if (*verify) return cmd_oracle_verify(v_ell_min, v_ell_max, v_l_max, v_pol, v_part, v_out);
    if (*simulate) return cmd_simulate(s_config, s_out_dir, s_checkpoint_every);
    if (*analyze) return cmd_analyze(a);
    if (*probe) return cmd_field_probe(p);
  } catch (const config::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}
