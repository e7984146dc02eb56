#include "oamion/pipeline.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "oamion/analysis/decomposition.hpp"

namespace oamion::pipeline {
namespace {

analysis::SpectrumOptions spectrum_options(const config::RunConfig& cfg) {
  analysis::SpectrumOptions o;
  o.l_max = cfg.analysis.l_max;
  o.n_radial = cfg.analysis.n_radial;
  o.r_max = cfg.analysis.r_max;
  return o;
}

nlohmann::json vec_json(const Vec3& v) { return nlohmann::json::array({v.x, v.y, v.z}); }

}  // namespace

ComplianceSample compliance_sample(const config::RunConfig& cfg, const tdse::Wavefunction& psi,
                                   const tdse::Wavefunction& ground, double t,
                                   analysis::SphericalSpectrum* spectrum_out, analysis::ComplianceReport* report_out) {
  const analysis::ExcitedSplit split = analysis::split_excited(psi, ground);
  analysis::SphericalSpectrum spectrum = analysis::spherical_spectrum(split.excited, spectrum_options(cfg));
  analysis::ComplianceReport report =
      analysis::compliance(spectrum, cfg.beam.ell, cfg.beam.pol, cfg.analysis.closure_order);
  ComplianceSample s;
  s.t = t;
  s.excited_norm = split.excited.norm_squared();
  s.ball_norm = spectrum.ball_norm;
  s.allowed_weight = report.allowed_weight;
  s.forbidden_weight = report.forbidden_weight;
  s.max_forbidden = report.max_forbidden();
  if (spectrum_out) *spectrum_out = std::move(spectrum);
  if (report_out) *report_out = std::move(report);
  return s;
}

double SimulationReport::worst_forbidden_fraction() const {
  double worst = 0.0;
  for (const auto& s : compliance_series) worst = std::max(worst, s.forbidden_fraction());
  return worst;
}

std::string SimulationReport::compliance_csv() const {
  std::ostringstream os;
  os.precision(12);
  os << "t,excited_norm,ball_norm,allowed_weight,forbidden_weight,forbidden_fraction,max_forbidden\n";
  for (const auto& s : compliance_series) {
    os << s.t << ',' << s.excited_norm << ',' << s.ball_norm << ',' << s.allowed_weight << ',' << s.forbidden_weight
       << ',' << s.forbidden_fraction() << ',' << s.max_forbidden << '\n';
  }
  return os.str();
}

std::string SimulationReport::summary_json() const {
  const tdse::TrajectoryPoint& last = final_point();
  nlohmann::json ranked = nlohmann::json::array();
  for (const auto& [index, p] : final_spectrum.ranked()) {
    if (ranked.size() >= 12) break;
    ranked.push_back({{"L", index.L}, {"M", index.M}, {"P", p}, {"allowed", final_compliance.closure.contains(index)}});
  }
  nlohmann::json j = {
      {"name", config.name},
      {"ground_energy", ground.energy},
      {"ground_residual", ground.residual},
      {"seed_overlap", ground.seed_overlap},
      {"t_begin", run.plan.t_begin},
      {"t_end", run.plan.t_end},
      {"steps", run.plan.n_steps},
      {"first_cycle_time", first_cycle_time},
      {"first_cycle_depletion", first_cycle_depletion},
      {"final_pop_ground", last.pop_ground},
      {"final_depletion", 1.0 - last.pop_ground},
      {"final_norm", last.norm},
      {"absorbed", last.absorbed},
      {"bound_fraction", bound_fraction},
      {"ionized_by_energy", 1.0 - bound_fraction},
      {"final_L", vec_json(last.L)},
      {"final_excited_mean", vec_json(last.mean)},
      {"final_excited_r_mean", last.r_mean},
      {"confine_radius", config.analysis.confine_radius},
      {"confined_fraction", confined_fraction},
      {"worst_forbidden_fraction", worst_forbidden_fraction()},
      {"final_forbidden_fraction", final_compliance.forbidden_fraction()},
      {"closure_order", config.analysis.closure_order},
      {"top_channels", ranked},
  };
  return j.dump(2);
}

SimulationReport simulate(const config::RunConfig& cfg, const PipelineOptions& options) {
  cfg.validate();
  SimulationReport report;
  report.config = cfg;
  tdse::Propagator prop(cfg.grid, cfg.prop, cfg.beam);
  report.ground = tdse::init_ground_state(prop);
  const tdse::Wavefunction& ground = report.ground.psi;

  const double cycle_mark = tdse::plan_run(cfg.beam, cfg.grid, cfg.prop.dt, cfg.tail).t_begin + cfg.beam.period();
  bool cycle_seen = false;

  tdse::RunOptions run_options;
  run_options.tail = cfg.tail;
  run_options.record_every = cfg.record_every;
  run_options.checkpoint_every = options.checkpoint_every;
  run_options.checkpoint_path = options.checkpoint_path;
  run_options.observer = [&](const tdse::TrajectoryPoint& p, const tdse::Wavefunction& psi) {
    if (!cycle_seen && p.t >= cycle_mark - 1e-9) {
      cycle_seen = true;
      report.first_cycle_time = p.t;
      report.first_cycle_depletion = 1.0 - p.pop_ground;
    }
    const ComplianceSample* sample = nullptr;
    if (options.spectra_every_record) {
      report.compliance_series.push_back(compliance_sample(cfg, psi, ground, p.t));
      sample = &report.compliance_series.back();
    }
    if (options.observer) options.observer(p, psi, ground);
    if (options.progress) options.progress(p, sample);
  };
  report.run = tdse::run(prop, ground, ground, run_options);

  const tdse::Wavefunction& psi = report.run.psi;
  const ComplianceSample last = compliance_sample(cfg, psi, ground, report.run.plan.t_end, &report.final_spectrum,
                                                  &report.final_compliance);
  if (!options.spectra_every_record) report.compliance_series.push_back(last);

  const analysis::ExcitedSplit split = analysis::split_excited(psi, ground);
  const double reach = std::min({cfg.grid.half_extent(0), cfg.grid.half_extent(1), cfg.grid.half_extent(2)}) * 1.75;
  report.excited_histogram = analysis::radial_histogram(split.excited, cfg.analysis.histogram_width, reach);
  report.confined_fraction = analysis::fraction_within(split.excited, cfg.analysis.confine_radius);
  report.excited_projection = analysis::xy_projection(split.excited);
  if (options.compute_bound_fraction) report.bound_fraction = tdse::bound_fraction(prop, psi);
  return report;
}

}  // namespace oamion::pipeline
