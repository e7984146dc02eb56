// Acceptance suite: one PASS/FAIL line per criterion, tolerances fixed below.
//
//   acceptance [--work-dir DIR] [--only 1,2,...] [--configs DIR]
//
// Criteria 5-8 share a set of simulations that are run once on demand; their
// artifacts land in the work directory.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "oamion/analysis/compliance.hpp"
#include "oamion/analysis/decomposition.hpp"
#include "oamion/analysis/observables.hpp"
#include "oamion/angular/algebra.hpp"
#include "oamion/angular/clebsch_gordan.hpp"
#include "oamion/angular/selection_rules.hpp"
#include "oamion/beam/vector_potential.hpp"
#include "oamion/config/run_config.hpp"
#include "oamion/oracle/sphere_quadrature.hpp"
#include "oamion/pipeline.hpp"
#include "oamion/tdse/ground_state.hpp"

namespace fs = std::filesystem;
using namespace oamion;
using angular::HarmonicIndex;
using angular::Polarization;

namespace tol {
constexpr double kZero = 1e-12;             // 1, 2: forbidden integrals
constexpr double kNonzero = 1e-8;           // 1, 2: one witness per allowed class
constexpr double kRuntimeHI = 60.0;         // 1: seconds
constexpr double kRuntimeHII = 30.0;        // 2: seconds
constexpr double kIdentity = 1e-10;         // 3: expansions vs quadrature
constexpr double kNormDrift = 1e-8;         // 4
constexpr double kGroundPop = 0.999;        // 4
constexpr double kOrderLow = 3.0;           // 4: error ratio for halved dt
constexpr double kOrderHigh = 5.0;
constexpr double kForbidden = 0.01;         // 5: forbidden weight / excited norm
constexpr double kTransverseL = 1e-3;       // 6: |Lx|, |Ly|
constexpr double kMirror = 0.01;            // 6: relative
constexpr double kLinearDepletion = 0.52;   // 7: reference values
constexpr double kCircularDepletion = 0.31;
constexpr double kDepletionWindow = 0.15;   // 7: ± absolute
constexpr double kConfined = 0.90;          // 8
constexpr double kConfineRadius = 10.0;     // 8
constexpr double kTail = 10.0;              // 8: free evolution after the 3-cycle pulse
constexpr double kCepSweep = 1e-10;         // 9: 2π per revolution
constexpr double kCepRadius = 1e-6;         // 9: radius independence
}  // namespace tol

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int precision = 4) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream(path, std::ios::binary) << text;
}

// ---------------------------------------------------------------- 1 and 2

Outcome verify_part(angular::HamiltonianPart part, double budget, const fs::path& work) {
  const auto start = std::chrono::steady_clock::now();
  const int l_max = 8;
  int sets = 0;
  int disagreements = 0;
  int unresolved = 0;
  int missing = 0;
  int empty_sets = 0;
  std::size_t tuples = 0;
  double worst_forbidden = 0.0;
  double weakest_class = INFINITY;
  nlohmann::json reports = nlohmann::json::array();
  for (int ell = -3; ell <= 3; ++ell) {
    for (const auto& pol : {Polarization::linear_x(), Polarization::linear_y(), Polarization::circular_left(),
                            Polarization::circular_right()}) {
      const auto rules = angular::derive_selection_rules(ell, pol, part);
      const int extra = part == angular::HamiltonianPart::HI ? std::abs(ell) + 1 : 2 * std::abs(ell);
      const auto quad = oracle::SphereQuadrature::for_degree(l_max, extra);
      const auto report = oracle::verify_rule_set(rules, l_max, quad);
      ++sets;
      tuples += report.tuples_scanned;
      disagreements += static_cast<int>(report.disagreements.size());
      unresolved += static_cast<int>(report.unresolved.size());
      missing += static_cast<int>(report.missing_classes.size());
      if (rules.allowed_delta_M.empty()) ++empty_sets;
      for (const auto& [cls, value] : report.class_max) weakest_class = std::min(weakest_class, value);
      // Largest forbidden magnitude: rescan everything the oracle saw as nonzero.
      for (const auto& e : report.nonzero) {
        if (!e.rule_allowed) worst_forbidden = std::max(worst_forbidden, std::abs(e.value));
      }
      reports.push_back(nlohmann::json::parse(report.to_json()));
    }
  }
  const double elapsed = seconds_since(start);
  write_text(work / (part == angular::HamiltonianPart::HI ? "criterion1_HI.json" : "criterion2_HII.json"),
             reports.dump(1) + "\n");
  const bool pass = disagreements == 0 && unresolved == 0 && missing == 0 && worst_forbidden < tol::kZero &&
                    weakest_class > tol::kNonzero && elapsed < budget;
  return {pass, std::to_string(sets) + " rule sets, " + std::to_string(tuples) + " tuples; disagreements " +
                    std::to_string(disagreements) + ", unresolved " + std::to_string(unresolved) +
                    ", allowed classes without a witness " + std::to_string(missing) + ", weakest class max " +
                    fmt(weakest_class) + ", rule sets with no allowed transition " + std::to_string(empty_sets) + "; " +
                    fmt(elapsed, 3) + " s (limit " + fmt(budget, 3) + " s)"};
}

// ---------------------------------------------------------------- 3

Outcome appendix_identities() {
  // (a) exact zero of <ℓ−1, 2; 0, 0 | ℓ, 0>.
  int exact_zeros = 0;
  for (int ell = 1; ell <= 10; ++ell) {
    if (angular::clebsch_gordan_exact(ell - 1, 2, 0, 0, ell, 0).is_zero()) ++exact_zeros;
  }

  // (b) sin²θ and the two extremal decompositions, coefficient by coefficient against projections.
  double worst_b = 0.0;
  auto compare_factor = [&](angular::AngularFactor f, const angular::HarmonicExpansion& series) {
    const int top = f.sin_power + 2;
    const auto quad = oracle::SphereQuadrature::for_degree(top, f.sin_power);
    for (int L = 0; L <= top; ++L) {
      for (int M = -L; M <= L; ++M) {
        const Complex direct = oracle::project(f, {L, M}, quad);
        worst_b = std::max(worst_b, std::abs(direct - series.coefficient({L, M})));
      }
    }
  };
  compare_factor({2, 0}, angular::sin_squared_expansion());
  for (int ell = -3; ell <= 3; ++ell) {
    const int n = std::abs(ell) + 1;
    for (int m : {ell + 1, ell - 1}) {
      if (!angular::is_band_limited({n, m})) continue;
      compare_factor({n, m}, angular::expand_sin_power_phase({n, m}));
    }
  }

  // (c) product_expansion of Y_n^{±n} Y_2^0 against direct quadrature of the product.
  double worst_c = 0.0;
  for (int n = 0; n <= 6; ++n) {
    for (int m : {n, -n}) {
      const auto series = angular::product_expansion({n, m}, {2, 0});
      const auto quad = oracle::SphereQuadrature::for_degree(n + 4, n + 2);
      for (int L = std::max(0, n - 3); L <= n + 3; ++L) {
        if (std::abs(m) > L) continue;
        const Complex direct = quad.integrate([&](double theta, double phi) {
          return std::conj(angular::spherical_harmonic(L, m, theta, phi)) * angular::spherical_harmonic(n, m, theta, phi) *
                 angular::spherical_harmonic(2, 0, theta, phi);
        });
        worst_c = std::max(worst_c, std::abs(direct - series.coefficient({L, m})));
      }
    }
  }
  const bool pass = exact_zeros == 10 && worst_b < tol::kIdentity && worst_c < tol::kIdentity;
  return {pass, "(a) exact zeros " + std::to_string(exact_zeros) + "/10; (b) worst |Δ| " + fmt(worst_b, 3) +
                    "; (c) worst |Δ| " + fmt(worst_c, 3) + " (limit " + fmt(tol::kIdentity, 2) + ")"};
}

// ---------------------------------------------------------------- 4

beam::PulseConfig desk_pulse(int ell, const Polarization& pol, int n_cyc) {
  beam::PulseConfig p;
  p.ell = ell;
  p.pol = pol;
  p.n_cyc = n_cyc;
  p.amplitude = beam::amplitude_for_peak_field(p, 5.0, 20.0);
  return p;
}

Outcome propagator_integrity() {
  // Field-free: three carrier periods at the desk time step.
  const tdse::GridSpec g = tdse::cube_grid(80, 0.5);
  tdse::PropagatorConfig cfg;
  beam::PulseConfig off;
  off.amplitude = 0.0;
  tdse::Propagator prop(g, cfg, off);
  const tdse::Wavefunction ground = tdse::init_ground_state(prop).psi;
  tdse::Wavefunction psi = ground;
  const auto steps = static_cast<int>(std::lround(3.0 * off.period() / cfg.dt));
  double drift = 0.0;
  for (int s = 0; s < steps; ++s) {
    prop.step(psi, s * cfg.dt);
    drift = std::max(drift, std::abs(psi.norm_squared() - 1.0));
  }
  const double pop = std::norm(ground.inner(psi));

  // Order in dt: final ground population with the ℓ = 1 field on, against a fine reference.
  const tdse::GridSpec small = tdse::cube_grid(48, 0.5);
  tdse::PropagatorConfig scfg;
  scfg.absorber.width = 4.0;
  const beam::PulseConfig pulse = desk_pulse(1, Polarization::linear_x(), 3);
  const tdse::Wavefunction g0 = tdse::init_ground_state(small, scfg).psi;
  auto final_pop = [&](double dt) {
    tdse::PropagatorConfig c = scfg;
    c.dt = dt;
    tdse::Propagator p(small, c, pulse);
    tdse::RunOptions opts;
    opts.record_every = 1000000;
    const auto r = tdse::run(p, g0, g0, opts);
    return std::norm(g0.inner(r.psi));
  };
  const double ref = final_pop(0.00125);
  const double e1 = std::abs(final_pop(0.02) - ref);
  const double e2 = std::abs(final_pop(0.01) - ref);
  const double ratio = e1 / e2;
  const bool pass = drift < tol::kNormDrift && pop > tol::kGroundPop && ratio >= tol::kOrderLow && ratio <= tol::kOrderHigh;
  return {pass, "field-free " + std::to_string(steps) + " steps: norm drift " + fmt(drift, 3) + ", ground population " +
                    fmt(pop, 10) + "; population error dt=0.02 " + fmt(e1, 3) + ", dt=0.01 " + fmt(e2, 3) +
                    ", ratio " + fmt(ratio, 4) + " (window [" + fmt(tol::kOrderLow) + ", " + fmt(tol::kOrderHigh) +
                    "])"};
}

// ---------------------------------------------------------------- shared runs

// Smallest closure order after which the channels with L <= l_max stop changing.
int saturated_closure_order(int ell, const Polarization& pol, int l_max) {
  auto restricted = [&](int order) {
    std::set<HarmonicIndex> out;
    for (const auto& c : analysis::closure_set(ell, pol, order)) {
      if (c.L <= l_max) out.insert(c);
    }
    return out;
  };
  int order = 0;
  std::set<HarmonicIndex> current = restricted(0);
  int stable = 0;
  while (stable < 4 && order < 24) {
    const auto next = restricted(order + stable + 1);
    if (next == current) {
      ++stable;
    } else {
      order += stable + 1;
      current = next;
      stable = 0;
    }
  }
  return order;
}

struct RunRecord {
  pipeline::SimulationReport report;
  double worst_forbidden_over_excited = 0.0;
  double worst_forbidden_time = 0.0;
  double order3_final_fraction = 0.0;
  double seconds = 0.0;
};

class RunBank {
 public:
  RunBank(fs::path work, fs::path configs) : work_(std::move(work)), configs_(std::move(configs)) {}

  config::RunConfig base(const std::string& name) const { return config::load_run_config(configs_ / (name + ".cfg")); }

  const RunRecord& get(const std::string& key, const std::function<config::RunConfig()>& make) {
    if (auto it = runs_.find(key); it != runs_.end()) return *it->second;
    config::RunConfig cfg = make();
    cfg.name = key;
    cfg.output.directory = (work_ / key).string();
    cfg.output.projection_series = false;
    cfg.analysis.closure_order = saturated_closure_order(cfg.beam.ell, cfg.beam.pol, cfg.analysis.l_max);
    std::cerr << "[run] " << key << ": " << cfg.grid.n[0] << "^3, h=" << cfg.grid.h << ", dt=" << cfg.prop.dt
              << ", closure order " << cfg.analysis.closure_order << std::endl;
    const auto start = std::chrono::steady_clock::now();
    auto rec = std::make_unique<RunRecord>();
    pipeline::PipelineOptions options;
    int records = 0;
    options.progress = [&](const tdse::TrajectoryPoint& p, const pipeline::ComplianceSample*) {
      if (++records % 10 == 0) {
        std::cerr << "  " << key << " t=" << fmt(p.t, 5) << " pop=" << fmt(p.pop_ground, 6) << " Lz=" << fmt(p.L.z, 4)
                  << " (" << fmt(seconds_since(start), 4) << " s)" << std::endl;
      }
    };
    rec->report = pipeline::simulate(cfg, options);
    rec->seconds = seconds_since(start);
    for (const auto& s : rec->report.compliance_series) {
      const double ratio = s.excited_norm > 0.0 ? s.forbidden_weight / s.excited_norm : 0.0;
      if (ratio >= rec->worst_forbidden_over_excited) {
        rec->worst_forbidden_over_excited = ratio;
        rec->worst_forbidden_time = s.t;
      }
    }
    rec->order3_final_fraction =
        analysis::compliance(rec->report.final_spectrum, cfg.beam.ell, cfg.beam.pol, 3).forbidden_fraction();

    const fs::path dir = cfg.output.directory;
    write_text(dir / "run.cfg", config::serialize(cfg));
    write_text(dir / "summary.json", rec->report.summary_json() + "\n");
    write_text(dir / "trajectory.csv", rec->report.run.trajectory.to_csv());
    write_text(dir / "trajectory_full.csv", rec->report.run.trajectory.to_csv_extended());
    write_text(dir / "compliance_series.csv", rec->report.compliance_csv());
    write_text(dir / "spectrum.csv", rec->report.final_spectrum.to_csv());
    write_text(dir / "projection.csv", rec->report.excited_projection.to_csv());
    write_text(dir / "radial_histogram.csv", rec->report.excited_histogram.to_csv());
    std::cerr << "[run] " << key << " done in " << fmt(rec->seconds, 5) << " s" << std::endl;
    return *(runs_[key] = std::move(rec));
  }

  // Desk scale: 168 points at h = 0.357 (box 60 au), dt = 0.005.
  const RunRecord& desk(const std::string& name, int ell_override = 99) {
    const std::string key = ell_override == 99 ? "desk_" + name : "desk_" + name + "_ell" + std::to_string(ell_override);
    return get(key, [&] {
      auto cfg = base(name);
      if (ell_override != 99) cfg.beam.ell = ell_override;
      return cfg;
    });
  }

  // Coarser grids on the same 60 au box for the refinement studies.
  const RunRecord& coarse(const std::string& name, int n) {
    return get("grid" + std::to_string(n) + "_" + name, [&] {
      auto cfg = base(name);
      cfg.grid.n = {n, n, n};
      cfg.grid.h = 60.0 / n;
      return cfg;
    });
  }

  const fs::path& work() const { return work_; }

 private:
  fs::path work_;
  fs::path configs_;
  std::map<std::string, std::unique_ptr<RunRecord>> runs_;
};

std::string top_channels(const analysis::SphericalSpectrum& s, int count) {
  std::string out;
  int shown = 0;
  for (const auto& [idx, p] : s.ranked()) {
    if (shown++ == count) break;
    out += (out.empty() ? "" : " ") + std::string("(") + std::to_string(idx.L) + "," + std::to_string(idx.M) +
           ")=" + fmt(p, 3);
  }
  return out;
}

bool top_two_are(const analysis::SphericalSpectrum& s, HarmonicIndex a, HarmonicIndex b) {
  const auto r = s.ranked();
  if (r.size() < 2) return false;
  const std::set<HarmonicIndex> top{r[0].first, r[1].first};
  return top == std::set<HarmonicIndex>{a, b};
}

// ---------------------------------------------------------------- 5

Outcome spectral_compliance(RunBank& bank) {
  const auto& lin = bank.desk("fig4b");
  const auto& circ = bank.desk("fig4c");
  const auto& gauss = bank.desk("gauss_control");
  bool pass = true;
  std::string detail;
  for (const auto* rec : {&lin, &circ, &gauss}) {
    const bool ok = rec->worst_forbidden_over_excited < tol::kForbidden;
    pass = pass && ok;
    detail += rec->report.config.name + ": worst forbidden/excited " + fmt(rec->worst_forbidden_over_excited, 3) +
              " at t=" + fmt(rec->worst_forbidden_time, 4) + " (closure order " +
              std::to_string(rec->report.config.analysis.closure_order) + "; order 3 final " +
              fmt(rec->order3_final_fraction, 3) + "); ";
  }
  // Linear: (2,0) and (2,2) above every forbidden channel.
  double max_forbidden = 0.0;
  for (const auto& c : lin.report.final_compliance.channels) {
    if (!c.allowed) max_forbidden = std::max(max_forbidden, c.probability);
  }
  const auto& ls = lin.report.final_spectrum;
  const bool lin_ok = std::min(ls.probability({2, 0}), ls.probability({2, 2})) > max_forbidden;
  const bool circ_ok = top_two_are(circ.report.final_spectrum, {0, 0}, {2, 0});
  const bool gauss_ok = top_two_are(gauss.report.final_spectrum, {1, 1}, {1, -1});
  pass = pass && lin_ok && circ_ok && gauss_ok;
  detail += "linear top " + top_channels(ls, 5) + ", max forbidden " + fmt(max_forbidden, 3) + "; circular top " +
            top_channels(circ.report.final_spectrum, 3) + "; l=0 top " + top_channels(gauss.report.final_spectrum, 3);
  return {pass, detail};
}

// ---------------------------------------------------------------- 6

Outcome oam_transfer(RunBank& bank) {
  const auto& plus = bank.desk("fig4b");
  const auto& minus = bank.desk("fig4b", -1);
  const Vec3 lp = plus.report.final_point().L;
  const Vec3 lm = minus.report.final_point().L;
  const double mirror = std::abs(lp.z + lm.z) / std::abs(lp.z);
  const double lz120 = bank.coarse("fig4b", 120).report.final_point().L.z;
  const double lz144 = bank.coarse("fig4b", 144).report.final_point().L.z;
  const double d1 = lz144 - lz120;
  const double d2 = lp.z - lz144;
  const bool monotone = d1 * d2 > 0.0 && std::abs(d2) < std::abs(d1);
  // Richardson estimate with the grid ratio of the last two refinements, second order in h.
  const double h1 = 60.0 / 144;
  const double h2 = 60.0 / 168;
  const double converged = lp.z + (lp.z - lz144) * h2 * h2 / (h1 * h1 - h2 * h2);
  const bool pass = lp.z > 0.0 && std::abs(lp.x) < tol::kTransverseL && std::abs(lp.y) < tol::kTransverseL &&
                    mirror < tol::kMirror && monotone;
  return {pass, "final L = (" + fmt(lp.x, 3) + ", " + fmt(lp.y, 3) + ", " + fmt(lp.z, 5) + "); l=-1 Lz " +
                    fmt(lm.z, 5) + " (mirror mismatch " + fmt(mirror, 3) + "); Lz at h=0.5/0.417/0.357: " +
                    fmt(lz120, 5) + " / " + fmt(lz144, 5) + " / " + fmt(lp.z, 5) + ", monotone and contracting " +
                    (monotone ? "yes" : "no") + ", extrapolated " + fmt(converged, 4) + " (reference 1.53)"};
}

// ---------------------------------------------------------------- 7

Outcome ionization_fractions(RunBank& bank) {
  struct Level {
    double h;
    double lin;
    double circ;
    double lin_final;
    double circ_final;
    double lz;
  };
  std::vector<Level> levels;
  for (int n : {120, 144, 168}) {
    const auto& l = n == 168 ? bank.desk("fig4b") : bank.coarse("fig4b", n);
    const auto& c = n == 168 ? bank.desk("fig4c") : bank.coarse("fig4c", n);
    levels.push_back({60.0 / n, l.report.first_cycle_depletion, c.report.first_cycle_depletion,
                      1.0 - l.report.final_point().pop_ground, 1.0 - c.report.final_point().pop_ground,
                      l.report.final_point().L.z});
  }
  std::ostringstream csv;
  csv << std::setprecision(10) << "n,h,lz_linear,depletion_linear,depletion_circular\n";
  for (const auto& v : levels) {
    csv << static_cast<int>(std::lround(60.0 / v.h)) << ',' << v.h << ',' << v.lz << ',' << v.lin << ',' << v.circ
        << '\n';
  }
  write_text(bank.work() / "convergence.csv", csv.str());
  auto distance = [](const Level& v) {
    return std::abs(v.lin - tol::kLinearDepletion) + std::abs(v.circ - tol::kCircularDepletion);
  };
  const Level& desk = levels.back();
  const bool ordered = desk.lin > desk.circ;
  const bool within = std::abs(desk.lin - tol::kLinearDepletion) <= tol::kDepletionWindow &&
                      std::abs(desk.circ - tol::kCircularDepletion) <= tol::kDepletionWindow;
  const bool shrinking = distance(levels[1]) < distance(levels[0]) && distance(levels[2]) < distance(levels[1]);
  std::string detail = "first-cycle depletion linear/circular";
  for (const auto& v : levels) {
    detail += " h=" + fmt(v.h, 3) + ": " + fmt(100 * v.lin, 3) + "%/" + fmt(100 * v.circ, 3) + "% (end of pulse " +
              fmt(100 * v.lin_final, 3) + "%/" + fmt(100 * v.circ_final, 3) + "%);";
  }
  detail += " linear > circular " + std::string(ordered ? "yes" : "no") + ", within ±" +
            fmt(100 * tol::kDepletionWindow) + " pp of 52%/31% " + (within ? "yes" : "no") +
            ", distance to reference shrinking " + (shrinking ? "yes" : "no");
  return {ordered && within && shrinking, detail};
}

// ---------------------------------------------------------------- 8

Outcome confinement(RunBank& bank) {
  const auto& n14 = bank.get("confine_n14", [&] {
    auto cfg = bank.base("confine_n14");
    cfg.analysis.confine_radius = tol::kConfineRadius;
    return cfg;
  });
  const double confined = n14.report.confined_fraction;

  // Free evolution of the 3-cycle desk state after the pulse, ⟨r⟩ of the excited part every 0.5 au.
  const auto& desk = bank.desk("fig4b");
  const auto& cfg = desk.report.config;
  tdse::Propagator prop(cfg.grid, cfg.prop, cfg.beam);
  tdse::Wavefunction psi = desk.report.run.psi;
  const tdse::Wavefunction& ground = desk.report.ground.psi;
  double t = desk.report.run.plan.t_begin + desk.report.run.plan.n_steps * cfg.prop.dt;
  const int every = static_cast<int>(std::lround(0.5 / cfg.prop.dt));
  const int samples = static_cast<int>(std::lround(tol::kTail / 0.5));
  std::vector<double> radii{analysis::mean_radius(analysis::split_excited(psi, ground).excited)};
  std::ostringstream csv;
  csv << "t,r_mean\n" << t << ',' << radii.back() << '\n';
  for (int s = 0; s < samples; ++s) {
    for (int k = 0; k < every; ++k) {
      prop.step(psi, t);
      t += cfg.prop.dt;
    }
    radii.push_back(analysis::mean_radius(analysis::split_excited(psi, ground).excited));
    csv << t << ',' << radii.back() << '\n';
  }
  write_text(bank.work() / "desk_fig4b" / "tail_r_mean.csv", csv.str());
  bool monotone = true;
  for (std::size_t i = 1; i < radii.size(); ++i) monotone = monotone && radii[i] > radii[i - 1];
  const bool pass = confined > tol::kConfined && monotone;
  return {pass, "N_cyc=14: " + fmt(100 * confined, 4) + "% of the excited weight inside r=" +
                    fmt(tol::kConfineRadius) + " au (limit " + fmt(100 * tol::kConfined) + "%); N_cyc=3 tail <r> " +
                    fmt(radii.front(), 4) + " -> " + fmt(radii.back(), 4) + " au over " + fmt(tol::kTail) +
                    " au, monotone " + (monotone ? "yes" : "no")};
}

// ---------------------------------------------------------------- 9

Outcome cep_structure() {
  beam::PulseConfig cfg;
  double worst_sweep = 0.0;
  double worst_radius = 0.0;
  const auto ref = beam::cep_map(cfg, 20.0, 72);
  for (double radius : {1.0, 5.0, 20.0, 40.0, 60.0}) {
    const auto m = beam::cep_map(cfg, radius, 72);
    const double sweep = m.back().cep - m.front().cep + (m[1].cep - m[0].cep);
    worst_sweep = std::max(worst_sweep, std::abs(sweep - 2.0 * kPi));
    for (std::size_t j = 0; j < m.size(); ++j) worst_radius = std::max(worst_radius, std::abs(m[j].cep - ref[j].cep));
  }
  const bool pass = worst_sweep < tol::kCepSweep && worst_radius < tol::kCepRadius;
  return {pass, "sweep error " + fmt(worst_sweep, 3) + " rad, radius dependence " + fmt(worst_radius, 3) +
                    " rad over r = 1..60 au"};
}

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria 1-9"};
  std::string work = "acceptance_runs";
  std::string configs = OAMION_CONFIG_DIR;
  std::vector<int> only;
  app.add_option("--work-dir", work, "Directory for run artifacts");
  app.add_option("--configs", configs, "Directory holding the bundled run configurations");
  app.add_option("--only", only, "Criteria to evaluate")->delimiter(',')->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(work);

  RunBank bank(work, configs);
  const std::map<int, std::pair<std::string, std::function<Outcome()>>> criteria = {
      {1, {"selection rules H_I", [&] { return verify_part(angular::HamiltonianPart::HI, tol::kRuntimeHI, work); }}},
      {2, {"selection rules H_II", [&] { return verify_part(angular::HamiltonianPart::HII, tol::kRuntimeHII, work); }}},
      {3, {"angular identities", appendix_identities}},
      {4, {"propagator integrity", propagator_integrity}},
      {5, {"spectral compliance", [&] { return spectral_compliance(bank); }}},
      {6, {"OAM transfer", [&] { return oam_transfer(bank); }}},
      {7, {"ionization fractions", [&] { return ionization_fractions(bank); }}},
      {8, {"ponderomotive confinement", [&] { return confinement(bank); }}},
      {9, {"CEP structure", cep_structure}},
  };
  const std::set<int> selected(only.begin(), only.end());
  int failures = 0;
  nlohmann::json results = nlohmann::json::object();
  for (const auto& [id, entry] : criteria) {
    if (!selected.empty() && !selected.contains(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = entry.second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << "criterion " << id << " " << (o.pass ? "PASS" : "FAIL") << " [" << entry.first << "] " << o.detail
              << " (" << fmt(seconds_since(start), 4) << " s)" << std::endl;
    results[std::to_string(id)] = {{"name", entry.first}, {"pass", o.pass}, {"detail", o.detail}};
  }
  write_text(fs::path(work) / "acceptance.json", results.dump(2) + "\n");
  return failures == 0 ? 0 : 1;
}
