#include "oamion/tdse/simulation.hpp"

#include <gsl/gsl_eigen.h>
#include <gsl/gsl_matrix.h>
#include <gsl/gsl_vector.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "oamion/analysis/decomposition.hpp"
#include "oamion/analysis/observables.hpp"
#include "oamion/beam/vector_potential.hpp"
#include "oamion/tdse/checkpoint.hpp"

namespace oamion::tdse {
namespace {

std::string blowup_message(double t, std::int64_t step, double norm) {
  std::ostringstream os;
  os << "numerical blow-up at t = " << t << " (step " << step << "), norm = " << norm;
  return os.str();
}

TrajectoryPoint observe(const Propagator& prop, const Wavefunction& ground, const Wavefunction& psi, double t,
                        std::int64_t step, double absorbed, bool with_oam) {
  TrajectoryPoint p;
  p.t = t;
  p.step = step;
  p.norm = psi.norm_squared();
  p.absorbed = absorbed;
  if (!std::isfinite(p.norm) || p.norm > 1.0 + 1e-6) throw NumericalBlowup(t, step, p.norm);
  const analysis::ExcitedSplit split = analysis::split_excited(psi, ground);
  p.pop_ground = std::norm(split.alpha);
  p.excited_norm = split.excited.norm_squared();
  if (p.excited_norm > 1e-14) {
    p.mean = analysis::position_expectation(split.excited);
    p.r_mean = analysis::mean_radius(split.excited);
  }
  if (with_oam && p.norm > 0.0) {
    p.L = analysis::kinetic_oam(psi, prop.transforms(), prop.fields(), t, prop.config().charge);
  }
  return p;
}

}  // namespace

NumericalBlowup::NumericalBlowup(double t, std::int64_t step, double norm)
    : std::runtime_error(blowup_message(t, step, norm)), t_(t), step_(step), norm_(norm) {}

std::string NumericalBlowup::diagnostic_json() const {
  nlohmann::json j = {{"error", "numerical_blowup"},
                      {"t", t_},
                      {"step", step_},
                      {"norm", std::isfinite(norm_) ? nlohmann::json(norm_) : nlohmann::json("non-finite")}};
  return j.dump(2);
}

std::string TrajectoryRecord::to_csv() const {
  std::ostringstream os;
  os.precision(12);
  os << "t,pop_ground,norm,Lz,x_mean,y_mean,z_mean,absorbed\n";
  for (const auto& p : points) {
    os << p.t << ',' << p.pop_ground << ',' << p.norm << ',' << p.L.z << ',' << p.mean.x << ',' << p.mean.y << ','
       << p.mean.z << ',' << p.absorbed << '\n';
  }
  return os.str();
}

std::string TrajectoryRecord::to_csv_extended() const {
  std::ostringstream os;
  os.precision(12);
  os << "t,step,pop_ground,norm,excited_norm,Lx,Ly,Lz,x_mean,y_mean,z_mean,r_mean,absorbed\n";
  for (const auto& p : points) {
    os << p.t << ',' << p.step << ',' << p.pop_ground << ',' << p.norm << ',' << p.excited_norm << ',' << p.L.x << ','
       << p.L.y << ',' << p.L.z << ',' << p.mean.x << ',' << p.mean.y << ',' << p.mean.z << ',' << p.r_mean << ','
       << p.absorbed << '\n';
  }
  return os.str();
}

RunPlan plan_run(const beam::PulseConfig& pulse, const GridSpec& grid, double dt, double tail) {
  if (!(dt > 0.0)) throw std::invalid_argument("run time step must be positive");
  if (tail < 0.0) throw std::invalid_argument("tail must be non-negative");
  RunPlan plan;
  plan.dt = dt;
  if (pulse.model == beam::BeamModel::NearOrigin) {
    plan.t_begin = pulse.window_start(0.0);
    plan.t_end = pulse.window_end(0.0) + tail;
  } else {
    const double z_lo = grid.coordinate(2, 0) + pulse.atom_displacement.z;
    const double z_hi = grid.coordinate(2, grid.n[2] - 1) + pulse.atom_displacement.z;
    plan.t_begin = pulse.window_start(z_lo);
    plan.t_end = pulse.window_end(z_hi) + tail;
  }
  plan.n_steps = static_cast<std::int64_t>(std::ceil((plan.t_end - plan.t_begin) / dt - 1e-9));
  return plan;
}

RunResult run(Propagator& prop, const Wavefunction& ground, const Wavefunction& psi0, const RunOptions& options) {
  if (options.record_every < 1) throw std::invalid_argument("record_every must be at least 1");
  require_same_grid(ground, psi0);
  if (!(psi0.grid() == prop.grid())) throw std::invalid_argument("initial state grid does not match the propagator");

  RunResult result;
  result.plan = plan_run(prop.pulse(), prop.grid(), prop.config().dt, options.tail);
  result.psi = psi0;
  Wavefunction& psi = result.psi;
  const RunPlan& plan = result.plan;

  double absorbed = 0.0;
  auto record = [&](std::int64_t s) {
    const double t = plan.t_begin + static_cast<double>(s) * plan.dt;
    TrajectoryPoint p = observe(prop, ground, psi, t, s, absorbed, options.record_oam);
    if (options.observer) options.observer(p, psi);
    result.trajectory.points.push_back(p);
  };

  record(0);
  for (std::int64_t s = 0; s < plan.n_steps; ++s) {
    absorbed += prop.step(psi, plan.t_begin + static_cast<double>(s) * plan.dt, plan.dt);
    const std::int64_t done = s + 1;
    if (done % options.record_every == 0 || done == plan.n_steps) {
      record(done);
    } else if (!std::isfinite(std::norm(psi[psi.data().size() / 2]))) {
      throw NumericalBlowup(plan.t_begin + static_cast<double>(done) * plan.dt, done, psi.norm_squared());
    }
    if (options.checkpoint_every > 0 && done % options.checkpoint_every == 0 && !options.checkpoint_path.empty()) {
      write_checkpoint(options.checkpoint_path, {psi, plan.t_begin + static_cast<double>(done) * plan.dt, done});
    }
  }
  return result;
}

std::pair<Wavefunction, TrajectoryRecord> run(const GridSpec& grid, const PropagatorConfig& prop_cfg,
                                              const beam::PulseConfig& pulse, int record_every) {
  Propagator prop(grid, prop_cfg, pulse);
  const GroundState ground = init_ground_state(prop);
  RunOptions options;
  options.record_every = record_every;
  RunResult r = run(prop, ground.psi, ground.psi, options);
  return {std::move(r.psi), std::move(r.trajectory)};
}

std::vector<double> ponderomotive_profile(const beam::PulseConfig& pulse, const GridSpec& grid, double charge) {
  std::vector<double> out(grid.size());
#pragma omp parallel for schedule(static)
  for (int k = 0; k < grid.n[2]; ++k) {
    for (int j = 0; j < grid.n[1]; ++j) {
      for (int i = 0; i < grid.n[0]; ++i) {
        out[grid.index(i, j, k)] = beam::ponderomotive_energy(grid.position(i, j, k), pulse, charge);
      }
    }
  }
  return out;
}

double bound_fraction(const Propagator& prop, const Wavefunction& psi, int iterations) {
  if (iterations < 1) throw std::invalid_argument("Lanczos needs at least one iteration");
  const double weight = psi.norm_squared();
  if (!(weight > 0.0)) return 0.0;

  Wavefunction v = psi;
  v *= Complex{1.0 / std::sqrt(weight), 0.0};
  Wavefunction v_prev(psi.grid());
  Wavefunction w(psi.grid());
  std::vector<double> alpha;
  std::vector<double> beta;
  double beta_prev = 0.0;
  for (int it = 0; it < iterations; ++it) {
    prop.apply_hamiltonian(v, w);
    const double a = v.inner(w).real();
    alpha.push_back(a);
    w.axpy(Complex{-a, 0.0}, v);
    if (it > 0) w.axpy(Complex{-beta_prev, 0.0}, v_prev);
    const double b = w.norm();
    if (it + 1 == iterations || b < 1e-10) break;
    beta.push_back(b);
    std::swap(v_prev, v);
    std::swap(v, w);
    v *= Complex{1.0 / b, 0.0};
    beta_prev = b;
  }

  const std::size_t m = alpha.size();
  std::unique_ptr<gsl_matrix, decltype(&gsl_matrix_free)> t(gsl_matrix_calloc(m, m), &gsl_matrix_free);
  for (std::size_t i = 0; i < m; ++i) {
    gsl_matrix_set(t.get(), i, i, alpha[i]);
    if (i + 1 < m) {
      gsl_matrix_set(t.get(), i, i + 1, beta[i]);
      gsl_matrix_set(t.get(), i + 1, i, beta[i]);
    }
  }
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> eval(gsl_vector_alloc(m), &gsl_vector_free);
  std::unique_ptr<gsl_matrix, decltype(&gsl_matrix_free)> evec(gsl_matrix_alloc(m, m), &gsl_matrix_free);
  std::unique_ptr<gsl_eigen_symmv_workspace, decltype(&gsl_eigen_symmv_free)> ws(gsl_eigen_symmv_alloc(m),
                                                                                  &gsl_eigen_symmv_free);
  gsl_eigen_symmv(t.get(), eval.get(), evec.get(), ws.get());
  double bound = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (gsl_vector_get(eval.get(), i) < 0.0) {
      const double c = gsl_matrix_get(evec.get(), 0, i);
      bound += c * c;
    }
  }
  return std::min(1.0, bound) * weight;
}

}  // namespace oamion::tdse
