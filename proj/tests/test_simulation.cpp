#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "oamion/analysis/decomposition.hpp"
#include "oamion/analysis/spectrum.hpp"
#include "oamion/beam/vector_potential.hpp"
#include "oamion/tdse/checkpoint.hpp"
#include "oamion/tdse/simulation.hpp"

using namespace oamion;
using namespace oamion::tdse;

namespace {

GridSpec small_grid() { return cube_grid(32, 0.5); }

PropagatorConfig small_config() {
  PropagatorConfig cfg;
  cfg.dt = 0.01;
  cfg.absorber.width = 3.0;
  return cfg;
}

beam::PulseConfig short_pulse(int ell) {
  beam::PulseConfig p;
  p.ell = ell;
  p.n_cyc = 1;
  p.amplitude *= 2.0;
  return p;
}

const Wavefunction& small_ground() {
  static const Wavefunction g = init_ground_state(small_grid(), small_config()).psi;
  return g;
}

}  // namespace

TEST_CASE("run plan covers the window") {
  const GridSpec g = small_grid();
  beam::PulseConfig p;
  const RunPlan a = plan_run(p, g, 0.01, 5.0);
  CHECK(a.t_begin == doctest::Approx(p.window_start(0.0)));
  CHECK(a.t_end == doctest::Approx(p.window_end(0.0) + 5.0));
  CHECK(a.n_steps == static_cast<std::int64_t>(std::ceil((a.t_end - a.t_begin) / 0.01 - 1e-9)));
  CHECK(a.t_begin + a.n_steps * a.dt >= a.t_end - 1e-9);
  p.model = beam::BeamModel::Full;
  p.atom_displacement = {0.0, 0.0, 100.0};
  const RunPlan b = plan_run(p, g, 0.01);
  CHECK(b.t_begin == doctest::Approx(p.window_start(100.0 + g.coordinate(2, 0))));
  CHECK(b.t_end == doctest::Approx(p.window_end(100.0 + g.coordinate(2, g.n[2] - 1))));
  CHECK_THROWS_AS(plan_run(p, g, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(plan_run(p, g, 0.01, -1.0), std::invalid_argument);
}

TEST_CASE("trajectory CSV layout") {
  TrajectoryRecord rec;
  rec.points.push_back({});
  rec.points.back().t = 1.5;
  rec.points.back().L.z = -0.25;
  std::istringstream in(rec.to_csv());
  std::string header;
  std::string row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "t,pop_ground,norm,Lz,x_mean,y_mean,z_mean,absorbed");
  CHECK(row == "1.5,0,0,-0.25,0,0,0,0");
  CHECK(rec.to_csv_extended().rfind("t,step,pop_ground,norm,excited_norm,Lx,Ly,Lz", 0) == 0);
}

TEST_CASE("blow-up detection") {
  Propagator prop(small_grid(), small_config(), short_pulse(1));
  Wavefunction bad = small_ground();
  bad[100] = Complex{std::nan(""), 0.0};
  RunOptions opts;
  try {
    run(prop, small_ground(), bad, opts);
    FAIL("expected NumericalBlowup");
  } catch (const NumericalBlowup& e) {
    CHECK(e.step() == 0);
    const auto j = nlohmann::json::parse(e.diagnostic_json());
    CHECK(j["error"] == "numerical_blowup");
    CHECK(j["norm"] == "non-finite");
  }
  Wavefunction heavy = small_ground();
  heavy *= 1.1;
  CHECK_THROWS_AS(run(prop, small_ground(), heavy, opts), NumericalBlowup);
  opts.record_every = 0;
  CHECK_THROWS_AS(run(prop, small_ground(), small_ground(), opts), std::invalid_argument);
}

TEST_CASE("ponderomotive profile") {
  const GridSpec g = small_grid();
  beam::PulseConfig p;
  const auto u = ponderomotive_profile(p, g);
  REQUIRE(u.size() == g.size());
  for (const auto& [i, j, k] : {std::array{3, 7, 11}, std::array{20, 5, 0}, std::array{16, 16, 31}}) {
    const Vec3 r = g.position(i, j, k);
    const double rho2 = r.x * r.x + r.y * r.y;
    CHECK(u[g.index(i, j, k)] == doctest::Approx(beam::ponderomotive_energy(r, p)).epsilon(1e-14));
    const double c = beam::near_origin_coefficient(p);
    CHECK(u[g.index(i, j, k)] == doctest::Approx(c * c * rho2).epsilon(1e-12));
  }
  p.ell = 0;
  const auto flat = ponderomotive_profile(p, g);
  for (double v : flat) CHECK(v == flat.front());
}

TEST_CASE("bound fraction") {
  Propagator prop(small_grid(), small_config(), short_pulse(1));
  const double ground = bound_fraction(prop, small_ground());
  CHECK(ground > 0.999);
  CHECK(ground <= 1.0 + 1e-12);
  Wavefunction fast = sample(small_grid(), [](double x, double y, double z) {
    return std::exp(-0.5 * (x * x + y * y + z * z) / 1.5) * std::polar(1.0, 2.5 * x);
  });
  fast.normalize();
  CHECK(bound_fraction(prop, fast) < 0.1);
  Wavefunction half = small_ground();
  half *= std::sqrt(0.5);
  CHECK(bound_fraction(prop, half) == doctest::Approx(0.5 * ground).epsilon(1e-6));
  CHECK_THROWS_AS(bound_fraction(prop, half, 0), std::invalid_argument);
}

TEST_CASE("runs are deterministic and consistent with the decomposition") {
  Propagator prop(small_grid(), small_config(), short_pulse(1));
  RunOptions opts;
  opts.record_every = 50;
  opts.tail = 0.5;
  double worst = 0.0;
  opts.observer = [&](const TrajectoryPoint& p, const Wavefunction& psi) {
    const auto split = analysis::split_excited(psi, small_ground());
    worst = std::max(worst, std::abs(std::norm(split.alpha) - p.pop_ground));
    worst = std::max(worst, std::abs(split.excited.norm_squared() - p.excited_norm));
    worst = std::max(worst, std::abs(p.pop_ground + p.excited_norm - p.norm));
  };
  const RunResult a = run(prop, small_ground(), small_ground(), opts);
  CHECK(worst < 1e-8);
  opts.observer = nullptr;
  Propagator again(small_grid(), small_config(), short_pulse(1));
  const RunResult b = run(again, small_ground(), small_ground(), opts);
  CHECK(a.psi.data() == b.psi.data());
  CHECK(a.trajectory.to_csv_extended() == b.trajectory.to_csv_extended());

  const auto& pts = a.trajectory.points;
  const std::int64_t n = a.plan.n_steps;
  CHECK(pts.front().step == 0);
  CHECK(pts.back().step == n);
  CHECK(pts.size() == static_cast<std::size_t>(n / 50 + 1 + (n % 50 ? 1 : 0)));
  CHECK(pts.front().pop_ground == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pts.back().pop_ground < 0.999);
  CHECK(pts.back().norm + pts.back().absorbed == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("ℓ -> −ℓ is the mirror y -> −y") {
  const GridSpec g = small_grid();
  RunOptions opts;
  opts.record_every = 100;
  Propagator plus(g, small_config(), short_pulse(1));
  Propagator minus(g, small_config(), short_pulse(-1));
  const RunResult a = run(plus, small_ground(), small_ground(), opts);
  const RunResult b = run(minus, small_ground(), small_ground(), opts);
  double worst = 0.0;
  double scale = 0.0;
  for (int k = 0; k < g.n[2]; ++k) {
    for (int j = 0; j < g.n[1]; ++j) {
      for (int i = 0; i < g.n[0]; ++i) {
        worst = std::max(worst, std::abs(a.psi.at(i, j, k) - b.psi.at(i, g.n[1] - 1 - j, k)));
        scale = std::max(scale, std::abs(a.psi.at(i, j, k)));
      }
    }
  }
  CHECK(worst < 1e-10 * scale);
  REQUIRE(a.trajectory.points.size() == b.trajectory.points.size());
  for (std::size_t i = 0; i < a.trajectory.points.size(); ++i) {
    CHECK(a.trajectory.points[i].L.z == doctest::Approx(-b.trajectory.points[i].L.z).scale(1e-6).epsilon(1e-8));
  }
  CHECK(std::abs(a.trajectory.back().L.z) > 1e-4);

  const auto sa = analysis::spherical_spectrum(analysis::split_excited(a.psi, small_ground()).excited, 4, 24, 4.0);
  const auto sb = analysis::spherical_spectrum(analysis::split_excited(b.psi, small_ground()).excited, 4, 24, 4.0);
  for (const auto& [idx, p] : sa.entries) {
    CHECK(p == doctest::Approx(sb.probability({idx.L, -idx.M})).scale(1e-12).epsilon(1e-8));
  }
}

TEST_CASE("checkpoints and the one-call driver") {
  const auto path = std::filesystem::temp_directory_path() / "oamion_sim_checkpoint.bin";
  Propagator prop(small_grid(), small_config(), short_pulse(1));
  RunOptions opts;
  opts.record_every = 100;
  opts.checkpoint_every = 200;
  opts.checkpoint_path = path;
  const RunResult r = run(prop, small_ground(), small_ground(), opts);
  const Checkpoint cp = read_checkpoint(path);
  CHECK(cp.step == (r.plan.n_steps / 200) * 200);
  CHECK(cp.t == doctest::Approx(r.plan.t_begin + cp.step * r.plan.dt));
  std::filesystem::remove(path);

  const auto [psi, traj] = run(small_grid(), small_config(), short_pulse(1), 100);
  CHECK(psi.data() == r.psi.data());
  CHECK(traj.to_csv() == r.trajectory.to_csv());
}
