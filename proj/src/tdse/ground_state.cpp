#include "oamion/tdse/ground_state.hpp"

#include <fftw3.h>
#include <gsl/gsl_eigen.h>

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

namespace oamion::tdse {
namespace {

/// Smallest eigenpair of a small Hermitian matrix (row-major, dimension m).
std::pair<double, std::vector<Complex>> lowest_eigenpair(const std::vector<Complex>& h, std::size_t m) {
  std::unique_ptr<gsl_matrix_complex, decltype(&gsl_matrix_complex_free)> a(gsl_matrix_complex_alloc(m, m),
                                                                            &gsl_matrix_complex_free);
  std::unique_ptr<gsl_matrix_complex, decltype(&gsl_matrix_complex_free)> v(gsl_matrix_complex_alloc(m, m),
                                                                            &gsl_matrix_complex_free);
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> eval(gsl_vector_alloc(m), &gsl_vector_free);
  std::unique_ptr<gsl_eigen_hermv_workspace, decltype(&gsl_eigen_hermv_free)> ws(gsl_eigen_hermv_alloc(m),
                                                                                 &gsl_eigen_hermv_free);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const Complex c = 0.5 * (h[i * m + j] + std::conj(h[j * m + i]));
      gsl_matrix_complex_set(a.get(), i, j, gsl_complex{{c.real(), c.imag()}});
    }
  }
  gsl_eigen_hermv(a.get(), eval.get(), v.get(), ws.get());
  gsl_eigen_hermv_sort(eval.get(), v.get(), GSL_EIGEN_SORT_VAL_ASC);
  std::vector<Complex> vec(m);
  for (std::size_t i = 0; i < m; ++i) {
    const gsl_complex c = gsl_matrix_complex_get(v.get(), i, 0);
    vec[i] = {GSL_REAL(c), GSL_IMAG(c)};
  }
  return {gsl_vector_get(eval.get(), 0), vec};
}

/// Kinetic-energy preconditioner (−½∇² + σ)⁻¹ by full 3D FFT.
class Preconditioner {
 public:
  Preconditioner(const GridSpec& grid, const AxisTransforms& transforms) : grid_(grid), buffer_(grid.size()) {
    const std::size_t nx = static_cast<std::size_t>(grid.n[0]);
    const std::size_t ny = static_cast<std::size_t>(grid.n[1]);
    const std::size_t nz = static_cast<std::size_t>(grid.n[2]);
    k2_.resize(grid.size());
    const auto& kx = transforms.wavenumbers(0);
    const auto& ky = transforms.wavenumbers(1);
    const auto& kz = transforms.wavenumbers(2);
    for (std::size_t k = 0; k < nz; ++k) {
      for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) k2_[(k * ny + j) * nx + i] = 0.5 * (kx[i] * kx[i] + ky[j] * ky[j] + kz[k] * kz[k]);
      }
    }
    auto* buf = reinterpret_cast<fftw_complex*>(buffer_.data());
    forward_ = fftw_plan_dft_3d(grid.n[2], grid.n[1], grid.n[0], buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_3d(grid.n[2], grid.n[1], grid.n[0], buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!forward_ || !backward_) throw std::runtime_error("FFTW plan creation failed");
  }
  ~Preconditioner() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }
  Preconditioner(const Preconditioner&) = delete;
  Preconditioner& operator=(const Preconditioner&) = delete;

  void apply(const Wavefunction& in, Wavefunction& out, double shift) {
    buffer_ = in.data();
    fftw_execute(forward_);
    const double inv_n = 1.0 / static_cast<double>(buffer_.size());
    for (std::size_t i = 0; i < buffer_.size(); ++i) buffer_[i] *= inv_n / (k2_[i] + shift);
    fftw_execute(backward_);
    if (!(out.grid() == grid_)) out = Wavefunction(grid_);
    out.data() = buffer_;
  }

 private:
  GridSpec grid_;
  std::vector<Complex> buffer_;
  std::vector<double> k2_;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

/// a ← (a − Σ c_b b) / ‖…‖ with the same combination on the H-images; returns the norm before scaling.
double orthonormalize(Wavefunction& a, Wavefunction& ha, const std::vector<const Wavefunction*>& basis,
                      const std::vector<const Wavefunction*>& images) {
  for (std::size_t b = 0; b < basis.size(); ++b) {
    const Complex c = basis[b]->inner(a);
    a.axpy(-c, *basis[b]);
    ha.axpy(-c, *images[b]);
  }
  const double nrm = a.norm();
  if (nrm > 0.0) {
    a *= 1.0 / nrm;
    ha *= 1.0 / nrm;
  }
  return nrm;
}

void imaginary_time_step(const Propagator& prop, Wavefunction& psi, const std::vector<double>& decay_half_v,
                         const std::array<std::vector<Complex>, 3>& decay) {
  auto& d = psi.data();
  const std::size_t n = d.size();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) d[i] *= decay_half_v[i];
  for (int a = 0; a < 3; ++a) prop.transforms().apply(d, a, decay[static_cast<std::size_t>(a)]);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) d[i] *= decay_half_v[i];
  psi.normalize();
}

}  // namespace

Wavefunction hydrogen_seed(const GridSpec& grid) {
  Wavefunction psi = sample(grid, [](double x, double y, double z) {
    return Complex{std::exp(-std::sqrt(x * x + y * y + z * z)) / std::sqrt(kPi), 0.0};
  });
  psi.normalize();
  return psi;
}

GroundState init_ground_state(const GridSpec& grid, const PropagatorConfig& config, const GroundStateOptions& options) {
  beam::PulseConfig dark;
  dark.amplitude = 0.0;
  const Propagator prop(grid, config, dark);
  return init_ground_state(prop, options);
}

GroundState init_ground_state(const Propagator& prop, const GroundStateOptions& options) {
  const GridSpec& grid = prop.grid();
  GroundState out;
  const Wavefunction seed = hydrogen_seed(grid);
  Wavefunction x = seed;

  std::vector<double> decay_half_v(prop.potential().size());
  for (std::size_t i = 0; i < decay_half_v.size(); ++i) decay_half_v[i] = std::exp(-0.5 * options.tau * prop.potential()[i]);
  std::array<std::vector<Complex>, 3> decay;
  for (int a = 0; a < 3; ++a) {
    decay[static_cast<std::size_t>(a)] = kinetic_decay(prop.transforms().wavenumbers(a), options.tau);
  }
  double energy = prop.energy(x);
  bool relaxed = false;
  for (int s = 0; s < options.max_relax_steps; ++s) {
    imaginary_time_step(prop, x, decay_half_v, decay);
    const double e = prop.energy(x);
    out.relax_steps = s + 1;
    const double change = std::abs(e - energy);
    energy = e;
    if (change < options.relax_tolerance) {
      relaxed = true;
      break;
    }
  }
  if (!relaxed) {
    throw std::runtime_error("imaginary-time relaxation did not converge within " +
                             std::to_string(options.max_relax_steps) + " steps");
  }

  Preconditioner precond(grid, prop.transforms());
  Wavefunction hx(grid);
  prop.apply_hamiltonian(x, hx);
  double lambda = x.inner(hx).real();
  Wavefunction w(grid);
  Wavefunction hw(grid);
  Wavefunction p(grid);
  Wavefunction hp(grid);
  bool have_p = false;
  bool converged = false;
  for (int it = 0; it < options.max_polish_iterations; ++it) {
    Wavefunction r = hx;
    r.axpy(-lambda, x);
    out.residual = r.norm();
    out.polish_iterations = it;
    if (out.residual < options.residual_tolerance) {
      converged = true;
      break;
    }
    precond.apply(r, w, std::abs(lambda));
    prop.apply_hamiltonian(w, hw);
    std::vector<const Wavefunction*> basis{&x};
    std::vector<const Wavefunction*> images{&hx};
    orthonormalize(w, hw, basis, images);
    basis.push_back(&w);
    images.push_back(&hw);
    bool use_p = have_p;
    if (use_p) use_p = orthonormalize(p, hp, basis, images) > 1e-12;
    if (use_p) {
      basis.push_back(&p);
      images.push_back(&hp);
    }
    const std::size_t m = basis.size();
    std::vector<Complex> h(m * m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) h[i * m + j] = basis[i]->inner(*images[j]);
    }
    const auto [value, c] = lowest_eigenpair(h, m);
    Wavefunction x_new = x;
    x_new *= c[0];
    x_new.axpy(c[1], w);
    Wavefunction hx_new = hx;
    hx_new *= c[0];
    hx_new.axpy(c[1], hw);
    Wavefunction p_new = w;
    p_new *= c[1];
    Wavefunction hp_new = hw;
    hp_new *= c[1];
    if (use_p) {
      x_new.axpy(c[2], p);
      hx_new.axpy(c[2], hp);
      p_new.axpy(c[2], p);
      hp_new.axpy(c[2], hp);
    }
    const double nrm = x_new.norm();
    x_new *= 1.0 / nrm;
    hx_new *= 1.0 / nrm;
    x = std::move(x_new);
    hx = std::move(hx_new);
    p = std::move(p_new);
    hp = std::move(hp_new);
    have_p = true;
    lambda = value;
  }
  if (!converged) {
    throw std::runtime_error("ground-state polish did not reach residual " +
                             std::to_string(options.residual_tolerance) + " (last " + std::to_string(out.residual) +
                             ")");
  }
  // Fix the global phase so the state is real and positive at its maximum.
  std::size_t peak = 0;
  for (std::size_t i = 0; i < x.data().size(); ++i) {
    if (std::norm(x[i]) > std::norm(x[peak])) peak = i;
  }
  x *= std::conj(x[peak]) / std::abs(x[peak]);
  x.normalize();
  out.energy = prop.energy(x);
  out.seed_overlap = std::abs(seed.inner(x));
  out.psi = std::move(x);
  return out;
}

}  // namespace oamion::tdse
