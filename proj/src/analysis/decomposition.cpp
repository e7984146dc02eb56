#include "oamion/analysis/decomposition.hpp"

#include <stdexcept>

namespace oamion::analysis {

ExcitedSplit split_excited(const Wavefunction& psi, const Wavefunction& ground) {
  tdse::require_same_grid(psi, ground);
  const double gg = ground.norm_squared();
  if (!(gg > 0.0)) throw std::invalid_argument("ground state has zero norm");
  ExcitedSplit out{ground.inner(psi) / gg, psi};
  out.excited.axpy(-out.alpha, ground);
  // One re-projection removes the rounding residue of the first pass.
  const Complex residue = ground.inner(out.excited) / gg;
  out.excited.axpy(-residue, ground);
  out.alpha += residue;
  return out;
}

}  // namespace oamion::analysis
