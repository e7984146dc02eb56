#pragma once

#include "oamion/tdse/grid.hpp"

namespace oamion::analysis {

using tdse::Wavefunction;

/// ψ = α ψ_ground + δψ with ⟨ground|δψ⟩ = 0.
struct ExcitedSplit {
  Complex alpha;
  Wavefunction excited;
};

/// α = ⟨ground|ψ⟩/⟨ground|ground⟩, δψ = ψ − α ground.
ExcitedSplit split_excited(const Wavefunction& psi, const Wavefunction& ground);

}  // namespace oamion::analysis
