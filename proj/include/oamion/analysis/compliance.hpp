#pragma once

#include <set>
#include <string>
#include <vector>

#include "oamion/analysis/spectrum.hpp"
#include "oamion/angular/selection_rules.hpp"

namespace oamion::analysis {

using angular::Polarization;

/// Channels reachable from (0, 0) in at most `order` transitions, each one an
/// absorption (ΔM) or emission (−ΔM) under HI, HII or the static A² well.
std::set<HarmonicIndex> closure_set(int ell, const Polarization& pol, int order);

struct ChannelClass {
  HarmonicIndex index;
  double probability = 0.0;
  bool allowed = false;
};

struct ComplianceReport {
  int ell = 0;
  Polarization pol{};
  int order = 0;
  std::set<HarmonicIndex> closure;
  std::vector<ChannelClass> channels;
  double allowed_weight = 0.0;
  double forbidden_weight = 0.0;

  double total() const { return allowed_weight + forbidden_weight; }
  /// forbidden / total, 0 for an empty spectrum.
  double forbidden_fraction() const;
  /// Largest probability among forbidden channels.
  double max_forbidden() const;
  std::string to_json() const;
};

/// Classifies every spectrum channel against closure_set(ell, pol, order).
/// order = 0 leaves only (0, 0) allowed.
ComplianceReport compliance(const SphericalSpectrum& spectrum, int ell, const Polarization& pol, int order);

}  // namespace oamion::analysis
