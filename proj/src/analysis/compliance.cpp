#include "oamion/analysis/compliance.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace oamion::analysis {

std::set<HarmonicIndex> closure_set(int ell, const Polarization& pol, int order) {
  if (order < 0) throw std::invalid_argument("closure order must be non-negative");
  std::vector<angular::SelectionRuleSet> rules;
  for (auto part : {angular::HamiltonianPart::HI, angular::HamiltonianPart::HII, angular::HamiltonianPart::HIIStatic}) {
    rules.push_back(angular::derive_selection_rules(ell, pol, part));
  }
  std::set<HarmonicIndex> reached{{0, 0}};
  std::set<HarmonicIndex> frontier = reached;
  for (int step = 0; step < order; ++step) {
    std::set<HarmonicIndex> next;
    for (const auto& from : frontier) {
      for (const auto& rule : rules) {
        for (int dm : rule.allowed_delta_M) {
          for (int sign : {1, -1}) {
            for (int dl = -rule.max_abs_delta_L; dl <= rule.max_abs_delta_L; ++dl) {
              const HarmonicIndex to{from.L + dl, from.M + sign * dm};
              if (!to.valid()) continue;
              const bool ok = sign > 0 ? rule.allows(from, to) : rule.allows_conjugate(from, to);
              if (ok && !reached.contains(to)) next.insert(to);
            }
          }
        }
      }
    }
    reached.insert(next.begin(), next.end());
    frontier = std::move(next);
  }
  return reached;
}

double ComplianceReport::forbidden_fraction() const {
  const double t = total();
  return t > 0.0 ? forbidden_weight / t : 0.0;
}

double ComplianceReport::max_forbidden() const {
  double out = 0.0;
  for (const auto& c : channels) {
    if (!c.allowed) out = std::max(out, c.probability);
  }
  return out;
}

std::string ComplianceReport::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : channels) list.push_back({{"L", c.index.L}, {"M", c.index.M}, {"P", c.probability}, {"allowed", c.allowed}});
  nlohmann::json closure_list = nlohmann::json::array();
  for (const auto& c : closure) closure_list.push_back({c.L, c.M});
  nlohmann::json out = {{"ell", ell},
                        {"polarization", pol.name()},
                        {"order", order},
                        {"allowed_weight", allowed_weight},
                        {"forbidden_weight", forbidden_weight},
                        {"forbidden_fraction", forbidden_fraction()},
                        {"closure", closure_list},
                        {"channels", list}};
  return out.dump(2);
}

ComplianceReport compliance(const SphericalSpectrum& spectrum, int ell, const Polarization& pol, int order) {
  ComplianceReport report;
  report.ell = ell;
  report.pol = pol;
  report.order = order;
  report.closure = closure_set(ell, pol, order);
  for (const auto& [index, p] : spectrum.entries) {
    const bool allowed = report.closure.contains(index);
    report.channels.push_back({index, p, allowed});
    (allowed ? report.allowed_weight : report.forbidden_weight) += p;
  }
  return report;
}

}  // namespace oamion::analysis
