#pragma once

#include "pa/cooper.hpp"

#include <string>
#include <vector>

namespace pa::testkit {

/// lhs <= factor * base^exp, without materializing huge powers.
inline bool within_power_bound(const Integer& lhs, const Integer& factor, const Integer& base,
                               std::size_t exp) {
  if (exp == 0 || base == 1) return lhs <= factor;
  if (base == 0) return lhs <= 0;
  Integer acc = factor;
  for (std::size_t i = 0; i < exp; ++i) {
    if (acc >= lhs && acc >= 0) return true;
    acc *= base;
  }
  return lhs <= acc;
}

/// Names of the per-step growth bounds a Cooper step violates.
inline std::vector<std::string> violated_step_bounds(const EliminationStep& s) {
  std::vector<std::string> bad;
  if (s.method != StepMethod::Cooper) return bad;
  const Metrics& p1 = s.phi1;
  const Metrics& p3 = s.phi3;
  const Metrics& p4 = s.phi4_raw;
  if (p3.length != p1.length + 2) bad.emplace_back("L3 = L1 + 2");
  if (!within_power_bound(p3.max_coeff, 1, p1.max_coeff, p1.length))
    bad.emplace_back("a3 <= a1^L1");
  if (!within_power_bound(p3.max_const, p1.max_const, p1.max_coeff, p1.length))
    bad.emplace_back("b3 <= b1 * a1^L1");
  if (!within_power_bound(Integer(p4.length), Integer(p3.length) * p3.length, p3.max_coeff,
                          p3.length))
    bad.emplace_back("L4 <= a3^L3 * L3^2");
  if (!within_power_bound(p4.max_coeff, 1, p3.max_coeff, p3.length + 1))
    bad.emplace_back("a4 <= a3^(L3+1)");
  if (!within_power_bound(p4.max_const, p3.max_const, p3.max_coeff, p3.length))
    bad.emplace_back("b4 <= b3 * a3^L3");
  return bad;
}

}  // namespace pa::testkit
