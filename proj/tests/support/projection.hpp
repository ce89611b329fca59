#pragma once

#include "pa/dnf.hpp"

#include <optional>

namespace pa::testkit {

/// Completes `a` with auxiliary values by searching, congruence by
/// congruence, over a window that contains every possible solution for
/// original variables in [-box, box]^d.
inline bool completes(const LinearSystem& sys, const Conjunct& conj, Assignment a, long box) {
  std::size_t next = sys.original;
  for (const auto& c : conj.congs) {
    if (c.modulus == 1) continue;
    Integer reach = abs(c.term.constant()) + 2 * c.modulus;
    for (const auto& [x, k] : c.term.monomials()) reach += abs(k) * box;
    const long limit = static_cast<long>(reach / c.modulus) + 1;
    Var z = sys.vars[next];
    std::optional<Var> r;
    if (c.negated) r = sys.vars[next + 1];
    next += c.negated ? 2 : 1;

    auto own_rows_hold = [&] {
      for (const auto& row : sys.rows) {
        bool own = row.mentions(z) || (r && row.mentions(*r));
        if (own && row.evaluate(a) > 0) return false;
      }
      return true;
    };
    bool found = false;
    for (long zv = -limit; zv <= limit && !found; ++zv) {
      a.set(z, zv);
      if (!r) {
        found = own_rows_hold();
        continue;
      }
      Integer b = mod_floor(-c.term.constant(), c.modulus);
      for (Integer rv = b + 1; rv <= b + c.modulus - 1 && !found; ++rv) {
        a.set(*r, rv);
        found = own_rows_hold();
      }
    }
    if (!found) return false;
  }
  return sys.satisfied_by(a);
}

}  // namespace pa::testkit
