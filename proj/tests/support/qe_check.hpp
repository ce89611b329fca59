#pragma once

#include "pa/cooper.hpp"
#include "support/bounded_eval.hpp"

#include <optional>
#include <sstream>
#include <string>

namespace pa::testkit {

/// Compares eliminate_all(phi) with BoundedEvaluator on every point of
/// [-box, box]^d over the free variables. Returns a description of the
/// first disagreement.
inline std::optional<std::string> check_elimination(const Formula& phi, const Formula& qf,
                                                    long box) {
  BoundedEvaluator oracle(phi);
  BoundedEvaluator result(qf);
  if (!oracle.fast()) return "oracle formula does not fit in 64 bits";
  std::vector<Var> free = free_variables(phi);
  for (Var v : free_variables(qf)) {
    if (std::find(free.begin(), free.end(), v) == free.end())
      return "eliminated formula mentions new variable " + v.name();
  }
  std::vector<std::int64_t> values(std::max(oracle.slots(), result.slots()), 0);
  std::optional<std::string> failure;
  auto check = [&](const Assignment& a) {
    bool expected = oracle(values);
    bool got = result.fast() ? result(values) : evaluate(qf, a);
    if (expected == got) return true;
    std::ostringstream msg;
    msg << "mismatch at";
    for (Var v : free) msg << " " << v.name() << "=" << values[v.id()];
    msg << ": expected " << expected << ", eliminated " << got;
    failure = msg.str();
    return false;
  };
  if (free.empty()) {
    check(Assignment{});
    return failure;
  }
  Assignment a;
  std::vector<long> cur(free.size(), -box);
  for (std::size_t i = 0; i < free.size(); ++i) {
    values[free[i].id()] = -box;
    a.set(free[i], -box);
  }
  for (;;) {
    if (!check(a)) return failure;
    std::size_t i = 0;
    for (; i < free.size(); ++i) {
      long next = cur[i] < box ? cur[i] + 1 : -box;
      cur[i] = next;
      values[free[i].id()] = next;
      a.set(free[i], next);
      if (next != -box) break;
    }
    if (i == free.size()) return std::nullopt;
  }
}

}  // namespace pa::testkit
