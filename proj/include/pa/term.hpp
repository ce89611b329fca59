#pragma once

#include "pa/integer.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pa {

/// Interned integer variable. Identity is the interned id; the display name
/// is unique process-wide, so two variables with the same name are the same
/// variable.
class Var {
 public:
  Var() = default;

  static Var named(std::string_view name);
  /// A variable whose name does not collide with any interned so far,
  /// derived from `base` by appending primes and a counter.
  static Var fresh(std::string_view base);

  [[nodiscard]] std::uint32_t id() const { return id_; }
  [[nodiscard]] const std::string& name() const;

  friend bool operator==(Var a, Var b) = default;
  friend auto operator<=>(Var a, Var b) = default;

 private:
  explicit Var(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = 0;
};

/// Values for variables; lookups are by variable id.
class Assignment {
 public:
  Assignment() = default;

  void set(Var v, Integer value);
  void erase(Var v);
  [[nodiscard]] const Integer* find(Var v) const;
  [[nodiscard]] const Integer& at(Var v) const;
  [[nodiscard]] bool contains(Var v) const { return find(v) != nullptr; }

 private:
  std::vector<std::optional<Integer>> values_;
};

/// sum(coeff_i * var_i) + constant with sorted, zero-free coefficients.
class LinearTerm {
 public:
  using Monomial = std::pair<Var, Integer>;

  LinearTerm() = default;
  explicit LinearTerm(Integer constant) : constant_(std::move(constant)) {}
  LinearTerm(Var v, Integer coeff, Integer constant = 0);

  /// Builds from unsorted monomials; duplicates are summed, zeros dropped.
  static LinearTerm from(std::vector<Monomial> monomials, Integer constant);

  [[nodiscard]] const std::vector<Monomial>& monomials() const { return coeffs_; }
  [[nodiscard]] const Integer& constant() const { return constant_; }
  [[nodiscard]] Integer coefficient(Var v) const;
  [[nodiscard]] bool mentions(Var v) const;
  [[nodiscard]] bool is_constant() const { return coeffs_.empty(); }

  /// gcd of the variable coefficients (0 for a constant term).
  [[nodiscard]] Integer content() const;
  [[nodiscard]] Integer max_abs_coefficient() const;

  LinearTerm& operator+=(const LinearTerm& other);
  LinearTerm& operator-=(const LinearTerm& other);
  LinearTerm& operator*=(const Integer& factor);
  LinearTerm& operator+=(const Integer& c) {
    constant_ += c;
    return *this;
  }
  LinearTerm& operator-=(const Integer& c) {
    constant_ -= c;
    return *this;
  }
  [[nodiscard]] LinearTerm operator-() const;

  friend LinearTerm operator+(LinearTerm a, const LinearTerm& b) { return a += b; }
  friend LinearTerm operator-(LinearTerm a, const LinearTerm& b) { return a -= b; }
  friend LinearTerm operator*(LinearTerm a, const Integer& k) { return a *= k; }
  friend LinearTerm operator*(const Integer& k, LinearTerm a) { return a *= k; }
  friend LinearTerm operator+(LinearTerm a, const Integer& c) { return a += c; }
  friend LinearTerm operator-(LinearTerm a, const Integer& c) { return a -= c; }

  /// Replaces v by t (v := t).
  [[nodiscard]] LinearTerm substitute(Var v, const LinearTerm& t) const;
  /// Drops the v monomial.
  [[nodiscard]] LinearTerm without(Var v) const;
  /// Divides every coefficient and the constant exactly by d.
  [[nodiscard]] LinearTerm divided_exactly(const Integer& d) const;
  /// Same monomials, constant replaced.
  [[nodiscard]] LinearTerm with_constant(Integer c) const;

  /// Throws std::out_of_range when a mentioned variable is unassigned.
  [[nodiscard]] Integer evaluate(const Assignment& values) const;

  [[nodiscard]] std::string str() const;

  friend bool operator==(const LinearTerm& a, const LinearTerm& b) = default;
  /// Total order: monomials lexicographically, then constant.
  friend std::strong_ordering compare(const LinearTerm& a, const LinearTerm& b);
  /// Order ignoring constants; equal iff same monomials.
  friend std::strong_ordering compare_linear_part(const LinearTerm& a,
                                                  const LinearTerm& b);

  [[nodiscard]] std::size_t hash() const;

 private:
  std::vector<Monomial> coeffs_;
  Integer constant_ = 0;
};

std::strong_ordering compare(const Integer& a, const Integer& b);

}  // namespace pa

template <>
struct std::hash<pa::Var> {
  std::size_t operator()(pa::Var v) const noexcept { return v.id(); }
};
