#include "pa/term.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace pa {

namespace {

class VarPool {
 public:
  VarPool() { names_.emplace_back("<none>"); }

  std::uint32_t intern(std::string_view name) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    return intern_locked(std::string(name));
  }

  std::uint32_t fresh(std::string_view base) {
    std::unique_lock lock(mutex_);
    std::string stem(base);
    // Strip an earlier fresh suffix so repeated freshening stays readable.
    if (auto pos = stem.find('\''); pos != std::string::npos) stem.resize(pos);
    if (stem.empty()) stem = "v";
    for (;;) {
      std::string candidate = stem + "'" + std::to_string(++counter_);
      if (!ids_.contains(candidate)) return intern_locked(std::move(candidate));
    }
  }

  const std::string& name(std::uint32_t id) const {
    std::shared_lock lock(mutex_);
    return names_.at(id);
  }

 private:
  std::uint32_t intern_locked(std::string name) {
    if (auto it = ids_.find(name); it != ids_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(names_.size());
    names_.push_back(name);
    ids_.emplace(std::move(name), id);
    return id;
  }

  mutable std::shared_mutex mutex_;
  std::deque<std::string> names_;  // deque: stable references for name()
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::uint64_t counter_ = 0;
};

VarPool& pool() {
  static VarPool instance;
  return instance;
}

}  // namespace

Var Var::named(std::string_view name) { return Var(pool().intern(name)); }

Var Var::fresh(std::string_view base) { return Var(pool().fresh(base)); }

const std::string& Var::name() const { return pool().name(id_); }

void Assignment::set(Var v, Integer value) {
  if (values_.size() <= v.id()) values_.resize(v.id() + 1);
  values_[v.id()] = std::move(value);
}

void Assignment::erase(Var v) {
  if (v.id() < values_.size()) values_[v.id()].reset();
}

const Integer* Assignment::find(Var v) const {
  if (v.id() >= values_.size() || !values_[v.id()]) return nullptr;
  return &*values_[v.id()];
}

const Integer& Assignment::at(Var v) const {
  const Integer* value = find(v);
  if (value == nullptr) throw std::out_of_range("unassigned variable " + v.name());
  return *value;
}

std::strong_ordering compare(const Integer& a, const Integer& b) {
  int c = a.compare(b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

LinearTerm::LinearTerm(Var v, Integer coeff, Integer constant)
    : constant_(std::move(constant)) {
  if (coeff != 0) coeffs_.emplace_back(v, std::move(coeff));
}

LinearTerm LinearTerm::from(std::vector<Monomial> monomials, Integer constant) {
  std::sort(monomials.begin(), monomials.end(),
            [](const Monomial& a, const Monomial& b) { return a.first < b.first; });
  LinearTerm t(std::move(constant));
  for (auto& [v, c] : monomials) {
    if (!t.coeffs_.empty() && t.coeffs_.back().first == v) {
      t.coeffs_.back().second += c;
      if (t.coeffs_.back().second == 0) t.coeffs_.pop_back();
    } else if (c != 0) {
      t.coeffs_.emplace_back(v, std::move(c));
    }
  }
  return t;
}

Integer LinearTerm::coefficient(Var v) const {
  auto it = std::lower_bound(coeffs_.begin(), coeffs_.end(), v,
                             [](const Monomial& m, Var key) { return m.first < key; });
  if (it != coeffs_.end() && it->first == v) return it->second;
  return 0;
}

bool LinearTerm::mentions(Var v) const {
  auto it = std::lower_bound(coeffs_.begin(), coeffs_.end(), v,
                             [](const Monomial& m, Var key) { return m.first < key; });
  return it != coeffs_.end() && it->first == v;
}

Integer LinearTerm::content() const {
  Integer g = 0;
  for (const auto& [v, c] : coeffs_) {
    g = gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

Integer LinearTerm::max_abs_coefficient() const {
  Integer m = 0;
  for (const auto& [v, c] : coeffs_) m = std::max(m, abs(c));
  return m;
}

namespace {

// Merges two sorted monomial lists: out = a + sign * b.
std::vector<LinearTerm::Monomial> merge(const std::vector<LinearTerm::Monomial>& a,
                                        const std::vector<LinearTerm::Monomial>& b,
                                        bool subtract) {
  std::vector<LinearTerm::Monomial> out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.emplace_back(j->first, subtract ? Integer(-j->second) : j->second);
      ++j;
    } else {
      Integer c = subtract ? Integer(i->second - j->second) : Integer(i->second + j->second);
      if (c != 0) out.emplace_back(i->first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

LinearTerm& LinearTerm::operator+=(const LinearTerm& other) {
  coeffs_ = merge(coeffs_, other.coeffs_, false);
  constant_ += other.constant_;
  return *this;
}

LinearTerm& LinearTerm::operator-=(const LinearTerm& other) {
  coeffs_ = merge(coeffs_, other.coeffs_, true);
  constant_ -= other.constant_;
  return *this;
}

LinearTerm& LinearTerm::operator*=(const Integer& factor) {
  if (factor == 0) {
    coeffs_.clear();
    constant_ = 0;
    return *this;
  }
  for (auto& [v, c] : coeffs_) c *= factor;
  constant_ *= factor;
  return *this;
}

LinearTerm LinearTerm::operator-() const {
  LinearTerm t = *this;
  for (auto& [v, c] : t.coeffs_) c = -c;
  t.constant_ = -t.constant_;
  return t;
}

LinearTerm LinearTerm::substitute(Var v, const LinearTerm& t) const {
  Integer a = coefficient(v);
  if (a == 0) return *this;
  LinearTerm rest = without(v);
  rest += t * a;
  return rest;
}

LinearTerm LinearTerm::without(Var v) const {
  LinearTerm t;
  t.constant_ = constant_;
  t.coeffs_.reserve(coeffs_.size());
  for (const auto& m : coeffs_)
    if (m.first != v) t.coeffs_.push_back(m);
  return t;
}

LinearTerm LinearTerm::divided_exactly(const Integer& d) const {
  LinearTerm t = *this;
  for (auto& [v, c] : t.coeffs_) c /= d;
  t.constant_ /= d;
  return t;
}

LinearTerm LinearTerm::with_constant(Integer c) const {
  LinearTerm t = *this;
  t.constant_ = std::move(c);
  return t;
}

Integer LinearTerm::evaluate(const Assignment& values) const {
  Integer sum = constant_;
  for (const auto& [v, c] : coeffs_) sum += c * values.at(v);
  return sum;
}

std::string LinearTerm::str() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [v, c] : coeffs_) {
    Integer mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (mag != 1) out << mag << "*";
    out << v.name();
    first = false;
  }
  if (first) {
    out << constant_;
  } else if (constant_ != 0) {
    out << (constant_ < 0 ? " - " : " + ") << abs(constant_);
  }
  return out.str();
}

std::strong_ordering compare_linear_part(const LinearTerm& a, const LinearTerm& b) {
  const auto& x = a.monomials();
  const auto& y = b.monomials();
  std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = x[i].first <=> y[i].first; c != 0) return c;
    if (auto c = compare(x[i].second, y[i].second); c != 0) return c;
  }
  return x.size() <=> y.size();
}

std::strong_ordering compare(const LinearTerm& a, const LinearTerm& b) {
  if (auto c = compare_linear_part(a, b); c != 0) return c;
  return compare(a.constant(), b.constant());
}

std::size_t LinearTerm::hash() const {
  std::size_t h = std::hash<long long>{}(static_cast<long long>(constant_ % 1000003));
  for (const auto& [v, c] : coeffs_) {
    h ^= std::hash<std::uint32_t>{}(v.id()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<long long>{}(static_cast<long long>(c % 1000003)) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace pa
