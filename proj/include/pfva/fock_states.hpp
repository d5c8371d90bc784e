#pragma once

// Elements of the level-k vacuum Weyl module V(k,0) in the PBW basis
//   h(-i1)...h(-ip) e(-j1)...e(-jq) f(-m1)...f(-mr) |0>
// with i1 >= ... >= ip >= 1 and likewise for the e- and f-blocks.

#include <pfva/scalar.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace pfva {

/// Level of the affine algebra; an integer k >= 2.
class LevelParams {
 public:
  explicit LevelParams(int k);
  int k() const { return k_; }
  friend bool operator==(const LevelParams&, const LevelParams&) = default;

 private:
  int k_;
};

struct Grade {
  int weight = 0;
  int charge = 0;
  friend auto operator<=>(const Grade&, const Grade&) = default;
};

/// Canonical PBW word. Each block stores the positive parts of its mode
/// indices in non-increasing order; the empty monomial is the vacuum.
class Monomial {
 public:
  Monomial() = default;
  /// Blocks are sorted into canonical order (modes inside a block commute).
  /// Throws std::invalid_argument on a non-positive part.
  Monomial(std::vector<int> hs, std::vector<int> es, std::vector<int> fs);

  static Monomial vacuum() { return {}; }

  const std::vector<int>& hs() const { return hs_; }
  const std::vector<int>& es() const { return es_; }
  const std::vector<int>& fs() const { return fs_; }

  int weight() const { return weight_; }
  int charge() const { return 2 * (static_cast<int>(es_.size()) - static_cast<int>(fs_.size())); }
  Grade grade() const { return {weight(), charge()}; }
  bool is_vacuum() const { return hs_.empty() && es_.empty() && fs_.empty(); }
  std::size_t length() const { return hs_.size() + es_.size() + fs_.size(); }

  std::size_t hash() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  /// Deterministic layout order: weight, then charge, then the h-, e- and
  /// f-blocks compared lexicographically with larger parts first (a longer
  /// block wins against its own prefix).
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

 private:
  std::vector<int> hs_, es_, fs_;
  int weight_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// (weight, charge) of a monomial.
Grade grade(const Monomial& m);

/// Finite linear combination of monomials with nonzero exact coefficients.
class State {
 public:
  using Terms = std::map<Monomial, Scalar>;

  State() = default;
  explicit State(const Monomial& m, const Scalar& c = 1);

  static State vacuum() { return State(Monomial::vacuum()); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of m (zero when absent).
  Scalar coeff(const Monomial& m) const;

  /// this += c * m; drops the entry if it cancels.
  void add_term(const Monomial& m, const Scalar& c);
  /// this += c * other.
  void add_scaled(const State& other, const Scalar& c);

  /// Grade shared by all terms, if any. The zero state has no grade.
  std::optional<Grade> homogeneous_grade() const;
  bool is_homogeneous() const;

  /// Splits into homogeneous pieces keyed by grade.
  std::map<Grade, State> components() const;

  State& operator+=(const State& o) { add_scaled(o, 1); return *this; }
  State& operator-=(const State& o) { add_scaled(o, -1); return *this; }
  State& operator*=(const Scalar& c);

  friend State operator+(State a, const State& b) { return a += b; }
  friend State operator-(State a, const State& b) { return a -= b; }
  friend State operator-(State a) { return a *= Scalar(-1); }
  friend State operator*(const Scalar& c, State a) { return a *= c; }
  friend State operator*(State a, const Scalar& c) { return a *= c; }
  friend bool operator==(const State&, const State&) = default;

 private:
  Terms terms_;
};

/// a*u + b*v with cancelled terms pruned.
State combine(const Scalar& a, const State& u, const Scalar& b, const State& v);

/// Canonical monomials of weight n and charge lambda, in layout order.
std::vector<Monomial> enumerate_monomials(int n, int charge);

/// Human-readable form, e.g. "2 h(-2)|0> - 2 e(-1)f(-1)|0>".
std::string to_string(const Monomial& m);
std::string to_string(const State& v);

/// {"terms":[{"h":[..],"e":[..],"f":[..],"coeff":"p/q"},...]}
nlohmann::json to_json(const State& v);
State state_from_json(const nlohmann::json& j);

}  // namespace pfva

template <>
struct std::hash<pfva::Monomial> {
  std::size_t operator()(const pfva::Monomial& m) const { return m.hash(); }
};
