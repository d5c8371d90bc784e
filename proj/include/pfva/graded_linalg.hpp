#pragma once

// Exact linear algebra on (weight, charge)-graded subspaces of V(k,0):
// reduced echelon bases, membership, joint kernels of mode operators,
// commutant spaces, and closures under the vertex-algebra products.

#include <pfva/vertex_modes.hpp>

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace pfva {

/// Subspace spanned by homogeneous states, stored per grade in reduced row
/// echelon form. Pivots are the first monomial of each vector in layout
/// order and are normalized to 1, so equal subspaces have equal bases.
class GradedBasis {
 public:
  /// Adds v to the span. Returns the reduced new basis vector when the
  /// dimension grew, nullopt when v was already in the span.
  /// Throws std::invalid_argument for inhomogeneous v.
  std::optional<State> insert(const State& v);

  std::size_t dim(Grade g) const;
  /// Summed over all charges.
  std::size_t dim(int weight) const;
  std::size_t total_dim() const;
  /// Per-weight dimensions for weights 0..cutoff (zeros included).
  std::map<int, std::size_t> dims(int cutoff) const;

  const std::vector<State>& vectors(Grade g) const;
  std::vector<Grade> grades() const;
  /// Every basis vector, grades in ascending order.
  std::vector<State> all_vectors() const;

  /// Coordinates of homogeneous v with respect to vectors(grade of v), or
  /// nullopt when v lies outside the span. The zero state has no coordinates
  /// but is contained.
  std::optional<std::vector<Scalar>> coordinates(const State& v) const;
  bool contains(const State& v) const;
  bool contains_all(const GradedBasis& other) const;

  /// Keeps only grades with weight <= cutoff.
  GradedBasis truncated(int cutoff) const;

  friend bool operator==(const GradedBasis&, const GradedBasis&) = default;

 private:
  State reduce(const State& v, std::vector<Scalar>* coords) const;
  std::map<Grade, std::vector<State>> spaces_;
};

/// Reduced echelon basis of the span of homogeneous vectors.
GradedBasis echelonize(std::span<const State> vectors);

/// Composite mode u_n.
struct CompositeMode {
  State u;
  int n;
};

/// Any other grade-preserving linear operator.
using LinearMap = std::function<State(const State&)>;

using OperatorSpec = std::variant<ModeSymbol, CompositeMode, LinearMap>;

State apply_operator(const OperatorSpec& op, const State& v, const VertexAlgebra& va);

/// Per grade, the joint kernel of all operators restricted to the domain.
GradedBasis kernel(std::span<const OperatorSpec> ops, const GradedBasis& domain, const VertexAlgebra& va);

/// Basis of V(k,0)(charge) at weight n: the canonical monomials.
GradedBasis weight_space(int n, int charge);
/// Union of weight_space(n, charge) for n <= cutoff, optionally restricted
/// to one charge.
GradedBasis weight_spaces(int cutoff, std::optional<int> charge = std::nullopt);

/// N_charge at weight n: vectors with h(m) v = 0 for 1 <= m <= n.
GradedBasis commutant_space(int n, int charge, const VertexAlgebra& va);
/// Same space through the Heisenberg Virasoro vector: the kernel of
/// (omega_gamma)_0 for charge 0, and of L_gamma(0) - charge^2/(4k) otherwise.
GradedBasis commutant_space_virasoro(int n, int charge, const VertexAlgebra& va);

/// Subspace sum and intersection, grade by grade.
GradedBasis sum(const GradedBasis& a, const GradedBasis& b);
GradedBasis intersect(const GradedBasis& a, const GradedBasis& b);

struct ClosureOptions {
  /// Upper bound on closure rounds; exceeding it raises ResourceLimit.
  int max_rounds = 64;
  /// After the incremental closure stops growing, run one more sweep over
  /// all pairs and require zero growth.
  bool confirm_sweep = true;
  /// Worker threads for the mode products.
  int jobs = 1;
};

struct ClosureStats {
  int rounds = 0;
  std::size_t products = 0;
  /// Growth observed during the confirming sweep (always zero for a
  /// genuine fixpoint).
  std::size_t confirm_growth = 0;
};

/// Smallest subspace (truncated at cutoff) containing |0> and gens that is
/// closed under all products u_n v landing at weight <= cutoff.
GradedBasis generated_subalgebra(std::span<const State> gens, int cutoff, const VertexAlgebra& va,
                                 const ClosureOptions& options = {}, ClosureStats* stats = nullptr);

/// span{ u_n x : u in ambient, wt(u_n x) <= cutoff } in a single pass.
GradedBasis generated_ideal(const State& x, const GradedBasis& ambient, int cutoff, const VertexAlgebra& va,
                            int jobs = 1);

/// Closure of span{x} under the current modes h(m), e(m), f(m), truncated
/// at weight cutoff: the affine submodule (equivalently, the ideal)
/// generated by x.
GradedBasis current_submodule(const State& x, int cutoff, const VertexAlgebra& va, std::optional<int> charge = std::nullopt);

/// Re-applies every ambient mode to the ideal and reports the dimension
/// gained per weight; all zeros means the ideal is closed up to cutoff.
std::map<int, std::size_t> audit_ideal(const GradedBasis& ideal, const GradedBasis& ambient, int cutoff,
                                       const VertexAlgebra& va, int jobs = 1);

/// {"k":K,"cutoff":N,"dims":{"0":d0,...},"vectors":[State...]}
nlohmann::json to_json(const GradedBasis& basis, int k, int cutoff);
GradedBasis graded_basis_from_json(const nlohmann::json& j);

/// Evaluates fn(0..count-1) on up to `jobs` threads; results keep index order.
std::vector<State> parallel_map(std::size_t count, int jobs, const std::function<State(std::size_t)>& fn);

}  // namespace pfva
