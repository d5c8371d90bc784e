#pragma once

// Named vectors of the parafermion construction (W^3, W^4, W^5, the
// singular vector and its charge-0 descendant) and the finite-cutoff
// verification checks built on them.

#include <pfva/basis_store.hpp>
#include <pfva/graded_linalg.hpp>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pfva {

struct WVectors {
  State w3, w4, w5;
};

/// W^3, W^4, W^5 with the standard (DLY) normalization evaluated at k.
WVectors w_vectors(const LevelParams& p);

struct SingularVectors {
  /// e(-1)^{k+1}|0>
  State e_top;
  /// f(0)^{k+1} e(-1)^{k+1}|0>
  State f_bottom;
};

SingularVectors singular_vectors(const Rewriter& rw);

/// Number of partitions of n for n = 0..cutoff, counted as h-only monomials.
std::vector<std::size_t> partition_counts(int cutoff);

using DimTable = std::map<int, std::size_t>;

struct CheckReport {
  std::string check;
  int k = 0;
  int cutoff = 0;
  bool pass = false;
  bool skipped = false;
  std::map<std::string, DimTable> dims;
  std::optional<State> witness;
  std::map<std::string, Scalar> scalars;
  std::vector<std::string> notes;
};

/// {"check","k","cutoff","pass","skipped","scope","dims","witness","scalars","notes"}
nlohmann::json to_json(const CheckReport& report);

struct LabOptions {
  int jobs = 1;
  /// Largest weight reachable by any mode computation.
  int max_weight = 24;
  /// Optional on-disk cache for the expensive spaces.
  std::shared_ptr<const BasisStore> store;
};

/// One level k: the vertex algebra plus memoized graded spaces. Spaces are
/// looked up in memory, then in the store, and computed last.
class Lab {
 public:
  explicit Lab(int k, LabOptions options = {});

  int k() const { return va_.k(); }
  const VertexAlgebra& va() const { return va_; }
  const Rewriter& rewriter() const { return va_.rewriter(); }
  const LabOptions& options() const { return options_; }
  const WVectors& w() const { return w_; }
  const SingularVectors& singular() const { return singular_; }
  State omega() const { return va_.virasoro_vector(VirasoroKind::Coset); }

  /// V(k,0)(0), charge-0 monomials of weight <= cutoff.
  const GradedBasis& v0(int cutoff);
  /// The commutant N_0.
  const GradedBasis& n0(int cutoff);
  /// Maximal ideal J generated by e(-1)^{k+1}|0>, every charge.
  const GradedBasis& j(int cutoff);
  /// J intersected with N_0.
  const GradedBasis& itilde(int cutoff);
  /// span{ u_n fBottom : u in N_0 }.
  const GradedBasis& itilde_generated(int cutoff);
  /// Subalgebra generated by omega and W^3.
  const GradedBasis& w_algebra(int cutoff);
  DimTable k0_dims(int cutoff);

 private:
  template <class Fn>
  const GradedBasis& cached(const std::string& space, int cutoff, Fn compute);

  LabOptions options_;
  VertexAlgebra va_;
  WVectors w_;
  SingularVectors singular_;
  std::map<std::pair<std::string, int>, GradedBasis> spaces_;
};

/// Compares the closure of gens with target dims weight by weight.
CheckReport compare_generation(Lab& lab, const std::string& name, const std::vector<State>& gens,
                               const GradedBasis& target, int cutoff);

CheckReport check_generation_v0(Lab& lab, int cutoff);
CheckReport check_generation_n0(Lab& lab, int cutoff);
CheckReport check_maximal_ideal(Lab& lab, int cutoff);
CheckReport check_theta_properties(Lab& lab, int imax);
CheckReport check_decomposition(Lab& lab, int cutoff);
CheckReport check_k0(Lab& lab, int cutoff);
/// Throws std::invalid_argument unless k is 2, 3 or 4.
CheckReport proportionality_check(Lab& lab);

/// Names accepted by run_check, in execution order for "all".
const std::vector<std::string>& check_names();
/// Runs a named check, reporting "skipped" when the cutoff or level is out
/// of the check's range. Throws std::invalid_argument for unknown names.
CheckReport run_check(Lab& lab, const std::string& name, int cutoff, int imax);

}  // namespace pfva
