#pragma once

// Modes u_n of arbitrary states u of V(k,0), computed by peeling the leftmost
// current off u = a(-s)v and expanding with the iterate formula
//   (a(-s)v)_n = sum_j (-1)^j C(-s,j) a(-s-j) v_{n+j}
//              - sum_j (-1)^(-s+j) C(-s,j) v_{n-s-j} a(j).

#include <pfva/current_rewrite.hpp>

#include <memory>
#include <stdexcept>

namespace pfva {

/// Raised when a computation would leave the configured weight window.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class VirasoroKind { Aff, Gamma, Coset };

const char* to_string(VirasoroKind kind);

struct VertexOptions {
  /// Largest weight any intermediate or final result may reach.
  int max_weight = 24;
  /// Re-evaluate the first omitted term of each truncated sum and require
  /// it to vanish. Expensive; meant for tests.
  bool verify_truncation = false;
};

class VertexAlgebra {
 public:
  explicit VertexAlgebra(LevelParams p, VertexOptions options = {});
  ~VertexAlgebra();
  VertexAlgebra(const VertexAlgebra&) = delete;
  VertexAlgebra& operator=(const VertexAlgebra&) = delete;

  const LevelParams& params() const { return rewriter_.params(); }
  int k() const { return rewriter_.k(); }
  const Rewriter& rewriter() const { return rewriter_; }
  const VertexOptions& options() const { return options_; }

  /// u_n w, bilinear in (u, w).
  State mode(const State& u, int n, const State& w) const;
  /// Memoized; the reference stays valid for the lifetime of the algebra.
  const State& mode(const Monomial& u, int n, const Monomial& w) const;

  State virasoro_vector(VirasoroKind kind) const;
  /// L(n) = omega_{n+1}.
  State virasoro_mode(VirasoroKind kind, int n, const State& w) const;

  /// omega_2 u = omega_3 u = 0 and omega_1 u = weight * u for the coset
  /// Virasoro vector omega.
  bool is_primary(const State& u, int expected_weight) const;

  std::size_t cache_size() const;

 private:
  State mode_uncached(const Monomial& u, int n, const Monomial& w) const;

  struct Cache;
  Rewriter rewriter_;
  VertexOptions options_;
  std::unique_ptr<Cache> cache_;
};

}  // namespace pfva
