#pragma once

// Left action of the affine sl2 currents a(n), a in {h, e, f}, on V(k,0),
// normal-ordered back into the PBW basis with
//   [a(m), b(n)] = [a,b](m+n) + m <a,b> delta_{m+n,0} k.

#include <pfva/fock_states.hpp>

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace pfva {

enum class Generator : std::uint8_t { H, E, F };

struct ModeSymbol {
  Generator generator;
  int index;
  friend bool operator==(const ModeSymbol&, const ModeSymbol&) = default;
};

inline ModeSymbol h(int n) { return {Generator::H, n}; }
inline ModeSymbol e(int n) { return {Generator::E, n}; }
inline ModeSymbol f(int n) { return {Generator::F, n}; }

char letter(Generator g);
std::string to_string(const ModeSymbol& a);

/// Change of h(0)-charge caused by a mode of the given generator.
int charge_shift(Generator g);

/// Letters read left to right; the word acts on the vacuum from the right.
using Word = std::vector<ModeSymbol>;

/// One term of a Lie bracket [x, y] = coeff * z.
struct Bracket {
  int coeff;
  Generator result;
};

/// [x, y] in the Chevalley basis, or nullopt when it vanishes.
std::optional<Bracket> bracket(Generator x, Generator y);
/// Normalized invariant form: <h,h> = 2, <e,f> = <f,e> = 1, others 0.
int form(Generator x, Generator y);

/// The letters of a canonical monomial as a word.
Word to_word(const Monomial& m);

/// Normal ordering and current actions at a fixed level. Results for
/// (mode, monomial) pairs are memoized; the cache is safe to share between
/// threads and never affects results.
class Rewriter {
 public:
  explicit Rewriter(LevelParams p);
  ~Rewriter();
  Rewriter(const Rewriter&) = delete;
  Rewriter& operator=(const Rewriter&) = delete;

  const LevelParams& params() const { return params_; }
  int k() const { return params_.k(); }

  /// Rewrites `coeff * word |0>` into the PBW basis.
  State normal_order(const Word& word, const Scalar& coeff = 1) const;

  State apply_mode(ModeSymbol a, const State& v) const;
  /// Memoized; the reference stays valid for the lifetime of the rewriter.
  const State& apply_mode(ModeSymbol a, const Monomial& m) const;

  /// Right-to-left application: the last letter acts first.
  State apply_word(std::span<const ModeSymbol> word, const State& v) const;

  /// The involution induced by h -> -h, e -> f, f -> e.
  State theta(const State& v) const;

  std::size_t cache_size() const;

 private:
  struct Cache;
  LevelParams params_;
  std::unique_ptr<Cache> cache_;
};

}  // namespace pfva
