#include <pfva/vertex_modes.hpp>

#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace pfva {

const char* to_string(VirasoroKind kind) {
  switch (kind) {
    case VirasoroKind::Aff: return "aff";
    case VirasoroKind::Gamma: return "gamma";
    case VirasoroKind::Coset: return "coset";
  }
  return "?";
}

namespace {

struct ModeKey {
  Monomial u;
  int n;
  Monomial w;
  friend bool operator==(const ModeKey&, const ModeKey&) = default;
};

struct ModeKeyHash {
  std::size_t operator()(const ModeKey& key) const {
    return key.u.hash() * 1000003 ^ (key.w.hash() + 0x51ed27 * static_cast<std::size_t>(key.n + 4096));
  }
};

Scalar sign(long exponent) { return exponent % 2 == 0 ? 1 : -1; }

// a(-s) v = u with a(-s) the leftmost letter of the canonical word.
struct Peeled {
  Generator a;
  int s;
  Monomial rest;
};

Peeled peel(const Monomial& u) {
  auto tail = [](const std::vector<int>& v) { return std::vector<int>(v.begin() + 1, v.end()); };
  if (!u.hs().empty()) return {Generator::H, u.hs().front(), Monomial(tail(u.hs()), u.es(), u.fs())};
  if (!u.es().empty()) return {Generator::E, u.es().front(), Monomial({}, tail(u.es()), u.fs())};
  return {Generator::F, u.fs().front(), Monomial({}, {}, tail(u.fs()))};
}

}  // namespace

struct VertexAlgebra::Cache {
  mutable std::shared_mutex mutex;
  std::unordered_map<ModeKey, State, ModeKeyHash> entries;
};

VertexAlgebra::VertexAlgebra(LevelParams p, VertexOptions options)
    : rewriter_(p), options_(options), cache_(std::make_unique<Cache>()) {}

VertexAlgebra::~VertexAlgebra() = default;

State VertexAlgebra::mode(const State& u, int n, const State& w) const {
  State out;
  for (const auto& [mu, cu] : u.terms())
    for (const auto& [mw, cw] : w.terms()) {
      const State& term = mode(mu, n, mw);
      if (!term.is_zero()) out.add_scaled(term, cu * cw);
    }
  return out;
}

const State& VertexAlgebra::mode(const Monomial& u, int n, const Monomial& w) const {
  static const State zero;
  if (u.weight() + w.weight() - n - 1 < 0) return zero;
  ModeKey key{u, n, w};
  {
    std::shared_lock lock(cache_->mutex);
    if (auto it = cache_->entries.find(key); it != cache_->entries.end()) return it->second;
  }
  State result = mode_uncached(u, n, w);
  std::unique_lock lock(cache_->mutex);
  return cache_->entries.try_emplace(std::move(key), std::move(result)).first->second;
}

State VertexAlgebra::mode_uncached(const Monomial& u, int n, const Monomial& w) const {
  if (u.is_vacuum()) return n == -1 ? State(w) : State();
  const int result_weight = u.weight() + w.weight() - n - 1;
  if (result_weight < 0) return {};
  if (result_weight > options_.max_weight || w.weight() > options_.max_weight)
    throw ResourceLimit("mode result weight " + std::to_string(result_weight) + " exceeds the cutoff " +
                        std::to_string(options_.max_weight));

  const auto [a, s, v] = peel(u);
  if (v.is_vacuum() && s == 1) return rewriter_.apply_mode({a, n}, w);

  State out;
  const int wv = v.weight();
  const int ww = w.weight();

  // Sum over v_{n+j} w: zero once n + j >= wt(v) + wt(w).
  const int last_first = wv + ww - 1 - n;
  for (int j = 0; j <= last_first; ++j) {
    const Scalar c = sign(j) * Scalar(binomial(-s, j));
    const State& inner = mode(v, n + j, w);
    if (inner.is_zero()) continue;
    for (const auto& [m, x] : inner.terms()) out.add_scaled(rewriter_.apply_mode({a, -s - j}, m), c * x);
  }

  // Sum over a(j) w: zero once j > wt(w).
  for (int j = 0; j <= ww; ++j) {
    const State& aw = rewriter_.apply_mode({a, j}, w);
    if (aw.is_zero()) continue;
    const Scalar c = -sign(-s + j) * Scalar(binomial(-s, j));
    for (const auto& [m, x] : aw.terms()) out.add_scaled(mode(v, n - s - j, m), c * x);
  }

  if (options_.verify_truncation) {
    if (!mode(v, n + last_first + 1, w).is_zero() || !rewriter_.apply_mode({a, ww + 1}, w).is_zero())
      throw std::logic_error("iterate-formula truncation bound violated");
  }
  return out;
}

State VertexAlgebra::virasoro_vector(VirasoroKind kind) const {
  const int k = this->k();
  const Monomial h2({2}, {}, {});
  const Monomial h11({1, 1}, {}, {});
  const Monomial e1f1({}, {1}, {1});
  State aff;
  const Scalar norm(1, 2 * (k + 2));
  aff.add_term(h2, -norm);
  aff.add_term(h11, norm / 2);
  aff.add_term(e1f1, 2 * norm);
  const State gamma(h11, Scalar(1, 4 * k));
  switch (kind) {
    case VirasoroKind::Aff: return aff;
    case VirasoroKind::Gamma: return gamma;
    case VirasoroKind::Coset: return aff - gamma;
  }
  return {};
}

State VertexAlgebra::virasoro_mode(VirasoroKind kind, int n, const State& w) const {
  return mode(virasoro_vector(kind), n + 1, w);
}

bool VertexAlgebra::is_primary(const State& u, int expected_weight) const {
  const State omega = virasoro_vector(VirasoroKind::Coset);
  return mode(omega, 2, u).is_zero() && mode(omega, 3, u).is_zero() &&
         mode(omega, 1, u) == Scalar(expected_weight) * u;
}

std::size_t VertexAlgebra::cache_size() const {
  std::shared_lock lock(cache_->mutex);
  return cache_->entries.size();
}

}  // namespace pfva
