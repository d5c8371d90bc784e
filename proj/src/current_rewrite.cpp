#include <pfva/current_rewrite.hpp>

#include <cassert>
#include <mutex>
#include <shared_mutex>
#include <tuple>
#include <unordered_map>
#include <utility>

namespace pfva {

char letter(Generator g) {
  switch (g) {
    case Generator::H: return 'h';
    case Generator::E: return 'e';
    case Generator::F: return 'f';
  }
  return '?';
}

std::string to_string(const ModeSymbol& a) {
  return std::string(1, letter(a.generator)) + "(" + std::to_string(a.index) + ")";
}

int charge_shift(Generator g) {
  switch (g) {
    case Generator::H: return 0;
    case Generator::E: return 2;
    case Generator::F: return -2;
  }
  return 0;
}

std::optional<Bracket> bracket(Generator x, Generator y) {
  using G = Generator;
  if (x == y) return std::nullopt;
  if (x == G::H && y == G::E) return Bracket{2, G::E};
  if (x == G::E && y == G::H) return Bracket{-2, G::E};
  if (x == G::H && y == G::F) return Bracket{-2, G::F};
  if (x == G::F && y == G::H) return Bracket{2, G::F};
  if (x == G::E && y == G::F) return Bracket{1, G::H};
  return Bracket{-1, G::H};  // [f, e] = -h
}

int form(Generator x, Generator y) {
  using G = Generator;
  if (x == G::H && y == G::H) return 2;
  if ((x == G::E && y == G::F) || (x == G::F && y == G::E)) return 1;
  return 0;
}

Word to_word(const Monomial& m) {
  Word w;
  w.reserve(m.length());
  for (int i : m.hs()) w.push_back(h(-i));
  for (int i : m.es()) w.push_back(e(-i));
  for (int i : m.fs()) w.push_back(f(-i));
  return w;
}

namespace {

// Creation modes sort by block (h, e, f) and then by index, most negative
// first. Annihilation modes (index >= 0) all share the largest rank and
// must migrate to the vacuum, where they vanish.
std::pair<int, int> rank(const ModeSymbol& a) {
  if (a.index >= 0) return {3, 0};
  return {static_cast<int>(a.generator), a.index};
}

Monomial to_monomial(const Word& w) {
  std::vector<int> hs, es, fs;
  for (const auto& a : w) {
    assert(a.index < 0);
    switch (a.generator) {
      case Generator::H: hs.push_back(-a.index); break;
      case Generator::E: es.push_back(-a.index); break;
      case Generator::F: fs.push_back(-a.index); break;
    }
  }
  return Monomial(std::move(hs), std::move(es), std::move(fs));
}

struct CacheKey {
  Generator g;
  int index;
  Monomial m;
  friend bool operator==(const CacheKey&, const CacheKey&) = default;
};

struct CacheKeyHash {
  std::size_t operator()(const CacheKey& key) const {
    return key.m.hash() * 31 + static_cast<std::size_t>(key.g) * 1009 + static_cast<std::size_t>(key.index + 4096);
  }
};

}  // namespace

struct Rewriter::Cache {
  mutable std::shared_mutex mutex;
  std::unordered_map<CacheKey, State, CacheKeyHash> entries;
};

Rewriter::Rewriter(LevelParams p) : params_(p), cache_(std::make_unique<Cache>()) {}
Rewriter::~Rewriter() = default;

State Rewriter::normal_order(const Word& word, const Scalar& coeff) const {
  State out;
  std::vector<std::pair<Scalar, Word>> work;
  if (coeff != 0) work.emplace_back(coeff, word);
  const int k = params_.k();

  while (!work.empty()) {
    auto [c, w] = std::move(work.back());
    work.pop_back();
    if (!w.empty() && w.back().index >= 0) continue;  // a(n)|0> = 0 for n >= 0

    std::size_t i = 0;
    while (i + 1 < w.size() && !(rank(w[i]) > rank(w[i + 1]))) ++i;
    if (i + 1 >= w.size()) {
      out.add_term(to_monomial(w), c);
      continue;
    }

    const ModeSymbol x = w[i];
    const ModeSymbol y = w[i + 1];
    // Two creation modes of the same letter always commute, so a swap inside
    // a block never produces correction terms.
    assert(!(x.generator == y.generator && x.index < 0 && y.index < 0 && x.index + y.index == 0));

    if (auto br = bracket(x.generator, y.generator)) {
      Word shorter;
      shorter.reserve(w.size() - 1);
      shorter.insert(shorter.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
      shorter.push_back({br->result, x.index + y.index});
      shorter.insert(shorter.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end());
      work.emplace_back(c * br->coeff, std::move(shorter));
    }
    if (x.index + y.index == 0) {
      if (const int g = form(x.generator, y.generator); g != 0 && x.index != 0) {
        Word removed;
        removed.reserve(w.size() - 2);
        removed.insert(removed.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
        removed.insert(removed.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end());
        work.emplace_back(c * (x.index * g * k), std::move(removed));
      }
    }
    std::swap(w[i], w[i + 1]);
    work.emplace_back(std::move(c), std::move(w));
  }
  return out;
}

const State& Rewriter::apply_mode(ModeSymbol a, const Monomial& m) const {
  CacheKey key{a.generator, a.index, m};
  {
    std::shared_lock lock(cache_->mutex);
    if (auto it = cache_->entries.find(key); it != cache_->entries.end()) return it->second;
  }
  Word w;
  w.reserve(m.length() + 1);
  w.push_back(a);
  auto rest = to_word(m);
  w.insert(w.end(), rest.begin(), rest.end());
  State result = normal_order(w);
  std::unique_lock lock(cache_->mutex);
  return cache_->entries.try_emplace(std::move(key), std::move(result)).first->second;
}

State Rewriter::apply_mode(ModeSymbol a, const State& v) const {
  State out;
  for (const auto& [m, c] : v.terms()) out.add_scaled(apply_mode(a, m), c);
  return out;
}

State Rewriter::apply_word(std::span<const ModeSymbol> word, const State& v) const {
  State cur = v;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (cur.is_zero()) break;
    cur = apply_mode(*it, cur);
  }
  return cur;
}

State Rewriter::theta(const State& v) const {
  State out;
  for (const auto& [m, c] : v.terms()) {
    Word w;
    w.reserve(m.length());
    for (int i : m.hs()) w.push_back(h(-i));
    for (int i : m.es()) w.push_back(f(-i));
    for (int i : m.fs()) w.push_back(e(-i));
    const Scalar sign = m.hs().size() % 2 == 0 ? 1 : -1;
    out.add_scaled(normal_order(w, c * sign), 1);
  }
  return out;
}

std::size_t Rewriter::cache_size() const {
  std::shared_lock lock(cache_->mutex);
  return cache_->entries.size();
}

}  // namespace pfva
