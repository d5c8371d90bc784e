#include <pfva/graded_linalg.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <stdexcept>
#include <mutex>
#include <shared_mutex>
#include <thread>
#include <unordered_map>

namespace pfva {

namespace {

const std::vector<State> kEmpty;

template <class Key>
using SparseVec = std::map<Key, Scalar>;

template <class Key>
void axpy(SparseVec<Key>& y, const SparseVec<Key>& x, const Scalar& c) {
  for (const auto& [key, v] : x) {
    auto [it, inserted] = y.try_emplace(key, c * v);
    if (inserted) continue;
    it->second += c * v;
    if (it->second == 0) y.erase(it);
  }
}

// Basis of { c : sum_i c_i rows_i = 0 } by Gaussian elimination with
// combination tracking. Pivot rows keep their leading key as pivot, so
// reducing by the smallest key first never reintroduces an eliminated key.
template <class Key>
std::vector<std::vector<Scalar>> null_combinations(const std::vector<SparseVec<Key>>& rows) {
  struct PivotRow {
    SparseVec<Key> row;
    std::vector<Scalar> combo;
  };
  std::map<Key, PivotRow> pivots;
  std::vector<std::vector<Scalar>> out;
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    SparseVec<Key> r = rows[i];
    std::vector<Scalar> combo(n);
    combo[i] = 1;
    auto scan = r.begin();
    while (scan != r.end()) {
      auto piv = pivots.find(scan->first);
      if (piv == pivots.end()) {
        ++scan;
        continue;
      }
      const Key key = scan->first;
      const Scalar c = scan->second / piv->second.row.begin()->second;
      axpy(r, piv->second.row, Scalar(-c));
      for (std::size_t t = 0; t < n; ++t)
        if (piv->second.combo[t] != 0) combo[t] -= c * piv->second.combo[t];
      scan = r.upper_bound(key);
    }
    if (r.empty()) {
      out.push_back(std::move(combo));
    } else {
      // Every pivot key of r has been eliminated, so its leading key is new.
      const Key lead = r.begin()->first;
      pivots.emplace(lead, PivotRow{std::move(r), std::move(combo)});
    }
  }
  return out;
}

int weight_of(const Grade& g) { return g.weight; }

}  // namespace

State GradedBasis::reduce(const State& v, std::vector<Scalar>* coords) const {
  State r = v;
  const auto g = v.homogeneous_grade();
  if (!g) return r;
  auto it = spaces_.find(*g);
  if (it == spaces_.end()) return r;
  for (const auto& b : it->second) {
    const Scalar c = r.coeff(b.terms().begin()->first);
    if (coords) coords->push_back(c);
    if (c != 0) r.add_scaled(b, -c);
  }
  return r;
}

std::optional<State> GradedBasis::insert(const State& v) {
  if (v.is_zero()) return std::nullopt;
  const auto g = v.homogeneous_grade();
  if (!g) throw std::invalid_argument("GradedBasis only holds homogeneous states: " + to_string(v));
  State r = reduce(v, nullptr);
  if (r.is_zero()) return std::nullopt;
  r *= 1 / r.terms().begin()->second;
  const Monomial& pivot = r.terms().begin()->first;
  auto& vecs = spaces_[*g];
  for (auto& b : vecs) {
    const Scalar c = b.coeff(pivot);
    if (c != 0) b.add_scaled(r, -c);
  }
  auto pos = std::ranges::lower_bound(vecs, pivot, {}, [](const State& s) { return s.terms().begin()->first; });
  vecs.insert(pos, r);
  return r;
}

std::size_t GradedBasis::dim(Grade g) const {
  auto it = spaces_.find(g);
  return it == spaces_.end() ? 0 : it->second.size();
}

std::size_t GradedBasis::dim(int weight) const {
  std::size_t d = 0;
  for (const auto& [g, vecs] : spaces_)
    if (g.weight == weight) d += vecs.size();
  return d;
}

std::size_t GradedBasis::total_dim() const {
  std::size_t d = 0;
  for (const auto& [g, vecs] : spaces_) d += vecs.size();
  return d;
}

std::map<int, std::size_t> GradedBasis::dims(int cutoff) const {
  std::map<int, std::size_t> out;
  for (int n = 0; n <= cutoff; ++n) out[n] = 0;
  for (const auto& [g, vecs] : spaces_)
    if (g.weight <= cutoff) out[g.weight] += vecs.size();
  return out;
}

const std::vector<State>& GradedBasis::vectors(Grade g) const {
  auto it = spaces_.find(g);
  return it == spaces_.end() ? kEmpty : it->second;
}

std::vector<Grade> GradedBasis::grades() const {
  std::vector<Grade> out;
  for (const auto& [g, vecs] : spaces_)
    if (!vecs.empty()) out.push_back(g);
  return out;
}

std::vector<State> GradedBasis::all_vectors() const {
  std::vector<State> out;
  for (const auto& [g, vecs] : spaces_) out.insert(out.end(), vecs.begin(), vecs.end());
  return out;
}

std::optional<std::vector<Scalar>> GradedBasis::coordinates(const State& v) const {
  if (v.is_zero()) return std::vector<Scalar>{};
  if (!v.is_homogeneous()) return std::nullopt;
  std::vector<Scalar> coords;
  if (!reduce(v, &coords).is_zero()) return std::nullopt;
  return coords;
}

bool GradedBasis::contains(const State& v) const {
  for (const auto& [g, part] : v.components())
    if (!reduce(part, nullptr).is_zero()) return false;
  return true;
}

bool GradedBasis::contains_all(const GradedBasis& other) const {
  for (const auto& [g, vecs] : other.spaces_)
    for (const auto& v : vecs)
      if (!contains(v)) return false;
  return true;
}

GradedBasis GradedBasis::truncated(int cutoff) const {
  GradedBasis out;
  for (const auto& [g, vecs] : spaces_)
    if (g.weight <= cutoff && !vecs.empty()) out.spaces_.emplace(g, vecs);
  return out;
}

GradedBasis echelonize(std::span<const State> vectors) {
  GradedBasis out;
  for (const auto& v : vectors) out.insert(v);
  return out;
}

State apply_operator(const OperatorSpec& op, const State& v, const VertexAlgebra& va) {
  return std::visit(
      [&](const auto& o) -> State {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, ModeSymbol>) {
          return va.rewriter().apply_mode(o, v);
        } else if constexpr (std::is_same_v<T, CompositeMode>) {
          return va.mode(o.u, o.n, v);
        } else {
          return o(v);
        }
      },
      op);
}

GradedBasis kernel(std::span<const OperatorSpec> ops, const GradedBasis& domain, const VertexAlgebra& va) {
  using Key = std::pair<std::size_t, Monomial>;
  GradedBasis out;
  for (const Grade& g : domain.grades()) {
    const auto& basis = domain.vectors(g);
    std::vector<SparseVec<Key>> images(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t o = 0; o < ops.size(); ++o) {
        const State image = apply_operator(ops[o], basis[i], va);
        for (const auto& [m, c] : image.terms()) images[i].emplace(Key{o, m}, c);
      }
    for (const auto& combo : null_combinations(images)) {
      State v;
      for (std::size_t i = 0; i < basis.size(); ++i)
        if (combo[i] != 0) v.add_scaled(basis[i], combo[i]);
      out.insert(v);
    }
  }
  return out;
}

GradedBasis weight_space(int n, int charge) {
  GradedBasis out;
  for (const auto& m : enumerate_monomials(n, charge)) out.insert(State(m));
  return out;
}

GradedBasis weight_spaces(int cutoff, std::optional<int> charge) {
  GradedBasis out;
  for (int n = 0; n <= cutoff; ++n) {
    if (charge) {
      for (const auto& m : enumerate_monomials(n, *charge)) out.insert(State(m));
    } else {
      for (int c = -2 * n; c <= 2 * n; c += 2)
        for (const auto& m : enumerate_monomials(n, c)) out.insert(State(m));
    }
  }
  return out;
}

GradedBasis commutant_space(int n, int charge, const VertexAlgebra& va) {
  std::vector<OperatorSpec> ops;
  for (int m = 1; m <= n; ++m) ops.emplace_back(h(m));
  return kernel(ops, weight_space(n, charge), va);
}

GradedBasis commutant_space_virasoro(int n, int charge, const VertexAlgebra& va) {
  const State omega_gamma = va.virasoro_vector(VirasoroKind::Gamma);
  std::vector<OperatorSpec> ops;
  if (charge == 0) {
    ops.emplace_back(CompositeMode{omega_gamma, 0});
  } else {
    Scalar shift(charge * charge, 4 * va.k());
    shift.canonicalize();
    ops.emplace_back(LinearMap([&va, omega_gamma, shift](const State& v) {
      return combine(1, va.mode(omega_gamma, 1, v), -shift, v);
    }));
  }
  return kernel(ops, weight_space(n, charge), va);
}

GradedBasis sum(const GradedBasis& a, const GradedBasis& b) {
  GradedBasis out = a;
  for (const auto& v : b.all_vectors()) out.insert(v);
  return out;
}

GradedBasis intersect(const GradedBasis& a, const GradedBasis& b) {
  GradedBasis out;
  for (const Grade& g : a.grades()) {
    const auto& av = a.vectors(g);
    const auto& bv = b.vectors(g);
    if (bv.empty()) continue;
    std::vector<SparseVec<Monomial>> rows;
    for (const auto& v : av) rows.push_back(v.terms());
    for (const auto& v : bv) rows.push_back(v.terms());
    for (const auto& combo : null_combinations(rows)) {
      State v;
      for (std::size_t i = 0; i < av.size(); ++i)
        if (combo[i] != 0) v.add_scaled(av[i], combo[i]);
      out.insert(v);
    }
  }
  return out;
}

std::vector<State> parallel_map(std::size_t count, int jobs, const std::function<State(std::size_t)>& fn) {
  std::vector<State> out(count);
  const std::size_t workers = std::min<std::size_t>(std::max(jobs, 1), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> threads;
    for (std::size_t t = 0; t < workers; ++t) {
      threads.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            out[i] = fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

namespace {

struct Product {
  std::size_t left, right;
  int n;
};

// Memoized columns u_n w for left factors drawn from a growing list of
// states and monomials w, so that a product u_n v costs one column lookup
// per term of v.
class ColumnCache {
 public:
  ColumnCache(const std::vector<State>& lefts, const VertexAlgebra& va) : lefts_(lefts), va_(va) {}

  State apply(std::size_t left, int n, const State& v) {
    State out;
    for (const auto& [w, c] : v.terms()) out.add_scaled(column(left, n, w), c);
    return out;
  }

 private:
  struct Key {
    std::size_t left;
    int n;
    Monomial w;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& key) const {
      return key.w.hash() ^ (key.left * 0x9e3779b97f4a7c15ULL + static_cast<std::size_t>(key.n + 4096) * 7919);
    }
  };

  const State& column(std::size_t left, int n, const Monomial& w) {
    Key key{left, n, w};
    {
      std::shared_lock lock(mutex_);
      if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    }
    State col = va_.mode(lefts_[left], n, State(w));
    std::unique_lock lock(mutex_);
    return entries_.try_emplace(std::move(key), std::move(col)).first->second;
  }

  const std::vector<State>& lefts_;
  const VertexAlgebra& va_;
  std::shared_mutex mutex_;
  std::unordered_map<Key, State, KeyHash> entries_;
};

void push_products(std::vector<Product>& tasks, std::size_t i, std::size_t j, const std::vector<State>& span,
                   int cutoff) {
  const int a = span[i].homogeneous_grade()->weight;
  const int b = span[j].homogeneous_grade()->weight;
  // wt(u_n v) = a + b - n - 1 must land in [0, cutoff].
  for (int n = a + b - 1 - cutoff; n <= a + b - 1; ++n) tasks.push_back({i, j, n});
}

// Inserts every homogeneous component of weight <= cutoff; returns how many
// new basis vectors appeared and appends them to span.
std::size_t absorb(GradedBasis& basis, std::vector<State>& span, const State& v, int cutoff) {
  std::size_t grew = 0;
  for (const auto& [g, part] : v.components()) {
    if (g.weight > cutoff) continue;
    if (auto r = basis.insert(part)) {
      span.push_back(std::move(*r));
      ++grew;
    }
  }
  return grew;
}

}  // namespace

GradedBasis generated_subalgebra(std::span<const State> gens, int cutoff, const VertexAlgebra& va,
                                 const ClosureOptions& options, ClosureStats* stats) {
  GradedBasis basis;
  std::vector<State> span;
  ClosureStats local;
  absorb(basis, span, State::vacuum(), cutoff);
  for (const auto& g : gens) absorb(basis, span, g, cutoff);

  ColumnCache columns(span, va);
  auto run = [&](const std::vector<Product>& tasks) {
    auto results = parallel_map(tasks.size(), options.jobs, [&](std::size_t t) {
      return columns.apply(tasks[t].left, tasks[t].n, span[tasks[t].right]);
    });
    local.products += tasks.size();
    std::size_t grew = 0;
    for (const auto& r : results) grew += absorb(basis, span, r, cutoff);
    return grew;
  };

  std::size_t done = 0;
  while (true) {
    // Semi-naive rounds: only pairs involving a vector found last round.
    while (done < span.size()) {
      if (++local.rounds > options.max_rounds)
        throw ResourceLimit("generated_subalgebra exceeded " + std::to_string(options.max_rounds) + " rounds");
      const std::size_t end = span.size();
      std::vector<Product> tasks;
      for (std::size_t i = 0; i < end; ++i)
        for (std::size_t j = (i < done ? done : 0); j < end; ++j) push_products(tasks, i, j, span, cutoff);
      run(tasks);
      done = end;
    }
    if (!options.confirm_sweep) break;
    std::vector<Product> tasks;
    const std::size_t end = span.size();
    for (std::size_t i = 0; i < end; ++i)
      for (std::size_t j = 0; j < end; ++j) push_products(tasks, i, j, span, cutoff);
    const std::size_t grew = run(tasks);
    local.confirm_growth += grew;
    if (grew == 0) break;
  }
  if (stats) *stats = local;
  return basis;
}

GradedBasis generated_ideal(const State& x, const GradedBasis& ambient, int cutoff, const VertexAlgebra& va,
                            int jobs) {
  GradedBasis ideal;
  if (x.is_zero()) return ideal;
  std::vector<State> parts;
  for (auto& [g, part] : x.components()) parts.push_back(part);
  const auto us = ambient.all_vectors();
  struct Task {
    std::size_t u, x;
    int n;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < us.size(); ++i) {
    const int a = weight_of(*us[i].homogeneous_grade());
    for (std::size_t p = 0; p < parts.size(); ++p) {
      const int b = weight_of(*parts[p].homogeneous_grade());
      for (int n = a + b - 1 - cutoff; n <= a + b - 1; ++n) tasks.push_back({i, p, n});
    }
  }
  auto results = parallel_map(tasks.size(), jobs,
                              [&](std::size_t t) { return va.mode(us[tasks[t].u], tasks[t].n, parts[tasks[t].x]); });
  std::vector<State> sink;
  for (const auto& r : results) absorb(ideal, sink, r, cutoff);
  return ideal;
}

GradedBasis current_submodule(const State& x, int cutoff, const VertexAlgebra& va, std::optional<int> charge) {
  // Any vector of the submodule at weight <= cutoff is reached by a PBW word
  // (creation)(zero modes)(annihilation) applied to x, whose intermediate
  // weights never exceed max(wt(x), cutoff); charges are bounded by weight.
  GradedBasis out;
  std::vector<State> span;
  for (const auto& [g, part] : x.components())
    if (g.weight <= cutoff)
      if (auto r = out.insert(part)) span.push_back(std::move(*r));
  for (std::size_t done = 0; done < span.size(); ++done) {
    const State v = span[done];
    const int w = v.homogeneous_grade()->weight;
    for (Generator a : {Generator::H, Generator::E, Generator::F}) {
      for (int m = w - cutoff; m <= w; ++m) {
        State r = va.rewriter().apply_mode({a, m}, v);
        if (auto added = out.insert(r)) span.push_back(std::move(*added));
      }
    }
  }
  if (!charge) return out;
  GradedBasis sliced;
  for (const auto& g : out.grades())
    if (g.charge == *charge)
      for (const auto& v : out.vectors(g)) sliced.insert(v);
  return sliced;
}

std::map<int, std::size_t> audit_ideal(const GradedBasis& ideal, const GradedBasis& ambient, int cutoff,
                                       const VertexAlgebra& va, int jobs) {
  GradedBasis grown = ideal;
  const auto us = ambient.all_vectors();
  const auto vs = ideal.all_vectors();
  std::vector<Product> tasks;
  std::vector<State> both = us;
  both.insert(both.end(), vs.begin(), vs.end());
  for (std::size_t i = 0; i < us.size(); ++i)
    for (std::size_t j = 0; j < vs.size(); ++j) push_products(tasks, i, us.size() + j, both, cutoff);
  ColumnCache columns(both, va);
  auto results = parallel_map(tasks.size(), jobs, [&](std::size_t t) {
    return columns.apply(tasks[t].left, tasks[t].n, both[tasks[t].right]);
  });
  std::vector<State> sink;
  for (const auto& r : results) absorb(grown, sink, r, cutoff);
  std::map<int, std::size_t> growth;
  const auto before = ideal.dims(cutoff);
  for (const auto& [w, d] : grown.dims(cutoff)) growth[w] = d - before.at(w);
  return growth;
}

nlohmann::json to_json(const GradedBasis& basis, int k, int cutoff) {
  nlohmann::json dims = nlohmann::json::object();
  for (const auto& [w, d] : basis.dims(cutoff)) dims[std::to_string(w)] = d;
  auto vectors = nlohmann::json::array();
  for (const auto& v : basis.truncated(cutoff).all_vectors()) vectors.push_back(to_json(v));
  return {{"k", k}, {"cutoff", cutoff}, {"dims", dims}, {"vectors", vectors}};
}

GradedBasis graded_basis_from_json(const nlohmann::json& j) {
  GradedBasis out;
  for (const auto& v : j.at("vectors")) out.insert(state_from_json(v));
  return out;
}

}  // namespace pfva
