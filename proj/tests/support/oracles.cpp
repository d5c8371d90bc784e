#include "oracles.hpp"

#include <stdexcept>

namespace oracle {

namespace {

int gen_index(Generator g) { return static_cast<int>(g); }

// [a,b] as (coefficient, generator), or coefficient 0.
std::pair<int, Generator> lie_bracket(Generator a, Generator b) {
  using G = Generator;
  if (a == G::H && b == G::E) return {2, G::E};
  if (a == G::H && b == G::F) return {-2, G::F};
  if (a == G::E && b == G::H) return {-2, G::E};
  if (a == G::F && b == G::H) return {2, G::F};
  if (a == G::E && b == G::F) return {1, G::H};
  if (a == G::F && b == G::E) return {-1, G::H};
  return {0, G::H};
}

int killing(Generator a, Generator b) {
  using G = Generator;
  if (a == G::H && b == G::H) return 2;
  if ((a == G::E && b == G::F) || (a == G::F && b == G::E)) return 1;
  return 0;
}

// Leftmost letter b(-s) and the remaining monomial.
std::tuple<Generator, int, Monomial> first_letter(const Monomial& m) {
  auto drop = [](const std::vector<int>& v) { return std::vector<int>(v.begin() + 1, v.end()); };
  if (!m.hs().empty()) return {Generator::H, m.hs()[0], Monomial(drop(m.hs()), m.es(), m.fs())};
  if (!m.es().empty()) return {Generator::E, m.es()[0], Monomial({}, drop(m.es()), m.fs())};
  return {Generator::F, m.fs()[0], Monomial({}, {}, drop(m.fs()))};
}

Monomial with_part(const Monomial& m, Generator a, int part) {
  auto hs = m.hs(), es = m.es(), fs = m.fs();
  (a == Generator::H ? hs : a == Generator::E ? es : fs).push_back(part);
  return Monomial(hs, es, fs);
}

}  // namespace

State ReferenceAction::act(Generator a, int n, const Monomial& m) {
  const auto key = std::make_tuple(gen_index(a), n, m);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  State out;
  if (m.is_vacuum()) {
    if (n < 0) out = State(with_part(m, a, -n));
  } else {
    const auto [b, s, rest] = first_letter(m);
    if (n < 0 && gen_index(a) <= gen_index(b)) {
      out = State(with_part(m, a, -n));
    } else {
      // a(n) b(-s) r = b(-s) a(n) r + [a,b](n-s) r + n <a,b> delta_{n,s} k r
      out = act(b, -s, act(a, n, rest));
      if (auto [c, g] = lie_bracket(a, b); c != 0) out = out + Scalar(c) * act(g, n - s, rest);
      if (n == s) out = out + Scalar(n * killing(a, b) * k_) * State(rest);
    }
  }
  memo_.emplace(key, out);
  return out;
}

State ReferenceAction::act(Generator a, int n, const State& v) {
  State out;
  for (const auto& [m, c] : v.terms()) out.add_scaled(act(a, n, m), c);
  return out;
}

State ReferenceAction::word(const std::vector<std::pair<Generator, int>>& letters) {
  State v = State::vacuum();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) v = act(it->first, it->second, v);
  return v;
}

State reference_mode(ReferenceAction& ref, const State& u, int n, const State& w) {
  State out;
  for (const auto& [um, uc] : u.terms()) {
    for (const auto& [wm, wc] : w.terms()) {
      const Scalar c = uc * wc;
      const State wv(wm);
      const int ww = wm.weight();
      if (um.is_vacuum()) {
        if (n == -1) out.add_scaled(wv, c);
        continue;
      }
      std::vector<std::pair<Generator, int>> letters;
      for (int i : um.hs()) letters.emplace_back(Generator::H, i);
      for (int i : um.es()) letters.emplace_back(Generator::E, i);
      for (int i : um.fs()) letters.emplace_back(Generator::F, i);
      if (letters.size() == 1 && letters[0].second == 1) {
        out.add_scaled(ref.act(letters[0].first, n, wv), c);
      } else if (letters.size() == 1 && letters[0].second == 2) {
        out.add_scaled(ref.act(letters[0].first, n - 1, wv), c * -n);
      } else if (letters.size() == 2 && letters[0].second == 1 && letters[1].second == 1) {
        const Generator a = letters[0].first, b = letters[1].first;
        for (int j = n - 1 - ww; j <= -1; ++j) out.add_scaled(ref.act(a, j, ref.act(b, n - 1 - j, wv)), c);
        for (int j = 0; j <= ww; ++j) out.add_scaled(ref.act(b, n - 1 - j, ref.act(a, j, wv)), c);
      } else {
        throw std::invalid_argument("reference_mode handles weight <= 2 only");
      }
    }
  }
  return out;
}

std::vector<long> partition_numbers(int n) {
  // q[m][l]: partitions of m with parts <= l.
  std::vector<std::vector<long>> q(n + 1, std::vector<long>(n + 1, 0));
  for (int l = 0; l <= n; ++l) q[0][l] = 1;
  for (int m = 1; m <= n; ++m)
    for (int l = 1; l <= n; ++l) q[m][l] = q[m][l - 1] + (m >= l ? q[m - l][l] : 0);
  std::vector<long> p(n + 1);
  for (int m = 0; m <= n; ++m) p[m] = q[m][n > 0 ? n : 0];
  if (n >= 0) p[0] = 1;
  return p;
}

std::vector<long> three_boson_series(int n) {
  std::vector<long> s(n + 1, 0);
  s[0] = 1;
  // Multiply by 1/(1-q^i) three times for every i.
  for (int i = 1; i <= n; ++i)
    for (int rep = 0; rep < 3; ++rep)
      for (int m = i; m <= n; ++m) s[m] += s[m - i];
  return s;
}

std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int left, int max_part) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(left, max_part); p >= 1; --p) {
      cur.push_back(p);
      self(self, left - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

long count_monomials(int n, int charge) {
  long count = 0;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; a + b <= n; ++b) {
      const int c = n - a - b;
      for (const auto& ps : partitions(b))
        for (const auto& qs : partitions(c))
          if (2 * (static_cast<int>(ps.size()) - static_cast<int>(qs.size())) == charge)
            count += static_cast<long>(partitions(a).size());
    }
  return count;
}

std::size_t rank(const std::vector<State>& vectors) {
  std::map<Monomial, std::size_t> column;
  for (const auto& v : vectors)
    for (const auto& [m, c] : v.terms()) column.emplace(m, column.size());
  std::vector<std::vector<Scalar>> a(vectors.size(), std::vector<Scalar>(column.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (const auto& [m, c] : vectors[i].terms()) a[i][column[m]] = c;
  std::size_t r = 0;
  for (std::size_t col = 0; col < column.size() && r < a.size(); ++col) {
    std::size_t p = r;
    while (p < a.size() && a[p][col] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (a[i][col] == 0) continue;
      const Scalar f = a[i][col] / a[r][col];
      for (std::size_t j = col; j < column.size(); ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

Scalar binomial(long l, long j) {
  Scalar r = 1;
  for (long i = 0; i < j; ++i) r = r * Scalar(l - i) / Scalar(i + 1);
  return r;
}

Scalar factorial(long n) {
  Scalar r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace oracle
