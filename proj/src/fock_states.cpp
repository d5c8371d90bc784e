#include <pfva/fock_states.hpp>

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace pfva {

LevelParams::LevelParams(int k) : k_(k) {
  if (k < 2) throw std::invalid_argument("level k must be an integer >= 2, got " + std::to_string(k));
}

namespace {

void check_parts(const std::vector<int>& parts) {
  for (int p : parts)
    if (p < 1) throw std::invalid_argument("mode parts must be positive (modes are a(-i), i >= 1)");
}

// Larger parts first; a block that extends another one sorts before it.
std::strong_ordering compare_block(const std::vector<int>& a, const std::vector<int>& b) {
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int x = i < a.size() ? a[i] : 0;
    const int y = i < b.size() ? b[i] : 0;
    if (x != y) return y <=> x;
  }
  return std::strong_ordering::equal;
}

// All partitions of n into positive parts, non-increasing.
void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> partitions_of(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  partitions(n, n, cur, out);
  return out;
}

void append_block(std::ostringstream& os, char letter, const std::vector<int>& parts) {
  std::size_t i = 0;
  while (i < parts.size()) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    os << letter << "(-" << parts[i] << ")";
    if (j - i > 1) os << "^" << (j - i);
    i = j;
  }
}

}  // namespace

Monomial::Monomial(std::vector<int> hs, std::vector<int> es, std::vector<int> fs)
    : hs_(std::move(hs)), es_(std::move(es)), fs_(std::move(fs)) {
  check_parts(hs_);
  check_parts(es_);
  check_parts(fs_);
  std::ranges::sort(hs_, std::greater<>());
  std::ranges::sort(es_, std::greater<>());
  std::ranges::sort(fs_, std::greater<>());
  weight_ = std::accumulate(hs_.begin(), hs_.end(), 0) + std::accumulate(es_.begin(), es_.end(), 0) +
            std::accumulate(fs_.begin(), fs_.end(), 0);
}

std::size_t Monomial::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (int p : hs_) mix(static_cast<std::size_t>(p));
  mix(1000);
  for (int p : es_) mix(static_cast<std::size_t>(p));
  mix(2000);
  for (int p : fs_) mix(static_cast<std::size_t>(p));
  return h;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.weight() <=> b.weight(); c != 0) return c;
  if (auto c = a.charge() <=> b.charge(); c != 0) return c;
  if (auto c = compare_block(a.hs_, b.hs_); c != 0) return c;
  if (auto c = compare_block(a.es_, b.es_); c != 0) return c;
  return compare_block(a.fs_, b.fs_);
}

Grade grade(const Monomial& m) { return m.grade(); }

State::State(const Monomial& m, const Scalar& c) {
  if (c != 0) terms_.emplace(m, c);
}

Scalar State::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void State::add_term(const Monomial& m, const Scalar& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

void State::add_scaled(const State& other, const Scalar& c) {
  if (c == 0) return;
  if (&other == this) {
    *this *= (c + 1);
    return;
  }
  for (const auto& [m, x] : other.terms_) add_term(m, c * x);
}

State& State::operator*=(const Scalar& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, x] : terms_) x *= c;
  return *this;
}

std::optional<Grade> State::homogeneous_grade() const {
  if (terms_.empty()) return std::nullopt;
  const Grade g = terms_.begin()->first.grade();
  for (const auto& [m, x] : terms_)
    if (m.grade() != g) return std::nullopt;
  return g;
}

bool State::is_homogeneous() const { return terms_.empty() || homogeneous_grade().has_value(); }

std::map<Grade, State> State::components() const {
  std::map<Grade, State> out;
  for (const auto& [m, x] : terms_) out[m.grade()].terms_.emplace(m, x);
  return out;
}

State combine(const Scalar& a, const State& u, const Scalar& b, const State& v) {
  State out;
  out.add_scaled(u, a);
  out.add_scaled(v, b);
  return out;
}

std::vector<Monomial> enumerate_monomials(int n, int charge) {
  std::vector<Monomial> out;
  if (n < 0 || charge % 2 != 0) return out;
  const int diff = charge / 2;  // #e - #f
  std::vector<std::vector<std::vector<int>>> parts(n + 1);
  for (int m = 0; m <= n; ++m) parts[m] = partitions_of(m);
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; a + b <= n; ++b) {
      const int c = n - a - b;
      for (const auto& hp : parts[a])
        for (const auto& ep : parts[b])
          for (const auto& fp : parts[c])
            if (static_cast<int>(ep.size()) - static_cast<int>(fp.size()) == diff)
              out.emplace_back(hp, ep, fp);
    }
  }
  std::ranges::sort(out);
  return out;
}

std::string to_string(const Monomial& m) {
  std::ostringstream os;
  append_block(os, 'h', m.hs());
  append_block(os, 'e', m.es());
  append_block(os, 'f', m.fs());
  os << "|0>";
  return os.str();
}

std::string to_string(const State& v) {
  if (v.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : v.terms()) {
    Scalar mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1) os << to_string(mag) << " ";
    os << to_string(m);
    first = false;
  }
  return os.str();
}

nlohmann::json to_json(const State& v) {
  auto terms = nlohmann::json::array();
  for (const auto& [m, c] : v.terms()) {
    terms.push_back({{"h", m.hs()}, {"e", m.es()}, {"f", m.fs()}, {"coeff", to_string(c)}});
  }
  return {{"terms", terms}};
}

State state_from_json(const nlohmann::json& j) {
  State out;
  for (const auto& t : j.at("terms")) {
    Monomial m(t.at("h").get<std::vector<int>>(), t.at("e").get<std::vector<int>>(),
               t.at("f").get<std::vector<int>>());
    out.add_term(m, parse_scalar(t.at("coeff").get<std::string>()));
  }
  return out;
}

}  // namespace pfva
