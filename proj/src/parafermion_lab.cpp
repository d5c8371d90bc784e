#include <pfva/parafermion_lab.hpp>

#include "json.hpp"

#include <stdexcept>

namespace pfva {

namespace {

using Parts = std::vector<int>;

void add(State& s, Parts hs, Parts es, Parts fs, const Scalar& c) {
  s.add_term(Monomial(std::move(hs), std::move(es), std::move(fs)), c);
}

State power_word(const Rewriter& rw, ModeSymbol a, int times, State v) {
  for (int i = 0; i < times && !v.is_zero(); ++i) v = rw.apply_mode(a, v);
  return v;
}

// c with a = c * b, or nullopt when a is not a multiple of b (b != 0).
std::optional<Scalar> ratio(const State& a, const State& b) {
  if (b.is_zero()) return std::nullopt;
  const auto& [m, cb] = *b.terms().begin();
  const Scalar c = a.coeff(m) / cb;
  if (a == c * b) return c;
  return std::nullopt;
}

std::optional<int> lowest_weight(const GradedBasis& b) {
  for (const auto& g : b.grades())
    if (b.dim(g) > 0) return g.weight;
  return std::nullopt;
}

std::string join_dims(const DimTable& t) {
  std::string s;
  for (const auto& [w, d] : t) s += (s.empty() ? "" : ",") + std::to_string(d);
  return s;
}

CheckReport make_report(const std::string& name, const Lab& lab, int cutoff) {
  CheckReport r;
  r.check = name;
  r.k = lab.k();
  r.cutoff = cutoff;
  r.pass = true;
  return r;
}

void fail(CheckReport& r, const std::string& why, std::optional<State> witness = std::nullopt) {
  r.pass = false;
  r.notes.push_back("FAIL: " + why);
  if (witness && !r.witness) r.witness = std::move(witness);
}

// Mutual containment of closure and target, weights <= cutoff.
void compare_spaces(CheckReport& r, const std::string& label, const GradedBasis& closure, const GradedBasis& target,
                    int cutoff) {
  const GradedBasis c = closure.truncated(cutoff);
  const GradedBasis t = target.truncated(cutoff);
  r.dims[label] = c.dims(cutoff);
  for (const auto& v : t.all_vectors())
    if (!c.contains(v)) {
      fail(r, label + " misses a target vector at weight " + std::to_string(v.homogeneous_grade()->weight), v);
      return;
    }
  for (const auto& v : c.all_vectors())
    if (!t.contains(v)) {
      fail(r, label + " leaves the target at weight " + std::to_string(v.homogeneous_grade()->weight), v);
      return;
    }
}

}  // namespace

WVectors w_vectors(const LevelParams& p) {
  const Scalar k = p.k();
  const Scalar k2 = k * k;
  const Scalar k3 = k2 * k;
  WVectors w;

  State& w3 = w.w3;
  add(w3, {3}, {}, {}, k2);
  add(w3, {2, 1}, {}, {}, 3 * k);
  add(w3, {1, 1, 1}, {}, {}, 2);
  add(w3, {1}, {1}, {1}, -6 * k);
  add(w3, {}, {2}, {1}, 3 * k2);
  add(w3, {}, {1}, {2}, -3 * k2);

  State& w4 = w.w4;
  const Scalar a4 = k2 + k + 1;
  add(w4, {4}, {}, {}, -2 * k2 * a4);
  add(w4, {3, 1}, {}, {}, -8 * k * a4);
  add(w4, {2, 2}, {}, {}, -k * (5 * k2 - 6));
  add(w4, {2, 1, 1}, {}, {}, -2 * k * (11 * k + 6));
  add(w4, {1, 1, 1, 1}, {}, {}, -(11 * k + 6));
  add(w4, {2}, {1}, {1}, 4 * k2 * (6 * k - 5));
  add(w4, {1, 1}, {1}, {1}, 4 * k * (11 * k + 6));
  add(w4, {1}, {2}, {1}, -4 * k2 * (5 * k + 11));
  add(w4, {1}, {1}, {2}, 4 * k2 * (5 * k + 11));
  add(w4, {}, {3}, {1}, 8 * k2 * (k - 3) * (k - 2));
  add(w4, {}, {2}, {2}, -4 * k2 * (3 * k2 - 3 * k + 8));
  add(w4, {}, {1, 1}, {1, 1}, -2 * k2 * (6 * k - 5));
  add(w4, {}, {1}, {3}, 8 * k2 * a4);

  State& w5 = w.w5;
  const Scalar a5 = k2 + 3 * k + 5;
  add(w5, {5}, {}, {}, -2 * k3 * a5);
  add(w5, {4, 1}, {}, {}, -10 * k2 * a5);
  add(w5, {3, 2}, {}, {}, -5 * k2 * (3 * k2 - 4));
  add(w5, {3, 1, 1}, {}, {}, -5 * k * (7 * k2 + 12 * k + 16));
  add(w5, {2, 2, 1}, {}, {}, -15 * k * (3 * k2 - 4));
  add(w5, {2, 1, 1, 1}, {}, {}, -5 * k * (19 * k + 12));
  add(w5, {1, 1, 1, 1, 1}, {}, {}, -2 * (19 * k + 12));
  add(w5, {3}, {1}, {1}, 10 * k2 * (4 * k2 - 7 * k + 8));
  add(w5, {2, 1}, {1}, {1}, 20 * k2 * (10 * k - 7));
  add(w5, {1, 1, 1}, {1}, {1}, 10 * k * (19 * k + 12));
  add(w5, {2}, {2}, {1}, -5 * k2 * (11 * k2 - 14 * k + 12));
  add(w5, {1, 1}, {2}, {1}, -5 * k2 * (17 * k + 64));
  add(w5, {2}, {1}, {2}, 15 * k2 * (3 * k2 - 4));
  add(w5, {1, 1}, {1}, {2}, 5 * k2 * (17 * k + 64));
  add(w5, {1}, {3}, {1}, 30 * k2 * (k - 4) * (k - 3));
  add(w5, {1}, {2}, {2}, -40 * k2 * a5);
  add(w5, {1}, {1, 1}, {1, 1}, -10 * k2 * (10 * k - 7));
  add(w5, {1}, {1}, {3}, 10 * k2 * (3 * k2 + 19 * k + 8));
  add(w5, {}, {4}, {1}, -10 * k3 * (k - 4) * (k - 3));
  add(w5, {}, {3}, {2}, 20 * k3 * (k - 4) * (k - 3));
  add(w5, {}, {2, 1}, {1, 1}, 5 * k3 * (10 * k - 7));
  add(w5, {}, {2}, {3}, -10 * k3 * (2 * k2 - 4 * k + 17));
  add(w5, {}, {1, 1}, {2, 1}, -5 * k3 * (10 * k - 7));
  add(w5, {}, {1}, {4}, 10 * k3 * a5);
  return w;
}

SingularVectors singular_vectors(const Rewriter& rw) {
  const int k = rw.k();
  SingularVectors s;
  s.e_top = State(Monomial({}, Parts(k + 1, 1), {}));
  s.f_bottom = power_word(rw, f(0), k + 1, s.e_top);
  return s;
}

std::vector<std::size_t> partition_counts(int cutoff) {
  std::vector<std::size_t> out;
  for (int n = 0; n <= cutoff; ++n) {
    std::size_t c = 0;
    for (const auto& m : enumerate_monomials(n, 0))
      if (m.es().empty() && m.fs().empty()) ++c;
    out.push_back(c);
  }
  return out;
}

nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json dims = nlohmann::json::object();
  for (const auto& [name, table] : r.dims) {
    auto& t = dims[name] = nlohmann::json::object();
    for (const auto& [w, d] : table) t[std::to_string(w)] = d;
  }
  nlohmann::json scalars = nlohmann::json::object();
  for (const auto& [name, s] : r.scalars) scalars[name] = to_string(s);
  return {{"check", r.check},
          {"k", r.k},
          {"cutoff", r.cutoff},
          {"pass", r.pass},
          {"skipped", r.skipped},
          {"scope", "finite cutoff: weights <= " + std::to_string(r.cutoff)},
          {"dims", dims},
          {"witness", r.witness ? to_json(*r.witness) : nlohmann::json(nullptr)},
          {"scalars", scalars},
          {"notes", r.notes}};
}

Lab::Lab(int k, LabOptions options)
    : options_(std::move(options)),
      va_(LevelParams(k), VertexOptions{.max_weight = options_.max_weight}),
      w_(w_vectors(va_.params())),
      singular_(singular_vectors(va_.rewriter())) {}

template <class Fn>
const GradedBasis& Lab::cached(const std::string& space, int cutoff, Fn compute) {
  const auto key = std::make_pair(space, cutoff);
  if (auto it = spaces_.find(key); it != spaces_.end()) return it->second;
  if (options_.store)
    if (auto hit = options_.store->load(k(), space, cutoff)) return spaces_.emplace(key, std::move(*hit)).first->second;
  GradedBasis b = compute();
  if (options_.store) options_.store->store(b, k(), space, cutoff);
  return spaces_.emplace(key, std::move(b)).first->second;
}

const GradedBasis& Lab::v0(int cutoff) {
  return cached("V0", cutoff, [&] { return weight_spaces(cutoff, 0); });
}

const GradedBasis& Lab::n0(int cutoff) {
  return cached("N0", cutoff, [&] {
    GradedBasis b;
    for (int n = 0; n <= cutoff; ++n)
      for (const auto& v : commutant_space(n, 0, va_).all_vectors()) b.insert(v);
    return b;
  });
}

const GradedBasis& Lab::j(int cutoff) {
  return cached("J", cutoff, [&] { return current_submodule(singular_.e_top, cutoff, va_); });
}

const GradedBasis& Lab::itilde(int cutoff) {
  const GradedBasis& jj = j(cutoff);
  const GradedBasis& nn = n0(cutoff);
  return cached("Itilde", cutoff, [&] { return intersect(jj, nn); });
}

const GradedBasis& Lab::itilde_generated(int cutoff) {
  const GradedBasis& nn = n0(cutoff);
  return cached("Itilde-gen", cutoff,
                [&] { return generated_ideal(singular_.f_bottom, nn, cutoff, va_, options_.jobs); });
}

const GradedBasis& Lab::w_algebra(int cutoff) {
  return cached("W-algebra", cutoff, [&] {
    const std::vector<State> gens{omega(), w_.w3};
    return generated_subalgebra(gens, cutoff, va_, {.jobs = options_.jobs});
  });
}

DimTable Lab::k0_dims(int cutoff) {
  const auto n = n0(cutoff).dims(cutoff);
  const auto i = itilde(cutoff).dims(cutoff);
  DimTable out;
  for (const auto& [w, d] : n) out[w] = d - i.at(w);
  return out;
}

CheckReport compare_generation(Lab& lab, const std::string& name, const std::vector<State>& gens,
                               const GradedBasis& target, int cutoff) {
  CheckReport r = make_report(name, lab, cutoff);
  const GradedBasis closure = generated_subalgebra(gens, cutoff, lab.va(), {.jobs = lab.options().jobs});
  r.dims["target"] = target.truncated(cutoff).dims(cutoff);
  compare_spaces(r, "generated", closure, target, cutoff);
  return r;
}

CheckReport check_generation_v0(Lab& lab, int cutoff) {
  CheckReport r = make_report("generation-v0", lab, cutoff);
  const auto& rw = lab.rewriter();
  const GradedBasis& v0 = lab.v0(cutoff);
  r.dims["V0"] = v0.dims(cutoff);
  const State h1(Monomial({1}, {}, {}));
  const State fe = rw.apply_word(std::vector{f(-2), e(-1)}, State::vacuum());
  const State fe_remark = rw.apply_word(std::vector{f(-1), e(-2)}, State::vacuum()) - fe;
  const ClosureOptions opts{.jobs = lab.options().jobs};

  const std::vector<State> pair{h1, fe};
  compare_spaces(r, "generated", generated_subalgebra(pair, cutoff, lab.va(), opts), v0, cutoff);
  const std::vector<State> remark{h1, fe_remark};
  compare_spaces(r, "generated_remark", generated_subalgebra(remark, cutoff, lab.va(), opts), v0, cutoff);
  r.notes.push_back("generators h(-1)|0>, f(-2)e(-1)|0> and h(-1)|0>, f(-1)e(-2)|0> - f(-2)e(-1)|0>");
  return r;
}

CheckReport check_generation_n0(Lab& lab, int cutoff) {
  CheckReport r = make_report("generation-n0", lab, cutoff);
  const int k = lab.k();
  const GradedBasis& n0 = lab.n0(cutoff);
  r.dims["N0"] = n0.dims(cutoff);
  compare_spaces(r, "generated_omega_w3", lab.w_algebra(cutoff), n0, cutoff);

  const State omega = lab.omega();
  const State w3w3 = lab.va().mode(lab.w().w3, 3, lab.w().w3);
  const Scalar kk = k;
  const Scalar expected = 36 * kk * kk * kk * (kk - 2) * (kk + 2) * (3 * kk + 4);
  r.scalars["w3w3_expected"] = expected;
  if (auto c = ratio(w3w3, omega)) {
    r.scalars["w3w3"] = *c;
    if (*c != expected) fail(r, "W3_3 W3 is " + to_string(*c) + " omega", w3w3);
  } else {
    fail(r, "W3_3 W3 is not a multiple of omega", w3w3);
  }

  if (k >= 3) {
    const std::vector<State> gens{lab.w().w3};
    const GradedBasis alone = generated_subalgebra(gens, cutoff, lab.va(), {.jobs = lab.options().jobs});
    compare_spaces(r, "generated_w3", alone, n0, cutoff);
  }
  return r;
}

CheckReport check_maximal_ideal(Lab& lab, int cutoff) {
  CheckReport r = make_report("maximal-ideal", lab, cutoff);
  const int k = lab.k();
  const auto& [e_top, f_bottom] = lab.singular();
  const GradedBasis& n0 = lab.n0(cutoff);
  const GradedBasis& jj = lab.j(cutoff);
  const GradedBasis& ref = lab.itilde(cutoff);
  const GradedBasis& gen = lab.itilde_generated(cutoff);
  r.dims["N0"] = n0.dims(cutoff);
  r.dims["J"] = jj.dims(cutoff);
  r.dims["Itilde_ref"] = ref.dims(cutoff);
  r.dims["Itilde_gen"] = gen.dims(cutoff);

  if (f_bottom.is_zero()) fail(r, "f(0)^{k+1}e(-1)^{k+1}|0> vanishes");
  if (!n0.contains(f_bottom)) fail(r, "f(0)^{k+1}e(-1)^{k+1}|0> is not in N0", f_bottom);
  for (const auto& v : ref.all_vectors())
    if (!gen.contains(v)) fail(r, "J cap N0 vector outside the generated ideal", v);
  for (const auto& v : gen.all_vectors())
    if (!ref.contains(v)) fail(r, "generated ideal vector outside J cap N0", v);

  const auto growth = audit_ideal(gen, n0, cutoff, lab.va(), lab.options().jobs);
  r.dims["audit_growth"] = growth;
  for (const auto& [w, g] : growth)
    if (g != 0) fail(r, "audit pass grew the ideal at weight " + std::to_string(w));

  const State theta = lab.rewriter().theta(f_bottom);
  const Scalar sign = (k + 1) % 2 == 0 ? 1 : -1;
  if (theta != sign * f_bottom) fail(r, "theta(fBottom) != (-1)^{k+1} fBottom", theta - sign * f_bottom);

  if (auto lw = lowest_weight(ref)) r.notes.push_back("lowest weight of Itilde: " + std::to_string(*lw));
  r.notes.push_back(std::string("W3 in Itilde: ") + (ref.contains(lab.w().w3) ? "yes" : "no"));

  const GradedBasis single = generated_ideal(e_top, weight_spaces(cutoff), cutoff, lab.va(), lab.options().jobs);
  r.dims["J_single_pass_truncated"] = single.dims(cutoff);
  if (!(single == jj.truncated(cutoff)))
    r.notes.push_back("single-pass span of u_n e(-1)^{k+1}|0> with u of weight <= cutoff is smaller than J (" +
                      join_dims(single.dims(cutoff)) + " vs " + join_dims(jj.dims(cutoff)) +
                      "); J is built as the current-mode submodule instead");
  return r;
}

CheckReport check_theta_properties(Lab& lab, int imax) {
  CheckReport r = make_report("theta", lab, imax);
  const auto& rw = lab.rewriter();
  Integer fact = 1;
  for (int i = 1; i <= imax; ++i) {
    const std::string tag = "i=" + std::to_string(i);
    fact *= (2 * i - 1) * (2 * i);  // (2i)!
    const Scalar sign = i % 2 == 0 ? 1 : -1;
    const State top(Monomial({}, Parts(i, 1), {}));
    const State x = power_word(rw, f(0), i, top);

    const State tx = rw.theta(x);
    if (tx != sign * x) fail(r, tag + ": theta(f(0)^i e(-1)^i|0>) != (-1)^i f(0)^i e(-1)^i|0>", tx - sign * x);

    const State y = power_word(rw, f(0), 2 * i, top);
    const State fi(Monomial({}, {}, Parts(i, 1)));
    const Scalar c = sign * Scalar(fact);
    r.scalars["c_" + std::to_string(i)] = c;
    if (y != c * fi) fail(r, tag + ": f(0)^{2i} e(-1)^i|0> != (-1)^i (2i)! f(-1)^i|0>", y - c * fi);

    State ej = y;
    for (int jj = 0; jj <= 2 * i; ++jj) {
      const Scalar coeff = Scalar(fact * factorial(jj)) / Scalar(factorial(2 * i - jj));
      const State rhs = coeff * power_word(rw, f(0), 2 * i - jj, top);
      if (ej != rhs)
        fail(r, tag + ", j=" + std::to_string(jj) + ": e(0)^j f(0)^{2i} e(-1)^i|0> descent formula", ej - rhs);
      ej = rw.apply_mode(e(0), ej);
    }

    const State efi = power_word(rw, e(0), i, fi);
    if (x != sign * efi) fail(r, tag + ": f(0)^i e(-1)^i|0> != (-1)^i e(0)^i f(-1)^i|0>", x - sign * efi);
  }

  const int k = lab.k();
  const State& fb = lab.singular().f_bottom;
  const Scalar sign = (k + 1) % 2 == 0 ? 1 : -1;
  const State tfb = rw.theta(fb);
  if (tfb != sign * fb) fail(r, "theta(fBottom) != (-1)^{k+1} fBottom", tfb - sign * fb);
  r.notes.push_back("identities checked for 1 <= i <= " + std::to_string(imax));
  return r;
}

CheckReport check_decomposition(Lab& lab, int cutoff) {
  CheckReport r = make_report("decomposition", lab, cutoff);
  const auto& rw = lab.rewriter();
  const GradedBasis& v0 = lab.v0(cutoff);
  const GradedBasis& n0 = lab.n0(cutoff);
  const auto p = partition_counts(cutoff);
  const auto dv = v0.dims(cutoff);
  const auto dn = n0.dims(cutoff);
  DimTable parts, conv;
  for (int n = 0; n <= cutoff; ++n) {
    parts[n] = p[n];
    std::size_t s = 0;
    for (int m = 0; m <= n; ++m) s += p[m] * dn.at(n - m);
    conv[n] = s;
    if (s != dv.at(n)) fail(r, "dim V0 at weight " + std::to_string(n) + " is not the convolution");
  }
  r.dims["V0"] = dv;
  r.dims["N0"] = dn;
  r.dims["partitions"] = parts;
  r.dims["convolution"] = conv;

  // The products h(-i_1)...h(-i_p) w, w in N0, must span V0 as well.
  GradedBasis products;
  for (int n = 0; n <= cutoff; ++n)
    for (int m = 0; m <= n; ++m)
      for (const auto& hm : enumerate_monomials(m, 0)) {
        if (!hm.es().empty() || !hm.fs().empty()) continue;
        const Word word = to_word(hm);
        for (const auto& w : n0.vectors({n - m, 0})) products.insert(rw.apply_word(word, w));
      }
  compare_spaces(r, "heisenberg_times_N0", products, v0, cutoff);
  return r;
}

CheckReport check_k0(Lab& lab, int cutoff) {
  CheckReport r = make_report("k0", lab, cutoff);
  const GradedBasis& n0 = lab.n0(cutoff);
  const GradedBasis& it = lab.itilde(cutoff);
  const GradedBasis& wa = lab.w_algebra(cutoff);
  r.dims["N0"] = n0.dims(cutoff);
  r.dims["Itilde"] = it.dims(cutoff);
  r.dims["K0"] = lab.k0_dims(cutoff);
  r.dims["W_algebra"] = wa.dims(cutoff);
  compare_spaces(r, "W_algebra_plus_Itilde", sum(wa, it), n0, cutoff);

  const bool w3_in = it.contains(lab.w().w3);
  r.notes.push_back(std::string("W3 in Itilde (W3 = 0 in K0): ") + (w3_in ? "yes" : "no"));
  if (lab.k() == 2 && !w3_in) fail(r, "W3 is not in Itilde at k = 2", lab.w().w3);
  return r;
}

CheckReport proportionality_check(Lab& lab) {
  const int k = lab.k();
  if (k < 2 || k > 4) throw std::invalid_argument("proportionality check needs k in {2, 3, 4}");
  CheckReport r = make_report("proportionality", lab, k + 1);
  const State& w = k == 2 ? lab.w().w3 : k == 3 ? lab.w().w4 : lab.w().w5;
  const State& fb = lab.singular().f_bottom;
  if (fb.is_zero()) {
    fail(r, "fBottom vanishes");
    return r;
  }
  if (auto c = ratio(fb, w); c && *c != 0) {
    r.scalars["fbottom_over_w"] = *c;
    r.notes.push_back("fBottom = " + to_string(*c) + " W" + std::to_string(k + 1));
  } else {
    fail(r, "fBottom is not a multiple of W" + std::to_string(k + 1), fb);
  }
  return r;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"generation-v0", "generation-n0", "maximal-ideal", "theta",
                                              "decomposition", "k0",            "proportionality"};
  return names;
}

CheckReport run_check(Lab& lab, const std::string& name, int cutoff, int imax) {
  const int k = lab.k();
  auto skipped = [&](const std::string& why) {
    CheckReport r = make_report(name, lab, cutoff);
    r.skipped = true;
    r.notes.push_back("skipped: " + why);
    return r;
  };
  if (name == "generation-v0") return cutoff >= 3 ? check_generation_v0(lab, cutoff) : skipped("needs cutoff >= 3");
  if (name == "generation-n0") return cutoff >= 5 ? check_generation_n0(lab, cutoff) : skipped("needs cutoff >= 5");
  if (name == "maximal-ideal")
    return cutoff >= k + 1 ? check_maximal_ideal(lab, cutoff) : skipped("needs cutoff >= k+1");
  if (name == "theta") return imax >= 1 ? check_theta_properties(lab, imax) : skipped("needs imax >= 1");
  if (name == "decomposition") return check_decomposition(lab, cutoff);
  if (name == "k0") return cutoff >= k + 1 ? check_k0(lab, cutoff) : skipped("needs cutoff >= k+1");
  if (name == "proportionality") return k <= 4 ? proportionality_check(lab) : skipped("needs k in {2, 3, 4}");
  throw std::invalid_argument("unknown check '" + name + "'");
}

}  // namespace pfva
