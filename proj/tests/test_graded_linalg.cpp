#include "doctest.h"

#include "support/oracles.hpp"
#include "support/properties.hpp"

#include <pfva/graded_linalg.hpp>
#include <pfva/parafermion_lab.hpp>

#include <algorithm>

using namespace pfva;

namespace {

State mono(std::vector<int> hs, std::vector<int> es, std::vector<int> fs, Scalar c = 1) {
  return State(Monomial(std::move(hs), std::move(es), std::move(fs)), c);
}

// dim of the joint kernel = dim domain - rank of the stacked images.
std::size_t kernel_dim_oracle(const std::vector<Monomial>& domain, const std::vector<ModeSymbol>& ops,
                              oracle::ReferenceAction& ref) {
  // Stack [op_1 v; op_2 v; ...] as one vector per domain element by tagging
  // each operator's image with a distinct extra h-part.
  std::vector<State> rows;
  for (const auto& m : domain) {
    State row;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      const State img = ref.act(ops[i].generator, ops[i].index, m);
      for (const auto& [t, c] : img.terms()) {
        auto hs = t.hs();
        hs.push_back(100 + static_cast<int>(i));
        row.add_term(Monomial(hs, t.es(), t.fs()), c);
      }
    }
    rows.push_back(row);
  }
  return domain.size() - oracle::rank(rows);
}

}  // namespace

TEST_SUITE("graded_linalg") {
  TEST_CASE("echelonize keeps one normalized pivot per vector") {
    const std::vector<State> vs{mono({2}, {}, {}, 3) + mono({1, 1}, {}, {}), mono({1, 1}, {}, {}, 2),
                                mono({2}, {}, {}, 6), mono({}, {1}, {1})};
    const GradedBasis b = echelonize(vs);
    CHECK(b.dim(Grade{2, 0}) == 3);
    CHECK(b.dim(2) == 3);
    CHECK(b.total_dim() == 3);
    CHECK(b.contains(mono({2}, {}, {}, Scalar(1, 7))));
    auto reversed = vs;
    std::reverse(reversed.begin(), reversed.end());
    CHECK(echelonize(reversed) == b);
    CHECK_THROWS_AS(echelonize(std::vector{mono({1}, {}, {}) + mono({2}, {}, {})}), std::invalid_argument);
  }

  TEST_CASE("insert reports growth only when the span grows") {
    GradedBasis b;
    CHECK(b.insert(mono({1}, {}, {}, 2)).has_value());
    CHECK_FALSE(b.insert(mono({1}, {}, {}, -5)).has_value());
    CHECK_FALSE(b.insert(State()).has_value());
    CHECK(b.dim(1) == 1);
  }

  TEST_CASE("coordinates reconstruct the vector") {
    const std::vector<State> vs{mono({2}, {}, {}), mono({}, {1}, {1}) + mono({1, 1}, {}, {})};
    const GradedBasis b = echelonize(vs);
    const State v = Scalar(5) * vs[0] - Scalar(2, 3) * vs[1];
    const auto coords = b.coordinates(v);
    REQUIRE(coords.has_value());
    const auto& basis = b.vectors(Grade{2, 0});
    State rebuilt;
    for (std::size_t i = 0; i < basis.size(); ++i) rebuilt.add_scaled(basis[i], (*coords)[i]);
    CHECK(rebuilt == v);
    CHECK_FALSE(b.coordinates(mono({1, 1}, {}, {})).has_value());
    CHECK(b.contains(State()));
  }

  TEST_CASE("kernel of h(0) on weight 1 is span{h(-1)}") {
    const VertexAlgebra va{LevelParams(2)};
    const std::vector<OperatorSpec> ops{h(0)};
    GradedBasis domain;
    for (int c : {-2, 0, 2}) domain = sum(domain, weight_space(1, c));
    const GradedBasis k = kernel(ops, domain, va);
    CHECK(k.total_dim() == 1);
    CHECK(k.contains(mono({1}, {}, {})));
  }

  TEST_CASE("kernel of h(1) on V0 weight 2 at k = 2 is 2-dimensional and contains omega") {
    const VertexAlgebra va{LevelParams(2)};
    const std::vector<OperatorSpec> ops{h(1)};
    const GradedBasis k = kernel(ops, weight_space(2, 0), va);
    CHECK(k.dim(2) == 2);
    CHECK(k.contains(va.virasoro_vector(VirasoroKind::Coset)));
  }

  TEST_CASE("kernel of h(1), h(2), h(3) on V0 weight 3 is 2-dimensional") {
    const VertexAlgebra va{LevelParams(2)};
    const std::vector<OperatorSpec> ops{h(1), h(2), h(3)};
    CHECK(kernel(ops, weight_space(3, 0), va).dim(3) == 2);
  }

  TEST_CASE("kernel dimensions agree with dense rank") {
    for (int k : {2, 3}) {
      const VertexAlgebra va{LevelParams(k)};
      oracle::ReferenceAction ref(k);
      for (int n = 1; n <= 5; ++n)
        for (int c : {0, 2, -4}) {
          std::vector<ModeSymbol> ops;
          std::vector<OperatorSpec> specs;
          for (int m = 1; m <= n; ++m) {
            ops.push_back(h(m));
            specs.emplace_back(h(m));
          }
          const auto domain = enumerate_monomials(n, c);
          CHECK(kernel(specs, weight_space(n, c), va).dim(Grade{n, c}) == kernel_dim_oracle(domain, ops, ref));
        }
    }
  }

  TEST_CASE("kernel accepts composite modes and linear maps") {
    const VertexAlgebra va{LevelParams(2)};
    const State omega = va.virasoro_vector(VirasoroKind::Coset);
    const std::vector<OperatorSpec> by_mode{CompositeMode{va.virasoro_vector(VirasoroKind::Gamma), 1}};
    const std::vector<OperatorSpec> by_map{
        LinearMap([&](const State& v) { return va.virasoro_mode(VirasoroKind::Gamma, 0, v); })};
    const GradedBasis a = kernel(by_mode, weight_space(2, 0), va);
    const GradedBasis b = kernel(by_map, weight_space(2, 0), va);
    CHECK(a == b);
    CHECK(a.contains(omega));
  }

  TEST_CASE("weight spaces count monomials") {
    for (int n = 0; n <= 6; ++n) CHECK(weight_space(n, 0).total_dim() == static_cast<std::size_t>(oracle::count_monomials(n, 0)));
    const auto series = oracle::three_boson_series(5);
    const GradedBasis all = weight_spaces(5);
    for (int n = 0; n <= 5; ++n) CHECK(all.dim(n) == static_cast<std::size_t>(series[n]));
    CHECK(weight_spaces(5, 2).dim(Grade{3, 2}) == static_cast<std::size_t>(oracle::count_monomials(3, 2)));
    CHECK(weight_spaces(5, 2).dim(Grade{3, 0}) == 0);
  }

  TEST_CASE("commutant dimensions 1,0,1,2,4,6,11") {
    const std::vector<std::size_t> expected{1, 0, 1, 2, 4, 6, 11};
    for (int k : {2, 3}) {
      const VertexAlgebra va{LevelParams(k)};
      for (int n = 0; n <= 6; ++n) {
        const GradedBasis nn = commutant_space(n, 0, va);
        CHECK(nn.dim(n) == expected[n]);
        for (const auto& v : nn.all_vectors())
          for (int m = 1; m <= n; ++m) CHECK(va.rewriter().apply_mode(h(m), v).is_zero());
      }
    }
  }

  TEST_CASE("commutant via h-modes equals commutant via omega_gamma") {
    for (int k : {2, 3}) {
      const VertexAlgebra va{LevelParams(k)};
      for (int n = 0; n <= 6; ++n)
        for (int c : {0, 2, -2}) CHECK(commutant_space(n, c, va) == commutant_space_virasoro(n, c, va));
    }
  }

  TEST_CASE("sum and intersect") {
    const GradedBasis a = echelonize(std::vector{mono({2}, {}, {}), mono({1, 1}, {}, {})});
    const GradedBasis b = echelonize(std::vector{mono({1, 1}, {}, {}) + mono({}, {1}, {1}), mono({2}, {}, {})});
    CHECK(sum(a, b).dim(2) == 3);
    const GradedBasis i = intersect(a, b);
    CHECK(i.dim(2) == 1);
    CHECK(i.contains(mono({2}, {}, {})));
    CHECK(intersect(a, GradedBasis()).total_dim() == 0);
    CHECK(sum(a, a) == a);
    CHECK(intersect(a, a) == a);
  }

  TEST_CASE("generated subalgebra examples") {
    const VertexAlgebra va{LevelParams(2)};
    const GradedBasis trivial = generated_subalgebra(std::vector<State>{}, 4, va);
    CHECK(trivial.total_dim() == 1);
    CHECK(trivial.contains(State::vacuum()));

    const GradedBasis heis = generated_subalgebra(std::vector{mono({1}, {}, {})}, 3, va);
    const auto p = oracle::partition_numbers(3);
    for (int n = 0; n <= 3; ++n) CHECK(heis.dim(n) == static_cast<std::size_t>(p[n]));
    CHECK(heis.dims(3) == std::map<int, std::size_t>{{0, 1}, {1, 1}, {2, 2}, {3, 3}});
  }

  TEST_CASE("h(-1) with f(-2)e(-1) - f(-1)e(-2) generates V0 up to weight 4") {
    const VertexAlgebra va{LevelParams(2)};
    const State x = va.rewriter().apply_word(std::vector{f(-2), e(-1)}, State::vacuum()) -
                    va.rewriter().apply_word(std::vector{f(-1), e(-2)}, State::vacuum());
    ClosureStats stats;
    const GradedBasis g = generated_subalgebra(std::vector{mono({1}, {}, {}), x}, 4, va, {}, &stats);
    CHECK(g == weight_spaces(4, 0));
    CHECK(stats.confirm_growth == 0);
    CHECK(stats.rounds >= 1);
  }

  TEST_CASE("closure is monotone and idempotent") {
    const VertexAlgebra va{LevelParams(3)};
    const State omega = va.virasoro_vector(VirasoroKind::Coset);
    const State w3 = w_vectors(va.params()).w3;
    const GradedBasis small = generated_subalgebra(std::vector{omega}, 5, va);
    const GradedBasis big = generated_subalgebra(std::vector{omega, w3}, 5, va);
    CHECK(big.contains_all(small));
    const auto again = big.all_vectors();
    CHECK(generated_subalgebra(again, 5, va) == big);
  }

  TEST_CASE("closure is independent of the job count") {
    const VertexAlgebra va{LevelParams(2)};
    const State w3 = w_vectors(va.params()).w3;
    const State omega = va.virasoro_vector(VirasoroKind::Coset);
    const GradedBasis one = generated_subalgebra(std::vector{omega, w3}, 5, va, ClosureOptions{.jobs = 1});
    const GradedBasis three = generated_subalgebra(std::vector{omega, w3}, 5, va, ClosureOptions{.jobs = 3});
    CHECK(one == three);
  }

  TEST_CASE("max_rounds raises ResourceLimit") {
    const VertexAlgebra va{LevelParams(2)};
    CHECK_THROWS_AS(generated_subalgebra(std::vector{mono({1}, {}, {})}, 4, va, ClosureOptions{.max_rounds = 1}),
                    ResourceLimit);
  }

  TEST_CASE("generated ideal of zero is empty") {
    const VertexAlgebra va{LevelParams(2)};
    CHECK(generated_ideal(State(), weight_spaces(3), 3, va).total_dim() == 0);
    CHECK(current_submodule(State(), 3, va).total_dim() == 0);
  }

  TEST_CASE("ideal generated by e(-1)^3|0> starts at weight 3") {
    const VertexAlgebra va{LevelParams(2)};
    const State top = singular_vectors(va.rewriter()).e_top;
    const GradedBasis j = current_submodule(top, 5, va);
    CHECK(j.dim(0) == 0);
    CHECK(j.dim(1) == 0);
    CHECK(j.dim(2) == 0);
    CHECK(j.dim(3) == 7);
    CHECK(j.dim(4) == 21);
    CHECK(j.dim(5) == 54);
    const auto growth = audit_ideal(j, weight_spaces(5), 5, va);
    for (const auto& [w, d] : growth) CHECK(d == 0);
  }

  TEST_CASE("one pass over a truncated ambient undercounts the ideal") {
    const VertexAlgebra va{LevelParams(2)};
    const State top = singular_vectors(va.rewriter()).e_top;
    const GradedBasis full = current_submodule(top, 5, va);
    const GradedBasis single = generated_ideal(top, weight_spaces(5), 5, va);
    CHECK(full.contains_all(single));
    CHECK(single.dim(4) < full.dim(4));
    CHECK(single.total_dim() < full.total_dim());
  }

  TEST_CASE("JSON round trip") {
    const VertexAlgebra va{LevelParams(2)};
    const GradedBasis nn = commutant_space(4, 0, va);
    const auto j = to_json(nn, 2, 4);
    CHECK(j.at("k") == 2);
    CHECK(j.at("cutoff") == 4);
    CHECK(graded_basis_from_json(j) == nn);
    CHECK(to_json(graded_basis_from_json(j), 2, 4).dump() == j.dump());
  }

  TEST_CASE("truncated drops high weights") {
    const GradedBasis all = weight_spaces(4, 0);
    CHECK(all.truncated(2) == weight_spaces(2, 0));
  }

  TEST_CASE("parallel_map keeps order and propagates errors") {
    auto fn = [](std::size_t i) { return State(Monomial::vacuum(), static_cast<long>(i)); };
    const auto a = parallel_map(17, 1, fn);
    const auto b = parallel_map(17, 4, fn);
    CHECK(a == b);
    CHECK(a[16] == State(Monomial::vacuum(), 16));
    CHECK_THROWS_AS(parallel_map(5, 3,
                                 [](std::size_t i) -> State {
                                   if (i == 3) throw std::runtime_error("boom");
                                   return State();
                                 }),
                    std::runtime_error);
  }
}
