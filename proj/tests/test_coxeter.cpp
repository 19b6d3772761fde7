#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "wickfock/coxeter.hpp"

using namespace wickfock;

namespace {

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

std::vector<std::pair<const char*, WickSpec>> presets() {
  return {{"q-ccr 0.5", preset_q_ccr(2, 0.5)},
          {"q-ccr 1", preset_q_ccr(2, 1.0)},
          {"q-ccr -1", preset_q_ccr(2, -1.0)},
          {"qij +1", preset_qij_ccr({0.5, 0.5}, {{1, 1}, {1, 1}})},
          {"qij -1", preset_qij_ccr({0.5, 0.5}, {{1, -1}, {-1, 1}})}};
}

bool in_subgroup(const Permutation& p, GeneratorSet J) {
  // W_J preserves the blocks cut at every generator outside J.
  for (std::size_t x = 0; x < p.size(); ++x) {
    std::size_t lo = x, hi = x;
    while (lo > 0 && (J & (1u << (lo - 1)))) --lo;
    while (hi + 1 < p.size() && (J & (1u << hi))) ++hi;
    if (p[x] - 1 < lo || p[x] - 1 > hi) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("group enumeration") {
  const auto s2 = enumerate_group(1);
  REQUIRE(s2.size() == 2);
  CHECK(s2[0].length == 0);
  CHECK(s2[1].length == 1);

  const auto s3 = enumerate_group(2);
  std::multiset<std::size_t> lengths;
  for (const auto& e : s3) lengths.insert(e.length);
  CHECK(lengths == std::multiset<std::size_t>{0, 1, 1, 2, 2, 3});

  for (std::size_t n = 1; n <= 5; ++n) {
    const auto g = enumerate_group(n);
    CHECK(g.size() == factorial(n + 1));
    std::set<Permutation> distinct;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const auto& e = g[k];
      distinct.insert(e.perm);
      std::vector<std::size_t> zero_based(e.perm);
      for (auto& x : zero_based) --x;
      CHECK(e.length == oracle::inversions(zero_based));
      CHECK(e.word.size() == e.length);
      CHECK(word_to_permutation(e.word, n + 1) == e.perm);
      if (k > 0) CHECK(std::pair(g[k - 1].length, g[k - 1].perm) < std::pair(e.length, e.perm));
    }
    CHECK(distinct.size() == g.size());
  }
  CHECK(longest_element(3).length == 6);
  CHECK_THROWS(enumerate_group(0));
  CHECK_THROWS(enumerate_group(7));
}

TEST_CASE("canonical reduced words") {
  CHECK(reduced_word({1, 2, 3}).empty());
  CHECK(reduced_word({3, 2, 1}) == Word{1, 2, 1});
  const Word w = reduced_word({2, 3, 1});
  CHECK(w.size() == 2);
  CHECK(word_to_permutation(w, 3) == Permutation{2, 3, 1});
  // sigma_i composes on the right by swapping positions.
  CHECK(word_to_permutation({1}, 3) == Permutation{2, 1, 3});
  CHECK(compose({2, 1, 3}, {1, 3, 2}) == Permutation{2, 3, 1});
  // The longest element matches the nested form (s1...sn)(s1...s_{n-1})...s1.
  for (std::size_t n = 1; n <= 5; ++n) {
    Word nested;
    for (std::size_t len = n; len >= 1; --len)
      for (std::size_t i = 1; i <= len; ++i) nested.push_back(i);
    Permutation rev(n + 1);
    for (std::size_t i = 0; i <= n; ++i) rev[i] = n + 1 - i;
    CHECK(word_to_permutation(nested, n + 1) == rev);
    CHECK(longest_element(n).perm == rev);
  }
}

TEST_CASE("random reduced words are reduced and multiply correctly") {
  std::mt19937_64 rng(5);
  for (const auto& e : enumerate_group(4))
    for (int trial = 0; trial < 3; ++trial) {
      const Word w = random_reduced_word(e.perm, rng);
      CHECK(w.size() == e.length);
      CHECK(word_to_permutation(w, 5) == e.perm);
    }
}

TEST_CASE("descent classes and parabolic subgroups") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto group = enumerate_group(n);
    const GeneratorSet all = (1u << n) - 1;
    for (GeneratorSet J = 0; J <= all; ++J) {
      const auto data = descent_data(n, J);
      CHECK(data.descent_class.size() * data.parabolic_subgroup.size() == factorial(n + 1));
      for (const auto& w : data.parabolic_subgroup) CHECK(in_subgroup(w.perm, J));
      std::size_t expected_w = 0;
      for (const auto& e : group) expected_w += in_subgroup(e.perm, J);
      CHECK(data.parabolic_subgroup.size() == expected_w);
      for (const auto& dlt : data.descent_class)
        for (std::size_t s = 1; s <= n; ++s)
          if (J & (1u << (s - 1))) CHECK(dlt.perm[s - 1] < dlt.perm[s]);
      // Unique factorization sigma = delta w.
      std::map<Permutation, int> hits;
      for (const auto& dlt : data.descent_class)
        for (const auto& w : data.parabolic_subgroup) ++hits[compose(dlt.perm, w.perm)];
      CHECK(hits.size() == group.size());
      for (const auto& [p, c] : hits) CHECK(c == 1);
    }
    CHECK(descent_data(n, all).descent_class.size() == 1);
    CHECK(descent_data(n, 0u).parabolic_subgroup.size() == 1);
  }
  const auto d21 = descent_data(2, std::vector<std::size_t>{1});
  CHECK(d21.parabolic_subgroup.size() == 2);
  CHECK(d21.descent_class.size() == 3);
  CHECK_THROWS(descent_data(2, std::vector<std::size_t>{3}));
}

TEST_CASE("phi on scalars and identities") {
  const auto t = build_T(preset_q_ccr(1, 0.5));
  for (const auto& e : enumerate_group(2))
    CHECK(phi(t, e, 2)(0, 0).real() == doctest::Approx(std::pow(0.5, e.length)).epsilon(1e-15));
  CHECK(phi(t, longest_element(2), 2)(0, 0).real() == doctest::Approx(0.125));
  const auto flip = build_T(preset_q_ccr(2, 1.0));
  CHECK(distance(phi(flip, enumerate_group(3).front(), 3), TensorOperator::identity(2, 4)) == 0.0);
}

TEST_CASE("phi refuses non-braided T unless forced") {
  Matrix m = preset_q_ccr(2, 0.5).coefficient_matrix();
  m(0, 3) = m(3, 0) = 0.1;
  const TensorOperator bad(2, 2, m);
  CHECK_THROWS_AS(phi(bad, longest_element(2), 2), NotBraidedError);
  CHECK_THROWS_AS(group_sum(bad, 2), NotBraidedError);
  CHECK_NOTHROW(phi(bad, longest_element(2), 2, true));
  CHECK_NOTHROW(PhiTable(bad, 2, true));
}

TEST_CASE("Matsumoto: phi does not depend on the reduced word") {
  for (const auto& [name, spec] : presets()) {
    const auto t = build_T(spec);
    const PhiTable table(t, 3);
    std::mt19937_64 rng(42);
    double worst = 0.0;
    for (std::size_t k = 0; k < table.elements().size(); ++k)
      for (int trial = 0; trial < 5; ++trial) {
        const Word w = random_reduced_word(table.elements()[k].perm, rng);
        worst = std::max(worst, distance(phi_word(t, w, 3), table.at(k)));
      }
    CAPTURE(name);
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("PhiTable matches per-element evaluation") {
  const auto t = build_T(preset_qij_ccr({0.5, 0.3}, {{1, -1}, {-1, 1}}));
  const PhiTable table(t, 3);
  for (const auto& e : table.elements()) CHECK(distance(table.at(e.perm), phi(t, e, 3)) <= 1e-14);
}

TEST_CASE("group sum reproduces P_{n+1}") {
  const auto scalar = build_T(preset_q_ccr(1, 0.5));
  CHECK(group_sum(scalar, 2)(0, 0).real() == doctest::Approx(2.625).epsilon(1e-14));
  CHECK(group_sum(build_T(preset_q_ccr(1, 1.0)), 2)(0, 0).real() == doctest::Approx(6.0));
  for (std::size_t n = 1; n <= 5; ++n)
    CHECK(std::abs(group_sum(scalar, n)(0, 0) - oracle::poincare(0.5, n + 1)) <= 1e-10);
  CHECK(distance(group_sum(TensorOperator::zero(2, 2), 3), TensorOperator::identity(2, 4)) == 0.0);
  for (const auto& [name, spec] : presets()) {
    const auto t = build_T(spec);
    for (std::size_t n = 1; n <= 4; ++n) {
      CAPTURE(name);
      CAPTURE(n);
      CHECK(distance(group_sum(t, n), build_P(t, n + 1)) <= 1e-10);
      CHECK(distance(PhiTable(t, n).partial_sum(enumerate_group(n)), build_P(t, n + 1)) <= 1e-10);
    }
  }
}

TEST_CASE("parabolic factorization P_{n+1} = P(D_J) P(W_J)") {
  CHECK(factorization_check(build_T(preset_q_ccr(2, 0.5)), 3, GeneratorSet{1}).residual <= 1e-10);
  for (const auto& [name, spec] : presets()) {
    const auto t = build_T(spec);
    for (std::size_t n = 1; n <= 4; ++n) {
      const PhiTable table(t, n);
      const auto p = build_P(t, n + 1);
      for (GeneratorSet J = 0; J < (1u << n); ++J) {
        CAPTURE(name);
        CAPTURE(n);
        CAPTURE(J);
        CHECK(factorization_check(table, p, J).residual <= 1e-10);
      }
    }
  }
}

TEST_CASE("separated parabolic blocks factor and commute") {
  const auto t = build_T(preset_qij_ccr({0.5, 0.5}, {{1, -1}, {-1, 1}}));
  const std::size_t n = 4;
  const auto pw = [&](GeneratorSet J) { return partial_sum(t, descent_data(n, J).parabolic_subgroup, n); };
  const auto a = pw(0b0001), b = pw(0b1100), ab = pw(0b1101);
  CHECK(distance(a * b, ab) <= 1e-12);
  CHECK(distance(a * b, b * a) <= 1e-12);
}

TEST_CASE("Euler-Solomon identities") {
  const auto zero = TensorOperator::zero(2, 2);
  CHECK(euler_solomon_residual(zero, 2).max() == 0.0);
  CHECK(euler_solomon_residual(build_T(preset_q_ccr(2, 0.5)), 2).max() <= 1e-10);
  CHECK(euler_solomon_residual(build_T(preset_qij_ccr({0.5, 0.5}, {{1, -1}, {-1, 1}})), 3).max() <= 1e-10);
  for (const auto& [name, spec] : presets())
    for (std::size_t n = 1; n <= 4; ++n) {
      CAPTURE(name);
      CAPTURE(n);
      const auto r = euler_solomon_residual(build_T(spec), n);
      CHECK(r.group_form <= 1e-10);
      CHECK(r.adjoint_form <= 1e-10);
    }
  CHECK_THROWS(euler_solomon_residual(zero, 6));
}

TEST_CASE("phi of the longest element is U_n") {
  for (const auto& [name, spec] : presets())
    for (std::size_t n = 1; n <= 4; ++n) CHECK(longest_element_residual(build_T(spec), n) <= 1e-10);
}
