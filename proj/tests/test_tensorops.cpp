#include <doctest.h>

#include <vector>

#include "oracles.hpp"
#include "wickfock/tensorops.hpp"

using namespace wickfock;

namespace {

struct Case {
  const char* name;
  WickSpec spec;
  oracle::MonomialModel model;
};

std::vector<Case> braided_presets() {
  return {
      {"q-ccr 0.5", preset_q_ccr(2, 0.5), oracle::q_ccr(2, 0.5)},
      {"q-ccr 1", preset_q_ccr(2, 1.0), oracle::q_ccr(2, 1.0)},
      {"q-ccr -1", preset_q_ccr(2, -1.0), oracle::q_ccr(2, -1.0)},
      {"qij +1", preset_qij_ccr({0.5, 0.5}, {{1, 1}, {1, 1}}), oracle::qij_ccr({0.5, 0.5}, {{1, 1}, {1, 1}})},
      {"qij -1", preset_qij_ccr({0.5, 0.5}, {{1, -1}, {-1, 1}}), oracle::qij_ccr({0.5, 0.5}, {{1, -1}, {-1, 1}})},
      {"example3", preset_example3(2, 0.5), oracle::example3(2, 0.5)},
      {"q-ccr d=3", preset_q_ccr(3, 0.3), oracle::q_ccr(3, 0.3)},
  };
}

double gap(const TensorOperator& a, const oracle::Matrix& b) { return oracle::norm2(a.matrix() - b); }

// Plain Kronecker amplification, independent of the kernels.
Matrix naive_amplify(const Matrix& t, std::size_t d, std::size_t pos, std::size_t level) {
  const auto left = static_cast<Index>(oracle::power(d, pos - 1));
  const auto right = static_cast<Index>(oracle::power(d, level - pos - 1));
  const Index p = t.rows();
  Matrix out = Matrix::Zero(left * p * right, left * p * right);
  for (Index a = 0; a < left; ++a)
    for (Index r = 0; r < p; ++r)
      for (Index c = 0; c < p; ++c)
        for (Index b = 0; b < right; ++b) out((a * p + r) * right + b, (a * p + c) * right + b) = t(r, c);
  return out;
}

oracle::Matrix oracle_sum(const oracle::MonomialModel& m, const std::vector<std::vector<std::size_t>>& words,
                          std::size_t n) {
  const auto size = static_cast<Index>(oracle::power(m.d, n));
  oracle::Matrix out = oracle::Matrix::Zero(size, size);
  for (const auto& w : words) out += oracle::word_operator(m, w, n);
  return out;
}

// Rtilde_k = 1 + T_{k-1} + T_{k-2}T_{k-1} + ... + T_1...T_{k-1}.
oracle::Matrix oracle_rtilde(const oracle::MonomialModel& m, std::size_t k, std::size_t n) {
  std::vector<std::vector<std::size_t>> words{{}};
  for (std::size_t start = k - 1; start >= 1; --start) {
    std::vector<std::size_t> w;
    for (std::size_t i = start; i <= k - 1; ++i) w.push_back(i);
    words.push_back(w);
  }
  return oracle_sum(m, words, n);
}

}  // namespace

TEST_CASE("braid residual vanishes on presets and flags a perturbation") {
  for (const auto& c : braided_presets()) {
    CAPTURE(c.name);
    CHECK(braid_residual(build_T(c.spec)) <= 1e-12);
  }
  CHECK(braid_residual(TensorOperator::zero(2, 2)) == 0.0);

  Matrix m = preset_q_ccr(2, 0.5).coefficient_matrix();
  m(0, 3) = m(3, 0) = 0.1;
  const TensorOperator t(2, 2, m);
  const Matrix t1 = naive_amplify(m, 2, 1, 3), t2 = naive_amplify(m, 2, 2, 3);
  const double oracle_residual = oracle::norm2(t1 * t2 * t1 - t2 * t1 * t2);
  CHECK(oracle_residual > 1e-3);
  CHECK(braid_residual(t) == doctest::Approx(oracle_residual).epsilon(1e-12));
}

TEST_CASE("braid relation at every admissible slot up to level 6") {
  const auto t = build_T(preset_qij_ccr({0.5, 0.5}, {{1, -1}, {-1, 1}}));
  for (std::size_t level = 3; level <= 6; ++level)
    for (std::size_t i = 1; i + 2 <= level; ++i) {
      const auto lhs = left_mul(t, i, left_mul(t, i + 1, amplify(t, i, level)));
      const auto rhs = left_mul(t, i + 1, left_mul(t, i, amplify(t, i + 1, level)));
      CHECK(distance(lhs, rhs) <= 1e-12);
    }
}

TEST_CASE("ordered products follow the written order") {
  const auto model = oracle::qij_ccr({0.5, 0.25}, {{1, -1}, {-1, 1}});
  const auto t = build_T(preset_qij_ccr({0.5, 0.25}, {{1, -1}, {-1, 1}}));
  CHECK(gap(ascending_product(t, 1, 3, 4), oracle::word_operator(model, {1, 2, 3}, 4)) <= 1e-14);
  CHECK(gap(descending_product(t, 1, 3, 4), oracle::word_operator(model, {3, 2, 1}, 4)) <= 1e-14);
  CHECK(gap(ascending_product(t, 2, 1, 3), oracle::word_operator(model, {}, 3)) == 0.0);
  CHECK(gap(left_mul(t, 2, amplify(t, 1, 3)), oracle::word_operator(model, {2, 1}, 3)) <= 1e-14);
  CHECK(gap(right_mul(amplify(t, 1, 3), t, 2), oracle::word_operator(model, {1, 2}, 3)) <= 1e-14);
}

TEST_CASE("R_n, Rtilde_k and conventions at low levels") {
  const auto flip_model = oracle::q_ccr(2, 1.0);
  const auto flip = build_T(preset_q_ccr(2, 1.0));
  CHECK(gap(build_R(flip, 2), oracle_sum(flip_model, {{}, {1}}, 2)) == 0.0);
  CHECK(gap(build_R(flip, 4), oracle_sum(flip_model, {{}, {1}, {1, 2}, {1, 2, 3}}, 4)) == 0.0);
  CHECK(build_R(flip, 0).size() == 1);
  CHECK(distance(build_R(flip, 1), TensorOperator::identity(2, 1)) == 0.0);
  CHECK(distance(build_P(flip, 1), TensorOperator::identity(2, 1)) == 0.0);
  CHECK(distance(build_P(flip, 0), TensorOperator::identity(2, 0)) == 0.0);
  for (std::size_t k = 2; k <= 4; ++k) CHECK(gap(build_Rtilde(flip, k, 4), oracle_rtilde(flip_model, k, 4)) == 0.0);
}

TEST_CASE("T = 0 gives identities") {
  const auto zero = TensorOperator::zero(2, 2);
  for (std::size_t n = 0; n <= 4; ++n) {
    CHECK(distance(build_R(zero, n), TensorOperator::identity(2, n)) == 0.0);
    CHECK(distance(build_P(zero, n), TensorOperator::identity(2, n)) == 0.0);
  }
  CHECK(build_U(zero, 2).norm() == 0.0);
  CHECK(factorization_check(zero, 2, 2).residual == 0.0);
  CHECK(telescoping_residual(zero, 3) == 0.0);
  CHECK(intertwining_residual(zero, 3) == 0.0);
}

TEST_CASE("P_n equals the sum over the symmetric group (monomial oracle)") {
  for (const auto& c : braided_presets()) {
    const auto t = build_T(c.spec);
    const std::size_t top = c.model.d == 3 ? 4 : 5;
    for (std::size_t n = 2; n <= top; ++n) {
      CAPTURE(c.name);
      CAPTURE(n);
      CHECK(gap(build_P(t, n), oracle::group_sum(c.model, n)) <= 1e-10);
    }
  }
}

TEST_CASE("scalar case: P_n = [n]_q!") {
  const auto t = build_T(preset_q_ccr(1, 0.5));
  const double expect[] = {1.0, 1.0, 1.5, 2.625, 4.921875};
  for (std::size_t n = 0; n <= 4; ++n) CHECK(build_P(t, n)(0, 0).real() == doctest::Approx(expect[n]).epsilon(1e-14));
  for (std::size_t n = 2; n <= 6; ++n)
    CHECK(std::abs(build_P(t, n)(0, 0) - oracle::q_factorial(0.5, n)) <= 1e-10);
}

TEST_CASE("flip spectra") {
  const auto flip = build_T(preset_q_ccr(2, 1.0));
  const auto e2 = hermitian_eigenvalues(build_P(flip, 2).matrix());
  CHECK(e2(0) == doctest::Approx(0.0));
  for (Index i = 1; i < 4; ++i) CHECK(e2(i) == doctest::Approx(2.0));
  const auto e3 = hermitian_eigenvalues(build_P(flip, 3).matrix());
  for (Index i = 0; i < 4; ++i) CHECK(std::abs(e3(i)) <= 1e-10);
  for (Index i = 4; i < 8; ++i) CHECK(e3(i) == doctest::Approx(6.0));
}

TEST_CASE("U_n is the image of the reversal") {
  for (const auto& c : braided_presets()) {
    const auto t = build_T(c.spec);
    for (std::size_t n = 1; n <= (c.model.d == 3 ? 3u : 4u); ++n) {
      CAPTURE(c.name);
      CAPTURE(n);
      const auto u = build_U(t, n);
      CHECK(gap(u, oracle::reversal_operator(c.model, n)) <= 1e-10);
      CHECK(hermiticity_residual(u.matrix()) <= 1e-10);
      CHECK(u.norm() <= 1.0 + 1e-10);
    }
  }
  CHECK(distance(build_U(build_T(preset_q_ccr(2, 0.5)), 0), TensorOperator::identity(2, 1)) == 0.0);
}

TEST_CASE("P(D_m) and its factorization") {
  const auto model = oracle::qij_ccr({0.5, 0.5}, {{1, -1}, {-1, 1}});
  const auto t = build_T(preset_qij_ccr({0.5, 0.5}, {{1, -1}, {-1, 1}}));
  // P(D_2) at n=2: Rtilde_4 Rtilde_3.
  CHECK(gap(build_PDm(t, 2, 2), oracle_rtilde(model, 4, 4) * oracle_rtilde(model, 3, 4)) <= 1e-12);
  for (const auto& c : braided_presets())
    for (auto [n, m] : {std::pair{1, 2}, {2, 2}, {1, 3}}) {
      CAPTURE(c.name);
      const auto f = factorization_check(build_T(c.spec), n, m);
      CHECK(f.reliable);
      CHECK(f.residual <= 1e-10);
    }
  // Independent form: P_{n+m} = P(D_m)(P_m (x) 1) with P from the oracle.
  const Matrix lhs = oracle::group_sum(model, 4);
  const Matrix rhs = build_PDm(t, 2, 2).matrix() * kron_identity_right(oracle::group_sum(model, 2), 4);
  CHECK(oracle::norm2(lhs - rhs) <= 1e-10);
}

TEST_CASE("non-braided factorizations are marked unreliable") {
  Matrix m = preset_q_ccr(2, 0.5).coefficient_matrix();
  m(0, 3) = m(3, 0) = 0.1;
  const auto f = factorization_check(TensorOperator(2, 2, m), 1, 2);
  CHECK_FALSE(f.reliable);
  CHECK(f.braid_residual > 1e-3);
}

TEST_CASE("U_n identities") {
  for (const auto& c : braided_presets()) {
    const auto t = build_T(c.spec);
    for (std::size_t n = 1; n <= (c.model.d == 3 ? 3u : 4u); ++n) {
      CAPTURE(c.name);
      CAPTURE(n);
      CHECK(telescoping_residual(t, n) <= 1e-10);
      CHECK(un_commutation_residual(t, n) <= 1e-10);
      CHECK(intertwining_residual(t, n) <= 1e-10);
    }
  }
}

TEST_CASE("positivity of P_n for contractive presets") {
  for (const auto& c : braided_presets()) {
    const auto t = build_T(c.spec);
    for (std::size_t n = 2; n <= 4; ++n) CHECK(hermitian_eigenvalues(build_P(t, n).matrix())(0) >= -1e-10);
  }
  // T = -1: P_2 = 0.
  const auto minus = TensorOperator(2, 2, -Matrix::Identity(4, 4));
  CHECK(build_P(minus, 2).norm() == 0.0);
}

TEST_CASE("tensor padding") {
  const auto t = build_T(preset_q_ccr(2, 0.5));
  CHECK(distance(tensor_identity_left(1, t), amplify(t, 2, 3)) == 0.0);
  CHECK(distance(tensor_identity_right(t, 1), amplify(t, 1, 3)) == 0.0);
  CHECK(distance(tensor_identity_left(0, t), t) == 0.0);
}
