#include <doctest.h>

#include "oracles.hpp"
#include "wickfock/kernels.hpp"
#include "wickfock/random.hpp"

using namespace wickfock;

namespace {

double maxabs(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

Matrix random_matrix(Index rows, Index cols, SeededStream& rng) {
  Matrix m(rows, cols);
  for (Index c = 0; c < cols; ++c)
    for (Index r = 0; r < rows; ++r) m(r, c) = rng.complex();
  return m;
}

}  // namespace

TEST_CASE("parallel kernels match the serial reference") {
  SeededStream rng(7);
  for (std::size_t d : {1u, 2u, 3u}) {
    for (std::size_t level = 2; level <= (d == 3 ? 5u : 6u); ++level) {
      const auto size = static_cast<Index>(oracle::power(d, level));
      const Matrix t = random_matrix(static_cast<Index>(d * d), static_cast<Index>(d * d), rng);
      const Matrix a = random_matrix(size, size, rng);
      for (std::size_t pos = 1; pos + 1 <= level; ++pos) {
        CAPTURE(d);
        CAPTURE(level);
        CAPTURE(pos);
        CHECK(maxabs(kernels::amplify(t, d, pos, level) - kernels::reference::amplify(t, d, pos, level)) == 0.0);
        CHECK(maxabs(kernels::left_apply(t, d, pos, level, a) -
                            kernels::reference::left_apply(t, d, pos, level, a)) <= 1e-12);
        CHECK(maxabs(kernels::right_apply(a, t, d, pos, level) -
                            kernels::reference::right_apply(a, t, d, pos, level)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("kernels are independent of the thread count") {
  SeededStream rng(11);
  const std::size_t d = 2, level = 7;
  const auto size = static_cast<Index>(oracle::power(d, level));
  const Matrix t = random_matrix(4, 4, rng);
  const Matrix a = random_matrix(size, size, rng);
  const int saved = kernels::num_threads();
  kernels::set_num_threads(1);
  const Matrix l1 = kernels::left_apply(t, d, 3, level, a);
  const Matrix r1 = kernels::right_apply(a, t, d, 3, level);
  kernels::set_num_threads(4);
  const Matrix l4 = kernels::left_apply(t, d, 3, level, a);
  const Matrix r4 = kernels::right_apply(a, t, d, 3, level);
  kernels::set_num_threads(saved);
  // Each entry is computed by one thread with a fixed loop order.
  CHECK(l1 == l4);
  CHECK(r1 == r4);
}

TEST_CASE("amplified flip permutes the first two slots") {
  const Matrix flip = oracle::T_matrix(oracle::q_ccr(2, 1.0));
  const Matrix t1 = kernels::amplify(flip, 2, 1, 3);
  for (std::size_t col = 0; col < 8; ++col) {
    auto idx = oracle::digits(col, 2, 3);
    std::swap(idx[0], idx[1]);
    for (std::size_t row = 0; row < 8; ++row)
      CHECK(t1(row, col) == Complex(row == oracle::encode(idx, 2) ? 1.0 : 0.0));
  }
}

TEST_CASE("amplified generators far apart commute exactly") {
  SeededStream rng(3);
  const Matrix t = random_matrix(4, 4, rng);
  const Matrix t1 = kernels::amplify(t, 2, 1, 4);
  const Matrix t3 = kernels::amplify(t, 2, 3, 4);
  CHECK((t1 * t3 - t3 * t1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("amplify matches the monomial oracle for q-ccr") {
  const auto model = oracle::q_ccr(3, 0.5);
  const Matrix t = oracle::T_matrix(model);
  for (std::size_t pos = 1; pos <= 2; ++pos)
    CHECK(oracle::norm2(kernels::amplify(t, 3, pos, 3) - oracle::word_operator(model, {pos}, 3)) == 0.0);
}
