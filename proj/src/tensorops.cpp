#include "wickfock/tensorops.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "wickfock/kernels.hpp"

namespace wickfock {

namespace {

void require_level2(const TensorOperator& t) {
  if (t.level() != 2) throw std::invalid_argument("expected the level-2 coefficient operator T");
}

void require_position(std::size_t pos, std::size_t level) {
  if (level < 2 || pos < 1 || pos > level - 1)
    throw std::out_of_range("position " + std::to_string(pos) + " out of range 1.." +
                            std::to_string(level < 1 ? 0 : level - 1));
}

}  // namespace

TensorOperator amplify(const TensorOperator& t, std::size_t pos, std::size_t level) {
  require_level2(t);
  require_position(pos, level);
  return {t.dim(), level, kernels::amplify(t.matrix(), t.dim(), pos, level)};
}

TensorOperator left_mul(const TensorOperator& t, std::size_t pos, const TensorOperator& a) {
  require_level2(t);
  require_position(pos, a.level());
  if (t.dim() != a.dim()) throw std::invalid_argument("left_mul: dimension mismatch");
  return {a.dim(), a.level(), kernels::left_apply(t.matrix(), t.dim(), pos, a.level(), a.matrix())};
}

TensorOperator right_mul(const TensorOperator& a, const TensorOperator& t, std::size_t pos) {
  require_level2(t);
  require_position(pos, a.level());
  if (t.dim() != a.dim()) throw std::invalid_argument("right_mul: dimension mismatch");
  return {a.dim(), a.level(), kernels::right_apply(a.matrix(), t.matrix(), t.dim(), pos, a.level())};
}

double braid_residual(const TensorOperator& t) {
  require_level2(t);
  const auto t1 = amplify(t, 1, 3);
  const auto t2 = amplify(t, 2, 3);
  return distance(t1 * t2 * t1, t2 * t1 * t2);
}

TensorOperator ascending_product(const TensorOperator& t, std::size_t first, std::size_t last, std::size_t level) {
  auto prod = TensorOperator::identity(t.dim(), level);
  for (std::size_t i = first; i <= last; ++i) prod = right_mul(prod, t, i);
  return prod;
}

TensorOperator descending_product(const TensorOperator& t, std::size_t first, std::size_t last, std::size_t level) {
  auto prod = TensorOperator::identity(t.dim(), level);
  if (first > last) return prod;
  for (std::size_t i = last;; --i) {
    prod = right_mul(prod, t, i);
    if (i == first) break;
  }
  return prod;
}

TensorOperator build_R(const TensorOperator& t, std::size_t n) {
  require_level2(t);
  auto sum = TensorOperator::identity(t.dim(), n);
  if (n < 2) return sum;
  auto prod = amplify(t, 1, n);
  sum = sum + prod;
  for (std::size_t k = 2; k <= n - 1; ++k) {
    prod = right_mul(prod, t, k);
    sum = sum + prod;
  }
  return sum;
}

TensorOperator build_Rtilde(const TensorOperator& t, std::size_t k, std::size_t n) {
  require_level2(t);
  if (k < 2 || k > n) throw std::out_of_range("Rtilde_k needs 2 <= k <= n");
  auto prod = amplify(t, k - 1, n);
  auto sum = TensorOperator::identity(t.dim(), n) + prod;
  for (std::size_t j = k - 2; j >= 1; --j) {
    prod = left_mul(t, j, prod);
    sum = sum + prod;
  }
  return sum;
}

TensorOperator tensor_identity_left(std::size_t k, const TensorOperator& a) {
  return {a.dim(), a.level() + k, kron_identity_left(ipow(a.dim(), k), a.matrix())};
}

TensorOperator tensor_identity_right(const TensorOperator& a, std::size_t k) {
  return {a.dim(), a.level() + k, kron_identity_right(a.matrix(), ipow(a.dim(), k))};
}

TensorOperator build_P(const TensorOperator& t, std::size_t n) {
  require_level2(t);
  if (n < 2) return TensorOperator::identity(t.dim(), n);
  auto p = build_R(t, 2);
  for (std::size_t k = 2; k < n; ++k) p = tensor_identity_left(1, p) * build_R(t, k + 1);
  return p;
}

TensorOperator build_PDm(const TensorOperator& t, std::size_t n, std::size_t m) {
  require_level2(t);
  if (m < 2 || n < 1) throw std::out_of_range("P(D_m) needs m >= 2 and n >= 1");
  const std::size_t level = n + m;
  auto prod = build_Rtilde(t, level, level);
  for (std::size_t k = level - 1; k >= m + 1; --k) prod = prod * build_Rtilde(t, k, level);
  return prod;
}

TensorOperator build_U(const TensorOperator& t, std::size_t n) {
  require_level2(t);
  const std::size_t level = n + 1;
  auto u = TensorOperator::identity(t.dim(), level);
  for (std::size_t len = n; len >= 1; --len)
    for (std::size_t i = 1; i <= len; ++i) u = right_mul(u, t, i);
  return u;
}

FactorizationResult factorization_check(const TensorOperator& t, std::size_t n, std::size_t m) {
  FactorizationResult out;
  out.braid_residual = braid_residual(t);
  out.reliable = out.braid_residual <= kBraidTolerance;
  const auto lhs = build_P(t, n + m);
  const auto rhs = build_PDm(t, n, m) * tensor_identity_right(build_P(t, m), n);
  out.residual = distance(lhs, rhs);
  return out;
}

double telescoping_residual(const TensorOperator& t, std::size_t n) {
  require_level2(t);
  if (n < 1) throw std::out_of_range("telescoping identity needs n >= 1");
  const std::size_t level = n + 1;
  const auto one = TensorOperator::identity(t.dim(), level);
  const auto u = build_U(t, n);
  const auto lhs = one - u * u;

  auto rhs = TensorOperator::zero(t.dim(), level);
  for (std::size_t k = 1; k <= n; ++k) {
    const auto tk = amplify(t, k, level);
    const auto up = ascending_product(t, 1, k - 1, level);
    const auto down = descending_product(t, 1, k - 1, level);
    rhs = rhs + up * (one - tk * tk) * down;
  }
  const auto prev = tensor_identity_right(build_U(t, n - 1), 1);
  const auto up = ascending_product(t, 1, n, level);
  const auto down = descending_product(t, 1, n, level);
  rhs = rhs + up * (one - prev * prev) * down;
  return distance(lhs, rhs);
}

double un_commutation_residual(const TensorOperator& t, std::size_t n) {
  const auto u = build_U(t, n);
  double worst = 0.0;
  for (std::size_t k = 1; k <= n; ++k)
    worst = std::max(worst, distance(left_mul(t, k, u), right_mul(u, t, n + 1 - k)));
  return worst;
}

double intertwining_residual(const TensorOperator& t, std::size_t n) {
  if (n < 1) throw std::out_of_range("intertwining check needs n >= 1");
  const auto a = ascending_product(t, 1, n, n + 1);
  const auto p = build_P(t, n);
  return distance(tensor_identity_left(1, p) * a, a * tensor_identity_right(p, 1));
}

}  // namespace wickfock
