#ifndef WICKFOCK_FOCK_HPP
#define WICKFOCK_FOCK_HPP

// Fock representation on the truncated tensor algebra sum_{n<=N} H^{(x)n}:
//   a_i      -> e_i (x) .
//   a_i^*    -> mu(e_i^*) R_n       on degree n (0 on the vacuum)
//   <X, Y>_0 =  sum_n <X_n, P_n Y_n>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "wickfock/model.hpp"
#include "wickfock/random.hpp"

namespace wickfock {

class GradedVector {
 public:
  /// The zero vector with components of degree 0..max_degree.
  GradedVector(std::size_t dim, std::size_t max_degree);

  static GradedVector vacuum(std::size_t dim, std::size_t max_degree);
  /// e_{i_1} (x) ... (x) e_{i_n}, indices 0-based.
  static GradedVector basis(std::size_t dim, std::size_t max_degree, const std::vector<std::size_t>& indices);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t max_degree() const noexcept { return components_.size() - 1; }
  const Vector& component(std::size_t degree) const { return components_.at(degree); }
  GradedVector with_component(std::size_t degree, Vector value) const;

  /// Highest degree holding a nonzero entry; empty for the zero vector.
  std::optional<std::size_t> top_degree() const;
  double norm() const;

  friend GradedVector operator+(const GradedVector& a, const GradedVector& b);
  friend GradedVector operator-(const GradedVector& a, const GradedVector& b);
  friend GradedVector operator*(Complex s, const GradedVector& a);

 private:
  std::size_t dim_;
  std::vector<Vector> components_;
};

/// lambda_0(a_i): left tensoring with e_i. Throws std::overflow_error if the
/// result would leave the truncation.
GradedVector create(std::size_t i, const GradedVector& v);
/// mu(e_i^*): e_{i_1} (x) e_{i_2} ... -> delta_{i i_1} e_{i_2} ...
GradedVector annihilate_mu(std::size_t i, const GradedVector& v);

class FockSpace {
 public:
  FockSpace(TensorOperator t, std::size_t max_degree);

  std::size_t dim() const noexcept { return t_.dim(); }
  std::size_t max_degree() const noexcept { return r_.size() - 1; }
  const TensorOperator& coefficient_operator() const noexcept { return t_; }
  const TensorOperator& R(std::size_t n) const { return r_.at(n); }
  const TensorOperator& P(std::size_t n) const { return p_.at(n); }

  /// lambda_0(a_i^*) = mu(e_i^*) R_n degree-wise.
  GradedVector annihilate(std::size_t i, const GradedVector& v) const;
  /// <x, y>_0.
  Complex inner(const GradedVector& x, const GradedVector& y) const;

 private:
  TensorOperator t_;
  std::vector<TensorOperator> r_;
  std::vector<TensorOperator> p_;
};

/// 5 for d <= 2, 4 for d = 3, 3 beyond.
std::size_t default_truncation(std::size_t dim);

/// Random vector with components of degree 0..fill_degree drawn from `rng`.
GradedVector random_graded(std::size_t dim, std::size_t max_degree, std::size_t fill_degree, SeededStream& rng);

struct RelationReport {
  std::size_t max_degree = 0;
  double relation_residual = 0.0;    // basic relations on every basis vector of degree <= N-1
  double adjointness_residual = 0.0; // |<a_i x, y>_0 - <x, a_i^* y>_0| / (1 + |x||y|)
  std::size_t random_pairs = 0;
  bool pass = false;
};

RelationReport relation_check(const TensorOperator& t, std::size_t max_degree, std::uint64_t seed = 42,
                              std::size_t pairs = 50, double tol = 1e-8);

double adjointness_residual(const FockSpace& fock, std::uint64_t seed, std::size_t pairs);
double basic_relation_residual(const FockSpace& fock);

}  // namespace wickfock

#endif  // WICKFOCK_FOCK_HPP
