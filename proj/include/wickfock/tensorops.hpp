#ifndef WICKFOCK_TENSOROPS_HPP
#define WICKFOCK_TENSOROPS_HPP

// Operators built from the level-2 coefficient operator T:
//   T_i          = 1 (x) ... (x) T (x) ... (x) 1   (T on slots i, i+1)
//   R_n          = 1 + T_1 + T_1T_2 + ... + T_1...T_{n-1}
//   Rtilde_k     = 1 + T_{k-1} + T_{k-2}T_{k-1} + ... + T_1...T_{k-1}
//   P_2 = R_2,     P_{n+1} = (1 (x) P_n) R_{n+1}
//   P(D_m)       = Rtilde_{n+m} ... Rtilde_{m+1}      (level n+m)
//   U_n          = (T_1...T_n)(T_1...T_{n-1}) ... (T_1T_2) T_1   (level n+1)
// Conventions: R_0 = R_1 = P_0 = P_1 = 1, U_0 = 1 on H.

#include <cstddef>

#include "wickfock/model.hpp"

namespace wickfock {

/// T_pos at level n. pos in 1..n-1.
TensorOperator amplify(const TensorOperator& t, std::size_t pos, std::size_t level);

/// T_pos * a and a * T_pos without forming T_pos.
TensorOperator left_mul(const TensorOperator& t, std::size_t pos, const TensorOperator& a);
TensorOperator right_mul(const TensorOperator& a, const TensorOperator& t, std::size_t pos);

/// ||T_1 T_2 T_1 - T_2 T_1 T_2||_2 on H^{(x)3}.
double braid_residual(const TensorOperator& t);

/// T_first T_{first+1} ... T_last at `level` (identity when first > last).
TensorOperator ascending_product(const TensorOperator& t, std::size_t first, std::size_t last, std::size_t level);
/// T_last T_{last-1} ... T_first at `level`.
TensorOperator descending_product(const TensorOperator& t, std::size_t first, std::size_t last, std::size_t level);

TensorOperator build_R(const TensorOperator& t, std::size_t n);
TensorOperator build_Rtilde(const TensorOperator& t, std::size_t k, std::size_t n);
TensorOperator build_P(const TensorOperator& t, std::size_t n);
TensorOperator build_PDm(const TensorOperator& t, std::size_t n, std::size_t m);
TensorOperator build_U(const TensorOperator& t, std::size_t n);

/// 1_{H^{(x)k}} (x) a and a (x) 1_{H^{(x)k}}.
TensorOperator tensor_identity_left(std::size_t k, const TensorOperator& a);
TensorOperator tensor_identity_right(const TensorOperator& a, std::size_t k);

struct FactorizationResult {
  double residual = 0.0;
  double braid_residual = 0.0;
  /// False when T is not braided (the identity need not hold then).
  bool reliable = true;
};

/// Braid residual above which factorization identities are flagged unreliable.
inline constexpr double kBraidTolerance = 1e-8;

/// ||P_{n+m} - P(D_m) (P_m (x) 1_n)||_2.
FactorizationResult factorization_check(const TensorOperator& t, std::size_t n, std::size_t m);

/// ||(1 - U_n^2) - [sum_k A_{k-1}(1 - T_k^2)A_{k-1}^* + A_n(1 - U_{n-1}^2)A_n^*]||_2 with
/// A_k = T_1...T_k, evaluated on H^{(x)(n+1)}.
double telescoping_residual(const TensorOperator& t, std::size_t n);

/// max_k ||T_k U_n - U_n T_{n+1-k}||_2, k = 1..n.
double un_commutation_residual(const TensorOperator& t, std::size_t n);

/// ||(1 (x) P_n)(T_1...T_n) - (T_1...T_n)(P_n (x) 1)||_2 at level n+1.
double intertwining_residual(const TensorOperator& t, std::size_t n);

}  // namespace wickfock

#endif  // WICKFOCK_TENSOROPS_HPP
