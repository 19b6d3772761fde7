#ifndef WICKFOCK_MODEL_HPP
#define WICKFOCK_MODEL_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wickfock/linalg.hpp"

namespace wickfock {

/// Raised for malformed or inconsistent user input (spec files, word syntax).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense operator on H^{(x)n}, H = C^d. Rows and columns are multi-indices
/// (i_1, ..., i_n) encoded as sum_t i_t d^{n-t} with 0-based digits, so slot 1
/// is the most significant digit.
class TensorOperator {
 public:
  TensorOperator(std::size_t dim, std::size_t level, Matrix entries);

  static TensorOperator identity(std::size_t dim, std::size_t level);
  static TensorOperator zero(std::size_t dim, std::size_t level);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t level() const noexcept { return level_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const Matrix& matrix() const noexcept { return entries_; }
  Complex operator()(Index row, Index col) const { return entries_(row, col); }

  TensorOperator adjoint() const;
  double norm() const { return op_norm(entries_); }

  friend TensorOperator operator+(const TensorOperator& a, const TensorOperator& b);
  friend TensorOperator operator-(const TensorOperator& a, const TensorOperator& b);
  friend TensorOperator operator*(const TensorOperator& a, const TensorOperator& b);
  friend TensorOperator operator*(Complex s, const TensorOperator& a);

 private:
  std::size_t dim_;
  std::size_t level_;
  Matrix entries_;
};

/// ||a - b||_2 for operators on the same space.
double distance(const TensorOperator& a, const TensorOperator& b);

/// Wick algebra instance: the generator count d and the coefficients
/// T_ij^kl. Stored as the d^2 x d^2 matrix M with M[(a,d),(b,c)] = T_ab^cd.
/// All indices in this interface are 0-based.
class WickSpec {
 public:
  /// Takes ownership of M; throws InputError if M is not d^2 x d^2 or is not
  /// self-adjoint to within 1e-12 (the coefficient hermitian symmetry).
  WickSpec(std::size_t dim, Matrix coefficient_matrix, nlohmann::ordered_json source = {});

  std::size_t dim() const noexcept { return dim_; }
  const Matrix& coefficient_matrix() const noexcept { return matrix_; }
  const nlohmann::ordered_json& source() const noexcept { return source_; }

  /// T_ij^kl.
  Complex coeff(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const;

 private:
  std::size_t dim_;
  Matrix matrix_;
  nlohmann::ordered_json source_;
};

inline constexpr double kHermitianTolerance = 1e-12;

/// Parses the JSON spec document (see README for the schema).
WickSpec load_spec(std::string_view text);
WickSpec load_spec_json(const nlohmann::json& doc);
WickSpec load_spec_file(const std::string& path);

/// Writes every nonzero coefficient in the explicit "coefficients" form.
nlohmann::ordered_json serialize(const WickSpec& spec);

/// The level-2 operator T, M[(i,j),(k,l)] = T_ik^lj.
TensorOperator build_T(const WickSpec& spec);

/// T e_i (x) e_j = q e_j (x) e_i, q in [-1, 1].
WickSpec preset_q_ccr(std::size_t dim, double q);
/// T e_i (x) e_i = q_i e_i (x) e_i, T e_j (x) e_i = lambda_ij e_i (x) e_j.
/// q_i in (0,1); lambda symmetric with entries +-1.
WickSpec preset_qij_ccr(const std::vector<double>& qs, const std::vector<std::vector<int>>& lambda);
/// T e_i (x) e_i = e_i (x) e_i, T e_j (x) e_i = q e_i (x) e_j, q in (-1, 1).
WickSpec preset_example3(std::size_t dim, double q);
/// Dispatches on params["name"] with the JSON parameter layout of the spec file.
WickSpec preset(std::size_t dim, const nlohmann::json& params);

}  // namespace wickfock

#endif  // WICKFOCK_MODEL_HPP
