#ifndef WICKFOCK_SPECTRAL_HPP
#define WICKFOCK_SPECTRAL_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "wickfock/model.hpp"

namespace wickfock {

inline constexpr double kDefaultRankTol = 1e-8;
inline constexpr double kCheckTol = 1e-8;

/// Orthonormal basis (columns) of a subspace of H^{(x)n}.
class Subspace {
 public:
  Subspace(std::size_t dim, std::size_t level, Matrix basis, double rank_tol);
  static Subspace zero(std::size_t dim, std::size_t level, double rank_tol = kDefaultRankTol);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t level() const noexcept { return level_; }
  std::size_t rank() const noexcept { return static_cast<std::size_t>(basis_.cols()); }
  const Matrix& basis() const noexcept { return basis_; }
  double rank_tol() const noexcept { return rank_tol_; }

  /// Orthogonal projector B B^*.
  Matrix projector() const;

 private:
  std::size_t dim_;
  std::size_t level_;
  Matrix basis_;
  double rank_tol_;
};

/// Kernel of a self-adjoint operator: eigenvectors with
/// |lambda| <= rank_tol * max(1, ||A||). Throws std::invalid_argument when
/// ||A - A^*|| exceeds 1e-8 * max(1, ||A||).
Subspace kernel(const TensorOperator& a, double rank_tol = kDefaultRankTol);

/// Right null space of an arbitrary operator (SVD; singular values <= rank_tol * max(1, sigma_max)).
Subspace null_space(const TensorOperator& a, double rank_tol = kDefaultRankTol);

/// Span of all summands (rank-revealing SVD with the first summand's rank_tol).
Subspace subspace_sum(const std::vector<Subspace>& parts);
/// ||Pi_A - Pi_B||_2, in [0, 1].
double subspace_distance(const Subspace& a, const Subspace& b);
/// A intersect B as the kernel of (1 - Pi_A) + (1 - Pi_B).
Subspace subspace_intersection(const Subspace& a, const Subspace& b);

// --- theorem-level checks --------------------------------------------------

struct HypothesisStatus {
  double braid_residual = 0.0;
  double norm = 0.0;
  bool braided = false;
  bool contractive = false;
  bool holds() const { return braided && contractive; }
};

HypothesisStatus hypotheses(const TensorOperator& t);

struct KernelTheoremReport {
  std::size_t n = 0;      // checks ker P_{n+1}
  std::size_t level = 0;  // n + 1
  HypothesisStatus hypotheses;
  std::size_t dim_kernel = 0;     // dim ker P_{n+1}
  std::size_t dim_sum = 0;        // dim sum_k ker(1 + T_k)
  double distance = 0.0;          // projector distance
  double inclusion_margin = 0.0;  // ||P_{n+1} B_sum||
  bool applicable = true;
  bool pass = false;
};

/// ker P_{n+1} against sum_{k=1}^n ker(1 + T_k). n >= 1.
KernelTheoremReport kernel_theorem_check(const TensorOperator& t, std::size_t n, double rank_tol = kDefaultRankTol);

enum class Definiteness { strictly_positive, semidefinite, indefinite };
std::string to_string(Definiteness d);

struct PositivityReport {
  std::size_t n = 0;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  std::size_t kernel_dim = 0;
  Definiteness definiteness = Definiteness::semidefinite;
};

/// Spectrum of the symmetrized P_n. Classification and kernel_dim use the
/// absolute threshold rank_tol: min > rank_tol is strictly positive.
PositivityReport positivity_check(const TensorOperator& t, std::size_t n, double rank_tol = kDefaultRankTol);

struct UnReport {
  std::size_t n = 0;
  double invariance_residual = 0.0;   // ||(1 - Pi) U_n Pi||, Pi onto ker P_{n+1}
  double commutation_residual = 0.0;  // max_k ||T_k U_n - U_n T_{n+1-k}||
  double telescoping_residual = 0.0;
  double hermiticity_residual = 0.0;  // ||U_n - U_n^*||
  double norm = 0.0;                  // ||U_n||
  bool pass = false;
};

UnReport un_checks(const TensorOperator& t, std::size_t n, double rank_tol = kDefaultRankTol, double tol = kCheckTol);

struct WickIdealReport {
  std::size_t n = 0;
  std::size_t dim_kernel_P = 0;
  std::size_t dim_kernel_R = 0;
  double annihilation_residual = 0.0;  // max ||P_{n-1} mu(e_i^*) R_n X||
  double tail_residual = 0.0;          // max ||P_n mu(e_i^*) T_1...T_n (X (x) e_k)||
  double intertwining_residual = 0.0;
  double kernel_R_margin = 0.0;  // ||P_n B_{ker R_n}||
  bool pass = false;
};

/// Degree-n Wick-ideal identities for X ranging over a basis of ker P_n. n >= 2.
WickIdealReport wick_ideal_checks(const TensorOperator& t, std::size_t n, double rank_tol = kDefaultRankTol,
                                  double tol = kCheckTol);

struct InvolutionReport {
  std::size_t n = 0;
  std::size_t dim_intersection = 0;  // dim ker(1 - U_n^2) intersect ker P_{n+1}
  double max_residual = 0.0;         // max ||(1 - T_k^2) v||
  bool pass = false;
};

InvolutionReport kernel_1mU2_diag(const TensorOperator& t, std::size_t n, double rank_tol = kDefaultRankTol,
                                  double tol = kCheckTol);

/// mu(e_i^*) as a map H^{(x)n} -> H^{(x)(n-1)}: the rows of block i.
Vector contract_first(std::size_t dim, std::size_t i, const Vector& v);

}  // namespace wickfock

#endif  // WICKFOCK_SPECTRAL_HPP
