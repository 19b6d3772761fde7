#include "wickfock/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wickfock/tensorops.hpp"

namespace wickfock {

namespace {

constexpr double kSelfAdjointTol = 1e-8;
constexpr double kNormSlack = 1e-10;

// Modified Gram-Schmidt, column order preserved; drops columns that collapse.
Matrix orthonormalize(const Matrix& columns) {
  Matrix out(columns.rows(), 0);
  for (Index c = 0; c < columns.cols(); ++c) {
    Vector v = columns.col(c);
    for (Index k = 0; k < out.cols(); ++k) v -= out.col(k).dot(v) * out.col(k);
    const double nrm = v.norm();
    if (nrm < 1e-12) continue;
    out.conservativeResize(Eigen::NoChange, out.cols() + 1);
    out.col(out.cols() - 1) = v / nrm;
  }
  return out;
}

void require_same_space(const Subspace& a, const Subspace& b) {
  if (a.dim() != b.dim() || a.level() != b.level()) throw std::invalid_argument("subspace level mismatch");
}

double max_column_norm(const Matrix& m) {
  double worst = 0.0;
  for (Index c = 0; c < m.cols(); ++c) worst = std::max(worst, m.col(c).norm());
  return worst;
}

}  // namespace

Subspace::Subspace(std::size_t dim, std::size_t level, Matrix basis, double rank_tol)
    : dim_(dim), level_(level), basis_(std::move(basis)), rank_tol_(rank_tol) {
  if (basis_.rows() != static_cast<Index>(ipow(dim, level)))
    throw std::invalid_argument("Subspace: basis has the wrong row count");
  if (basis_.cols() > basis_.rows()) throw std::invalid_argument("Subspace: more basis vectors than dimensions");
}

Subspace Subspace::zero(std::size_t dim, std::size_t level, double rank_tol) {
  return {dim, level, Matrix(static_cast<Index>(ipow(dim, level)), 0), rank_tol};
}

Matrix Subspace::projector() const { return basis_ * basis_.adjoint(); }

Subspace kernel(const TensorOperator& a, double rank_tol) {
  const Matrix sym = (a.matrix() + a.matrix().adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  const auto& values = solver.eigenvalues();
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  if (op_norm(a.matrix() - a.matrix().adjoint()) > kSelfAdjointTol * scale)
    throw std::invalid_argument("kernel: operator is not self-adjoint");
  const double threshold = rank_tol * scale;
  Matrix picked(sym.rows(), 0);
  for (Index k = 0; k < values.size(); ++k) {
    if (std::abs(values(k)) > threshold) continue;
    picked.conservativeResize(Eigen::NoChange, picked.cols() + 1);
    picked.col(picked.cols() - 1) = solver.eigenvectors().col(k);
  }
  return {a.dim(), a.level(), orthonormalize(picked), rank_tol};
}

Subspace subspace_sum(const std::vector<Subspace>& parts) {
  if (parts.empty()) throw std::invalid_argument("subspace_sum: no summands");
  Index total = 0;
  for (const auto& p : parts) {
    require_same_space(parts.front(), p);
    total += p.basis().cols();
  }
  const auto& first = parts.front();
  if (total == 0) return Subspace::zero(first.dim(), first.level(), first.rank_tol());
  Matrix stacked(first.basis().rows(), total);
  Index at = 0;
  for (const auto& p : parts) {
    stacked.middleCols(at, p.basis().cols()) = p.basis();
    at += p.basis().cols();
  }
  Eigen::BDCSVD<Matrix> svd(stacked, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double threshold = first.rank_tol() * std::max(1.0, sv.size() ? sv(0) : 0.0);
  Index r = 0;
  while (r < sv.size() && sv(r) > threshold) ++r;
  return {first.dim(), first.level(), orthonormalize(svd.matrixU().leftCols(r)), first.rank_tol()};
}

double subspace_distance(const Subspace& a, const Subspace& b) {
  require_same_space(a, b);
  const Matrix diff = a.projector() - b.projector();
  if (diff.size() == 0) return 0.0;
  const auto values = hermitian_eigenvalues(diff);
  return std::clamp(values.cwiseAbs().maxCoeff(), 0.0, 1.0);
}

Subspace subspace_intersection(const Subspace& a, const Subspace& b) {
  require_same_space(a, b);
  const auto n = static_cast<Index>(ipow(a.dim(), a.level()));
  const Matrix one = Matrix::Identity(n, n);
  const TensorOperator m(a.dim(), a.level(), (one - a.projector()) + (one - b.projector()));
  return kernel(m, a.rank_tol());
}

Subspace null_space(const TensorOperator& a, double rank_tol) {
  Eigen::JacobiSVD<Matrix> svd(a.matrix(), Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double threshold = rank_tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  Index r = 0;
  while (r < sv.size() && sv(r) > threshold) ++r;
  const Matrix& v = svd.matrixV();
  return {a.dim(), a.level(), orthonormalize(v.rightCols(v.cols() - r)), rank_tol};
}

// ---------------------------------------------------------------------------

HypothesisStatus hypotheses(const TensorOperator& t) {
  HypothesisStatus h;
  h.braid_residual = braid_residual(t);
  h.norm = t.norm();
  h.braided = h.braid_residual <= kBraidTolerance;
  h.contractive = h.norm <= 1.0 + kNormSlack;
  return h;
}

KernelTheoremReport kernel_theorem_check(const TensorOperator& t, std::size_t n, double rank_tol) {
  if (n < 1) throw std::out_of_range("kernel theorem check needs n >= 1");
  KernelTheoremReport r;
  r.n = n;
  r.level = n + 1;
  r.hypotheses = hypotheses(t);
  r.applicable = r.hypotheses.holds();

  const auto p = build_P(t, r.level);
  const auto kp = kernel(p, rank_tol);
  std::vector<Subspace> parts;
  const auto one = TensorOperator::identity(t.dim(), r.level);
  for (std::size_t k = 1; k <= n; ++k) parts.push_back(kernel(one + amplify(t, k, r.level), rank_tol));
  const auto sum = subspace_sum(parts);

  r.dim_kernel = kp.rank();
  r.dim_sum = sum.rank();
  r.distance = subspace_distance(kp, sum);
  r.inclusion_margin = sum.rank() ? op_norm(p.matrix() * sum.basis()) : 0.0;
  r.pass = r.applicable && r.dim_kernel == r.dim_sum && r.distance <= kCheckTol && r.inclusion_margin <= kCheckTol;
  return r;
}

std::string to_string(Definiteness d) {
  switch (d) {
    case Definiteness::strictly_positive: return "strictly_positive";
    case Definiteness::semidefinite: return "semidefinite";
    case Definiteness::indefinite: return "indefinite";
  }
  return "unknown";
}

PositivityReport positivity_check(const TensorOperator& t, std::size_t n, double rank_tol) {
  PositivityReport r;
  r.n = n;
  const auto values = hermitian_eigenvalues(build_P(t, n).matrix());
  r.min_eigenvalue = values.minCoeff();
  r.max_eigenvalue = values.maxCoeff();
  // Absolute threshold: near-singular but invertible P_n must still read as positive.
  const double threshold = rank_tol;
  r.kernel_dim = static_cast<std::size_t>((values.array().abs() <= threshold).count());
  if (r.min_eigenvalue > threshold)
    r.definiteness = Definiteness::strictly_positive;
  else if (r.min_eigenvalue >= -threshold)
    r.definiteness = Definiteness::semidefinite;
  else
    r.definiteness = Definiteness::indefinite;
  return r;
}

UnReport un_checks(const TensorOperator& t, std::size_t n, double rank_tol, double tol) {
  if (n < 1) throw std::out_of_range("U_n checks need n >= 1");
  UnReport r;
  r.n = n;
  const auto u = build_U(t, n);
  const auto kp = kernel(build_P(t, n + 1), rank_tol);
  const Matrix pi = kp.projector();
  const Matrix one = Matrix::Identity(pi.rows(), pi.cols());
  r.invariance_residual = op_norm((one - pi) * u.matrix() * pi);
  r.commutation_residual = un_commutation_residual(t, n);
  r.telescoping_residual = telescoping_residual(t, n);
  r.hermiticity_residual = hermiticity_residual(u.matrix());
  r.norm = u.norm();
  r.pass = r.invariance_residual <= tol && r.commutation_residual <= tol && r.telescoping_residual <= tol;
  return r;
}

Vector contract_first(std::size_t dim, std::size_t i, const Vector& v) {
  const auto d = static_cast<Index>(dim);
  if (v.size() % d != 0 || v.size() < d) throw std::invalid_argument("contract_first: vector has degree 0");
  if (i >= dim) throw std::out_of_range("contract_first: index out of range");
  const Index block = v.size() / d;
  return v.segment(static_cast<Index>(i) * block, block);
}

WickIdealReport wick_ideal_checks(const TensorOperator& t, std::size_t n, double rank_tol, double tol) {
  if (n < 2) throw std::out_of_range("Wick ideal checks need n >= 2");
  WickIdealReport r;
  r.n = n;
  const std::size_t d = t.dim();
  const auto pn = build_P(t, n);
  const auto pprev = build_P(t, n - 1);
  const auto rn = build_R(t, n);
  const auto kp = kernel(pn, rank_tol);
  const auto kr = null_space(rn, rank_tol);
  const auto chain = ascending_product(t, 1, n, n + 1);
  r.dim_kernel_P = kp.rank();
  r.dim_kernel_R = kr.rank();

  for (Index c = 0; c < kp.basis().cols(); ++c) {
    const Vector x = kp.basis().col(c);
    const Vector rx = rn.matrix() * x;
    for (std::size_t i = 0; i < d; ++i) {
      const Vector head = pprev.matrix() * contract_first(d, i, rx);
      r.annihilation_residual = std::max(r.annihilation_residual, head.norm());
    }
    for (std::size_t k = 0; k < d; ++k) {
      Vector ek = Vector::Zero(static_cast<Index>(d));
      ek(static_cast<Index>(k)) = 1.0;
      const Vector lifted = chain.matrix() * kron(x, ek);
      for (std::size_t i = 0; i < d; ++i) {
        const Vector tail = pn.matrix() * contract_first(d, i, lifted);
        r.tail_residual = std::max(r.tail_residual, tail.norm());
      }
    }
  }
  r.intertwining_residual = intertwining_residual(t, n);
  r.kernel_R_margin = kr.rank() ? max_column_norm(pn.matrix() * kr.basis()) : 0.0;
  r.pass = r.annihilation_residual <= tol && r.tail_residual <= tol && r.intertwining_residual <= tol &&
           r.kernel_R_margin <= tol;
  return r;
}

InvolutionReport kernel_1mU2_diag(const TensorOperator& t, std::size_t n, double rank_tol, double tol) {
  if (n < 1) throw std::out_of_range("kernel_1mU2_diag needs n >= 1");
  InvolutionReport r;
  r.n = n;
  const std::size_t level = n + 1;
  const auto u = build_U(t, n);
  const auto one = TensorOperator::identity(t.dim(), level);
  const auto fixed = kernel(one - u * u, rank_tol);
  const auto kp = kernel(build_P(t, level), rank_tol);
  const auto both = subspace_intersection(fixed, kp);
  r.dim_intersection = both.rank();
  for (std::size_t k = 1; k <= n && both.rank() > 0; ++k) {
    const auto tk = amplify(t, k, level);
    const Matrix defect = (one - tk * tk).matrix() * both.basis();
    r.max_residual = std::max(r.max_residual, max_column_norm(defect));
  }
  r.pass = r.max_residual <= tol;
  return r;
}

}  // namespace wickfock
