#include "wickfock/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wickfock {

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t result = 1;
  for (std::size_t e = 0; e < exp; ++e) {
    if (base != 0 && result > static_cast<std::size_t>(std::numeric_limits<Index>::max()) / base)
      throw std::overflow_error("tensor power too large");
    result *= base;
  }
  return result;
}

double op_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  const Matrix gram = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
  const double top = solver.eigenvalues().maxCoeff();
  return std::sqrt(std::max(0.0, top));
}

double hermiticity_residual(const Matrix& a) {
  return op_norm(a - a.adjoint());
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& a) {
  if (a.size() == 0) return Eigen::VectorXd{};
  const Matrix sym = (a + a.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

Matrix kron_identity_left(std::size_t identity_size, const Matrix& a) {
  const Index k = static_cast<Index>(identity_size);
  Matrix out = Matrix::Zero(k * a.rows(), k * a.cols());
  for (Index b = 0; b < k; ++b) out.block(b * a.rows(), b * a.cols(), a.rows(), a.cols()) = a;
  return out;
}

Matrix kron_identity_right(const Matrix& a, std::size_t identity_size) {
  const Index k = static_cast<Index>(identity_size);
  Matrix out = Matrix::Zero(a.rows() * k, a.cols() * k);
  for (Index r = 0; r < a.rows(); ++r)
    for (Index c = 0; c < a.cols(); ++c) {
      const Complex v = a(r, c);
      if (v == Complex{}) continue;
      for (Index t = 0; t < k; ++t) out(r * k + t, c * k + t) = v;
    }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index r = 0; r < a.rows(); ++r)
    for (Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

}  // namespace wickfock
