#ifndef WICKFOCK_LINALG_HPP
#define WICKFOCK_LINALG_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>

#include <Eigen/Dense>

namespace wickfock {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// d^n, throwing if the result would not fit an Eigen index.
std::size_t ipow(std::size_t base, std::size_t exp);

/// Largest singular value, taken from the eigendecomposition of A^*A.
double op_norm(const Matrix& a);

/// ||A - A^*||_2.
double hermiticity_residual(const Matrix& a);

/// Eigenvalues of (A + A^*)/2 in ascending order.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& a);

/// 1_{d^k} (x) A.
Matrix kron_identity_left(std::size_t identity_size, const Matrix& a);

/// A (x) 1_{d^k}.
Matrix kron_identity_right(const Matrix& a, std::size_t identity_size);

/// Plain Kronecker product a (x) b.
Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace wickfock

#endif  // WICKFOCK_LINALG_HPP
