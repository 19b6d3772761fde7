#ifndef WICKFOCK_KERNELS_HPP
#define WICKFOCK_KERNELS_HPP

// Hot loops for operators that act on two adjacent tensor slots.
//
// Every kernel has two implementations: `reference::` forms the dense
// amplified matrix 1 (x) ... (x) T (x) ... (x) 1 and uses an ordinary product;
// the top-level versions touch only the d^2 x d^2 block and split the outer
// loop across OpenMP threads. Results agree to rounding; tests compare them.

#include <cstddef>

#include "wickfock/linalg.hpp"

namespace wickfock::kernels {

/// Slot layout of H^{(x)n} around positions (pos, pos+1), pos 1-based.
struct SlotLayout {
  std::size_t dim;
  Index prefix_count;  // d^{pos-1}
  Index suffix_count;  // d^{n-pos-1}
  Index pair_count;    // d^2
  Index full;          // d^n

  SlotLayout(std::size_t dim, std::size_t pos, std::size_t level);

  Index row(Index prefix, Index pair, Index suffix) const noexcept {
    return (prefix * pair_count + pair) * suffix_count + suffix;
  }
};

/// Dense T_pos on H^{(x)level}.
Matrix amplify(const Matrix& t, std::size_t dim, std::size_t pos, std::size_t level);

/// T_pos * a.
Matrix left_apply(const Matrix& t, std::size_t dim, std::size_t pos, std::size_t level, const Matrix& a);

/// a * T_pos.
Matrix right_apply(const Matrix& a, const Matrix& t, std::size_t dim, std::size_t pos, std::size_t level);

/// Sets the OpenMP team size used by the kernels (0 restores the runtime default).
void set_num_threads(int threads);
int num_threads();

namespace reference {

Matrix amplify(const Matrix& t, std::size_t dim, std::size_t pos, std::size_t level);
Matrix left_apply(const Matrix& t, std::size_t dim, std::size_t pos, std::size_t level, const Matrix& a);
Matrix right_apply(const Matrix& a, const Matrix& t, std::size_t dim, std::size_t pos, std::size_t level);

}  // namespace reference

}  // namespace wickfock::kernels

#endif  // WICKFOCK_KERNELS_HPP
