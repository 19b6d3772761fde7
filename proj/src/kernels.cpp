#include "wickfock/kernels.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wickfock::kernels {

namespace {

// Below this many rows the thread start-up costs more than the loop.
constexpr Index kParallelThreshold = 64;

int g_threads = 0;

int team_size() {
#ifdef _OPENMP
  return g_threads > 0 ? g_threads : omp_get_max_threads();
#else
  return 1;
#endif
}

void check_shapes(const Matrix& t, const SlotLayout& s) {
  if (t.rows() != s.pair_count || t.cols() != s.pair_count)
    throw std::invalid_argument("kernels: local operator must be d^2 x d^2");
}

}  // namespace

SlotLayout::SlotLayout(std::size_t dim_, std::size_t pos, std::size_t level) : dim(dim_) {
  if (level < 2 || pos < 1 || pos + 1 > level)
    throw std::out_of_range("slot position " + std::to_string(pos) + " invalid for level " + std::to_string(level));
  prefix_count = static_cast<Index>(ipow(dim, pos - 1));
  suffix_count = static_cast<Index>(ipow(dim, level - pos - 1));
  pair_count = static_cast<Index>(dim * dim);
  full = prefix_count * pair_count * suffix_count;
}

void set_num_threads(int threads) { g_threads = threads < 0 ? 0 : threads; }
int num_threads() { return team_size(); }

Matrix amplify(const Matrix& t, std::size_t dim, std::size_t pos, std::size_t level) {
  const SlotLayout s(dim, pos, level);
  check_shapes(t, s);
  Matrix out = Matrix::Zero(s.full, s.full);
  const Index blocks = s.prefix_count * s.suffix_count;
#pragma omp parallel for num_threads(team_size()) if (s.full >= kParallelThreshold)
  for (Index b = 0; b < blocks; ++b) {
    const Index pre = b / s.suffix_count, suf = b % s.suffix_count;
    for (Index pc = 0; pc < s.pair_count; ++pc) {
      const Index col = s.row(pre, pc, suf);
      for (Index pr = 0; pr < s.pair_count; ++pr) out(s.row(pre, pr, suf), col) = t(pr, pc);
    }
  }
  return out;
}

Matrix left_apply(const Matrix& t, std::size_t dim, std::size_t pos, std::size_t level, const Matrix& a) {
  const SlotLayout s(dim, pos, level);
  check_shapes(t, s);
  if (a.rows() != s.full) throw std::invalid_argument("left_apply: operand has wrong row count");
  Matrix out(a.rows(), a.cols());
  const Index cols = a.cols();
#pragma omp parallel for num_threads(team_size()) if (s.full >= kParallelThreshold)
  for (Index c = 0; c < cols; ++c) {
    for (Index pre = 0; pre < s.prefix_count; ++pre)
      for (Index suf = 0; suf < s.suffix_count; ++suf)
        for (Index pr = 0; pr < s.pair_count; ++pr) {
          Complex acc{};
          for (Index pc = 0; pc < s.pair_count; ++pc) acc += t(pr, pc) * a(s.row(pre, pc, suf), c);
          out(s.row(pre, pr, suf), c) = acc;
        }
  }
  return out;
}

Matrix right_apply(const Matrix& a, const Matrix& t, std::size_t dim, std::size_t pos, std::size_t level) {
  const SlotLayout s(dim, pos, level);
  check_shapes(t, s);
  if (a.cols() != s.full) throw std::invalid_argument("right_apply: operand has wrong column count");
  Matrix out(a.rows(), a.cols());
  const Index blocks = s.prefix_count * s.suffix_count;
  const Index rows = a.rows();
  // Output column (pre, pc, suf) mixes input columns (pre, *, suf) only.
#pragma omp parallel for num_threads(team_size()) if (s.full >= kParallelThreshold)
  for (Index b = 0; b < blocks; ++b) {
    const Index pre = b / s.suffix_count, suf = b % s.suffix_count;
    for (Index pc = 0; pc < s.pair_count; ++pc) {
      const Index col = s.row(pre, pc, suf);
      for (Index r = 0; r < rows; ++r) {
        Complex acc{};
        for (Index k = 0; k < s.pair_count; ++k) acc += a(r, s.row(pre, k, suf)) * t(k, pc);
        out(r, col) = acc;
      }
    }
  }
  return out;
}

namespace reference {

Matrix amplify(const Matrix& t, std::size_t dim, std::size_t pos, std::size_t level) {
  const SlotLayout s(dim, pos, level);
  check_shapes(t, s);
  return kron_identity_right(kron_identity_left(static_cast<std::size_t>(s.prefix_count), t),
                             static_cast<std::size_t>(s.suffix_count));
}

Matrix left_apply(const Matrix& t, std::size_t dim, std::size_t pos, std::size_t level, const Matrix& a) {
  return amplify(t, dim, pos, level) * a;
}

Matrix right_apply(const Matrix& a, const Matrix& t, std::size_t dim, std::size_t pos, std::size_t level) {
  return a * amplify(t, dim, pos, level);
}

}  // namespace reference

}  // namespace wickfock::kernels
