#ifndef WICKFOCK_COXETER_HPP
#define WICKFOCK_COXETER_HPP

// S_{n+1} as the Coxeter group generated by the adjacent transpositions
// sigma_i = (i, i+1), i = 1..n, and the quasimultiplicative map
// phi(sigma_{i_1} ... sigma_{i_k}) = T_{i_1} ... T_{i_k} on reduced words.
//
// Permutations are one-line and 1-based: perm[x-1] = pi(x). Products compose
// as functions, (pi rho)(x) = pi(rho(x)), so pi * sigma_i swaps the entries at
// positions i and i+1 and |pi sigma_i| = |pi| + 1 iff pi(i) < pi(i+1).

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "wickfock/model.hpp"
#include "wickfock/tensorops.hpp"

namespace wickfock {

using Permutation = std::vector<std::size_t>;
using Word = std::vector<std::size_t>;

struct CoxeterElement {
  Permutation perm;
  std::size_t length = 0;
  Word word;  // canonical reduced word, letters in 1..n
};

/// Subset J of the generators {1..n}; bit i-1 set means sigma_i in J.
using GeneratorSet = std::uint32_t;

struct DescentData {
  GeneratorSet J = 0;
  std::vector<CoxeterElement> descent_class;      // D_J
  std::vector<CoxeterElement> parabolic_subgroup;  // W_J
};

/// Thrown when phi is requested for a coefficient operator that fails the braid check.
class NotBraidedError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr std::size_t kMaxCoxeterRank = 6;

std::size_t inversion_count(const Permutation& perm);
Permutation compose(const Permutation& a, const Permutation& b);
Permutation identity_permutation(std::size_t size);
/// sigma_{w_1} ... sigma_{w_k} in S_size.
Permutation word_to_permutation(const Word& word, std::size_t size);

/// Canonical reduced word: strip the smallest right descent repeatedly
/// (pi = pi' sigma_i with i minimal), so the word ends with that letter.
Word reduced_word(const Permutation& perm);
/// Reduced word built from uniformly random descent choices.
Word random_reduced_word(const Permutation& perm, std::mt19937_64& rng);

/// All of S_{n+1}, sorted by (length, one-line lexicographic). 1 <= n <= 6.
std::vector<CoxeterElement> enumerate_group(std::size_t n);
/// sigma_0 = (sigma_1...sigma_n)(sigma_1...sigma_{n-1})...sigma_1, the reversal.
CoxeterElement longest_element(std::size_t n);

DescentData descent_data(std::size_t n, GeneratorSet J);
DescentData descent_data(std::size_t n, const std::vector<std::size_t>& generators);

/// phi(element) as a product of amplified T along the canonical word.
/// Throws NotBraidedError unless T is braided (or `force` is set).
TensorOperator phi(const TensorOperator& t, const CoxeterElement& element, std::size_t n, bool force = false);
/// phi along an arbitrary word (used to test reduced-word independence).
TensorOperator phi_word(const TensorOperator& t, const Word& word, std::size_t n);

/// phi evaluated for every element of S_{n+1} by dynamic programming over
/// the weak order: phi(pi sigma_i) = phi(pi) T_i for length-increasing steps.
class PhiTable {
 public:
  PhiTable(const TensorOperator& t, std::size_t n, bool force = false);

  std::size_t rank() const noexcept { return n_; }
  const std::vector<CoxeterElement>& elements() const noexcept { return elements_; }
  const TensorOperator& at(const Permutation& perm) const;
  const TensorOperator& at(std::size_t index) const { return values_.at(index); }

  /// sum of phi over `members`, accumulated in the order given.
  TensorOperator partial_sum(const std::vector<CoxeterElement>& members) const;

 private:
  std::size_t n_;
  std::vector<CoxeterElement> elements_;
  std::map<Permutation, std::size_t> index_;
  std::vector<TensorOperator> values_;
};

/// Memory ceiling for a PhiTable (bytes); larger requests throw std::length_error.
inline constexpr std::size_t kPhiTableByteLimit = std::size_t{1} << 30;

/// sum over S_{n+1} of phi(sigma), canonical order, holding two length layers at a time.
TensorOperator group_sum(const TensorOperator& t, std::size_t n, bool force = false);

/// sum of phi over `members`, each evaluated along its canonical word.
TensorOperator partial_sum(const TensorOperator& t, const std::vector<CoxeterElement>& members, std::size_t n);

/// ||P_{n+1} - P(D_J) P(W_J)||_2 with P_{n+1} from the recursion.
FactorizationResult factorization_check(const TensorOperator& t, std::size_t n, GeneratorSet J);
FactorizationResult factorization_check(const PhiTable& table, const TensorOperator& p_next, GeneratorSet J);

struct EulerSolomonResult {
  /// sum_{J != 0, S} (-1)^|J| P(D_J) against -(-1)^|S| 1 + phi(sigma_0) - P(S_{n+1})
  double group_form = 0.0;
  /// sum_{J != 0, S} (-1)^|J| P(D_J)^* against (-1)^{n+1} 1 + U_n - P_{n+1}
  double adjoint_form = 0.0;
  double max() const { return group_form > adjoint_form ? group_form : adjoint_form; }
};

inline constexpr std::size_t kMaxEulerSolomonRank = 5;

EulerSolomonResult euler_solomon_residual(const TensorOperator& t, std::size_t n);
EulerSolomonResult euler_solomon_residual(const PhiTable& table, const TensorOperator& t);

/// ||phi(sigma_0) - U_n||_2.
double longest_element_residual(const TensorOperator& t, std::size_t n);

}  // namespace wickfock

#endif  // WICKFOCK_COXETER_HPP
