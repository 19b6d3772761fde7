#ifndef WICKFOCK_REWRITE_HPP
#define WICKFOCK_REWRITE_HPP

// Wick ordering in W(T): every a_i^* a_j is rewritten as
//   delta_ij 1 + sum_{k,l} T_ij^kl a_l a_k^*
// until all creations stand left of all annihilations. The involution is the
// anti-multiplicative extension of a_i -> a_i^* with conjugated coefficients.
//
// Generator indices are 0-based here; the text syntax ("a1 a2*") is 1-based.

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wickfock/fock.hpp"
#include "wickfock/model.hpp"
#include "wickfock/random.hpp"

namespace wickfock {

struct Letter {
  std::size_t index = 0;
  bool starred = false;
  auto operator<=>(const Letter&) const = default;
};

using FreeWord = std::vector<Letter>;
/// Linear combination of free words.
using FreeSum = std::map<FreeWord, Complex>;

/// a_{c_1} ... a_{c_m} a_{a_1}^* ... a_{a_k}^*.
struct WickMonomial {
  std::vector<std::size_t> creation;
  std::vector<std::size_t> annihilation;

  std::size_t degree() const noexcept { return creation.size() + annihilation.size(); }
  bool operator==(const WickMonomial&) const = default;
  /// Degree first, then lexicographic on (creation, annihilation).
  std::strong_ordering operator<=>(const WickMonomial& other) const;

  FreeWord to_word() const;
};

class WickPolynomial {
 public:
  using Terms = std::map<WickMonomial, Complex>;

  WickPolynomial() = default;
  static WickPolynomial unit();

  /// Adds c to the coefficient of m; exact zeros are removed.
  void add(const WickMonomial& m, Complex c);
  Complex coefficient(const WickMonomial& m) const;
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  /// max |coefficient difference| over the union of supports.
  double distance(const WickPolynomial& other) const;

 private:
  Terms terms_;
};

/// Picks which redex (position p with w[p] starred, w[p+1] unstarred) to rewrite.
using RedexChooser = std::function<std::size_t(const FreeWord&, const std::vector<std::size_t>& redexes)>;

/// Always the leftmost redex.
RedexChooser leftmost_redex();
/// Uniformly random redex from `rng` (which must outlive the chooser).
RedexChooser random_redex(SeededStream& rng);

class WickRewriter {
 public:
  explicit WickRewriter(const WickSpec& spec);

  std::size_t dim() const noexcept { return dim_; }

  WickPolynomial normal_order(const FreeSum& input, const RedexChooser& choose) const;
  WickPolynomial normal_order(const FreeSum& input) const { return normal_order(input, leftmost_redex()); }
  WickPolynomial normal_order(const FreeWord& word) const { return normal_order(FreeSum{{word, 1.0}}); }

  /// f(X^* Y) for creation-only X, Y.
  Complex inner_via_f(const FreeSum& x, const FreeSum& y) const;

 private:
  struct Term {
    std::size_t k;
    std::size_t l;
    Complex value;
  };
  std::size_t dim_;
  std::vector<std::vector<Term>> table_;  // index i * d + j -> nonzero T_ij^kl
};

FreeWord star(const FreeWord& w);
FreeSum star(const FreeSum& s);
WickPolynomial star(const WickPolynomial& p);

/// Coefficient of the empty monomial.
Complex fock_functional(const WickPolynomial& p);

bool is_wick_ordered(const FreeWord& w);
bool is_creation_only(const FreeSum& s);
/// Concatenation product of free sums.
FreeSum multiply(const FreeSum& a, const FreeSum& b);

/// "a1 a2* a1*" or "1"; indices 1..dim.
FreeWord parse_word(std::string_view text, std::size_t dim);
/// Either a word string or a JSON array of {"re", "im", "word"}.
FreeSum parse_expression(std::string_view text, std::size_t dim);
FreeSum parse_combination(const nlohmann::json& terms, std::size_t dim);

std::string format_word(const FreeWord& w);
nlohmann::ordered_json to_json(const WickPolynomial& p);

/// Creation-only sum as the vector X Omega in the truncated tensor algebra.
GradedVector to_graded(const FreeSum& s, std::size_t dim, std::size_t max_degree);

}  // namespace wickfock

#endif  // WICKFOCK_REWRITE_HPP
