#include "wickfock/coxeter.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <set>
#include <string>

#include "wickfock/tensorops.hpp"

namespace wickfock {

namespace {

void require_rank(std::size_t n, std::size_t limit) {
  if (n < 1 || n > limit)
    throw std::out_of_range("Coxeter rank n = " + std::to_string(n) + " outside 1.." + std::to_string(limit));
}

void require_braided(const TensorOperator& t, bool force) {
  if (force) return;
  const double r = braid_residual(t);
  if (r > kBraidTolerance)
    throw NotBraidedError("phi is only well defined for braided T (braid residual " + std::to_string(r) + ")");
}

std::size_t smallest_descent(const Permutation& p) {
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (p[i] > p[i + 1]) return i + 1;
  return 0;
}

bool in_set(GeneratorSet J, std::size_t generator) { return (J >> (generator - 1)) & 1U; }

CoxeterElement make_element(Permutation perm) {
  CoxeterElement e;
  e.length = inversion_count(perm);
  e.word = reduced_word(perm);
  e.perm = std::move(perm);
  return e;
}

void validate_permutation(const Permutation& perm) {
  std::vector<bool> seen(perm.size(), false);
  for (auto v : perm) {
    if (v < 1 || v > perm.size() || seen[v - 1]) throw std::invalid_argument("not a permutation of 1..n");
    seen[v - 1] = true;
  }
}

}  // namespace

std::size_t inversion_count(const Permutation& perm) {
  std::size_t count = 0;
  for (std::size_t a = 0; a < perm.size(); ++a)
    for (std::size_t b = a + 1; b < perm.size(); ++b)
      if (perm[a] > perm[b]) ++count;
  return count;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("compose: size mismatch");
  Permutation out(a.size());
  for (std::size_t x = 0; x < b.size(); ++x) out[x] = a[b[x] - 1];
  return out;
}

Permutation identity_permutation(std::size_t size) {
  Permutation p(size);
  std::iota(p.begin(), p.end(), std::size_t{1});
  return p;
}

Permutation word_to_permutation(const Word& word, std::size_t size) {
  auto p = identity_permutation(size);
  for (auto letter : word) {
    if (letter < 1 || letter >= size) throw std::out_of_range("generator index out of range");
    std::swap(p[letter - 1], p[letter]);
  }
  return p;
}

Word reduced_word(const Permutation& perm) {
  validate_permutation(perm);
  Permutation p = perm;
  Word reversed;
  while (std::size_t i = smallest_descent(p)) {
    std::swap(p[i - 1], p[i]);
    reversed.push_back(i);
  }
  return {reversed.rbegin(), reversed.rend()};
}

Word random_reduced_word(const Permutation& perm, std::mt19937_64& rng) {
  validate_permutation(perm);
  Permutation p = perm;
  Word reversed;
  std::vector<std::size_t> descents;
  for (;;) {
    descents.clear();
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
      if (p[i] > p[i + 1]) descents.push_back(i + 1);
    if (descents.empty()) break;
    const std::size_t i = descents[rng() % descents.size()];
    std::swap(p[i - 1], p[i]);
    reversed.push_back(i);
  }
  return {reversed.rbegin(), reversed.rend()};
}

std::vector<CoxeterElement> enumerate_group(std::size_t n) {
  require_rank(n, kMaxCoxeterRank);
  std::vector<CoxeterElement> out;
  auto p = identity_permutation(n + 1);
  do {
    out.push_back(make_element(p));
  } while (std::next_permutation(p.begin(), p.end()));
  // next_permutation already yields lexicographic order.
  std::stable_sort(out.begin(), out.end(),
                   [](const CoxeterElement& a, const CoxeterElement& b) { return a.length < b.length; });
  return out;
}

CoxeterElement longest_element(std::size_t n) {
  require_rank(n, kMaxCoxeterRank);
  Permutation p(n + 1);
  for (std::size_t x = 0; x <= n; ++x) p[x] = n + 1 - x;
  return make_element(std::move(p));
}

DescentData descent_data(std::size_t n, GeneratorSet J) {
  require_rank(n, kMaxCoxeterRank);
  if (n < 32 && (J >> n) != 0) throw std::out_of_range("generator set contains an index outside 1..n");
  DescentData out;
  out.J = J;
  for (auto& e : enumerate_group(n)) {
    bool ascends = true;
    for (std::size_t s = 1; s <= n && ascends; ++s)
      if (in_set(J, s) && e.perm[s - 1] > e.perm[s]) ascends = false;
    if (ascends) out.descent_class.push_back(e);
  }
  // W_J by closure under right multiplication with the generators in J.
  std::set<Permutation> reached{identity_permutation(n + 1)};
  std::deque<Permutation> frontier{identity_permutation(n + 1)};
  while (!frontier.empty()) {
    auto p = std::move(frontier.front());
    frontier.pop_front();
    for (std::size_t s = 1; s <= n; ++s) {
      if (!in_set(J, s)) continue;
      auto q = p;
      std::swap(q[s - 1], q[s]);
      if (reached.insert(q).second) frontier.push_back(std::move(q));
    }
  }
  for (const auto& p : reached) out.parabolic_subgroup.push_back(make_element(p));
  std::stable_sort(out.parabolic_subgroup.begin(), out.parabolic_subgroup.end(),
                   [](const CoxeterElement& a, const CoxeterElement& b) { return a.length < b.length; });
  return out;
}

DescentData descent_data(std::size_t n, const std::vector<std::size_t>& generators) {
  GeneratorSet J = 0;
  for (auto s : generators) {
    if (s < 1 || s > n) throw std::out_of_range("invalid generator index " + std::to_string(s));
    J |= GeneratorSet{1} << (s - 1);
  }
  return descent_data(n, J);
}

TensorOperator phi_word(const TensorOperator& t, const Word& word, std::size_t n) {
  auto prod = TensorOperator::identity(t.dim(), n + 1);
  for (auto letter : word) prod = right_mul(prod, t, letter);
  return prod;
}

TensorOperator phi(const TensorOperator& t, const CoxeterElement& element, std::size_t n, bool force) {
  if (element.perm.size() != n + 1) throw std::invalid_argument("phi: element is not in S_{n+1}");
  require_braided(t, force);
  return phi_word(t, element.word, n);
}

// ---------------------------------------------------------------------------

PhiTable::PhiTable(const TensorOperator& t, std::size_t n, bool force) : n_(n), elements_(enumerate_group(n)) {
  require_braided(t, force);
  const std::size_t side = ipow(t.dim(), n + 1);
  const double bytes = static_cast<double>(elements_.size()) * static_cast<double>(side) * static_cast<double>(side) *
                       sizeof(Complex);
  if (bytes > static_cast<double>(kPhiTableByteLimit))
    throw std::length_error("phi table for n = " + std::to_string(n) + ", d = " + std::to_string(t.dim()) +
                            " exceeds the memory limit");
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i].perm, i);

  values_.assign(elements_.size(), TensorOperator::identity(t.dim(), n + 1));
  std::size_t begin = 1;
  while (begin < elements_.size()) {
    std::size_t end = begin;
    while (end < elements_.size() && elements_[end].length == elements_[begin].length) ++end;
    const auto lo = static_cast<long long>(begin), hi = static_cast<long long>(end);
#pragma omp parallel for schedule(dynamic)
    for (long long i = lo; i < hi; ++i) {
      const auto& e = elements_[static_cast<std::size_t>(i)];
      const std::size_t letter = e.word.back();
      auto parent = e.perm;
      std::swap(parent[letter - 1], parent[letter]);
      values_[static_cast<std::size_t>(i)] = right_mul(values_[index_.at(parent)], t, letter);
    }
    begin = end;
  }
}

const TensorOperator& PhiTable::at(const Permutation& perm) const { return values_.at(index_.at(perm)); }

TensorOperator PhiTable::partial_sum(const std::vector<CoxeterElement>& members) const {
  auto sum = TensorOperator::zero(values_.front().dim(), n_ + 1);
  for (const auto& e : members) sum = sum + at(e.perm);
  return sum;
}

TensorOperator group_sum(const TensorOperator& t, std::size_t n, bool force) {
  const auto elements = enumerate_group(n);
  require_braided(t, force);
  std::map<Permutation, std::size_t> index;
  for (std::size_t i = 0; i < elements.size(); ++i) index.emplace(elements[i].perm, i);

  auto sum = TensorOperator::identity(t.dim(), n + 1);
  std::vector<TensorOperator> previous{TensorOperator::identity(t.dim(), n + 1)};
  std::size_t prev_begin = 0;
  std::size_t begin = 1;
  while (begin < elements.size()) {
    std::size_t end = begin;
    while (end < elements.size() && elements[end].length == elements[begin].length) ++end;
    std::vector<TensorOperator> layer(end - begin, TensorOperator::zero(t.dim(), n + 1));
    const auto count = static_cast<long long>(end - begin);
#pragma omp parallel for schedule(dynamic)
    for (long long k = 0; k < count; ++k) {
      const auto& e = elements[begin + static_cast<std::size_t>(k)];
      const std::size_t letter = e.word.back();
      auto parent = e.perm;
      std::swap(parent[letter - 1], parent[letter]);
      layer[static_cast<std::size_t>(k)] = right_mul(previous[index.at(parent) - prev_begin], t, letter);
    }
    for (const auto& v : layer) sum = sum + v;
    previous = std::move(layer);
    prev_begin = begin;
    begin = end;
  }
  return sum;
}

TensorOperator partial_sum(const TensorOperator& t, const std::vector<CoxeterElement>& members, std::size_t n) {
  auto sum = TensorOperator::zero(t.dim(), n + 1);
  for (const auto& e : members) sum = sum + phi_word(t, e.word, n);
  return sum;
}

FactorizationResult factorization_check(const PhiTable& table, const TensorOperator& p_next, GeneratorSet J) {
  const auto data = descent_data(table.rank(), J);
  FactorizationResult out;
  out.residual =
      distance(p_next, table.partial_sum(data.descent_class) * table.partial_sum(data.parabolic_subgroup));
  return out;
}

FactorizationResult factorization_check(const TensorOperator& t, std::size_t n, GeneratorSet J) {
  const double braid = braid_residual(t);
  const PhiTable table(t, n, /*force=*/true);
  auto out = factorization_check(table, build_P(t, n + 1), J);
  out.braid_residual = braid;
  out.reliable = braid <= kBraidTolerance;
  return out;
}

EulerSolomonResult euler_solomon_residual(const PhiTable& table, const TensorOperator& t) {
  const std::size_t n = table.rank();
  require_rank(n, kMaxEulerSolomonRank);
  const std::size_t level = n + 1;
  const GeneratorSet all = (GeneratorSet{1} << n) - 1;

  auto lhs = TensorOperator::zero(t.dim(), level);
  auto lhs_adjoint = TensorOperator::zero(t.dim(), level);
  for (GeneratorSet J = 1; J < all; ++J) {
    const auto pd = table.partial_sum(descent_data(n, J).descent_class);
    const Complex sign = (std::popcount(J) % 2 == 0) ? 1.0 : -1.0;
    lhs = lhs + sign * pd;
    lhs_adjoint = lhs_adjoint + sign * pd.adjoint();
  }
  const auto one = TensorOperator::identity(t.dim(), level);
  const Complex sign_s = (n % 2 == 0) ? 1.0 : -1.0;  // (-1)^{|S|}

  const auto rhs = (-sign_s) * one + table.at(longest_element(n).perm) - table.partial_sum(table.elements());
  const auto rhs_adjoint = (-sign_s) * one + build_U(t, n) - build_P(t, n + 1);

  EulerSolomonResult out;
  out.group_form = distance(lhs, rhs);
  out.adjoint_form = distance(lhs_adjoint, rhs_adjoint);
  return out;
}

EulerSolomonResult euler_solomon_residual(const TensorOperator& t, std::size_t n) {
  require_rank(n, kMaxEulerSolomonRank);
  return euler_solomon_residual(PhiTable(t, n), t);
}

double longest_element_residual(const TensorOperator& t, std::size_t n) {
  return distance(phi(t, longest_element(n), n), build_U(t, n));
}

}  // namespace wickfock
