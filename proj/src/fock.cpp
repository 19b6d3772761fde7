#include "wickfock/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wickfock/random.hpp"
#include "wickfock/tensorops.hpp"

namespace wickfock {

namespace {

void require_same_shape(const GradedVector& a, const GradedVector& b) {
  if (a.dim() != b.dim() || a.max_degree() != b.max_degree())
    throw std::invalid_argument("graded vectors live in different truncations");
}

}  // namespace

GradedVector::GradedVector(std::size_t dim, std::size_t max_degree) : dim_(dim) {
  if (dim == 0) throw std::invalid_argument("GradedVector: dimension must be positive");
  components_.reserve(max_degree + 1);
  for (std::size_t n = 0; n <= max_degree; ++n)
    components_.push_back(Vector::Zero(static_cast<Index>(ipow(dim, n))));
}

GradedVector GradedVector::vacuum(std::size_t dim, std::size_t max_degree) {
  GradedVector v(dim, max_degree);
  v.components_[0](0) = 1.0;
  return v;
}

GradedVector GradedVector::basis(std::size_t dim, std::size_t max_degree, const std::vector<std::size_t>& indices) {
  if (indices.size() > max_degree) throw std::overflow_error("basis vector exceeds the truncation degree");
  Index pos = 0;
  for (auto i : indices) {
    if (i >= dim) throw std::out_of_range("basis index out of range");
    pos = pos * static_cast<Index>(dim) + static_cast<Index>(i);
  }
  GradedVector v(dim, max_degree);
  v.components_[indices.size()](pos) = 1.0;
  return v;
}

GradedVector GradedVector::with_component(std::size_t degree, Vector value) const {
  if (degree > max_degree()) throw std::out_of_range("degree beyond truncation");
  if (value.size() != components_[degree].size()) throw std::invalid_argument("component has the wrong length");
  GradedVector out = *this;
  out.components_[degree] = std::move(value);
  return out;
}

std::optional<std::size_t> GradedVector::top_degree() const {
  for (std::size_t n = components_.size(); n-- > 0;)
    if (!components_[n].isZero(0.0)) return n;
  return std::nullopt;
}

double GradedVector::norm() const {
  double sq = 0.0;
  for (const auto& c : components_) sq += c.squaredNorm();
  return std::sqrt(sq);
}

GradedVector operator+(const GradedVector& a, const GradedVector& b) {
  require_same_shape(a, b);
  GradedVector out = a;
  for (std::size_t n = 0; n < out.components_.size(); ++n) out.components_[n] += b.components_[n];
  return out;
}

GradedVector operator-(const GradedVector& a, const GradedVector& b) {
  require_same_shape(a, b);
  GradedVector out = a;
  for (std::size_t n = 0; n < out.components_.size(); ++n) out.components_[n] -= b.components_[n];
  return out;
}

GradedVector operator*(Complex s, const GradedVector& a) {
  GradedVector out = a;
  for (auto& c : out.components_) c *= s;
  return out;
}

GradedVector create(std::size_t i, const GradedVector& v) {
  if (i >= v.dim()) throw std::out_of_range("create: generator index out of range");
  const auto top = v.top_degree();
  if (top && *top >= v.max_degree()) throw std::overflow_error("create: degree would exceed the truncation N");
  GradedVector out(v.dim(), v.max_degree());
  for (std::size_t n = 0; n < v.max_degree(); ++n) {
    const auto& c = v.component(n);
    Vector next = Vector::Zero(c.size() * static_cast<Index>(v.dim()));
    next.segment(static_cast<Index>(i) * c.size(), c.size()) = c;
    out = out.with_component(n + 1, std::move(next));
  }
  return out;
}

GradedVector annihilate_mu(std::size_t i, const GradedVector& v) {
  if (i >= v.dim()) throw std::out_of_range("annihilate: generator index out of range");
  GradedVector out(v.dim(), v.max_degree());
  for (std::size_t n = 1; n <= v.max_degree(); ++n) {
    const auto& c = v.component(n);
    const Index block = c.size() / static_cast<Index>(v.dim());
    out = out.with_component(n - 1, c.segment(static_cast<Index>(i) * block, block));
  }
  return out;
}

// ---------------------------------------------------------------------------

FockSpace::FockSpace(TensorOperator t, std::size_t max_degree) : t_(std::move(t)) {
  if (t_.level() != 2) throw std::invalid_argument("FockSpace needs the level-2 operator T");
  for (std::size_t n = 0; n <= max_degree; ++n) {
    r_.push_back(build_R(t_, n));
    p_.push_back(build_P(t_, n));
  }
}

GradedVector FockSpace::annihilate(std::size_t i, const GradedVector& v) const {
  if (v.dim() != dim() || v.max_degree() != max_degree()) throw std::invalid_argument("vector from another space");
  if (i >= dim()) throw std::out_of_range("annihilate: generator index out of range");
  GradedVector out(dim(), max_degree());
  for (std::size_t n = 1; n <= max_degree(); ++n) {
    const Vector w = r_[n].matrix() * v.component(n);
    const Index block = w.size() / static_cast<Index>(dim());
    out = out.with_component(n - 1, w.segment(static_cast<Index>(i) * block, block));
  }
  return out;
}

Complex FockSpace::inner(const GradedVector& x, const GradedVector& y) const {
  require_same_shape(x, y);
  if (x.dim() != dim() || x.max_degree() != max_degree()) throw std::invalid_argument("vector from another space");
  Complex sum{};
  for (std::size_t n = 0; n <= max_degree(); ++n) sum += x.component(n).dot(p_[n].matrix() * y.component(n));
  return sum;
}

std::size_t default_truncation(std::size_t dim) {
  if (dim <= 2) return 5;
  if (dim == 3) return 4;
  return 3;
}

GradedVector random_graded(std::size_t dim, std::size_t max_degree, std::size_t fill_degree, SeededStream& rng) {
  GradedVector v(dim, max_degree);
  for (std::size_t n = 0; n <= std::min(fill_degree, max_degree); ++n) {
    Vector c(static_cast<Index>(ipow(dim, n)));
    for (Index k = 0; k < c.size(); ++k) c(k) = rng.complex();
    v = v.with_component(n, std::move(c));
  }
  return v;
}

double basic_relation_residual(const FockSpace& fock) {
  const std::size_t d = fock.dim();
  const std::size_t top = fock.max_degree();
  const auto& t = fock.coefficient_operator();
  double worst = 0.0;
  for (std::size_t m = 0; m + 1 <= top; ++m) {
    const std::size_t count = ipow(d, m);
    for (std::size_t p = 0; p < count; ++p) {
      const GradedVector v =
          GradedVector(d, top).with_component(m, Vector::Unit(static_cast<Index>(count), static_cast<Index>(p)));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          const auto lhs = fock.annihilate(i, create(j, v));
          auto rhs = (i == j) ? v : GradedVector(d, top);
          for (std::size_t k = 0; k < d; ++k) {
            const auto down = fock.annihilate(k, v);
            for (std::size_t l = 0; l < d; ++l) {
              // T_ij^kl sits at M[(i,l),(j,k)].
              const Complex c = t(static_cast<Index>(i * d + l), static_cast<Index>(j * d + k));
              if (c == Complex{}) continue;
              rhs = rhs + c * create(l, down);
            }
          }
          worst = std::max(worst, (lhs - rhs).norm());
        }
    }
  }
  return worst;
}

double adjointness_residual(const FockSpace& fock, std::uint64_t seed, std::size_t pairs) {
  SeededStream rng(seed);
  const std::size_t d = fock.dim();
  const std::size_t top = fock.max_degree();
  double worst = 0.0;
  for (std::size_t k = 0; k < pairs; ++k) {
    const auto x = random_graded(d, top, top == 0 ? 0 : top - 1, rng);
    const auto y = random_graded(d, top, top, rng);
    if (top == 0) continue;
    for (std::size_t i = 0; i < d; ++i) {
      const Complex lhs = fock.inner(create(i, x), y);
      const Complex rhs = fock.inner(x, fock.annihilate(i, y));
      worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + x.norm() * y.norm()));
    }
  }
  return worst;
}

RelationReport relation_check(const TensorOperator& t, std::size_t max_degree, std::uint64_t seed, std::size_t pairs,
                              double tol) {
  if (max_degree < 2) throw std::out_of_range("relation check needs N >= 2");
  const FockSpace fock(t, max_degree);
  RelationReport r;
  r.max_degree = max_degree;
  r.random_pairs = pairs;
  r.relation_residual = basic_relation_residual(fock);
  r.adjointness_residual = adjointness_residual(fock, seed, pairs);
  r.pass = r.relation_residual <= tol && r.adjointness_residual <= tol;
  return r;
}

}  // namespace wickfock
