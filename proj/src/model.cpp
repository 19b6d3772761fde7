#include "wickfock/model.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

namespace wickfock {

namespace {

constexpr std::size_t kMaxDim = 32;

void require_compatible(const TensorOperator& a, const TensorOperator& b, const char* op) {
  if (a.dim() != b.dim() || a.level() != b.level())
    throw std::invalid_argument(std::string("TensorOperator ") + op + ": dimension/level mismatch");
}

std::string quad_string(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
  std::ostringstream os;
  os << "(" << i + 1 << "," << j + 1 << "," << k + 1 << "," << l + 1 << ")";
  return os.str();
}

// Position of T_ij^kl inside M.
std::pair<Index, Index> slot(std::size_t d, std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
  return {static_cast<Index>(i * d + l), static_cast<Index>(j * d + k)};
}

void check_matrix_hermitian(std::size_t d, const Matrix& m) {
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) {
      if (std::abs(m(r, c) - std::conj(m(c, r))) > kHermitianTolerance) {
        // M[(a,dd),(b,cc)] = T_{a b}^{cc dd}
        const auto d_ = static_cast<Index>(d);
        throw InputError("hermitian symmetry T_ij^kl = conj(T_ji^lk) violated at (i,j,k,l) = " +
                         quad_string(r / d_, c / d_, c % d_, r % d_));
      }
    }
}

double number_field(const nlohmann::json& obj, const char* key, bool required) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) throw InputError(std::string("missing numeric field \"") + key + "\"");
    return 0.0;
  }
  if (!it->is_number()) throw InputError(std::string("field \"") + key + "\" must be a number");
  return it->get<double>();
}

Complex complex_entry(const nlohmann::json& obj) {
  if (!obj.is_object()) throw InputError("matrix entries must be {\"re\",\"im\"} objects");
  return {number_field(obj, "re", true), number_field(obj, "im", false)};
}

std::size_t index_field(const nlohmann::json& obj, const char* key, std::size_t d) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_integer())
    throw InputError(std::string("coefficient field \"") + key + "\" must be an integer");
  const auto v = it->get<long long>();
  if (v < 1 || static_cast<std::size_t>(v) > d)
    throw InputError(std::string("index \"") + key + "\" = " + std::to_string(v) + " out of range 1.." +
                     std::to_string(d));
  return static_cast<std::size_t>(v - 1);
}

WickSpec from_coefficients(std::size_t d, const nlohmann::json& list) {
  if (!list.is_array()) throw InputError("\"coefficients\" must be an array");
  const auto n2 = static_cast<Index>(d * d);
  Matrix m = Matrix::Zero(n2, n2);
  using Quad = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>;
  std::set<Quad> seen;
  for (const auto& e : list) {
    if (!e.is_object()) throw InputError("coefficient entries must be objects");
    const auto i = index_field(e, "i", d), j = index_field(e, "j", d);
    const auto k = index_field(e, "k", d), l = index_field(e, "l", d);
    if (!seen.insert({i, j, k, l}).second) throw InputError("duplicate coefficient " + quad_string(i, j, k, l));
    const auto [r, c] = slot(d, i, j, k, l);
    m(r, c) = Complex{number_field(e, "re", true), number_field(e, "im", false)};
  }
  for (const auto& [i, j, k, l] : seen) {
    const auto [r, c] = slot(d, i, j, k, l);
    const auto [pr, pc] = slot(d, j, i, l, k);
    if (std::abs(m(r, c) - std::conj(m(pr, pc))) > kHermitianTolerance) {
      const bool missing = !seen.count({j, i, l, k});
      throw InputError("hermitian symmetry T_ij^kl = conj(T_ji^lk) violated at (i,j,k,l) = " +
                       quad_string(i, j, k, l) +
                       (missing ? " (partner " + quad_string(j, i, l, k) + " missing)" : std::string{}));
    }
  }
  return WickSpec(d, std::move(m), nlohmann::ordered_json{{"kind", "coefficients"}});
}

WickSpec from_matrix(std::size_t d, const nlohmann::json& rows) {
  if (!rows.is_array()) throw InputError("\"matrix\" must be an array");
  const std::size_t n2 = d * d;
  Matrix m(static_cast<Index>(n2), static_cast<Index>(n2));
  if (rows.size() == n2 * n2 && (n2 == 1 || !rows.front().is_array())) {
    for (std::size_t p = 0; p < n2 * n2; ++p)
      m(static_cast<Index>(p / n2), static_cast<Index>(p % n2)) = complex_entry(rows[p]);
  } else if (rows.size() == n2) {
    for (std::size_t r = 0; r < n2; ++r) {
      const auto& row = rows[r];
      if (!row.is_array() || row.size() != n2)
        throw InputError("\"matrix\" rows must have d^2 = " + std::to_string(n2) + " entries");
      for (std::size_t c = 0; c < n2; ++c)
        m(static_cast<Index>(r), static_cast<Index>(c)) = complex_entry(row[c]);
    }
  } else {
    throw InputError("\"matrix\" must be d^2 x d^2 (nested rows or flat row-major)");
  }
  return WickSpec(d, std::move(m), nlohmann::ordered_json{{"kind", "matrix"}});
}

void require_dim(std::size_t d) {
  if (d < 1 || d > kMaxDim) throw InputError("d must lie in 1.." + std::to_string(kMaxDim));
}

}  // namespace

// ---------------------------------------------------------------------------

TensorOperator::TensorOperator(std::size_t dim, std::size_t level, Matrix entries)
    : dim_(dim), level_(level), entries_(std::move(entries)) {
  if (dim == 0) throw std::invalid_argument("TensorOperator: dimension must be positive");
  const auto n = static_cast<Index>(ipow(dim, level));
  if (entries_.rows() != n || entries_.cols() != n)
    throw std::invalid_argument("TensorOperator: matrix must be d^level square");
}

TensorOperator TensorOperator::identity(std::size_t dim, std::size_t level) {
  const auto n = static_cast<Index>(ipow(dim, level));
  return {dim, level, Matrix::Identity(n, n)};
}

TensorOperator TensorOperator::zero(std::size_t dim, std::size_t level) {
  const auto n = static_cast<Index>(ipow(dim, level));
  return {dim, level, Matrix::Zero(n, n)};
}

TensorOperator TensorOperator::adjoint() const { return {dim_, level_, entries_.adjoint()}; }

TensorOperator operator+(const TensorOperator& a, const TensorOperator& b) {
  require_compatible(a, b, "+");
  return {a.dim_, a.level_, a.entries_ + b.entries_};
}

TensorOperator operator-(const TensorOperator& a, const TensorOperator& b) {
  require_compatible(a, b, "-");
  return {a.dim_, a.level_, a.entries_ - b.entries_};
}

TensorOperator operator*(const TensorOperator& a, const TensorOperator& b) {
  require_compatible(a, b, "*");
  return {a.dim_, a.level_, a.entries_ * b.entries_};
}

TensorOperator operator*(Complex s, const TensorOperator& a) { return {a.dim_, a.level_, s * a.entries_}; }

double distance(const TensorOperator& a, const TensorOperator& b) {
  require_compatible(a, b, "distance");
  return op_norm(a.matrix() - b.matrix());
}

// ---------------------------------------------------------------------------

WickSpec::WickSpec(std::size_t dim, Matrix coefficient_matrix, nlohmann::ordered_json source)
    : dim_(dim), matrix_(std::move(coefficient_matrix)), source_(std::move(source)) {
  require_dim(dim);
  const auto n2 = static_cast<Index>(dim * dim);
  if (matrix_.rows() != n2 || matrix_.cols() != n2)
    throw InputError("coefficient matrix must be d^2 x d^2");
  if (!matrix_.allFinite()) throw InputError("coefficients must be finite");
  check_matrix_hermitian(dim, matrix_);
}

Complex WickSpec::coeff(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
  const auto [r, c] = slot(dim_, i, j, k, l);
  return matrix_(r, c);
}

WickSpec load_spec(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return load_spec_json(doc);
}

WickSpec load_spec_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("spec document must be a JSON object");
  auto dit = doc.find("d");
  if (dit == doc.end() || !dit->is_number_integer()) throw InputError("spec needs an integer \"d\"");
  const auto d_signed = dit->get<long long>();
  if (d_signed < 1) throw InputError("d must be positive");
  const auto d = static_cast<std::size_t>(d_signed);
  require_dim(d);

  const int forms = static_cast<int>(doc.contains("preset")) + static_cast<int>(doc.contains("coefficients")) +
                    static_cast<int>(doc.contains("matrix"));
  if (forms != 1) throw InputError("spec must contain exactly one of \"preset\", \"coefficients\", \"matrix\"");

  if (doc.contains("preset")) return preset(d, doc.at("preset"));
  if (doc.contains("coefficients")) return from_coefficients(d, doc.at("coefficients"));
  return from_matrix(d, doc.at("matrix"));
}

WickSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open spec file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_spec(buf.str());
}

nlohmann::ordered_json serialize(const WickSpec& spec) {
  const std::size_t d = spec.dim();
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
          const Complex v = spec.coeff(i, j, k, l);
          if (v == Complex{}) continue;
          coeffs.push_back({{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"l", l + 1}, {"re", v.real()}, {"im", v.imag()}});
        }
  return {{"d", d}, {"coefficients", std::move(coeffs)}};
}

TensorOperator build_T(const WickSpec& spec) {
  TensorOperator t(spec.dim(), 2, spec.coefficient_matrix());
  if (hermiticity_residual(t.matrix()) > kHermitianTolerance)
    throw std::logic_error("build_T: coefficient operator is not self-adjoint");
  return t;
}

// ---------------------------------------------------------------------------

WickSpec preset_q_ccr(std::size_t dim, double q) {
  require_dim(dim);
  if (!(q >= -1.0 && q <= 1.0)) throw InputError("q-ccr requires q in [-1, 1]");
  const auto n2 = static_cast<Index>(dim * dim);
  Matrix m = Matrix::Zero(n2, n2);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) m(static_cast<Index>(j * dim + i), static_cast<Index>(i * dim + j)) = q;
  return WickSpec(dim, std::move(m), {{"kind", "preset"}, {"name", "q-ccr"}, {"q", q}});
}

WickSpec preset_qij_ccr(const std::vector<double>& qs, const std::vector<std::vector<int>>& lambda) {
  const std::size_t dim = qs.size();
  require_dim(dim);
  if (lambda.size() != dim) throw InputError("qij-ccr: lambda must be d x d");
  for (std::size_t i = 0; i < dim; ++i) {
    if (!(qs[i] > 0.0 && qs[i] < 1.0)) throw InputError("qij-ccr requires every q_i in (0, 1)");
    if (lambda[i].size() != dim) throw InputError("qij-ccr: lambda must be d x d");
  }
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      if (lambda[i][j] != 1 && lambda[i][j] != -1) throw InputError("qij-ccr: lambda entries must be +1 or -1");
      if (lambda[i][j] != lambda[j][i]) throw InputError("qij-ccr: lambda must be symmetric");
    }
  const auto n2 = static_cast<Index>(dim * dim);
  Matrix m = Matrix::Zero(n2, n2);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      // T e_j (x) e_i = lambda_ij e_i (x) e_j, and q_i on the diagonal.
      const double v = (i == j) ? qs[i] : static_cast<double>(lambda[i][j]);
      m(static_cast<Index>(i * dim + j), static_cast<Index>(j * dim + i)) = v;
    }
  nlohmann::ordered_json src{{"kind", "preset"}, {"name", "qij-ccr"}, {"qs", qs}, {"lambda", lambda}};
  return WickSpec(dim, std::move(m), std::move(src));
}

WickSpec preset_example3(std::size_t dim, double q) {
  require_dim(dim);
  if (!(q > -1.0 && q < 1.0)) throw InputError("example3 requires q in (-1, 1)");
  const auto n2 = static_cast<Index>(dim * dim);
  Matrix m = Matrix::Zero(n2, n2);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      m(static_cast<Index>(i * dim + j), static_cast<Index>(j * dim + i)) = (i == j) ? 1.0 : q;
  return WickSpec(dim, std::move(m), {{"kind", "preset"}, {"name", "example3"}, {"q", q}});
}

WickSpec preset(std::size_t dim, const nlohmann::json& params) {
  if (!params.is_object() || !params.contains("name") || !params.at("name").is_string())
    throw InputError("preset needs a string \"name\"");
  const auto name = params.at("name").get<std::string>();
  if (name == "q-ccr") return preset_q_ccr(dim, number_field(params, "q", true));
  if (name == "example3") return preset_example3(dim, number_field(params, "q", true));
  if (name == "qij-ccr") {
    if (!params.contains("qs") || !params.contains("lambda")) throw InputError("qij-ccr needs \"qs\" and \"lambda\"");
    std::vector<double> qs;
    std::vector<std::vector<int>> lambda;
    try {
      qs = params.at("qs").get<std::vector<double>>();
      lambda = params.at("lambda").get<std::vector<std::vector<int>>>();
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("qij-ccr parameters malformed: ") + e.what());
    }
    if (qs.size() != dim) throw InputError("qij-ccr: \"qs\" must have d entries");
    return preset_qij_ccr(qs, lambda);
  }
  throw InputError("unknown preset \"" + name + "\" (expected q-ccr, qij-ccr, example3)");
}

}  // namespace wickfock
