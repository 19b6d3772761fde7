#include "wickfock/rewrite.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wickfock {

namespace {

std::vector<std::size_t> redexes_of(const FreeWord& w) {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p + 1 < w.size(); ++p)
    if (w[p].starred && !w[p + 1].starred) out.push_back(p);
  return out;
}

WickMonomial to_monomial(const FreeWord& w) {
  WickMonomial m;
  for (const auto& letter : w) (letter.starred ? m.annihilation : m.creation).push_back(letter.index);
  return m;
}

void accumulate(FreeSum& sum, FreeWord word, Complex c) {
  if (c == Complex{}) return;
  auto [it, inserted] = sum.try_emplace(std::move(word), c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{}) sum.erase(it);
  }
}

}  // namespace

std::strong_ordering WickMonomial::operator<=>(const WickMonomial& other) const {
  if (auto c = degree() <=> other.degree(); c != 0) return c;
  if (auto c = creation <=> other.creation; c != 0) return c;
  return annihilation <=> other.annihilation;
}

FreeWord WickMonomial::to_word() const {
  FreeWord w;
  for (auto i : creation) w.push_back({i, false});
  for (auto i : annihilation) w.push_back({i, true});
  return w;
}

WickPolynomial WickPolynomial::unit() {
  WickPolynomial p;
  p.add({}, 1.0);
  return p;
}

void WickPolynomial::add(const WickMonomial& m, Complex c) {
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) it->second += c;
  if (it->second == Complex{}) terms_.erase(it);
}

Complex WickPolynomial::coefficient(const WickMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Complex{} : it->second;
}

double WickPolynomial::distance(const WickPolynomial& other) const {
  double worst = 0.0;
  for (const auto& [m, c] : terms_) worst = std::max(worst, std::abs(c - other.coefficient(m)));
  for (const auto& [m, c] : other.terms_) worst = std::max(worst, std::abs(c - coefficient(m)));
  return worst;
}

RedexChooser leftmost_redex() {
  return [](const FreeWord&, const std::vector<std::size_t>& redexes) { return redexes.front(); };
}

RedexChooser random_redex(SeededStream& rng) {
  return [&rng](const FreeWord&, const std::vector<std::size_t>& redexes) {
    return redexes[rng.below(redexes.size())];
  };
}

// ---------------------------------------------------------------------------

WickRewriter::WickRewriter(const WickSpec& spec) : dim_(spec.dim()), table_(spec.dim() * spec.dim()) {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k)
        for (std::size_t l = 0; l < dim_; ++l) {
          const Complex c = spec.coeff(i, j, k, l);
          if (c != Complex{}) table_[i * dim_ + j].push_back({k, l, c});
        }
}

WickPolynomial WickRewriter::normal_order(const FreeSum& input, const RedexChooser& choose) const {
  FreeSum pending;
  for (const auto& [w, c] : input) {
    for (const auto& letter : w)
      if (letter.index >= dim_) throw std::out_of_range("generator index out of range");
    accumulate(pending, w, c);
  }
  WickPolynomial out;
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const FreeWord& w = node.key();
    const Complex c = node.mapped();
    const auto redexes = redexes_of(w);
    if (redexes.empty()) {
      out.add(to_monomial(w), c);
      continue;
    }
    const std::size_t p = choose(w, redexes);
    const std::size_t i = w[p].index, j = w[p + 1].index;
    if (i == j) {
      FreeWord shorter;
      shorter.reserve(w.size() - 2);
      shorter.insert(shorter.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
      shorter.insert(shorter.end(), w.begin() + static_cast<std::ptrdiff_t>(p + 2), w.end());
      accumulate(pending, std::move(shorter), c);
    }
    for (const auto& term : table_[i * dim_ + j]) {
      FreeWord swapped = w;
      swapped[p] = {term.l, false};
      swapped[p + 1] = {term.k, true};
      accumulate(pending, std::move(swapped), c * term.value);
    }
  }
  return out;
}

Complex WickRewriter::inner_via_f(const FreeSum& x, const FreeSum& y) const {
  if (!is_creation_only(x) || !is_creation_only(y))
    throw InputError("inner product arguments must be creation-only (no starred letters)");
  return fock_functional(normal_order(multiply(star(x), y)));
}

// ---------------------------------------------------------------------------

FreeWord star(const FreeWord& w) {
  FreeWord out(w.rbegin(), w.rend());
  for (auto& letter : out) letter.starred = !letter.starred;
  return out;
}

FreeSum star(const FreeSum& s) {
  FreeSum out;
  for (const auto& [w, c] : s) accumulate(out, star(w), std::conj(c));
  return out;
}

WickPolynomial star(const WickPolynomial& p) {
  WickPolynomial out;
  for (const auto& [m, c] : p.terms()) {
    WickMonomial s;
    s.creation.assign(m.annihilation.rbegin(), m.annihilation.rend());
    s.annihilation.assign(m.creation.rbegin(), m.creation.rend());
    out.add(s, std::conj(c));
  }
  return out;
}

Complex fock_functional(const WickPolynomial& p) { return p.coefficient(WickMonomial{}); }

bool is_wick_ordered(const FreeWord& w) { return redexes_of(w).empty(); }

bool is_creation_only(const FreeSum& s) {
  for (const auto& [w, c] : s)
    for (const auto& letter : w)
      if (letter.starred) return false;
  return true;
}

FreeSum multiply(const FreeSum& a, const FreeSum& b) {
  FreeSum out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) {
      FreeWord w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      accumulate(out, std::move(w), ca * cb);
    }
  return out;
}

// ---------------------------------------------------------------------------

FreeWord parse_word(std::string_view text, std::size_t dim) {
  std::istringstream in{std::string(text)};
  std::string token;
  FreeWord w;
  bool any = false;
  while (in >> token) {
    any = true;
    if (token == "1") continue;
    bool starred = false;
    if (token.back() == '*') {
      starred = true;
      token.pop_back();
    }
    if (token.size() < 2 || token[0] != 'a' ||
        !std::all_of(token.begin() + 1, token.end(), [](unsigned char ch) { return std::isdigit(ch); }))
      throw InputError("bad word token \"" + token + "\" (expected a<i> or a<i>*)");
    const unsigned long idx = std::stoul(token.substr(1));
    if (idx < 1 || idx > dim)
      throw InputError("generator index " + std::to_string(idx) + " out of range 1.." + std::to_string(dim));
    w.push_back({idx - 1, starred});
  }
  if (!any) throw InputError("empty word (use \"1\" for the unit)");
  return w;
}

FreeSum parse_combination(const nlohmann::json& terms, std::size_t dim) {
  if (!terms.is_array()) throw InputError("linear combination must be a JSON array");
  FreeSum out;
  for (const auto& t : terms) {
    if (!t.is_object() || !t.contains("word") || !t.at("word").is_string())
      throw InputError("combination terms need a string \"word\"");
    const auto& coeff = t.contains("coeff") ? t.at("coeff") : t;
    auto number = [&](const char* key, double fallback) {
      if (!coeff.contains(key)) return fallback;
      if (!coeff.at(key).is_number()) throw InputError(std::string("\"") + key + "\" must be a number");
      return coeff.at(key).get<double>();
    };
    accumulate(out, parse_word(t.at("word").get<std::string>(), dim), Complex{number("re", 1.0), number("im", 0.0)});
  }
  return out;
}

FreeSum parse_expression(std::string_view text, std::size_t dim) {
  const auto first = text.find_first_not_of(" \t\n\r");
  if (first != std::string_view::npos && text[first] == '[') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(std::string("malformed combination JSON: ") + e.what());
    }
    return parse_combination(doc, dim);
  }
  return FreeSum{{parse_word(text, dim), 1.0}};
}

std::string format_word(const FreeWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& letter : w) {
    if (!out.empty()) out += ' ';
    out += 'a' + std::to_string(letter.index + 1);
    if (letter.starred) out += '*';
  }
  return out;
}

nlohmann::ordered_json to_json(const WickPolynomial& p) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& [m, c] : p.terms())
    out.push_back({{"word", format_word(m.to_word())}, {"re", c.real()}, {"im", c.imag()}});
  return out;
}

GradedVector to_graded(const FreeSum& s, std::size_t dim, std::size_t max_degree) {
  if (!is_creation_only(s)) throw InputError("only creation words map to tensors");
  GradedVector v(dim, max_degree);
  for (const auto& [w, c] : s) {
    std::vector<std::size_t> indices;
    for (const auto& letter : w) indices.push_back(letter.index);
    v = v + c * GradedVector::basis(dim, max_degree, indices);
  }
  return v;
}

}  // namespace wickfock
