#include "wickfock/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wickfock/coxeter.hpp"
#include "wickfock/fock.hpp"
#include "wickfock/rewrite.hpp"
#include "wickfock/spectral.hpp"
#include "wickfock/tensorops.hpp"

namespace wickfock {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kNormSlack = 1e-10;
constexpr const char* kOutsideHypotheses = "outside theorem hypotheses";

ojson complex_json(Complex c) { return {{"re", c.real()}, {"im", c.imag()}}; }

struct Context {
  const WickSpec& spec;
  const CommandOptions& opt;
  TensorOperator t;
  HypothesisStatus hyp;

  Context(const WickSpec& s, const CommandOptions& o) : spec(s), opt(o), t(build_T(s)), hyp(hypotheses(t)) {}

  std::size_t dim() const { return spec.dim(); }
  bool braided() const { return hyp.braided; }
  bool theorem() const { return hyp.holds(); }
};

void require_level(const Context& ctx, std::size_t level) {
  std::size_t size = 1;
  for (std::size_t i = 0; i < level; ++i) {
    size *= ctx.dim();
    if (size > kMaxOperatorSize)
      throw InputError("level " + std::to_string(level) + " exceeds the operator size limit of " +
                       std::to_string(kMaxOperatorSize) + " for d=" + std::to_string(ctx.dim()));
  }
}

std::size_t level_count(const std::optional<std::size_t>& value, std::size_t fallback, std::size_t lo,
                        const char* flag) {
  const std::size_t v = value.value_or(fallback);
  if (v < lo) throw InputError(std::string(flag) + " must be at least " + std::to_string(lo));
  return v;
}

CheckRecord inapplicable(std::string name, ojson params, std::string note) {
  CheckRecord r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.status = CheckStatus::inapplicable;
  r.note = std::move(note);
  return r;
}

Report make_report(const char* name, const Context& ctx, ojson provenance) {
  if (provenance.is_null()) provenance = ojson::object();
  provenance["d"] = ctx.dim();
  if (!ctx.spec.source().is_null()) provenance["source"] = ctx.spec.source();
  return Report(name, std::move(provenance));
}

// --- suites ----------------------------------------------------------------

void model_checks(Report& rep, const Context& ctx) {
  CheckRecord herm;
  herm.name = "hermiticity";
  herm.values["residual"] = hermiticity_residual(ctx.spec.coefficient_matrix());
  herm.tolerance = kHermitianTolerance;
  herm.status = judge(herm.values["residual"].get<double>(), kHermitianTolerance);
  rep.add(std::move(herm));

  // A hypothesis, not a claim: reported, never failed.
  CheckRecord norm;
  norm.name = "operator_norm";
  norm.values["norm"] = ctx.hyp.norm;
  norm.values["contractive"] = ctx.hyp.contractive;
  norm.tolerance = kNormSlack;
  norm.status = CheckStatus::pass;
  rep.add(std::move(norm));

  CheckRecord braid;
  braid.name = "braid";
  braid.values["residual"] = ctx.hyp.braid_residual;
  braid.tolerance = ctx.opt.tol;
  braid.status = judge(ctx.hyp.braid_residual, ctx.opt.tol);
  rep.add(std::move(braid));
}

TensorOperator coxeter_P(const Context& ctx, std::size_t n) {
  if (n <= 1) return TensorOperator::identity(ctx.dim(), n);
  if (n - 1 > kMaxCoxeterRank)
    throw InputError("coxeter method supports n <= " + std::to_string(kMaxCoxeterRank + 1));
  return group_sum(ctx.t, n - 1);
}

void pn_record(Report& rep, const Context& ctx, std::size_t n, const std::string& method) {
  require_level(ctx, n);
  ojson params = {{"n", n}, {"method", method}};
  if (method == "coxeter" && !ctx.braided()) {
    rep.add(inapplicable("pn", params, "coxeter method requires braided T"));
    return;
  }
  const TensorOperator p = method == "coxeter" ? coxeter_P(ctx, n) : build_P(ctx.t, n);
  const auto eig = hermitian_eigenvalues(p.matrix());
  const double pnorm = p.norm();
  const double herm = hermiticity_residual(p.matrix());
  const double thresh = ctx.opt.rank_tol * std::max(1.0, pnorm);
  std::size_t kernel_dim = 0;
  for (Index i = 0; i < eig.size(); ++i)
    if (std::abs(eig(i)) <= thresh) ++kernel_dim;

  CheckRecord r;
  r.name = "pn";
  r.params = std::move(params);
  r.values["size"] = p.size();
  if (p.size() == 1) r.values["value"] = complex_json(p(0, 0));
  r.values["min_eigenvalue"] = eig(0);
  r.values["max_eigenvalue"] = eig(eig.size() - 1);
  r.values["trace"] = complex_json(p.matrix().trace());
  r.values["norm"] = pnorm;
  r.values["kernel_dim"] = kernel_dim;
  r.values["hermiticity_residual"] = herm;
  r.tolerance = ctx.opt.tol;
  r.status = judge(herm, ctx.opt.tol * std::max(1.0, pnorm), ctx.braided());
  if (!ctx.braided()) r.note = "self-adjointness only asserted for braided T";
  rep.add(std::move(r));
}

void method_agreement(Report& rep, const Context& ctx, std::size_t n) {
  ojson params = {{"n", n}};
  if (!ctx.braided()) {
    rep.add(inapplicable("method_agreement", params, "coxeter method requires braided T"));
    return;
  }
  require_level(ctx, n);
  CheckRecord r;
  r.name = "method_agreement";
  r.params = std::move(params);
  const double res = distance(build_P(ctx.t, n), coxeter_P(ctx, n));
  r.values["residual"] = res;
  r.tolerance = ctx.opt.tol;
  r.status = judge(res, ctx.opt.tol);
  rep.add(std::move(r));
}

void kernel_theorem_records(Report& rep, const Context& ctx, std::size_t n_max) {
  for (std::size_t level = 2; level <= n_max; ++level) {
    require_level(ctx, level);
    const auto k = kernel_theorem_check(ctx.t, level - 1, ctx.opt.rank_tol);
    CheckRecord r;
    r.name = "kernel_theorem";
    r.params = {{"level", level}};
    r.values["dim_kernel"] = k.dim_kernel;
    r.values["dim_sum"] = k.dim_sum;
    r.values["distance"] = k.distance;
    r.values["inclusion_margin"] = k.inclusion_margin;
    r.tolerance = ctx.opt.tol;
    if (!k.applicable) {
      r.status = CheckStatus::inapplicable;
      r.note = kOutsideHypotheses;
    } else {
      const bool ok = k.dim_kernel == k.dim_sum && k.distance <= ctx.opt.tol && k.inclusion_margin <= ctx.opt.tol;
      r.status = ok ? CheckStatus::pass : CheckStatus::fail;
    }
    rep.add(std::move(r));
  }
}

void positivity_records(Report& rep, const Context& ctx, std::size_t n_max) {
  const bool strict_regime = ctx.braided() && ctx.hyp.norm < 1.0 - kNormSlack;
  for (std::size_t n = 2; n <= n_max; ++n) {
    require_level(ctx, n);
    const auto p = positivity_check(ctx.t, n, ctx.opt.rank_tol);
    CheckRecord r;
    r.name = "positivity";
    r.params = {{"n", n}};
    r.values["min_eigenvalue"] = p.min_eigenvalue;
    r.values["max_eigenvalue"] = p.max_eigenvalue;
    r.values["kernel_dim"] = p.kernel_dim;
    r.values["classification"] = to_string(p.definiteness);
    r.tolerance = ctx.opt.rank_tol;
    if (strict_regime) {
      r.status = p.definiteness == Definiteness::strictly_positive ? CheckStatus::pass : CheckStatus::fail;
      r.note = "||T|| < 1: strict positivity required";
    } else if (ctx.theorem()) {
      r.status = p.definiteness == Definiteness::indefinite ? CheckStatus::fail : CheckStatus::pass;
      r.note = "||T|| <= 1: semidefiniteness required";
    } else {
      r.status = CheckStatus::inapplicable;
      r.note = kOutsideHypotheses;
    }
    rep.add(std::move(r));
  }
}

void coxeter_records(Report& rep, const Context& ctx, std::size_t n) {
  if (n > kMaxEulerSolomonRank)
    throw InputError("coxeter suite supports n <= " + std::to_string(kMaxEulerSolomonRank));
  require_level(ctx, n + 1);
  if (!ctx.braided()) {
    rep.add(inapplicable("coxeter", {{"n", n}}, "phi requires braided T"));
    return;
  }
  const double tol = ctx.opt.tol;
  const PhiTable table(ctx.t, n);
  const TensorOperator p_next = build_P(ctx.t, n + 1);

  {
    CheckRecord r;
    r.name = "group_sum";
    r.params = {{"n", n}};
    const double res = distance(group_sum(ctx.t, n), p_next);
    r.values["residual"] = res;
    r.tolerance = tol;
    r.status = judge(res, tol);
    rep.add(std::move(r));
  }

  std::size_t order = 1;
  for (std::size_t k = 2; k <= n + 1; ++k) order *= k;
  for (GeneratorSet J = 0; J < (GeneratorSet{1} << n); ++J) {
    const auto data = descent_data(n, J);
    const auto f = factorization_check(table, p_next, J);
    auto gens = ojson::array();
    for (std::size_t i = 1; i <= n; ++i)
      if (J & (GeneratorSet{1} << (i - 1))) gens.push_back(i);
    CheckRecord r;
    r.name = "parabolic_factorization";
    r.params = {{"n", n}, {"J", gens}};
    r.values["residual"] = f.residual;
    r.values["descent_class_size"] = data.descent_class.size();
    r.values["parabolic_size"] = data.parabolic_subgroup.size();
    r.tolerance = tol;
    const bool sizes = data.descent_class.size() * data.parabolic_subgroup.size() == order;
    r.status = sizes ? judge(f.residual, tol) : CheckStatus::fail;
    rep.add(std::move(r));
  }

  {
    const auto es = euler_solomon_residual(table, ctx.t);
    CheckRecord r;
    r.name = "euler_solomon";
    r.params = {{"n", n}};
    r.values["group_form"] = es.group_form;
    r.values["adjoint_form"] = es.adjoint_form;
    r.tolerance = tol;
    r.status = judge(es.max(), tol);
    rep.add(std::move(r));
  }

  {
    const auto sigma0 = longest_element(n);
    const double res = distance(table.at(sigma0.perm), build_U(ctx.t, n));
    CheckRecord r;
    r.name = "longest_element";
    r.params = {{"n", n}};
    r.values["residual"] = res;
    r.tolerance = tol;
    r.status = judge(res, tol);
    rep.add(std::move(r));
  }

  {
    SeededStream rng(ctx.opt.seed);
    double worst = 0.0;
    constexpr std::size_t kTrials = 5;
    for (std::size_t e = 0; e < table.elements().size(); ++e) {
      const auto& elem = table.elements()[e];
      for (std::size_t trial = 0; trial < kTrials; ++trial) {
        const Word w = random_reduced_word(elem.perm, rng.engine());
        worst = std::max(worst, distance(phi_word(ctx.t, w, n), table.at(e)));
      }
    }
    CheckRecord r;
    r.name = "reduced_word_independence";
    r.params = {{"n", n}, {"trials", kTrials}, {"seed", ctx.opt.seed}};
    r.values["residual"] = worst;
    r.tolerance = tol;
    r.status = judge(worst, tol);
    rep.add(std::move(r));
  }
}

void dm_factorization_records(Report& rep, const Context& ctx, std::size_t n_max) {
  for (std::size_t total = 3; total <= n_max; ++total)
    for (std::size_t m = 2; m < total; ++m) {
      const std::size_t n = total - m;
      const auto f = factorization_check(ctx.t, n, m);
      CheckRecord r;
      r.name = "descent_factorization";
      r.params = {{"n", n}, {"m", m}};
      r.values["residual"] = f.residual;
      r.tolerance = ctx.opt.tol;
      r.status = judge(f.residual, ctx.opt.tol, f.reliable);
      if (!f.reliable) r.note = "requires braided T";
      rep.add(std::move(r));
    }
}

void un_records(Report& rep, const Context& ctx, std::size_t n_max) {
  for (std::size_t n = 1; n + 1 <= n_max; ++n) {
    ojson params = {{"n", n}};
    if (!ctx.braided()) {
      rep.add(inapplicable("un_laws", params, "requires braided T"));
      continue;
    }
    const auto u = un_checks(ctx.t, n, ctx.opt.rank_tol, ctx.opt.tol);
    CheckRecord r;
    r.name = "un_laws";
    r.params = std::move(params);
    r.values["invariance"] = u.invariance_residual;
    r.values["commutation"] = u.commutation_residual;
    r.values["telescoping"] = u.telescoping_residual;
    r.values["hermiticity"] = u.hermiticity_residual;
    r.values["norm"] = u.norm;
    r.tolerance = ctx.opt.tol;
    bool ok = u.pass && u.hermiticity_residual <= ctx.opt.tol;
    if (ctx.hyp.contractive) ok = ok && u.norm <= 1.0 + kNormSlack;
    r.status = ok ? CheckStatus::pass : CheckStatus::fail;
    rep.add(std::move(r));
  }
}

void wick_ideal_records(Report& rep, const Context& ctx, std::size_t n_max) {
  for (std::size_t n = 2; n <= n_max; ++n) {
    ojson params = {{"n", n}};
    if (!ctx.braided()) {
      rep.add(inapplicable("wick_ideal", params, "requires braided T"));
      continue;
    }
    const auto w = wick_ideal_checks(ctx.t, n, ctx.opt.rank_tol, ctx.opt.tol);
    CheckRecord r;
    r.name = "wick_ideal";
    r.params = std::move(params);
    r.values["dim_kernel_P"] = w.dim_kernel_P;
    r.values["dim_kernel_R"] = w.dim_kernel_R;
    r.values["annihilation"] = w.annihilation_residual;
    r.values["tail"] = w.tail_residual;
    r.values["intertwining"] = w.intertwining_residual;
    r.values["kernel_R_margin"] = w.kernel_R_margin;
    r.tolerance = ctx.opt.tol;
    r.status = w.pass ? CheckStatus::pass : CheckStatus::fail;
    rep.add(std::move(r));
  }
}

void involution_records(Report& rep, const Context& ctx, std::size_t n_max) {
  for (std::size_t n = 1; n + 1 <= n_max; ++n) {
    ojson params = {{"n", n}};
    if (!ctx.theorem()) {
      rep.add(inapplicable("involution_kernel", params, kOutsideHypotheses));
      continue;
    }
    const auto v = kernel_1mU2_diag(ctx.t, n, ctx.opt.rank_tol, ctx.opt.tol);
    CheckRecord r;
    r.name = "involution_kernel";
    r.params = std::move(params);
    r.values["dim_intersection"] = v.dim_intersection;
    r.values["residual"] = v.max_residual;
    r.tolerance = ctx.opt.tol;
    r.status = v.pass ? CheckStatus::pass : CheckStatus::fail;
    rep.add(std::move(r));
  }
}

void fock_records(Report& rep, const Context& ctx, std::size_t max_degree) {
  constexpr std::size_t kPairs = 50;
  const auto f = relation_check(ctx.t, max_degree, ctx.opt.seed, kPairs, ctx.opt.tol);
  CheckRecord r;
  r.name = "fock_relations";
  r.params = {{"N", max_degree}, {"pairs", kPairs}, {"seed", ctx.opt.seed}};
  r.values["relation_residual"] = f.relation_residual;
  r.values["adjointness_residual"] = f.adjointness_residual;
  r.tolerance = ctx.opt.tol;
  r.status = f.pass ? CheckStatus::pass : CheckStatus::fail;
  rep.add(std::move(r));
}

// All words of the given length over `letters`, enumerated as base-|letters| counters.
template <class L, class F>
void for_each_word(const std::vector<L>& letters, std::size_t length, F&& f) {
  std::vector<std::size_t> digits(length, 0);
  std::vector<L> word(length);
  while (true) {
    for (std::size_t p = 0; p < length; ++p) word[p] = letters[digits[p]];
    f(word);
    std::size_t p = length;
    while (p > 0 && ++digits[p - 1] == letters.size()) digits[--p] = 0;
    if (p == 0) return;
  }
}

void rewrite_records(Report& rep, const Context& ctx, std::size_t n_max) {
  const WickRewriter rw(ctx.spec);
  const std::size_t d = ctx.dim();

  // f(X^* Y) against <X, P_n Y> on creation monomials.
  const std::size_t degree = std::min<std::size_t>(3, n_max);
  std::vector<FreeWord> monomials;
  std::vector<Letter> creations;
  for (std::size_t i = 0; i < d; ++i) creations.push_back({i, false});
  for (std::size_t len = 0; len <= degree; ++len) for_each_word(creations, len, [&](const FreeWord& w) { monomials.push_back(w); });
  const FockSpace fock(ctx.t, degree);
  std::vector<GradedVector> graded;
  for (const auto& w : monomials) graded.push_back(to_graded(FreeSum{{w, 1.0}}, d, degree));
  double worst = 0.0;
  for (std::size_t a = 0; a < monomials.size(); ++a)
    for (std::size_t b = 0; b < monomials.size(); ++b) {
      const Complex via_f = rw.inner_via_f(FreeSum{{monomials[a], 1.0}}, FreeSum{{monomials[b], 1.0}});
      worst = std::max(worst, std::abs(via_f - fock.inner(graded[a], graded[b])));
    }
  CheckRecord cross;
  cross.name = "rewrite_inner_product";
  cross.params = {{"max_degree", degree}, {"pairs", monomials.size() * monomials.size()}};
  cross.values["residual"] = worst;
  cross.tolerance = ctx.opt.tol;
  cross.status = judge(worst, ctx.opt.tol);
  rep.add(std::move(cross));

  // Leftmost against random redex choices.
  const std::size_t length = std::min<std::size_t>(4, n_max);
  constexpr std::size_t kTrials = 5;
  std::vector<Letter> letters;
  for (std::size_t i = 0; i < d; ++i) {
    letters.push_back({i, false});
    letters.push_back({i, true});
  }
  SeededStream rng(ctx.opt.seed);
  const auto random_choice = random_redex(rng);
  double spread = 0.0;
  std::size_t words = 0;
  for (std::size_t len = 1; len <= length; ++len)
    for_each_word(letters, len, [&](const FreeWord& w) {
      ++words;
      const FreeSum input{{w, 1.0}};
      const auto canonical = rw.normal_order(input);
      for (std::size_t trial = 0; trial < kTrials; ++trial)
        spread = std::max(spread, canonical.distance(rw.normal_order(input, random_choice)));
    });
  CheckRecord conf;
  conf.name = "rewrite_confluence";
  conf.params = {{"max_length", length}, {"words", words}, {"trials", kTrials}, {"seed", ctx.opt.seed}};
  conf.values["residual"] = spread;
  conf.tolerance = ctx.opt.tol;
  conf.status = judge(spread, ctx.opt.tol);
  rep.add(std::move(conf));
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"check",      "pn",    "kernel-theorem", "coxeter",
                                                 "positivity", "inner", "full"};
  return names;
}

Report cmd_check(const WickSpec& spec, const CommandOptions& opt, ojson provenance) {
  const Context ctx(spec, opt);
  Report rep = make_report("check", ctx, std::move(provenance));
  model_checks(rep, ctx);
  return rep;
}

Report cmd_pn(const WickSpec& spec, const CommandOptions& opt, ojson provenance) {
  if (opt.method != "recursive" && opt.method != "coxeter")
    throw InputError("--method must be recursive or coxeter");
  const Context ctx(spec, opt);
  Report rep = make_report("pn", ctx, std::move(provenance));
  const std::size_t n = level_count(opt.n, 3, 0, "--n");
  pn_record(rep, ctx, n, opt.method);
  method_agreement(rep, ctx, n);
  return rep;
}

Report cmd_kernel_theorem(const WickSpec& spec, const CommandOptions& opt, ojson provenance) {
  const Context ctx(spec, opt);
  Report rep = make_report("kernel-theorem", ctx, std::move(provenance));
  kernel_theorem_records(rep, ctx, level_count(opt.n_max, 4, 2, "--n-max"));
  return rep;
}

Report cmd_coxeter(const WickSpec& spec, const CommandOptions& opt, ojson provenance) {
  const Context ctx(spec, opt);
  Report rep = make_report("coxeter", ctx, std::move(provenance));
  coxeter_records(rep, ctx, level_count(opt.n, 3, 1, "--n"));
  return rep;
}

Report cmd_positivity(const WickSpec& spec, const CommandOptions& opt, ojson provenance) {
  const Context ctx(spec, opt);
  Report rep = make_report("positivity", ctx, std::move(provenance));
  positivity_records(rep, ctx, level_count(opt.n_max, 4, 2, "--n-max"));
  return rep;
}

Report cmd_inner(const WickSpec& spec, const CommandOptions& opt, ojson provenance) {
  if (opt.x.empty() || opt.y.empty()) throw InputError("inner needs --x and --y");
  const Context ctx(spec, opt);
  Report rep = make_report("inner", ctx, std::move(provenance));
  const std::size_t d = ctx.dim();
  const FreeSum x = parse_expression(opt.x, d);
  const FreeSum y = parse_expression(opt.y, d);
  if (!is_creation_only(x) || !is_creation_only(y))
    throw InputError("inner product arguments must be creation-only (no starred letters)");
  std::size_t degree = 1;
  for (const auto* s : {&x, &y})
    for (const auto& [w, c] : *s) degree = std::max(degree, w.size());
  require_level(ctx, degree);

  const WickRewriter rw(spec);
  const auto normal = rw.normal_order(multiply(star(x), y));
  const Complex via_f = fock_functional(normal);
  const FockSpace fock(ctx.t, degree);
  const Complex via_fock = fock.inner(to_graded(x, d, degree), to_graded(y, d, degree));
  const double diff = std::abs(via_f - via_fock);

  CheckRecord r;
  r.name = "inner_product";
  r.params = {{"x", opt.x}, {"y", opt.y}};
  r.values["via_functional"] = complex_json(via_f);
  r.values["via_fock"] = complex_json(via_fock);
  r.values["difference"] = diff;
  r.values["normal_form"] = to_json(normal);
  r.tolerance = opt.tol;
  r.status = judge(diff, opt.tol);
  rep.add(std::move(r));
  return rep;
}

Report cmd_full(const WickSpec& spec, const CommandOptions& opt, ojson provenance) {
  const Context ctx(spec, opt);
  Report rep = make_report("full", ctx, std::move(provenance));
  const std::size_t n_max = level_count(opt.n_max, 4, 2, "--n-max");
  require_level(ctx, n_max);

  model_checks(rep, ctx);
  for (std::size_t n = 2; n <= n_max; ++n) {
    pn_record(rep, ctx, n, "recursive");
    method_agreement(rep, ctx, n);
  }
  kernel_theorem_records(rep, ctx, n_max);
  positivity_records(rep, ctx, n_max);
  coxeter_records(rep, ctx, std::min(n_max - 1, kMaxEulerSolomonRank));
  dm_factorization_records(rep, ctx, n_max);
  un_records(rep, ctx, n_max);
  wick_ideal_records(rep, ctx, n_max);
  involution_records(rep, ctx, n_max);
  fock_records(rep, ctx, n_max);
  rewrite_records(rep, ctx, n_max);
  return rep;
}

Report run_command(const std::string& name, const WickSpec& spec, const CommandOptions& opt, ojson provenance) {
  if (name == "check") return cmd_check(spec, opt, std::move(provenance));
  if (name == "pn") return cmd_pn(spec, opt, std::move(provenance));
  if (name == "kernel-theorem") return cmd_kernel_theorem(spec, opt, std::move(provenance));
  if (name == "coxeter") return cmd_coxeter(spec, opt, std::move(provenance));
  if (name == "positivity") return cmd_positivity(spec, opt, std::move(provenance));
  if (name == "inner") return cmd_inner(spec, opt, std::move(provenance));
  if (name == "full") return cmd_full(spec, opt, std::move(provenance));
  throw InputError("unknown command " + name);
}

}  // namespace wickfock
