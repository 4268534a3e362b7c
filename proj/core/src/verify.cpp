#include "weilforge/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "weilforge/error.hpp"
#include "weilforge/macaulay.hpp"
#include "weilforge/parse.hpp"
#include "weilforge/random.hpp"
#include "weilforge/solutions.hpp"
#include "weilforge/weil.hpp"

namespace weilforge {

namespace {

const std::vector<CheckInfo> kCatalog = [] {
  std::vector<CheckInfo> c = {
      {"betti-euler", CheckKind::Consistency,
       "sum_i (-1)^i beta_{i,j} = coefficient of z^j in HS(z)(1-z)^m, for every Betti table computed", "none"},
      {"ci-solvdeg-bound", CheckKind::Statement, "solvdeg(Weil(F)) <= n(d_1+...+d_r) - nr + 1",
       "(F^h) is a complete intersection of degrees d_1..d_r in generic coordinates"},
      {"fieldeq-addition", CheckKind::Statement, "solvdeg(F u {x_i^q - x_i}) <= solvdeg(F^h)",
       "F has coefficients in the base field and contains the field equations of K"},
      {"fieldeq-solvdeg-bound", CheckKind::Statement, "solvdeg(Weil(F)) <= n*reg(F^h) - n + 1",
       "F contains the field equations of K and t is a non-zerodivisor mod (F^h)"},
      {"homog-dreg", CheckKind::Statement, "d_reg(Weil(F)) = n*d_reg(F) - n + 1",
       "F homogeneous and R/(F) Artinian"},
      {"homog-reg", CheckKind::Statement, "reg(Weil(F)^h) = n*reg(F^h) - n + 1",
       "t is a non-zerodivisor mod (F^h)"},
      {"homog-solvdeg-bound", CheckKind::Statement, "solvdeg(Weil(F)) <= n*reg(F) - n + 1",
       "F homogeneous and Weil(F) in generic coordinates"},
      {"homog-solvdeg-eq", CheckKind::Statement, "solvdeg(Weil(F^h)) = solvdeg(Weil(F)^h)",
       "t is a non-zerodivisor mod (F^h)"},
      {"homog-specialization", CheckKind::Statement,
       "Weil(F^h) at t_1 = t, t_2 = ... = t_n = 0 equals Weil(F)^h componentwise", "none"},
      {"hs-tensor", CheckKind::Statement, "HS(S/Weil(I)) = product over sigma of HS(R/I^sigma)", "F homogeneous"},
      {"maxgb-solvdeg", CheckKind::Consistency, "solvdeg(H) = maxGB(H) for H = Weil(F) or Weil(F)^h",
       "H homogeneous"},
      {"projective-solvdeg-bound", CheckKind::Statement, "solvdeg(Weil(F)) <= n*reg(F^h) - n + 1",
       "t is a non-zerodivisor mod (F^h) and F^h has finitely many projective solutions"},
      {"rref-canonical", CheckKind::Consistency,
       "reduced row echelon form is independent of row order, thread count and kernel", "none"},
      {"solution-bijection", CheckKind::Statement,
       "coordinate decomposition is a bijection V_K(F) -> V_k(Weil(F))", "search space within budget"},
      {"t-regular-equiv", CheckKind::Statement,
       "t regular mod (F^h) iff t_1..t_n is a regular sequence mod Weil(F^h)", "none"},
      {"top-compat", CheckKind::Statement, "Weil(F^top) = Weil(F)^top", "none"},
      {"top-dreg", CheckKind::Statement, "d_reg(Weil(F)) = n*d_reg(F) - n + 1", "R/(F^top) Artinian"},
      {"weil-ci", CheckKind::Statement, "R/I complete intersection => S/Weil(I) complete intersection",
       "F homogeneous"},
      {"weil-cm", CheckKind::Statement, "R/I Cohen-Macaulay => S/Weil(I) Cohen-Macaulay", "F homogeneous"},
      {"weil-dim", CheckKind::Statement, "dim(S/Weil(I)) = n*dim(R/I)", "F homogeneous"},
      {"weil-hs", CheckKind::Statement, "HS(S/Weil(I)) = HS(R/I)^n", "F homogeneous"},
      {"weil-iso", CheckKind::Statement,
       "f^sigma(sum_j sigma(alpha_j) x_{i,j}) = sum_j sigma(alpha_j) f_j for every sigma, and (sigma(alpha_j)) is "
       "invertible",
       "none"},
      {"weil-mult", CheckKind::Statement, "e(S/Weil(I)) = e(R/I)^n", "F homogeneous"},
      {"weil-pdim", CheckKind::Statement, "proj.dim(S/Weil(I)) = n*proj.dim(R/I)", "F homogeneous"},
      {"weil-reg", CheckKind::Statement, "reg(Weil(I)) = n*reg(I) - n + 1", "F homogeneous"},
      {"weil-fieldeq-bound", CheckKind::Statement, "solvdeg(Weil(F) u {x_{i,j}^q - x_{i,j}}) <= n*reg(F^h) - n + 1",
       "F contains the field equations of K and t is a non-zerodivisor mod (F^h)"},
      {"worked-example", CheckKind::Statement,
       "for f = y^2+xy+a*x+a^2 over GF(8), Weil(f^h) and Weil(f)^h match the published g and h", "none"},
  };
  std::sort(c.begin(), c.end(), [](const CheckInfo& a, const CheckInfo& b) { return a.id < b.id; });
  return c;
}();

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

bool is_resource_limit(ErrorKind k) {
  return k == ErrorKind::DegreeCapExceeded || k == ErrorKind::CapTooSmall || k == ErrorKind::CapExceeded ||
         k == ErrorKind::BudgetExceeded;
}

std::string str(std::int64_t v) { return std::to_string(v); }
std::string str(bool v) { return v ? "true" : "false"; }

/// Memoizes a value or the exception its computation raised.
template <class T>
class Lazy {
 public:
  const T& get(const std::function<T()>& make) {
    if (error_) std::rethrow_exception(error_);
    if (!value_) {
      try {
        value_.emplace(make());
      } catch (...) {
        error_ = std::current_exception();
        throw;
      }
    }
    return *value_;
  }

 private:
  std::optional<T> value_;
  std::exception_ptr error_;
};

/// Quantities of one instance, computed on first use.
class Analysis {
 public:
  Analysis(const SuiteInstance& inst, const SuiteOptions& opts)
      : name(inst.name), F(inst.system), opts_(opts), ring_(F.front().ring()) {
    homogeneous = is_homogeneous(F);
  }

  std::string name;
  const PolySystem& F;
  bool homogeneous = false;
  std::vector<std::pair<BettiTable, HilbertSeries>> tables;

  unsigned n() { return ctx().degree(); }
  const RingPtr& ring() const { return ring_; }

  const WeilContext& ctx() {
    return ctx_.get([&] { return make_weil_context(ring_); });
  }
  const PolySystem& weil() {
    return weil_.get([&] { return weil_restrict_system(ctx(), F); });
  }
  const GroebnerBasis& gb_source() {
    return gb_source_.get([&] { return gb(F); });
  }
  const GroebnerBasis& gb_weil() {
    return gb_weil_.get([&] { return gb(weil()); });
  }
  const HomologicalInvariants& inv_source() {
    return inv_source_.get([&] { return invariants(gb_source()); });
  }
  const HomologicalInvariants& inv_weil() {
    return inv_weil_.get([&] { return invariants(gb_weil()); });
  }

  // Homogenized side: R[t], S[t_1..t_n] and S[t].
  const RingPtr& ring_t() {
    return ring_t_.get([&] { return ring_->with_homogenizing("t"); });
  }
  const PolySystem& Fh() {
    return Fh_.get([&] { return homogenize(F, ring_t()); });
  }
  const GroebnerBasis& gb_Fh() {
    return gb_Fh_.get([&] { return gb(Fh()); });
  }
  const HomologicalInvariants& inv_Fh() {
    return inv_Fh_.get([&] { return invariants(gb_Fh()); });
  }
  const WeilContext& ctx_t() {
    return ctx_t_.get([&] { return make_weil_context(ring_t()); });
  }
  const PolySystem& weil_of_Fh() {
    return weil_of_Fh_.get([&] { return weil_restrict_system(ctx_t(), Fh()); });
  }
  const GroebnerBasis& gb_weil_of_Fh() {
    return gb_weil_of_Fh_.get([&] { return gb(weil_of_Fh()); });
  }
  const PolySystem& weil_h() {
    return weil_h_.get([&] { return weil_then_homogenize(ctx(), F, weil_homogenized_ring(ctx())); });
  }
  const GroebnerBasis& gb_weil_h() {
    return gb_weil_h_.get([&] { return gb(weil_h()); });
  }
  const HomologicalInvariants& inv_weil_h() {
    return inv_weil_h_.get([&] { return invariants(gb_weil_h()); });
  }

  bool t_regular_source() {
    return t_src_.get([&] {
      const RingPtr& Rt = ring_t();
      return linear_regular_sequence_check(gb_Fh(), {Polynomial::variable(Rt, Rt->nvars() - 1)}, opts_.groebner);
    });
  }
  bool t_regular_target() {
    return t_tgt_.get([&] {
      const RingPtr& T = ctx_t().target;
      PolySystem L;
      for (std::size_t j = 0; j < n(); ++j) L.push_back(Polynomial::variable(T, T->nvars() - n() + j));
      return linear_regular_sequence_check(gb_weil_of_Fh(), L, opts_.groebner);
    });
  }

  /// F contains x_i^Q - x_i for every variable, Q the size of its field.
  bool has_field_equations() {
    return fe_.get([&] {
      const PolySystem fe = field_equations(ring_, ring_->field()->size());
      return std::all_of(fe.begin(), fe.end(), [&](const Polynomial& e) {
        return std::any_of(F.begin(), F.end(), [&](const Polynomial& f) { return f == e; });
      });
    });
  }

  unsigned solvdeg(const std::string& key, const PolySystem& H) {
    auto it = solvdeg_.find(key);
    if (it == solvdeg_.end()) it = solvdeg_.emplace(key, Lazy<unsigned>{}).first;
    return it->second.get([&] {
      SolvingDegreeOptions so;
      so.max_degree = opts_.solving_degree_cap;
      so.groebner = opts_.groebner;
      so.homogeneous_blocks = is_homogeneous(H);
      return solving_degree(H, so).degree;
    });
  }

  const SuiteOptions& options() const { return opts_; }

 private:
  GroebnerBasis gb(const PolySystem& H) { return buchberger_reduced_gb(H, opts_.groebner); }

  HomologicalInvariants invariants(const GroebnerBasis& I) {
    if (I.is_unit_ideal()) throw Error(ErrorKind::ImproperIdeal, "the ideal is the unit ideal");
    BettiTable B = betti_table(I, opts_.betti);
    HomologicalInvariants h = derive_homological_invariants(B, I);
    tables.emplace_back(std::move(B), hilbert_series(I));
    return h;
  }

  const SuiteOptions& opts_;
  RingPtr ring_;
  Lazy<WeilContext> ctx_;
  Lazy<PolySystem> weil_;
  Lazy<GroebnerBasis> gb_source_, gb_weil_;
  Lazy<HomologicalInvariants> inv_source_, inv_weil_;
  Lazy<RingPtr> ring_t_;
  Lazy<PolySystem> Fh_;
  Lazy<GroebnerBasis> gb_Fh_;
  Lazy<HomologicalInvariants> inv_Fh_;
  Lazy<WeilContext> ctx_t_;
  Lazy<PolySystem> weil_of_Fh_;
  Lazy<GroebnerBasis> gb_weil_of_Fh_;
  Lazy<PolySystem> weil_h_;
  Lazy<GroebnerBasis> gb_weil_h_;
  Lazy<HomologicalInvariants> inv_weil_h_;
  Lazy<bool> t_src_, t_tgt_, fe_;
  std::map<std::string, Lazy<unsigned>> solvdeg_;
};

void hypothesis(CheckRecord& r, bool ok) {
  r.hypothesis = ok ? HypothesisStatus::Satisfied : HypothesisStatus::NotSatisfied;
}

/// Verdict for a relation whose hypothesis status is already recorded.
void conclude(CheckRecord& r, bool holds) {
  switch (r.hypothesis) {
    case HypothesisStatus::Satisfied:
      r.verdict = holds ? Verdict::Pass : Verdict::Fail;
      break;
    case HypothesisStatus::NotSatisfied:
      r.verdict = Verdict::SkippedHypothesisFalse;
      break;
    case HypothesisStatus::UndecidableOverBaseField:
      r.verdict = Verdict::SkippedUndecidable;
      break;
  }
  if (r.verdict != Verdict::Pass && r.verdict != Verdict::Fail) {
    r.note += std::string(r.note.empty() ? "" : "; ") + "relation " + (holds ? "holds" : "fails") + " here";
  }
}

void equal(CheckRecord& r, const std::string& left, const std::string& right) {
  r.left = left;
  r.right = right;
  conclude(r, left == right);
}

void at_most(CheckRecord& r, std::int64_t left, std::int64_t right) {
  r.left = str(left);
  r.right = str(right);
  conclude(r, left <= right);
}

bool require_homogeneous_source(Analysis& a, CheckRecord& r) {
  if (a.homogeneous) return true;
  r.verdict = Verdict::SkippedNotApplicable;
  r.note = "source system is not homogeneous";
  return false;
}

bool require_proper(Analysis& a, CheckRecord& r) {
  if (!a.gb_source().is_unit_ideal()) return true;
  r.verdict = Verdict::SkippedNotApplicable;
  r.note = "unit ideal";
  return false;
}

std::int64_t ipow(std::int64_t b, unsigned e) {
  std::int64_t v = 1;
  for (unsigned i = 0; i < e; ++i) v *= b;
  return v;
}

std::int64_t weil_bound(Analysis& a, int reg) { return static_cast<std::int64_t>(a.n()) * reg - a.n() + 1; }

using CheckFn = std::function<void(Analysis&, CheckRecord&)>;

void check_weil_iso(Analysis& a, CheckRecord& r) {
  std::size_t equal_count = 0, total = 0;
  for (const auto& f : a.F) {
    const PsiIsoReport rep = psi_iso_check(a.ctx(), f);
    total += rep.entries.size();
    for (const auto& e : rep.entries) equal_count += e.equal;
  }
  const bool inv = conjugate_basis_matrix_invertible(*a.ctx().extension);
  r.left = std::to_string(equal_count) + "/" + std::to_string(total) + " conjugate identities, matrix " +
           (inv ? "invertible" : "singular");
  r.right = std::to_string(total) + "/" + std::to_string(total) + " conjugate identities, matrix invertible";
  conclude(r, inv && equal_count == total);
}

void check_hs_tensor(Analysis& a, CheckRecord& r) {
  if (!require_homogeneous_source(a, r)) return;
  const HilbertSeries left = hilbert_series(a.gb_weil());
  HilbertSeries right = HilbertSeries::from_numerator({1}, 0);
  for (const auto sigma : a.ctx().extension->galois_group()) {
    PolySystem conj;
    for (const auto& f : a.F) conj.push_back(galois_conjugate_poly(f, sigma));
    right = hs_product(right, hilbert_series(buchberger_reduced_gb(conj, a.options().groebner)));
  }
  r.left = left.render();
  r.right = right.render();
  conclude(r, left == right);
}

void check_weil_dim(Analysis& a, CheckRecord& r) {
  if (!require_homogeneous_source(a, r) || !require_proper(a, r)) return;
  equal(r, str(static_cast<std::int64_t>(krull_dimension(a.gb_weil()))),
        str(static_cast<std::int64_t>(a.n() * krull_dimension(a.gb_source()))));
}

void check_weil_pdim(Analysis& a, CheckRecord& r) {
  if (!require_homogeneous_source(a, r) || !require_proper(a, r)) return;
  equal(r, str(static_cast<std::int64_t>(a.inv_weil().projective_dimension)),
        str(static_cast<std::int64_t>(a.n() * a.inv_source().projective_dimension)));
}

void check_weil_cm(Analysis& a, CheckRecord& r) {
  if (!require_homogeneous_source(a, r) || !require_proper(a, r)) return;
  hypothesis(r, a.inv_source().cohen_macaulay);
  r.left = "CM(S/Weil(I)) = " + str(a.inv_weil().cohen_macaulay);
  r.right = "CM(R/I) = " + str(a.inv_source().cohen_macaulay);
  conclude(r, a.inv_weil().cohen_macaulay);
}

void check_weil_ci(Analysis& a, CheckRecord& r) {
  if (!require_homogeneous_source(a, r) || !require_proper(a, r)) return;
  hypothesis(r, a.inv_source().complete_intersection);
  r.left = "CI(S/Weil(I)) = " + str(a.inv_weil().complete_intersection);
  r.right = "CI(R/I) = " + str(a.inv_source().complete_intersection);
  conclude(r, a.inv_weil().complete_intersection);
}

void check_weil_reg(Analysis& a, CheckRecord& r) {
  if (!require_homogeneous_source(a, r) || !require_proper(a, r)) return;
  equal(r, str(static_cast<std::int64_t>(a.inv_weil().reg_ideal)), str(weil_bound(a, a.inv_source().reg_ideal)));
}

void check_weil_hs(Analysis& a, CheckRecord& r) {
  if (!require_homogeneous_source(a, r)) return;
  const HilbertSeries left = hilbert_series(a.gb_weil());
  const HilbertSeries right = hs_power(hilbert_series(a.gb_source()), a.n());
  r.left = left.render();
  r.right = right.render();
  conclude(r, left == right);
}

void check_weil_mult(Analysis& a, CheckRecord& r) {
  if (!require_homogeneous_source(a, r) || !require_proper(a, r)) return;
  equal(r, str(multiplicity(a.gb_weil())), str(ipow(multiplicity(a.gb_source()), a.n())));
}

void check_homog_solvdeg_bound(Analysis& a, CheckRecord& r) {
  if (!require_homogeneous_source(a, r) || !require_proper(a, r)) return;
  const GenericCoordsReport gc = is_generic_coordinates(a.gb_weil(), a.options().groebner);
  if (!gc.generic) {
    r.hypothesis = HypothesisStatus::UndecidableOverBaseField;
    r.note = "generic coordinates fail over " + gc.field;
  }
  at_most(r, a.solvdeg("weil", a.weil()), weil_bound(a, a.inv_source().reg_ideal));
}

unsigned dreg_or_throw(const PolySystem& H, const GbOptions& opts) { return degree_of_regularity(H, opts); }

void check_dreg(Analysis& a, CheckRecord& r) {
  unsigned source = 0;
  try {
    source = dreg_or_throw(a.F, a.options().groebner);
    hypothesis(r, true);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotZeroDimensionalTop) throw;
    hypothesis(r, false);
    r.note = "R/(F^top) is not Artinian";
    r.verdict = Verdict::SkippedHypothesisFalse;
    return;
  }
  equal(r, str(static_cast<std::int64_t>(dreg_or_throw(a.weil(), a.options().groebner))),
        str(static_cast<std::int64_t>(a.n()) * source - a.n() + 1));
}

void check_homog_dreg(Analysis& a, CheckRecord& r) {
  if (!require_homogeneous_source(a, r)) return;
  check_dreg(a, r);
}

void check_specialization(Analysis& a, CheckRecord& r) {
  const CompatReport rep = weil_homog_compat_check(a.ctx(), a.F);
  std::size_t matched = 0;
  for (const auto& [l, rr] : rep.pairs) matched += l == rr;
  r.left = std::to_string(matched) + "/" + std::to_string(rep.pairs.size()) + " components equal";
  r.right = std::to_string(rep.pairs.size()) + "/" + std::to_string(rep.pairs.size()) + " components equal";
  if (rep.degree_drops) r.note = std::to_string(rep.degree_drops) + " components drop degree";
  conclude(r, rep.holds);
}

void check_t_regular_equiv(Analysis& a, CheckRecord& r) {
  const bool src = a.t_regular_source();
  const bool tgt = a.t_regular_target();
  r.left = "t regular = " + str(src);
  r.right = "t_1..t_n regular = " + str(tgt);
  conclude(r, src == tgt);
}

void check_homog_reg(Analysis& a, CheckRecord& r) {
  hypothesis(r, a.t_regular_source());
  equal(r, str(static_cast<std::int64_t>(a.inv_weil_h().reg_ideal)), str(weil_bound(a, a.inv_Fh().reg_ideal)));
}

void check_homog_solvdeg_eq(Analysis& a, CheckRecord& r) {
  hypothesis(r, a.t_regular_source());
  equal(r, str(static_cast<std::int64_t>(a.solvdeg("weil-of-homog", a.weil_of_Fh()))),
        str(static_cast<std::int64_t>(a.solvdeg("weil-homog", a.weil_h()))));
}

void check_projective_bound(Analysis& a, CheckRecord& r) {
  const bool t_reg = a.t_regular_source();
  const std::size_t dim = krull_dimension(a.gb_Fh());
  hypothesis(r, t_reg && dim <= 1);
  if (!t_reg) r.note = "t is a zerodivisor";
  if (dim > 1) r.note += std::string(r.note.empty() ? "" : "; ") + "dim R[t]/(F^h) = " + std::to_string(dim);
  at_most(r, a.solvdeg("weil", a.weil()), weil_bound(a, a.inv_Fh().reg_ideal));
}

void check_fieldeq_bound(Analysis& a, CheckRecord& r) {
  const bool fe = a.has_field_equations();
  if (!fe) {
    hypothesis(r, false);
    r.verdict = Verdict::SkippedHypothesisFalse;
    r.note = "field equations of K absent";
    return;
  }
  hypothesis(r, a.t_regular_source());
  if (r.hypothesis != HypothesisStatus::Satisfied) r.note = "t is a zerodivisor";
  at_most(r, a.solvdeg("weil", a.weil()), weil_bound(a, a.inv_Fh().reg_ideal));
}

void check_ci_bound(Analysis& a, CheckRecord& r) {
  const HomologicalInvariants& h = a.inv_Fh();
  const bool ci = h.complete_intersection && h.minimal_generators == a.F.size();
  std::int64_t degree_sum = 0;
  for (const auto& f : a.F) degree_sum += f.degree();
  const std::int64_t nn = a.n();
  const std::int64_t bound = nn * degree_sum - nn * static_cast<std::int64_t>(a.F.size()) + 1;
  if (!ci) {
    hypothesis(r, false);
    r.note = "(F^h) is not a complete intersection on the given generators";
  } else if (const auto gc = is_generic_coordinates(a.gb_Fh(), a.options().groebner); !gc.generic) {
    r.hypothesis = HypothesisStatus::UndecidableOverBaseField;
    r.note = "generic coordinates fail over " + gc.field;
  }
  at_most(r, a.solvdeg("weil", a.weil()), bound);
}

void check_fieldeq_addition(Analysis& a, CheckRecord& r) {
  if (!a.has_field_equations()) {
    hypothesis(r, false);
    r.verdict = Verdict::SkippedHypothesisFalse;
    r.note = "field equations of K absent";
    return;
  }
  const Elem base = static_cast<Elem>(a.ctx().base->size());
  const bool base_coefficients = std::all_of(a.F.begin(), a.F.end(), [&](const Polynomial& f) {
    return std::all_of(f.terms().begin(), f.terms().end(), [&](const Term& t) { return t.coeff < base; });
  });
  hypothesis(r, base_coefficients);
  if (!base_coefficients) r.note = "coefficients outside the base field";
  PolySystem G = a.F;
  for (auto& e : field_equations(a.ring(), a.ctx().base->size())) G.push_back(std::move(e));
  at_most(r, a.solvdeg("source+base-fe", G), a.solvdeg("source-homog", a.Fh()));
}

void check_weil_fieldeq_bound(Analysis& a, CheckRecord& r) {
  if (!a.has_field_equations()) {
    hypothesis(r, false);
    r.verdict = Verdict::SkippedHypothesisFalse;
    r.note = "field equations of K absent";
    return;
  }
  hypothesis(r, a.t_regular_source());
  if (r.hypothesis != HypothesisStatus::Satisfied) r.note = "t is a zerodivisor";
  PolySystem G = a.weil();
  for (auto& e : field_equations(a.ctx().target, a.ctx().base->size())) G.push_back(std::move(e));
  at_most(r, a.solvdeg("weil+base-fe", G), weil_bound(a, a.inv_Fh().reg_ideal));
}

void check_top_compat(Analysis& a, CheckRecord& r) {
  const CompatReport rep = weil_top_compat_check(a.ctx(), a.F);
  std::size_t matched = 0;
  for (const auto& [l, rr] : rep.pairs) matched += l == rr;
  r.left = std::to_string(matched) + "/" + std::to_string(rep.pairs.size()) + " components equal";
  r.right = std::to_string(rep.pairs.size()) + "/" + std::to_string(rep.pairs.size()) + " components equal";
  conclude(r, rep.holds);
}

void check_bijection(Analysis& a, CheckRecord& r) {
  const BijectionReport rep = bijection_check(a.ctx(), a.F, a.options().solution_budget);
  r.left = "|V_K(F)| = " + std::to_string(rep.source_count);
  r.right = "|V_k(Weil(F))| = " + std::to_string(rep.target_count);
  if (rep.witness) {
    std::string w;
    for (const auto c : *rep.witness) w += (w.empty() ? "" : ",") + std::to_string(c);
    r.note = "witness (" + w + ")";
  }
  conclude(r, rep.bijective);
}

void check_maxgb(Analysis& a, CheckRecord& r) {
  const PolySystem& H = a.homogeneous ? a.weil() : a.weil_h();
  const unsigned sd = a.solvdeg(a.homogeneous ? "weil" : "weil-homog", H);
  const unsigned mg = max_gb_deg(H, a.options().groebner);
  r.note = a.homogeneous ? "H = Weil(F)" : "H = Weil(F)^h";
  equal(r, str(static_cast<std::int64_t>(sd)), str(static_cast<std::int64_t>(mg)));
}

void check_rref_canonical(Analysis& a, CheckRecord& r) {
  const PolySystem& H = a.weil();
  const unsigned d = std::min(max_degree(H) + 1, 6u);
  const MacaulayMatrix M = build_macaulay(H, d);
  const Field& k = *M.ring->field();
  RrefOptions base;
  base.dense_threshold = 2.0;
  const RrefOutput ref = rref_rows(k, M.ncols(), M.rows, base);

  std::vector<SparseRow> shuffled = M.rows;
  SplitMix64 rng(0xfeed);
  for (std::size_t i = shuffled.size(); i > 1; --i) std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
  std::size_t agree = 0, runs = 0;
  for (const double threshold : {2.0, 0.0}) {
    for (const unsigned threads : {1u, 4u}) {
      RrefOptions o;
      o.dense_threshold = threshold;
      o.threads = threads;
      for (const std::vector<SparseRow>* rows : {&M.rows, static_cast<const std::vector<SparseRow>*>(&shuffled)}) {
        const RrefOutput out = rref_rows(k, M.ncols(), *rows, o);
        ++runs;
        bool same = out.pivots == ref.pivots && out.rows.size() == ref.rows.size();
        for (std::size_t i = 0; same && i < out.rows.size(); ++i) {
          same = out.rows[i].cols == ref.rows[i].cols && out.rows[i].vals == ref.rows[i].vals;
        }
        agree += same;
      }
    }
  }
  r.note = "Macaulay matrix of Weil(F) at degree " + std::to_string(d) + ", " + std::to_string(M.nrows()) + "x" +
           std::to_string(M.ncols());
  r.left = std::to_string(agree) + "/" + std::to_string(runs) + " runs match";
  r.right = std::to_string(runs) + "/" + std::to_string(runs) + " runs match";
  conclude(r, agree == runs);
}

void check_betti_euler(Analysis& a, CheckRecord& r) {
  std::size_t ok = 0;
  for (const auto& [B, hs] : a.tables) ok += alternating_sum_identity(B, hs);
  if (a.tables.empty()) {
    r.verdict = Verdict::SkippedNotApplicable;
    r.note = "no Betti table computed";
    return;
  }
  r.left = std::to_string(ok) + "/" + std::to_string(a.tables.size()) + " tables consistent";
  r.right = std::to_string(a.tables.size()) + "/" + std::to_string(a.tables.size()) + " tables consistent";
  conclude(r, ok == a.tables.size());
}

// The published example, with t_j written tj.
constexpr const char* kExampleG[] = {
    "y_1^2+x_1*y_1+x_2*y_3+x_3*y_2+x_1*t3+x_2*t2+x_3*t1+x_3*t3+t3^2",
    "y_3^2+x_1*y_2+x_2*y_1+x_2*y_3+x_3*y_2+x_3*y_3+x_1*t1+x_1*t3+x_2*t2+x_2*t3+x_3*t1+x_3*t2+x_3*t3+t2^2",
    "y_2^2+y_3^2+x_1*y_3+x_2*y_2+x_3*y_1+x_3*y_3+x_1*t2+x_2*t1+x_2*t3+x_3*t2+x_3*t3+t1^2+t2^2+t3^2",
};
constexpr const char* kExampleH[] = {
    "y_1^2+x_1*y_1+x_2*y_3+x_3*y_2+x_3*t",
    "y_3^2+x_1*y_2+x_2*y_1+x_2*y_3+x_3*y_2+x_3*y_3+x_1*t+x_3*t",
    "y_2^2+y_3^2+x_1*y_3+x_2*y_2+x_3*y_1+x_3*y_3+x_2*t+t^2",
};

void check_worked_example(CheckRecord& r) {
  const FieldPtr K = parse_field_spec("GF(2)[a]/(a^3+a+1)");
  const RingPtr R = Ring::make(K, {"x", "y"});
  const PolySystem F{parse_polynomial("y^2+x*y+a*x+a^2", R)};
  const WeilContext ctx = make_weil_context(R);
  const WeilContext ctx_t = make_weil_context(R->with_homogenizing("t"));
  const PolySystem g = weil_restrict_system(ctx_t, homogenize(F, ctx_t.source));
  const PolySystem h = weil_then_homogenize(ctx, F, weil_homogenized_ring(ctx));

  std::size_t g_ok = 0, h_ok = 0;
  for (std::size_t l = 0; l < 3; ++l) {
    g_ok += l < g.size() && g[l] == parse_polynomial(kExampleG[l], ctx_t.target);
    h_ok += l < h.size() && h[l] == parse_polynomial(kExampleH[l], h.front().ring());
  }
  const bool spec = weil_homog_compat_check(ctx, F).holds;
  r.left = "g " + std::to_string(g_ok) + "/3, h " + std::to_string(h_ok) + "/3, specialization " + str(spec);
  r.right = "g 3/3, h 3/3, specialization true";
  conclude(r, g_ok == 3 && h_ok == 3 && spec);
}

const std::map<std::string_view, CheckFn>& instance_checks() {
  static const std::map<std::string_view, CheckFn> table = {
      {"ci-solvdeg-bound", check_ci_bound},
      {"fieldeq-addition", check_fieldeq_addition},
      {"fieldeq-solvdeg-bound", check_fieldeq_bound},
      {"homog-dreg", check_homog_dreg},
      {"homog-reg", check_homog_reg},
      {"homog-solvdeg-bound", check_homog_solvdeg_bound},
      {"homog-solvdeg-eq", check_homog_solvdeg_eq},
      {"homog-specialization", check_specialization},
      {"hs-tensor", check_hs_tensor},
      {"maxgb-solvdeg", check_maxgb},
      {"projective-solvdeg-bound", check_projective_bound},
      {"rref-canonical", check_rref_canonical},
      {"solution-bijection", check_bijection},
      {"t-regular-equiv", check_t_regular_equiv},
      {"top-compat", check_top_compat},
      {"top-dreg", check_dreg},
      {"weil-ci", check_weil_ci},
      {"weil-cm", check_weil_cm},
      {"weil-dim", check_weil_dim},
      {"weil-hs", check_weil_hs},
      {"weil-iso", check_weil_iso},
      {"weil-mult", check_weil_mult},
      {"weil-pdim", check_weil_pdim},
      {"weil-reg", check_weil_reg},
      {"weil-fieldeq-bound", check_weil_fieldeq_bound},
  };
  return table;
}

template <class Body>
CheckRecord run_one(std::string_view id, const std::string& instance, Body&& body) {
  CheckRecord r;
  r.check_id = std::string(id);
  r.instance = instance;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const Error& e) {
    if (is_resource_limit(e.kind())) {
      r.verdict = r.hypothesis == HypothesisStatus::NotSatisfied ? Verdict::SkippedHypothesisFalse
                                                                  : Verdict::SkippedResourceLimit;
      r.note += std::string(r.note.empty() ? "" : "; ") + e.what();
    } else {
      r.verdict = Verdict::Fail;
      r.note += std::string(r.note.empty() ? "" : "; ") + "error: " + e.what();
    }
  } catch (const std::exception& e) {
    r.verdict = Verdict::Fail;
    r.note += std::string(r.note.empty() ? "" : "; ") + "error: " + e.what();
  }
  r.elapsed_ms = ms_since(start);
  return r;
}

std::vector<CheckRecord> run_instance(const SuiteInstance& inst, const std::vector<std::string_view>& ids,
                                      const SuiteOptions& opts) {
  std::vector<CheckRecord> out;
  if (inst.system.empty()) return out;
  Analysis a(inst, opts);
  const auto& table = instance_checks();
  bool euler = false;
  for (const auto id : ids) {
    if (id == "betti-euler") {
      euler = true;
      continue;
    }
    const auto it = table.find(id);
    if (it == table.end()) continue;
    out.push_back(run_one(id, inst.name, [&](CheckRecord& r) { it->second(a, r); }));
  }
  // Runs last so that it sees every table the other checks produced.
  if (euler) out.push_back(run_one("betti-euler", inst.name, [&](CheckRecord& r) { check_betti_euler(a, r); }));
  return out;
}

}  // namespace

std::string_view to_string(HypothesisStatus s) {
  switch (s) {
    case HypothesisStatus::Satisfied:
      return "satisfied";
    case HypothesisStatus::NotSatisfied:
      return "not-satisfied";
    case HypothesisStatus::UndecidableOverBaseField:
      return "undecidable-over-base-field";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "PASS";
    case Verdict::Fail:
      return "FAIL";
    case Verdict::SkippedHypothesisFalse:
      return "SKIPPED(hypothesis-false)";
    case Verdict::SkippedUndecidable:
      return "SKIPPED(hypothesis-undecidable-over-base-field)";
    case Verdict::SkippedResourceLimit:
      return "SKIPPED(resource-limit)";
    case Verdict::SkippedNotApplicable:
      return "SKIPPED(not-applicable)";
  }
  return "?";
}

const std::vector<CheckInfo>& check_catalog() { return kCatalog; }

const CheckInfo& find_check(std::string_view id) {
  for (const auto& c : kCatalog) {
    if (c.id == id) return c;
  }
  throw Error(ErrorKind::UnknownCheckId, std::string(id));
}

bool VerificationReport::has_failures() const { return count(Verdict::Fail) > 0; }

std::size_t VerificationReport::count(Verdict v) const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [&](const CheckRecord& r) { return r.verdict == v; }));
}

std::vector<const CheckRecord*> VerificationReport::select(std::string_view check_id) const {
  std::vector<const CheckRecord*> out;
  for (const auto& r : records) {
    if (r.check_id == check_id) out.push_back(&r);
  }
  return out;
}

std::string VerificationReport::to_json(bool timings) const {
  nlohmann::ordered_json recs = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["check_id"] = r.check_id;
    j["instance"] = r.instance;
    j["hypothesis"] = std::string(to_string(r.hypothesis));
    j["left"] = r.left;
    j["right"] = r.right;
    j["verdict"] = std::string(to_string(r.verdict));
    j["note"] = r.note;
    if (timings) j["elapsed_ms"] = r.elapsed_ms;
    recs.push_back(std::move(j));
  }
  nlohmann::ordered_json summary;
  for (const auto v : {Verdict::Pass, Verdict::Fail, Verdict::SkippedHypothesisFalse, Verdict::SkippedUndecidable,
                       Verdict::SkippedResourceLimit, Verdict::SkippedNotApplicable}) {
    summary[std::string(to_string(v))] = count(v);
  }
  nlohmann::ordered_json doc;
  doc["summary"] = std::move(summary);
  doc["records"] = std::move(recs);
  return doc.dump(2) + "\n";
}

std::string VerificationReport::to_text(bool timings) const {
  std::ostringstream os;
  for (const auto& r : records) {
    os << to_string(r.verdict) << "  " << r.check_id << "  " << r.instance;
    if (!r.left.empty() || !r.right.empty()) os << "  [" << r.left << " | " << r.right << "]";
    if (!r.note.empty()) os << "  (" << r.note << ")";
    if (timings) os << "  " << static_cast<long long>(r.elapsed_ms) << " ms";
    os << '\n';
  }
  os << count(Verdict::Pass) << " passed, " << count(Verdict::Fail) << " failed, "
     << records.size() - count(Verdict::Pass) - count(Verdict::Fail) << " skipped\n";
  return os.str();
}

SuiteInstance instance_from_spec(const InstanceSpec& spec) { return {spec.descriptor(), random_system_gen(spec)}; }

VerificationReport run_verification_suite(const std::vector<SuiteInstance>& instances, const SuiteOptions& opts) {
  std::vector<std::string_view> ids;
  if (opts.targets.empty()) {
    for (const auto& c : kCatalog) ids.push_back(c.id);
  } else {
    for (const auto& t : opts.targets) ids.push_back(find_check(t).id);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  }

  VerificationReport report;
  if (std::find(ids.begin(), ids.end(), "worked-example") != ids.end()) {
    report.records.push_back(run_one("worked-example", "published-example", check_worked_example));
  }

  std::vector<std::vector<CheckRecord>> per(instances.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < instances.size();) per[i] = run_instance(instances[i], ids, opts);
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(instances.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (auto& v : per) {
    for (auto& r : v) report.records.push_back(std::move(r));
  }
  std::stable_sort(report.records.begin(), report.records.end(), [](const CheckRecord& a, const CheckRecord& b) {
    return std::tie(a.check_id, a.instance) < std::tie(b.check_id, b.instance);
  });
  return report;
}

}  // namespace weilforge
