// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "weilforge/field.hpp"
#include "weilforge/instances.hpp"
#include "weilforge/macaulay.hpp"
#include "weilforge/random.hpp"
#include "weilforge/verify.hpp"
#include "weilforge/weil.hpp"

namespace wf = weilforge;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Records of every suite run, for the consistency criterion.
std::vector<wf::CheckRecord> g_all;
std::set<std::string> g_homogeneous_instances;

wf::VerificationReport run(const std::vector<wf::SuiteInstance>& inst, std::vector<std::string> targets) {
  wf::SuiteOptions opts;
  opts.targets = std::move(targets);
  wf::VerificationReport rep = wf::run_verification_suite(inst, opts);
  for (const auto& r : rep.records) {
    g_all.push_back(r);
    if (r.verdict == wf::Verdict::Fail) {
      std::cerr << "  failure: " << r.check_id << " on " << r.instance << " [" << r.left << " | " << r.right << "] "
                << r.note << '\n';
    }
  }
  return rep;
}

struct Tally {
  std::size_t pass = 0, fail = 0, skipped = 0;
};

Tally tally(const wf::VerificationReport& rep, std::string_view id) {
  Tally t;
  for (const auto* r : rep.select(id)) {
    if (r->verdict == wf::Verdict::Pass) {
      ++t.pass;
    } else if (r->verdict == wf::Verdict::Fail) {
      ++t.fail;
    } else {
      ++t.skipped;
    }
  }
  return t;
}

std::string describe(std::string_view id, const Tally& t) {
  return std::string(id) + " " + std::to_string(t.pass) + " pass/" + std::to_string(t.fail) + " fail/" +
         std::to_string(t.skipped) + " skipped";
}

wf::InstanceSpec spec(std::uint64_t seed, std::uint32_t q, unsigned n, unsigned m, unsigned r, unsigned max_degree) {
  wf::InstanceSpec s;
  s.seed = seed;
  s.q = q;
  s.n = n;
  s.m = m;
  s.r = r;
  s.max_degree = max_degree;
  return s;
}

void add(std::vector<wf::SuiteInstance>& out, const wf::InstanceSpec& s) {
  out.push_back(wf::instance_from_spec(s));
  if (s.homogeneous) g_homogeneous_instances.insert(out.back().name);
}

// Homogeneous grid points whose Betti tables stay cheap on one core.
std::vector<wf::SuiteInstance> homogeneous_grid(std::uint64_t seed_base, unsigned per_point) {
  std::vector<wf::SuiteInstance> out;
  for (std::uint32_t q : {2u, 3u}) {
    for (unsigned n : {2u, 3u}) {
      for (unsigned m : {2u, 3u}) {
        for (unsigned i = 0; i < per_point; ++i) {
          const unsigned r = m == 2 ? 1 + i % 3 : (q == 2 && n == 2 ? 1 + i % 3 : 1 + i % 2);
          wf::InstanceSpec s = spec(seed_base + i, q, n, m, r, m == 2 ? 3 : 2);
          s.homogeneous = true;
          add(out, s);
        }
      }
    }
  }
  return out;
}

Outcome worked_example() {
  const auto t0 = Clock::now();
  const auto rep = run({}, {"worked-example"});
  const double s = seconds_since(t0);
  const bool ok = rep.records.size() == 1 && rep.records[0].verdict == wf::Verdict::Pass;
  char buf[64];
  std::snprintf(buf, sizeof buf, ", %.3f s", s);
  return {ok && s < 1.0, (rep.records.empty() ? std::string("no record") : rep.records[0].left) + buf};
}

Outcome tensor_battery() {
  const auto inst = homogeneous_grid(1000, 8);
  const auto t0 = Clock::now();
  const auto rep = run(inst, {"weil-dim", "weil-pdim", "weil-cm", "weil-ci", "weil-reg", "weil-hs", "weil-mult",
                              "maxgb-solvdeg", "betti-euler"});
  const double s = seconds_since(t0);
  // Instances on which every exact equality was evaluated.
  std::map<std::string, int> evaluated;
  bool ok = true;
  std::string detail;
  for (const char* id : {"weil-dim", "weil-pdim", "weil-reg", "weil-hs", "weil-mult", "weil-cm", "weil-ci"}) {
    const Tally t = tally(rep, id);
    ok = ok && t.fail == 0;
    detail += describe(id, t) + "; ";
  }
  for (const char* id : {"weil-dim", "weil-pdim", "weil-reg", "weil-hs", "weil-mult"}) {
    for (const auto* r : rep.select(id)) evaluated[r->instance] += r->verdict == wf::Verdict::Pass;
  }
  std::size_t complete = 0;
  for (const auto& [name, k] : evaluated) complete += k == 5;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu of %zu instances fully evaluated, %.1f s", complete, inst.size(), s);
  return {ok && complete >= 50 && s < 600, detail + buf};
}

Outcome homogeneous_solving_bounds() {
  std::vector<wf::SuiteInstance> inst;
  for (std::uint32_t q : {2u, 3u}) {
    for (unsigned n : {2u, 3u}) {
      for (unsigned i = 0; i < 10; ++i) {
        const unsigned m = i < 6 ? 2 : 3;
        wf::InstanceSpec s = spec(2000 + i, q, n, m, m + i % 2, m == 2 ? 3 : 2);
        s.homogeneous = true;
        add(inst, s);
      }
    }
  }
  const auto rep = run(inst, {"homog-solvdeg-bound", "homog-dreg", "maxgb-solvdeg"});
  const Tally bound = tally(rep, "homog-solvdeg-bound"), dreg = tally(rep, "homog-dreg");
  return {bound.fail == 0 && dreg.fail == 0 && bound.pass >= 25 && dreg.pass >= 25,
          describe("homog-solvdeg-bound", bound) + "; " + describe("homog-dreg", dreg)};
}

// Two generators sharing a top part, so t divides a difference of lower parts.
wf::SuiteInstance shared_top_instance(std::uint64_t seed, std::uint32_t q, unsigned n) {
  wf::InstanceSpec top = spec(seed, q, n, 2, 1, 2);
  top.min_degree = 2;
  top.homogeneous = true;
  wf::InstanceSpec low = spec(seed + 1, q, n, 2, 2, 1);
  const wf::PolySystem g = wf::random_system_gen(top);
  const wf::PolySystem l = wf::random_system_gen(low);
  return {"shared-top-" + top.descriptor(), {g[0] + l[0], g[0] + l[1]}};
}

Outcome t_regularity_equivalence() {
  std::vector<wf::SuiteInstance> inst;
  for (std::uint32_t q : {2u, 3u}) {
    for (unsigned n : {2u, 3u}) {
      for (unsigned i = 0; i < 6; ++i) add(inst, spec(3000 + i, q, n, 2, 1 + i % 3, 2));
      for (unsigned i = 0; i < 3; ++i) inst.push_back(shared_top_instance(3100 + 2 * i, q, n));
    }
  }
  const auto rep = run(inst, {"t-regular-equiv"});
  const Tally t = tally(rep, "t-regular-equiv");
  std::size_t regular = 0, zero_divisor = 0;
  for (const auto* r : rep.select("t-regular-equiv")) {
    if (r->verdict != wf::Verdict::Pass) continue;
    (r->left == "t regular = true" ? regular : zero_divisor)++;
  }
  return {t.fail == 0 && t.pass >= 25 && regular > 0 && zero_divisor > 0,
          describe("t-regular-equiv", t) + "; " + std::to_string(regular) + " regular, " +
              std::to_string(zero_divisor) + " zerodivisor"};
}

Outcome homogenization_identities() {
  std::vector<wf::SuiteInstance> inst;
  for (std::uint32_t q : {2u, 3u}) {
    for (unsigned n : {2u, 3u}) {
      for (unsigned i = 0; i < 8; ++i) add(inst, spec(4000 + i, q, n, 2, 1 + i % 2, 2));
    }
  }
  for (unsigned i = 0; i < 4; ++i) add(inst, spec(4100 + i, 2, 2, 3, 2, 2));
  const auto rep = run(inst, {"homog-reg", "homog-solvdeg-eq", "homog-specialization", "betti-euler"});
  const Tally reg = tally(rep, "homog-reg"), sd = tally(rep, "homog-solvdeg-eq");
  const Tally sp = tally(rep, "homog-specialization");
  return {reg.fail == 0 && sd.fail == 0 && sp.fail == 0 && reg.pass >= 15 && sd.pass >= 15,
          describe("homog-reg", reg) + "; " + describe("homog-solvdeg-eq", sd) + "; " +
              describe("homog-specialization", sp)};
}

Outcome field_equation_bounds() {
  std::vector<wf::SuiteInstance> inst;
  for (unsigned i = 0; i < 30; ++i) {
    wf::InstanceSpec s = spec(5000 + i, 2, 2, 2, 1 + i % 2, 2);
    s.field_equations = true;
    add(inst, s);
  }
  const auto rep = run(inst, {"projective-solvdeg-bound", "weil-fieldeq-bound", "fieldeq-solvdeg-bound"});
  std::map<std::string, double> per_instance_ms;
  for (const auto& r : rep.records) per_instance_ms[r.instance] += r.elapsed_ms;
  double slowest = 0;
  for (const auto& [name, ms] : per_instance_ms) slowest = std::max(slowest, ms);
  const Tally pb = tally(rep, "projective-solvdeg-bound"), fb = tally(rep, "weil-fieldeq-bound");
  const Tally eb = tally(rep, "fieldeq-solvdeg-bound");
  char buf[64];
  std::snprintf(buf, sizeof buf, "; slowest instance %.0f ms", slowest);
  return {pb.fail == 0 && fb.fail == 0 && eb.fail == 0 && pb.pass >= 10 && fb.pass >= 10 && slowest < 120000,
          describe("projective-solvdeg-bound", pb) + "; " + describe("weil-fieldeq-bound", fb) + "; " +
              describe("fieldeq-solvdeg-bound", eb) + buf};
}

Outcome complete_intersection_bound() {
  std::vector<wf::SuiteInstance> inst;
  for (std::uint32_t q : {2u, 3u}) {
    for (unsigned n : {2u, 3u}) {
      for (unsigned i = 0; i < 4; ++i) {
        wf::InstanceSpec s = spec(6000 + i, q, n, 2, 2, 2);
        s.min_degree = 2;
        add(inst, s);
      }
    }
  }
  const auto rep = run(inst, {"ci-solvdeg-bound"});
  const Tally t = tally(rep, "ci-solvdeg-bound");
  return {t.fail == 0 && t.pass >= 5, describe("ci-solvdeg-bound", t)};
}

// A random system with coefficients in GF(q), read over GF(q^n), plus the field equations of GF(q^n).
wf::SuiteInstance base_coefficient_instance(std::uint64_t seed, std::uint32_t q, unsigned n, unsigned r) {
  const wf::InstanceSpec s = spec(seed, q, 1, 2, r, 2);
  const wf::RingPtr R = wf::Ring::make(wf::default_extension(q, n), {"x1", "x2"});
  wf::PolySystem F;
  for (const auto& f : wf::random_system_gen(s)) F.emplace_back(R, f.terms());
  for (auto& e : wf::field_equations(R, R->field()->size())) F.push_back(std::move(e));
  wf::InstanceSpec named = s;
  named.n = n;
  named.field_equations = true;
  return {"base-coefficients-" + named.descriptor(), F};
}

Outcome top_part_relations() {
  std::vector<wf::SuiteInstance> inst;
  for (const auto& [q, n] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 2}, {2, 3}, {3, 2}}) {
    for (unsigned i = 0; i < 10; ++i) {
      inst.push_back(base_coefficient_instance(7000 + i, q, n, 1 + i % 2));
      wf::InstanceSpec s = spec(7100 + i, q, n, 2, 1 + i % 2, 2);
      s.field_equations = true;
      add(inst, s);
    }
  }
  const auto rep = run(inst, {"fieldeq-addition", "top-compat", "top-dreg"});
  const Tally fa = tally(rep, "fieldeq-addition"), tc = tally(rep, "top-compat"), td = tally(rep, "top-dreg");
  return {fa.fail == 0 && tc.fail == 0 && td.fail == 0 && fa.pass >= 25 && tc.pass >= 25,
          describe("fieldeq-addition", fa) + "; " + describe("top-compat", tc) + "; " + describe("top-dreg", td)};
}

Outcome solution_bijection() {
  std::vector<wf::SuiteInstance> inst;
  for (const auto& [q, n, m] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{
           {2, 2, 2}, {2, 3, 2}, {3, 2, 2}, {2, 2, 3}, {2, 3, 3}, {3, 3, 2}, {3, 2, 3}, {2, 2, 5}}) {
    for (unsigned i = 0; i < 3; ++i) add(inst, spec(8000 + i, q, n, m, 1 + i % m, 2));
  }
  const auto rep = run(inst, {"solution-bijection"});
  const Tally t = tally(rep, "solution-bijection");
  std::uint64_t points = 0;
  for (const auto* r : rep.select("solution-bijection")) {
    if (r->verdict == wf::Verdict::Pass) points += std::stoull(r->left.substr(r->left.find('=') + 1));
  }
  return {t.fail == 0 && t.pass >= 20,
          describe("solution-bijection", t) + "; " + std::to_string(points) + " solutions matched"};
}

Outcome consistency() {
  // Canonical-form invariance on a fresh sample; the other two read earlier runs.
  std::vector<wf::SuiteInstance> inst;
  for (unsigned i = 0; i < 6; ++i) add(inst, spec(9000 + i, 2 + i % 2, 2, 2, 2, 2));
  run(inst, {"rref-canonical"});
  Tally maxgb, euler, canon;
  std::set<std::string> maxgb_homogeneous;
  for (const auto& r : g_all) {
    Tally* t = r.check_id == "maxgb-solvdeg" ? &maxgb
               : r.check_id == "betti-euler" ? &euler
               : r.check_id == "rref-canonical" ? &canon
                                                : nullptr;
    if (!t) continue;
    if (r.verdict == wf::Verdict::Pass) {
      ++t->pass;
      if (t == &maxgb && g_homogeneous_instances.count(r.instance)) maxgb_homogeneous.insert(r.instance);
    } else if (r.verdict == wf::Verdict::Fail) {
      ++t->fail;
    } else {
      ++t->skipped;
    }
  }
  // Every homogeneous instance that went through the solving-degree checks.
  std::set<std::string> expected;
  for (const auto& r : g_all) {
    if (r.check_id == "maxgb-solvdeg" && g_homogeneous_instances.count(r.instance)) expected.insert(r.instance);
  }
  const bool ok = maxgb.fail == 0 && euler.fail == 0 && canon.fail == 0 && maxgb_homogeneous == expected &&
                  !expected.empty() && euler.pass > 0 && canon.pass == inst.size();
  return {ok, describe("maxgb-solvdeg", maxgb) + " (" + std::to_string(maxgb_homogeneous.size()) + "/" +
                  std::to_string(expected.size()) + " homogeneous); " + describe("betti-euler", euler) + "; " +
                  describe("rref-canonical", canon)};
}

std::uint64_t binomial(unsigned n, unsigned k) {
  std::uint64_t v = 1;
  for (unsigned i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

Outcome large_gf2_elimination() {
  wf::InstanceSpec s = spec(0, 2, 2, 5, 8, 2);
  s.min_degree = 2;
  const wf::PolySystem F = wf::random_system_gen(s);
  const wf::WeilContext ctx = wf::make_weil_context(F.front().ring());
  const wf::PolySystem W = wf::weil_restrict_system(ctx, F);
  const unsigned vars = static_cast<unsigned>(ctx.target->nvars());
  std::vector<wf::TraceEntry> trace;
  bool columns_match = true;
  double top_seconds = 0;
  std::size_t top_rows = 0, top_cols = 0;
  for (unsigned d = 2; d <= 5; ++d) {
    const wf::MacaulayMatrix M = wf::build_macaulay(W, d);
    wf::RrefOptions opts;
    opts.reduce = true;
    const auto t0 = Clock::now();
    const wf::EliminationResult res = wf::rref(M, opts);
    const double sec = seconds_since(t0);
    trace.push_back({d, M.nrows(), M.ncols(), res.rank(), sec * 1000, false});
    columns_match = columns_match && M.ncols() == binomial(vars + d, d);
    top_seconds = sec;
    top_rows = M.nrows();
    top_cols = M.ncols();
  }
  std::cout << wf::trace_csv(trace, false);
  char buf[160];
  std::snprintf(buf, sizeof buf, "GF(2) %zux%zu in %.3f s, %u variables, columns %s the binomial count", top_rows,
                top_cols, top_seconds, vars, columns_match ? "match" : "do not match");
  return {columns_match && top_rows >= 2000 && top_cols >= 3000 && top_seconds <= 10.0, buf};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"published example reproduced", worked_example},
      {"Weil restriction invariants battery", tensor_battery},
      {"homogeneous solving degree and degree of regularity", homogeneous_solving_bounds},
      {"t-regularity agrees on both sides", t_regularity_equivalence},
      {"homogenization commutes with restriction", homogenization_identities},
      {"bounds with field equations over GF(4)", field_equation_bounds},
      {"complete intersection bound", complete_intersection_bound},
      {"field equation addition and top parts", top_part_relations},
      {"solution bijection", solution_bijection},
      {"internal consistency", consistency},
      {"large GF(2) elimination", large_gf2_elimination},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " (" << o.detail
              << ")" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
