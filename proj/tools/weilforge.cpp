#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "weilforge/error.hpp"
#include "weilforge/groebner.hpp"
#include "weilforge/hilbert.hpp"
#include "weilforge/instances.hpp"
#include "weilforge/invariants.hpp"
#include "weilforge/linalg.hpp"
#include "weilforge/macaulay.hpp"
#include "weilforge/parse.hpp"
#include "weilforge/solutions.hpp"
#include "weilforge/system_file.hpp"
#include "weilforge/verify.hpp"
#include "weilforge/weil.hpp"

namespace wf = weilforge;
using json = nlohmann::ordered_json;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  unsigned cap_degree = 30;
  unsigned threads = 1;
  std::string format = "text";
  std::string field;
  bool extension = false;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Swaps the field line of a system file for `spec`.
std::string override_field(const std::string& text, const std::string& spec) {
  std::istringstream in(text);
  std::ostringstream out;
  bool done = false;
  for (std::string line; std::getline(in, line);) {
    const auto first = line.find_first_not_of(" \t");
    if (!done && first != std::string::npos && line.compare(first, 5, "field") == 0) {
      out << "field " << spec << '\n';
      done = true;
    } else {
      out << line << '\n';
    }
  }
  return out.str();
}

wf::SystemFile load(const std::string& path, const Globals& g) {
  std::string text = read_input(path);
  if (!g.field.empty()) text = override_field(text, g.field);
  return wf::parse_system_file(text);
}

// The system a subcommand should act on: Weil(F) when restriction was requested.
struct Loaded {
  wf::SystemFile file;
  wf::PolySystem system;
  std::optional<wf::WeilContext> ctx;
};

Loaded load_for_analysis(const std::string& path, const Globals& g) {
  Loaded l{load(path, g), {}, std::nullopt};
  l.system = l.file.system();
  if (g.extension || l.file.restrict) {
    l.ctx = wf::make_weil_context(l.file.ring);
    l.system = wf::weil_restrict_system(*l.ctx, l.system);
  }
  return l;
}

wf::RingPtr system_ring(const Loaded& l) { return l.ctx ? l.ctx->target : l.file.ring; }

json system_json(const wf::RingPtr& ring, const wf::PolySystem& F) {
  json j;
  j["field"] = ring->field()->spec_string();
  j["vars"] = ring->names();
  json polys = json::array();
  for (const auto& f : F) polys.push_back(f.render());
  j["polynomials"] = std::move(polys);
  return j;
}

void emit_system(const wf::RingPtr& ring, const wf::PolySystem& F, const std::string& format) {
  if (format == "json") {
    std::cout << system_json(ring, F).dump(2) << '\n';
  } else if (format == "csv") {
    std::cout << "index,polynomial\n";
    for (std::size_t i = 0; i < F.size(); ++i) std::cout << i + 1 << ',' << F[i].render() << '\n';
  } else {
    wf::SystemFile out;
    out.ring = ring;
    out.polynomials = F;
    std::cout << wf::render_system_file(out);
  }
}

void emit_pairs(const std::vector<std::pair<std::string, std::string>>& kv, const std::string& format) {
  if (format == "json") {
    json j;
    for (const auto& [k, v] : kv) j[k] = v;
    std::cout << j.dump(2) << '\n';
  } else if (format == "csv") {
    std::cout << "key,value\n";
    for (const auto& [k, v] : kv) std::cout << k << ",\"" << v << "\"\n";
  } else {
    std::size_t width = 0;
    for (const auto& kv_pair : kv) width = std::max(width, kv_pair.first.size());
    for (const auto& [k, v] : kv) std::cout << k << std::string(width - k.size() + 2, ' ') << v << '\n';
  }
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// --- subcommands -------------------------------------------------------------

int cmd_restrict(const std::string& path, const std::string& homogenize, const Globals& g) {
  const wf::SystemFile file = load(path, g);
  const wf::PolySystem F = file.system();
  if (homogenize == "before") {
    const wf::WeilContext ctx_t = wf::make_weil_context(file.ring->with_homogenizing("t"));
    emit_system(ctx_t.target, wf::weil_restrict_system(ctx_t, wf::homogenize(F, ctx_t.source)), g.format);
    return 0;
  }
  const wf::WeilContext ctx = wf::make_weil_context(file.ring);
  if (homogenize == "after") {
    const wf::RingPtr target_t = wf::weil_homogenized_ring(ctx);
    emit_system(target_t, wf::weil_then_homogenize(ctx, F, target_t), g.format);
  } else {
    emit_system(ctx.target, wf::weil_restrict_system(ctx, F), g.format);
  }
  return 0;
}

int cmd_invariants(const std::string& path, bool betti, const Globals& g) {
  const Loaded l = load_for_analysis(path, g);
  wf::GbOptions gb_opts;
  gb_opts.degree_cap = g.cap_degree;
  const wf::GroebnerBasis G = wf::buchberger_reduced_gb(system_ring(l), l.system, gb_opts);

  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("ring", system_ring(l)->field()->spec_string() + " in " + std::to_string(system_ring(l)->nvars()) +
                              " variables");
  kv.emplace_back("generators", std::to_string(l.system.size()));
  kv.emplace_back("groebner_basis_size", std::to_string(G.elements.size()));
  kv.emplace_back("max_gb_degree", std::to_string(G.max_degree()));
  const bool homogeneous = wf::is_homogeneous(l.system);
  // Inhomogeneous input: the initial ideal carries the affine Hilbert function.
  const wf::HilbertSeries hs = homogeneous ? wf::hilbert_series(G) : wf::hilbert_series(wf::initial_ideal(G));
  kv.emplace_back(homogeneous ? "hilbert_series" : "affine_hilbert_series", hs.render());
  kv.emplace_back("dimension", std::to_string(hs.dimension));
  kv.emplace_back("multiplicity", std::to_string(hs.multiplicity()));
  try {
    kv.emplace_back("degree_of_regularity", std::to_string(wf::degree_of_regularity(l.system, gb_opts)));
  } catch (const wf::Error& e) {
    if (e.kind() != wf::ErrorKind::NotZeroDimensionalTop) throw;
    kv.emplace_back("degree_of_regularity", "none");
  }
  if (homogeneous && !G.is_unit_ideal()) {
    const wf::GenericCoordsReport gc = wf::is_generic_coordinates(G, gb_opts);
    kv.emplace_back("generic_coordinates", yes_no(gc.generic) + " (over " + gc.field + ")");
  }
  if (betti && homogeneous && !G.is_unit_ideal()) {
    wf::BettiOptions bo;
    bo.groebner = gb_opts;
    const wf::BettiTable B = wf::betti_table(G, bo);
    const wf::HomologicalInvariants inv = wf::derive_homological_invariants(B, G);
    kv.emplace_back("regularity", std::to_string(inv.reg_ideal));
    kv.emplace_back("projective_dimension", std::to_string(inv.projective_dimension));
    kv.emplace_back("height", std::to_string(inv.height));
    kv.emplace_back("minimal_generators", std::to_string(inv.minimal_generators));
    kv.emplace_back("cohen_macaulay", yes_no(inv.cohen_macaulay));
    kv.emplace_back("complete_intersection", yes_no(inv.complete_intersection));
    kv.emplace_back("betti_table", g.format == "text" ? "\n" + B.render() : B.to_json());
  }
  emit_pairs(kv, g.format);
  return 0;
}

int cmd_solvedeg(const std::string& path, bool timings, const Globals& g) {
  const Loaded l = load_for_analysis(path, g);
  wf::SolvingDegreeOptions opts;
  opts.max_degree = g.cap_degree;
  opts.groebner.degree_cap = g.cap_degree;
  opts.elimination.threads = g.threads;
  opts.elimination.reduce = false;
  opts.homogeneous_blocks = wf::is_homogeneous(l.system);

  std::optional<unsigned> degree;
  std::vector<wf::TraceEntry> trace;
  try {
    wf::SolvingDegreeResult res = wf::solving_degree(l.system, opts);
    degree = res.degree;
    trace = std::move(res.trace);
  } catch (const wf::SolvingDegreeCapExceeded& e) {
    trace = e.trace();
  }

  if (g.format == "csv") {
    std::cout << wf::trace_csv(trace, timings);
  } else if (g.format == "json") {
    json j;
    j["solving_degree"] = degree ? json(*degree) : json(nullptr);
    json rows = json::array();
    for (const auto& t : trace) {
      json row;
      row["d"] = t.d;
      row["rows"] = t.rows;
      row["cols"] = t.cols;
      row["rank"] = t.rank;
      row["is_gb"] = t.is_gb;
      if (timings) row["elapsed_ms"] = t.elapsed_ms;
      rows.push_back(std::move(row));
    }
    j["trace"] = std::move(rows);
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "solving degree: "
              << (degree ? std::to_string(*degree) : "not reached by degree " + std::to_string(g.cap_degree)) << '\n';
    std::cout << wf::trace_csv(trace, timings);
  }
  return degree ? 0 : 3;
}

std::string render_point(const wf::Field& K, const wf::Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + K.render(p[i]);
  return s + ")";
}

int cmd_solve(const std::string& path, bool projective, std::uint64_t budget, const Globals& g) {
  const wf::SystemFile file = load(path, g);
  const wf::PolySystem F = file.system();
  const wf::Field& K = *file.ring->field();

  if (g.extension || file.restrict) {
    const wf::WeilContext ctx = wf::make_weil_context(file.ring);
    const wf::BijectionReport rep = wf::bijection_check(ctx, F, budget);
    std::vector<std::pair<std::string, std::string>> kv{
        {"source_solutions", std::to_string(rep.source_count)},
        {"restricted_solutions", std::to_string(rep.target_count)},
        {"bijective", yes_no(rep.bijective)},
    };
    if (rep.witness) kv.emplace_back("witness", render_point(K, *rep.witness));
    emit_pairs(kv, g.format);
    return rep.bijective ? 0 : 1;
  }

  const std::vector<wf::Point> pts = projective ? wf::enumerate_projective_solutions(file.ring, F, budget)
                                                : wf::enumerate_affine_solutions(file.ring, F, budget);
  if (g.format == "json") {
    json j;
    j["count"] = pts.size();
    json arr = json::array();
    for (const auto& p : pts) {
      json point = json::array();
      for (const auto c : p) point.push_back(K.render(c));
      arr.push_back(std::move(point));
    }
    j["solutions"] = std::move(arr);
    std::cout << j.dump(2) << '\n';
  } else if (g.format == "csv") {
    for (std::size_t i = 0; i < file.ring->nvars(); ++i) std::cout << (i ? "," : "") << file.ring->name(i);
    std::cout << '\n';
    for (const auto& p : pts) {
      for (std::size_t i = 0; i < p.size(); ++i) std::cout << (i ? "," : "") << K.render(p[i]);
      std::cout << '\n';
    }
  } else {
    for (const auto& p : pts) std::cout << render_point(K, p) << '\n';
    std::cout << pts.size() << (projective ? " projective" : "") << " solution" << (pts.size() == 1 ? "" : "s")
              << '\n';
  }
  return 0;
}

struct GridArgs {
  std::uint32_t q = 2;
  unsigned n = 2;
  unsigned m = 2;
  unsigned r = 2;
  unsigned min_degree = 1;
  unsigned max_degree = 2;
  bool homogeneous = false;
  bool field_equations = false;
  double density = 0.5;
  unsigned count = 1;
};

wf::InstanceSpec spec_from(const GridArgs& a, std::uint64_t seed) {
  wf::InstanceSpec s;
  s.seed = seed;
  s.q = a.q;
  s.n = a.n;
  s.m = a.m;
  s.r = a.r;
  s.min_degree = a.min_degree;
  s.max_degree = a.max_degree;
  s.homogeneous = a.homogeneous;
  s.field_equations = a.field_equations;
  s.density = a.density;
  return s;
}

void add_grid_options(CLI::App* sub, GridArgs& a) {
  sub->add_option("-q", a.q, "Base field size (prime)")->capture_default_str();
  sub->add_option("-n", a.n, "Extension degree")->capture_default_str();
  sub->add_option("-m", a.m, "Number of variables")->capture_default_str();
  sub->add_option("-r", a.r, "Number of generators")->capture_default_str();
  sub->add_option("--min-degree", a.min_degree)->capture_default_str();
  sub->add_option("--max-degree", a.max_degree)->capture_default_str();
  sub->add_flag("--homogeneous", a.homogeneous);
  sub->add_flag("--field-equations", a.field_equations);
  sub->add_option("--density", a.density)->capture_default_str();
}

int cmd_gen(const GridArgs& a, const Globals& g) {
  const wf::InstanceSpec spec = spec_from(a, g.seed);
  wf::SystemFile file;
  file.ring = wf::instance_ring(spec);
  file.polynomials = wf::random_system_gen(spec);
  if (g.format == "text") {
    std::cout << "# " << spec.descriptor() << '\n' << wf::render_system_file(file);
  } else {
    emit_system(file.ring, file.polynomials, g.format);
  }
  return 0;
}

int cmd_verify(const std::vector<std::string>& files, const std::vector<std::string>& checks, const GridArgs& a,
               bool list, bool timings, const Globals& g) {
  if (list) {
    for (const auto& c : wf::check_catalog()) {
      std::cout << c.id << "  " << (c.kind == wf::CheckKind::Statement ? "statement" : "consistency") << "  "
                << c.statement;
      if (!c.hypothesis.empty()) std::cout << "  [if " << c.hypothesis << "]";
      std::cout << '\n';
    }
    return 0;
  }
  std::vector<wf::SuiteInstance> instances;
  for (const auto& path : files) {
    instances.push_back({path, load(path, g).system()});
  }
  if (files.empty()) {
    for (unsigned i = 0; i < a.count; ++i) instances.push_back(wf::instance_from_spec(spec_from(a, g.seed + i)));
  }
  wf::SuiteOptions opts;
  opts.targets = checks;
  opts.threads = g.threads;
  opts.groebner.degree_cap = g.cap_degree;
  opts.solving_degree_cap = g.cap_degree;
  opts.betti.groebner.degree_cap = g.cap_degree;
  const wf::VerificationReport report = wf::run_verification_suite(instances, opts);

  if (g.format == "json") {
    std::cout << report.to_json(timings);
  } else if (g.format == "csv") {
    std::cout << "check_id,instance,hypothesis,left,right,verdict,note" << (timings ? ",elapsed_ms" : "") << '\n';
    auto quote = [](const std::string& s) {
      std::string out = "\"";
      for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
      return out + "\"";
    };
    for (const auto& r : report.records) {
      std::cout << r.check_id << ',' << quote(r.instance) << ',' << wf::to_string(r.hypothesis) << ',' << quote(r.left)
                << ',' << quote(r.right) << ',' << wf::to_string(r.verdict) << ',' << quote(r.note);
      if (timings) std::cout << ',' << r.elapsed_ms;
      std::cout << '\n';
    }
  } else {
    std::cout << report.to_text(timings);
  }
  return report.has_failures() ? 1 : 0;
}

std::uint64_t binomial(unsigned n, unsigned k) {
  std::uint64_t b = 1;
  for (unsigned i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

int cmd_bench(const GridArgs& a, unsigned degree, unsigned repeat, const Globals& g) {
  wf::InstanceSpec spec = spec_from(a, g.seed);
  const wf::PolySystem F = wf::random_system_gen(spec);
  const wf::WeilContext ctx = wf::make_weil_context(F.front().ring());
  const wf::PolySystem W = wf::weil_restrict_system(ctx, F);
  const std::size_t vars = ctx.target->nvars();

  std::vector<json> runs;
  for (unsigned d = wf::max_degree(W); d <= degree; ++d) {
    const wf::MacaulayMatrix M = wf::build_macaulay(W, d);
    wf::RrefOptions opts;
    opts.threads = g.threads;
    double best = -1;
    std::size_t rank = 0;
    bool dense = false;
    for (unsigned rep = 0; rep < std::max(1u, repeat); ++rep) {
      const wf::EliminationResult res = wf::rref(M, opts);
      if (best < 0 || res.elapsed_ms < best) best = res.elapsed_ms;
      rank = res.rank();
      dense = res.went_dense;
    }
    json row;
    row["d"] = d;
    row["rows"] = M.nrows();
    row["cols"] = M.ncols();
    row["expected_cols"] = binomial(static_cast<unsigned>(vars) + d, d);
    row["rank"] = rank;
    row["dense"] = dense;
    row["elapsed_ms"] = best;
    runs.push_back(std::move(row));
  }

  if (g.format == "json") {
    json j;
    j["instance"] = spec.descriptor();
    j["restricted_vars"] = vars;
    j["trace"] = runs;
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  if (g.format == "text") std::cout << spec.descriptor() << ", " << vars << " restricted variables\n";
  std::cout << "d,rows,cols,expected_cols,rank,dense,elapsed_ms\n";
  for (const auto& r : runs) {
    std::cout << r["d"] << ',' << r["rows"] << ',' << r["cols"] << ',' << r["expected_cols"] << ',' << r["rank"] << ','
              << (r["dense"].get<bool>() ? 1 : 0) << ',' << r["elapsed_ms"].get<double>() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weil restriction, solving degrees and homological invariants over finite fields"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Seed for generated instances")->capture_default_str();
  app.add_option("--cap-degree", g.cap_degree, "Degree cap for Groebner bases and Macaulay matrices")
      ->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads")->capture_default_str();
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--field", g.field, "Override the field line of input files, e.g. 'GF(2)[a]/(a^3+a+1)'");
  app.add_flag("--extension", g.extension, "Treat inputs as systems over an extension and restrict them first");

  std::string input = "-";
  std::string homogenize = "none";
  auto* restrict_cmd = app.add_subcommand("restrict", "Print the Weil restriction of a system");
  restrict_cmd->add_option("file", input, "System file, or - for stdin");
  restrict_cmd->add_option("--homogenize", homogenize, "none, before (Weil of F^h) or after (homogenized Weil of F)")
      ->check(CLI::IsMember({"none", "before", "after"}))
      ->capture_default_str();

  bool betti = true;
  auto* inv_cmd = app.add_subcommand("invariants", "Groebner basis, Hilbert series and Betti-derived invariants");
  inv_cmd->add_option("file", input);
  inv_cmd->add_flag("!--no-betti", betti, "Skip the Betti table");

  bool no_timings = false;
  auto* sd_cmd = app.add_subcommand("solvedeg", "Solving degree with the Macaulay degree trace");
  sd_cmd->add_option("file", input);
  sd_cmd->add_flag("--no-timings", no_timings);

  bool projective = false;
  std::uint64_t budget = wf::kDefaultSolutionBudget;
  auto* solve_cmd = app.add_subcommand("solve", "Enumerate solutions exhaustively");
  solve_cmd->add_option("file", input);
  solve_cmd->add_flag("--projective", projective, "Count projective points of a homogeneous system");
  solve_cmd->add_option("--budget", budget, "Largest number of points to visit")->capture_default_str();

  GridArgs grid;
  std::vector<std::string> files;
  std::vector<std::string> checks;
  bool list = false;
  auto* verify_cmd = app.add_subcommand("verify", "Run the verification suite on files or generated instances");
  verify_cmd->add_option("files", files, "System files; without them instances are generated");
  verify_cmd->add_option("--check", checks, "Check id to run (repeatable)");
  verify_cmd->add_option("--count", grid.count, "Generated instances")->capture_default_str();
  verify_cmd->add_flag("--list", list, "List check ids");
  verify_cmd->add_flag("--no-timings", no_timings);
  add_grid_options(verify_cmd, grid);

  unsigned bench_degree = 4;
  unsigned repeat = 1;
  auto* bench_cmd = app.add_subcommand("bench", "Time Macaulay matrix elimination on a restricted random system");
  bench_cmd->add_option("--degree", bench_degree, "Largest Macaulay degree")->capture_default_str();
  bench_cmd->add_option("--repeat", repeat, "Runs per degree; the fastest is reported")->capture_default_str();
  add_grid_options(bench_cmd, grid);

  auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded random system");
  add_grid_options(gen_cmd, grid);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*restrict_cmd) return cmd_restrict(input, homogenize, g);
    if (*inv_cmd) return cmd_invariants(input, betti, g);
    if (*sd_cmd) return cmd_solvedeg(input, !no_timings, g);
    if (*solve_cmd) return cmd_solve(input, projective, budget, g);
    if (*verify_cmd) return cmd_verify(files, checks, grid, list, !no_timings, g);
    if (*bench_cmd) return cmd_bench(grid, bench_degree, repeat, g);
    if (*gen_cmd) return cmd_gen(grid, g);
  } catch (const std::exception& e) {
    std::cerr << "weilforge: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
