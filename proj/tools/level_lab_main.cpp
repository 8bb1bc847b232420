#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "lvl/json_io.hpp"

using lvl::io::json;

namespace {

struct Global {
  std::string format = "text";
  std::string field;
  std::string bounds;
  bool oracle = false;
  int exit_code = 0;
};

lvl::BoundSpec parse_bounds_flag(const std::string& s) {
  auto comma = s.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument("no comma");
    int n = std::stoi(s.substr(0, comma));
    int d = std::stoi(s.substr(comma + 1));
    if (n < 0 || d < 0) throw std::invalid_argument("negative");
    return {n, d};
  } catch (const std::exception&) {
    throw lvl::SchemaError("--bounds expects two non-negative integers N,D");
  }
}

struct Loaded {
  lvl::FieldSpec field = lvl::FieldSpec::Q();
  lvl::BoundSpec bounds{6, 14};
  json payload;
  std::optional<lvl::LevelResult> expected;
};

/* Resolve the field, bounds, and payload from either a full problem file or
   a bare payload file; explicit flags override file contents. */
Loaded load_input(const Global& g, const std::string& problem_path,
                  const std::string& payload_path, const char* kind, lvl::BoundSpec dflt) {
  Loaded L;
  L.bounds = dflt;
  if (!problem_path.empty() && !payload_path.empty())
    throw lvl::SchemaError(std::string(kind) + ": give either --problem or the payload flag");
  if (!problem_path.empty()) {
    lvl::io::ProblemFile pf = lvl::io::problem_file_from_json(lvl::io::parse_file(problem_path));
    if (pf.problem != kind)
      throw lvl::SchemaError("problem file declares '" + pf.problem +
                             "' but the command expects '" + kind + "'");
    L.field = pf.field;
    if (pf.bounds_given) L.bounds = pf.bounds;
    L.payload = pf.payload;
    L.expected = pf.expected;
  } else if (!payload_path.empty()) {
    L.payload = lvl::io::parse_file(payload_path);
  } else {
    throw lvl::SchemaError(std::string(kind) + ": provide --problem or the payload flag");
  }
  if (!g.field.empty()) L.field = lvl::FieldSpec::parse(g.field);
  if (!g.bounds.empty()) L.bounds = parse_bounds_flag(g.bounds);
  return L;
}

json report_head(const char* kind, const Loaded& L) {
  json r;
  r["version"] = 1;
  r["tool"] = "level-lab";
  r["problem"] = kind;
  r["field"] = L.field.name();
  r["bounds"] = lvl::io::bounds_to_json(L.bounds);
  r["input"] = L.payload;
  return r;
}

void print_head(std::ostream& os, const std::string& kind, const lvl::FieldSpec& f,
                lvl::BoundSpec b) {
  os << "problem: " << kind << "\n";
  os << "field:   " << f.name() << "\n";
  os << "bounds:  n_max=" << b.n_max << " d_max=" << b.d_max << "\n";
}

void print_provenance(std::ostream& os, const lvl::LevelResult& r) {
  for (const auto& p : r.provenance) {
    os << "  [" << p.endpoint << " " << p.tag << "]";
    if (p.caveats.empty()) {
      os << "\n";
      continue;
    }
    bool first = true;
    for (const auto& c : p.caveats) {
      os << (first ? " " : "; ") << c;
      first = false;
    }
    os << "\n";
  }
}

void print_tor_table(std::ostream& os, const lvl::TorTable& t) {
  os << "Tor table (" << (t.terminated ? "complete within bounds" : "clipped by bounds")
     << "):\n";
  for (const auto& [ij, d] : t.entries)
    os << "  i=" << ij.first << " j=" << ij.second << "  dim " << d << "\n";
  if (t.entries.empty()) os << "  (zero)\n";
}

std::shared_ptr<const lvl::GradedModule> module_payload(const json& payload,
                                                        const lvl::FieldSpec& f,
                                                        lvl::AlgebraPtr* alg_out = nullptr) {
  lvl::io::check_keys(payload, {"algebra", "module"}, "payload");
  if (!payload.contains("algebra") || !payload.contains("module"))
    throw lvl::SchemaError("payload: needs 'algebra' and 'module'");
  lvl::AlgebraPtr A = lvl::io::algebra_from_json(payload["algebra"], f);
  if (alg_out) *alg_out = A;
  return std::make_shared<const lvl::GradedModule>(lvl::io::module_from_json(payload["module"], A));
}

bool koszul_applicable(const lvl::GradedAlgebra& a) {
  return a.is_polynomial() && a.generators_even();
}

/* Entrywise comparison of two Tor tables inside a shared window. */
void compare_tables(const lvl::TorTable& a, const char* aname, const lvl::TorTable& b,
                    const char* bname, int n_max, int d_max) {
  for (int i = 0; i <= n_max; ++i)
    for (int j = 0; j <= d_max; ++j)
      if (a.dim(i, j) != b.dim(i, j))
        throw lvl::CrossCheckError(std::string("oracle: ") + aname + " and " + bname +
                                   " disagree at (i=" + std::to_string(i) +
                                   ", j=" + std::to_string(j) + "): " +
                                   std::to_string(a.dim(i, j)) + " vs " +
                                   std::to_string(b.dim(i, j)));
}

void output(const Global& g, const json& report, const std::function<void(std::ostream&)>& text) {
  if (g.format == "json")
    std::cout << report.dump(2) << "\n";
  else
    text(std::cout);
}

lvl::SimplicialComplex complex_payload(const json& payload) {
  return lvl::io::complex_from_json(payload);
}

std::shared_ptr<const lvl::GradedModule> stanley_reisner_module(const lvl::SimplicialComplex& K,
                                                                const lvl::FieldSpec& f) {
  std::vector<lvl::Generator> gens;
  for (int v = 0; v < K.n_vertices(); ++v) gens.push_back({"t" + std::to_string(v + 1), 2});
  auto S = std::make_shared<lvl::GradedAlgebra>(f, std::move(gens), std::vector<lvl::Exponents>{});
  std::vector<lvl::ModElement> rels;
  for (const auto& nf : K.minimal_non_faces()) {
    lvl::Exponents e(K.n_vertices(), 0);
    for (int v : nf) e[v] = 1;
    rels.push_back({{e, 0, f.one()}});
  }
  return std::make_shared<const lvl::GradedModule>(
      lvl::GradedModule(S, {{"m", 0}}, std::move(rels)));
}

/* ---------------- command bodies ---------------- */

void cmd_tor(Global& g, const std::string& problem_path, const std::string& payload_path,
             const std::string& path_choice) {
  Loaded L = load_input(g, problem_path, payload_path, "tor", {6, 14});
  lvl::AlgebraPtr A;
  auto M = module_payload(L.payload, L.field, &A);
  bool kz_ok = koszul_applicable(*A);
  std::string path = path_choice;
  if (path == "auto") path = kz_ok ? "koszul" : "resolution";
  if (path == "koszul" && !kz_ok)
    throw lvl::SchemaError("tor: the Koszul path requires a polynomial base with even "
                           "generators; use --path resolution");

  lvl::TorTable table;
  if (path == "koszul") {
    table = lvl::koszul_tor(M, L.bounds.d_max);
  } else {
    lvl::PresentedView view(M);
    table = lvl::tor_table(view, L.bounds);
  }

  json report = report_head("tor", L);
  report["path"] = path;
  report["result"] = lvl::io::tor_table_to_json(table);
  std::string oracle_note;
  if (g.oracle) {
    if (kz_ok) {
      lvl::TorTable kz = lvl::koszul_tor(M, L.bounds.d_max);
      lvl::PresentedView view(M);
      lvl::TorTable rs = lvl::tor_table(view, L.bounds);
      int iw = rs.terminated ? std::max(L.bounds.n_max, kz.bounds.n_max) : L.bounds.n_max;
      compare_tables(kz, "koszul", rs, "resolution", iw, L.bounds.d_max);
      oracle_note = "koszul and resolution paths agree entrywise within the window";
    } else {
      oracle_note = "single path only: the base is not an even polynomial algebra";
    }
    report["oracle"] = oracle_note;
  }
  output(g, report, [&](std::ostream& os) {
    print_head(os, "tor", L.field, L.bounds);
    os << "path:    " << path << "\n";
    print_tor_table(os, table);
    if (!oracle_note.empty()) os << "oracle:  " << oracle_note << "\n";
  });
}

void cmd_resolve(Global& g, const std::string& problem_path, const std::string& payload_path) {
  Loaded L = load_input(g, problem_path, payload_path, "resolve", {6, 14});
  auto M = module_payload(L.payload, L.field);
  lvl::PresentedView view(M);
  lvl::Resolution r = lvl::minimal_free_resolution(view, L.bounds);
  json report = report_head("resolve", L);
  report["result"] = lvl::io::resolution_to_json(r);
  output(g, report, [&](std::ostream& os) {
    print_head(os, "resolve", L.field, L.bounds);
    for (int s = 0; s <= r.last_step(); ++s) {
      os << "  step " << s << ": rank " << r.rank_at(s);
      if (r.rank_at(s) > 0) {
        os << "  degrees [";
        const auto& degs = r.step(s).gen_degrees;
        for (size_t k = 0; k < degs.size(); ++k) os << (k ? ", " : "") << degs[k];
        os << "]";
      }
      os << "\n";
    }
    os << "pd:      " << lvl::projective_dimension(r).str() << "\n";
    os << "grade:   " << lvl::grade(r).str() << "\n";
  });
}

void cmd_hochster(Global& g, const std::string& problem_path, const std::string& payload_path) {
  Loaded L = load_input(g, problem_path, payload_path, "hochster", {0, 0});
  lvl::SimplicialComplex K = complex_payload(L.payload);
  lvl::TorTable table = lvl::hochster_tor(K, L.field);
  json report = report_head("hochster", L);
  report["bounds"] = lvl::io::bounds_to_json(table.bounds); /* derived from the complex */
  report["result"] = lvl::io::tor_table_to_json(table);
  std::string oracle_note;
  if (g.oracle) {
    auto M = stanley_reisner_module(K, L.field);
    lvl::TorTable kz = lvl::koszul_tor(M, 2 * K.n_vertices());
    compare_tables(table, "hochster", kz, "koszul", K.n_vertices(), 2 * K.n_vertices());
    oracle_note = "hochster and koszul paths agree entrywise";
    report["oracle"] = oracle_note;
  }
  output(g, report, [&](std::ostream& os) {
    print_head(os, "hochster", L.field, table.bounds);
    print_tor_table(os, table);
    if (!oracle_note.empty()) os << "oracle:  " << oracle_note << "\n";
  });
}

void cmd_dj_level(Global& g, const std::string& problem_path, const std::string& payload_path) {
  Loaded L = load_input(g, problem_path, payload_path, "dj-level", {0, 0});
  lvl::SimplicialComplex K = complex_payload(L.payload);
  int level = lvl::dj_level(K, L.field);
  json report = report_head("dj-level", L);
  report["result"] = json{{"level", level}};
  std::string oracle_note;
  if (g.oracle) {
    auto M = stanley_reisner_module(K, L.field);
    lvl::PresentedView view(M);
    lvl::TorTable rs = lvl::tor_table(view, {K.n_vertices() + 1, 2 * K.n_vertices()});
    if (!rs.terminated)
      throw lvl::CrossCheckError("oracle: the resolution route did not terminate");
    if (rs.top_index() + 1 != level)
      throw lvl::CrossCheckError("oracle: resolution route gives level " +
                                 std::to_string(rs.top_index() + 1) + ", hochster route " +
                                 std::to_string(level));
    oracle_note = "hochster and resolution paths agree";
    report["oracle"] = oracle_note;
  }
  output(g, report, [&](std::ostream& os) {
    print_head(os, "dj-level", L.field, L.bounds);
    os << "level = " << level << "\n";
    if (!oracle_note.empty()) os << "oracle:  " << oracle_note << "\n";
  });
}

void level_report(Global& g, const char* kind, const Loaded& L, const lvl::LevelResult& r) {
  json report = report_head(kind, L);
  report["result"] = lvl::io::level_result_to_json(r);
  bool matched = true;
  if (L.expected) {
    matched = r.same_endpoints(*L.expected);
    report["expected"] = lvl::io::expected_to_json(*L.expected);
    report["matches_expected"] = matched;
  }
  output(g, report, [&](std::ostream& os) {
    print_head(os, kind, L.field, L.bounds);
    os << "result:  " << r.str();
    if (L.expected) os << (matched ? ", matches expected" : ", MISMATCH with expected");
    os << "\n";
    print_provenance(os, r);
  });
  if (L.expected && !matched) g.exit_code = 4;
}

void cmd_level_graded(Global& g, const std::string& problem_path,
                      const std::string& payload_path) {
  Loaded L = load_input(g, problem_path, payload_path, "level-graded", {6, 14});
  lvl::AlgebraPtr A;
  auto M = module_payload(L.payload, L.field, &A);
  level_report(g, "level-graded", L, lvl::level_graded_module(A, *M, L.bounds));
}

void cmd_level_pullback(Global& g, const std::string& problem_path,
                        const std::string& payload_path) {
  Loaded L = load_input(g, problem_path, payload_path, "level-pullback", {6, 14});
  lvl::PullbackProblem p = lvl::io::pullback_from_json(L.payload, L.field);
  level_report(g, "level-pullback", L, lvl::pullback_level_bound(p, L.bounds));
}

void cmd_level_fibre(Global& g, const std::string& problem_path,
                     const std::string& payload_path) {
  Loaded L = load_input(g, problem_path, payload_path, "level-fibre", {6, 14});
  lvl::PullbackProblem p = lvl::io::pullback_from_json(L.payload, L.field);
  level_report(g, "level-fibre", L, lvl::fibre_level(p, L.bounds));
}

void cmd_level_chain(Global& g, const std::string& problem_path,
                     const std::string& payload_path) {
  Loaded L = load_input(g, problem_path, payload_path, "level-chain", {8, 16});
  lvl::ChainProblem p = lvl::io::chain_from_json(L.payload, L.field);
  level_report(g, "level-chain", L, lvl::chain_level_sandwich(p, L.bounds));
}

void cmd_level_one_test(Global& g, const std::string& problem_path,
                        const std::string& payload_path) {
  Loaded L = load_input(g, problem_path, payload_path, "level-one-test", {6, 14});
  lvl::AlgebraPtr A;
  auto M = module_payload(L.payload, L.field, &A);
  lvl::ObstructionReport r = lvl::level_one_obstruction(A, *M, L.bounds);
  json report = report_head("level-one-test", L);
  report["result"] = lvl::io::obstruction_to_json(r);
  output(g, report, [&](std::ostream& os) {
    print_head(os, "level-one-test", L.field, L.bounds);
    if (r.obstructed)
      os << "obstructed: nonzero Tor at homological index " << r.witness << "\n";
    else
      os << "consistent with level one within bounds\n";
    for (const auto& c : r.caveats) os << "  note: " << c << "\n";
  });
}

void cmd_filtration_check(Global& g, const std::string& problem_path,
                          const std::string& payload_path) {
  Loaded L = load_input(g, problem_path, payload_path, "filtration-check", {6, 14});
  lvl::PullbackProblem p = lvl::io::pullback_from_json(L.payload, L.field);
  lvl::NormalizedPullback np = lvl::normalize_pullback(p);
  auto dt = lvl::make_derived_tensor(np.problem, L.bounds.d_max);
  lvl::FiltrationCertificate cert = lvl::koszul_filtration(dt, np.gamma);
  lvl::FiltrationCheck chk = lvl::check_semifree_filtration(cert, L.bounds.d_max);
  if (!chk.ok)
    throw lvl::HypothesisError("filtration certificate failed verification: " + chk.witness);
  json report = report_head("filtration-check", L);
  report["result"] = lvl::io::filtration_check_to_json(chk);
  output(g, report, [&](std::ostream& os) {
    print_head(os, "filtration-check", L.field, L.bounds);
    os << "ok: class " << chk.verified_class << "\n";
    for (const auto& s : chk.subquotients) {
      os << "  step " << s.step << ": rank " << s.rank << " shifts [";
      for (size_t k = 0; k < s.shift_degrees.size(); ++k)
        os << (k ? ", " : "") << s.shift_degrees[k];
      os << "]\n";
    }
    for (const auto& c : chk.caveats) os << "  note: " << c << "\n";
  });
}

void cmd_torus_check(Global& g, const std::string& problem_path,
                     const std::string& payload_path) {
  Loaded L = load_input(g, problem_path, payload_path, "torus-check", {6, 12});
  lvl::TorusCheckProblem t = lvl::io::torus_from_json(L.payload, L.field);
  lvl::TorusReductionReport rep =
      lvl::torus_reduction_check(t.full, t.torus, t.witnesses, L.bounds);
  json report = report_head("torus-check", L);
  report["result"] = lvl::io::torus_report_to_json(rep);
  output(g, report, [&](std::ostream& os) {
    print_head(os, "torus-check", L.field, L.bounds);
    if (rep.equal)
      os << "equal: " << rep.full.str() << " on both sides\n";
    else
      os << "MISMATCH: " << rep.mismatch << "\n";
    for (const auto& c : rep.caveats) os << "  note: " << c << "\n";
  });
  if (!rep.equal) g.exit_code = 4;
}

lvl::ScenarioParams scenario_params(const Global& g, int n, int p, int k, int l, int m) {
  lvl::ScenarioParams prm;
  prm.n = n, prm.p = p, prm.k = k, prm.l = l, prm.m = m;
  if (!g.field.empty()) prm.field = lvl::FieldSpec::parse(g.field);
  return prm;
}

void cmd_catalog_list(const Global& g) {
  auto rows = lvl::catalog_list();
  if (g.format == "json") {
    json out = json::array();
    for (const auto& [name, desc] : rows)
      out.push_back(json{{"name", name}, {"description", desc}});
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& [name, desc] : rows) std::cout << name << " - " << desc << "\n";
  }
}

void cmd_catalog_emit(const Global& g, const std::string& name, int n, int p, int k, int l,
                      int m, const std::string& out_path) {
  lvl::Scenario s = lvl::make_scenario(name, scenario_params(g, n, p, k, l, m));
  json pf = lvl::io::scenario_to_problem_file(s);
  if (out_path.empty()) {
    std::cout << pf.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw lvl::SchemaError("cannot write '" + out_path + "'");
    out << pf.dump(2) << "\n";
  }
}

void cmd_scenario(Global& g, const std::string& name, int n, int p, int k, int l, int m,
                  bool check) {
  lvl::Scenario s = lvl::make_scenario(name, scenario_params(g, n, p, k, l, m));
  if (!g.bounds.empty()) s.bounds = parse_bounds_flag(g.bounds);
  lvl::ScenarioOutcome o = lvl::run_scenario(s);
  json report;
  report["version"] = 1;
  report["tool"] = "level-lab";
  report["problem"] = "scenario";
  report["scenario"] = s.name;
  report["title"] = s.title;
  report["field"] = s.field.name();
  report["bounds"] = lvl::io::bounds_to_json(s.bounds);
  report["result"] = lvl::io::level_result_to_json(o.result);
  if (s.expected) {
    report["expected"] = lvl::io::expected_to_json(*s.expected);
    report["matches_expected"] = o.matches;
  }
  if (o.torus_report) report["torus_report"] = lvl::io::torus_report_to_json(*o.torus_report);
  if (!s.notes.empty()) {
    json notes = json::array();
    for (const auto& nt : s.notes) notes.push_back(nt);
    report["notes"] = notes;
  }
  output(g, report, [&](std::ostream& os) {
    os << "scenario: " << s.name << " (" << s.title << ")\n";
    print_head(os, "scenario", s.field, s.bounds);
    os << "result:  " << o.result.str();
    if (o.has_expected) os << (o.matches ? ", matches expected" : ", MISMATCH with expected");
    os << "\n";
    print_provenance(os, o.result);
    if (o.torus_report)
      os << "torus sides " << (o.torus_report->equal ? "agree" : "DISAGREE") << "\n";
    for (const auto& nt : s.notes) os << "  note: " << nt << "\n";
  });
  if (check && o.has_expected && !o.matches) g.exit_code = 4;
}

}  // namespace

int main(int argc, char** argv) {
  Global g;
  CLI::App app{"level-lab: level invariants of differential graded modules"};
  app.require_subcommand(1);
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--field", g.field, "coefficient field: q or fp:P");
  app.add_option("--bounds", g.bounds, "computation window: n_max,d_max");
  app.add_flag("--oracle", g.oracle, "cross-check independent computation paths");

  std::string problem_path, payload_path, path_choice = "auto", out_path, name;
  int n = -1, p = -1, k = -1, l = -1, m = -1;
  bool check = false;

  auto add_io = [&](CLI::App* sub, const char* payload_flag, const char* payload_help) {
    sub->add_option("--problem", problem_path, "full problem file (JSON)");
    sub->add_option(payload_flag, payload_path, payload_help);
  };

  CLI::App* tor = app.add_subcommand("tor", "bigraded Tor table of a module");
  add_io(tor, "--module", "payload file with 'algebra' and 'module'");
  tor->add_option("--path", path_choice, "computation path")
      ->check(CLI::IsMember({"auto", "koszul", "resolution"}));
  tor->callback([&] { cmd_tor(g, problem_path, payload_path, path_choice); });

  CLI::App* resolve = app.add_subcommand("resolve", "minimal free resolution summary");
  add_io(resolve, "--module", "payload file with 'algebra' and 'module'");
  resolve->callback([&] { cmd_resolve(g, problem_path, payload_path); });

  CLI::App* hochster = app.add_subcommand("hochster", "Tor table via full subcomplexes");
  add_io(hochster, "--complex", "payload file with 'vertices' and 'facets'");
  hochster->callback([&] { cmd_hochster(g, problem_path, payload_path); });

  CLI::App* dj = app.add_subcommand("dj-level", "level of a Davis-Januszkiewicz space");
  add_io(dj, "--complex", "payload file with 'vertices' and 'facets'");
  dj->callback([&] { cmd_dj_level(g, problem_path, payload_path); });

  CLI::App* level = app.add_subcommand("level", "level computations");
  level->require_subcommand(1);
  CLI::App* lg = level->add_subcommand("graded", "level of a graded module");
  add_io(lg, "--module", "payload file with 'algebra' and 'module'");
  lg->callback([&] { cmd_level_graded(g, problem_path, payload_path); });
  CLI::App* lp = level->add_subcommand("pullback", "level interval of a pullback");
  add_io(lp, "--pullback", "payload file with the fibre-square data");
  lp->callback([&] { cmd_level_pullback(g, problem_path, payload_path); });
  CLI::App* lf = level->add_subcommand("fibre", "level of the homotopy fibre");
  add_io(lf, "--pullback", "payload file with the fibre-square data (map form)");
  lf->callback([&] { cmd_level_fibre(g, problem_path, payload_path); });
  CLI::App* lc = level->add_subcommand("chain", "chain-type level sandwich");
  add_io(lc, "--chain", "payload file with the loop homology and total cohomology");
  lc->callback([&] { cmd_level_chain(g, problem_path, payload_path); });
  CLI::App* lo = level->add_subcommand("one-test", "level-one obstruction test");
  add_io(lo, "--module", "payload file with 'algebra' and 'module'");
  lo->callback([&] { cmd_level_one_test(g, problem_path, payload_path); });

  CLI::App* filtration = app.add_subcommand("filtration", "semi-free filtrations");
  filtration->require_subcommand(1);
  CLI::App* fc = filtration->add_subcommand("check", "build and verify a filtration");
  add_io(fc, "--pullback", "payload file with the fibre-square data");
  fc->callback([&] { cmd_filtration_check(g, problem_path, payload_path); });

  CLI::App* torus = app.add_subcommand("torus-check", "compare full and torus-side levels");
  add_io(torus, "--data", "payload file with 'full', 'torus', 'witnesses'");
  torus->callback([&] { cmd_torus_check(g, problem_path, payload_path); });

  CLI::App* catalog = app.add_subcommand("catalog", "built-in scenario catalog");
  catalog->require_subcommand(1);
  CLI::App* cl = catalog->add_subcommand("list", "list scenario names");
  cl->callback([&] { cmd_catalog_list(g); });
  CLI::App* ce = catalog->add_subcommand("emit", "emit a scenario as a problem file");
  ce->add_option("name", name, "scenario name")->required();
  ce->add_option("--n", n, "parameter n");
  ce->add_option("--p", p, "parameter p");
  ce->add_option("--k", k, "parameter k");
  ce->add_option("--l", l, "parameter l");
  ce->add_option("--m", m, "parameter m");
  ce->add_option("--out", out_path, "write to a file instead of stdout");
  ce->callback([&] { cmd_catalog_emit(g, name, n, p, k, l, m, out_path); });

  CLI::App* scen = app.add_subcommand("scenario", "run a catalogued scenario");
  scen->add_option("name", name, "scenario name")->required();
  scen->add_option("--n", n, "parameter n");
  scen->add_option("--p", p, "parameter p");
  scen->add_option("--k", k, "parameter k");
  scen->add_option("--l", l, "parameter l");
  scen->add_option("--m", m, "parameter m");
  scen->add_flag("--check", check, "exit 4 unless the result matches the expected answer");
  scen->callback([&] { cmd_scenario(g, name, n, p, k, l, m, check); });

  auto emit_error = [&](const char* kind, const std::string& msg) {
    if (g.format == "json") {
      json err{{"error", json{{"kind", kind}, {"message", msg}}}};
      std::cout << err.dump(2) << "\n";
    }
    std::cerr << "error (" << kind << "): " << msg << "\n";
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const lvl::SchemaError& e) {
    emit_error("schema", e.what());
    return 2;
  } catch (const lvl::HypothesisError& e) {
    emit_error("hypothesis", e.what());
    return 3;
  } catch (const lvl::CrossCheckError& e) {
    emit_error("cross-check", e.what());
    return 4;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return 1;
  }
  return g.exit_code;
}
