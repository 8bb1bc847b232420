#include "lvl/json_io.hpp"

#include <algorithm>
#include <fstream>

namespace lvl::io {

namespace {

int get_int(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw SchemaError(where + ": missing integer field '" + key + "'");
  return j[key].get<int>();
}

const json& get_obj(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_object())
    throw SchemaError(where + ": missing object field '" + key + "'");
  return j[key];
}

const json& get_arr(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_array())
    throw SchemaError(where + ": missing array field '" + key + "'");
  return j[key];
}

std::string get_str(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_string())
    throw SchemaError(where + ": missing string field '" + key + "'");
  return j[key].get<std::string>();
}

Exponents exponents_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": exponent vector must be an array");
  Exponents e;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<int>() < 0)
      throw SchemaError(where + ": exponents must be non-negative integers");
    e.push_back(v.get<int>());
  }
  return e;
}

json exponents_to_json(const Exponents& e) {
  json a = json::array();
  for (int v : e) a.push_back(v);
  return a;
}

}  // namespace

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("invalid JSON in '" + path + "': " + e.what());
  }
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok) throw SchemaError(where + ": unknown field '" + it.key() + "'");
  }
}

FieldSpec field_from_json(const json& j) {
  if (!j.is_string()) throw SchemaError("field: expected a string like \"q\" or \"fp:2\"");
  return FieldSpec::parse(j.get<std::string>());
}

BoundSpec bounds_from_json(const json& j) {
  check_keys(j, {"n_max", "d_max"}, "bounds");
  BoundSpec b{get_int(j, "n_max", "bounds"), get_int(j, "d_max", "bounds")};
  if (b.n_max < 0 || b.d_max < 0) throw SchemaError("bounds: n_max and d_max must be >= 0");
  return b;
}

json bounds_to_json(const BoundSpec& b) {
  return json{{"n_max", b.n_max}, {"d_max", b.d_max}};
}

AlgebraPtr algebra_from_json(const json& j, const FieldSpec& f) {
  check_keys(j, {"generators", "relations", "char2_odd_squares"}, "algebra");
  std::vector<Generator> gens;
  for (const auto& g : get_arr(j, "generators", "algebra")) {
    check_keys(g, {"name", "degree"}, "algebra.generators");
    gens.push_back({get_str(g, "name", "generator"), get_int(g, "degree", "generator")});
  }
  std::vector<Exponents> rels;
  if (j.contains("relations"))
    for (const auto& r : j["relations"]) rels.push_back(exponents_from_json(r, "algebra.relations"));
  bool char2 = j.value("char2_odd_squares", false);
  return std::make_shared<GradedAlgebra>(f, std::move(gens), std::move(rels), char2);
}

json algebra_to_json(const GradedAlgebra& a) {
  json gens = json::array();
  for (const auto& g : a.gens()) gens.push_back(json{{"name", g.name}, {"degree", g.degree}});
  json rels = json::array();
  for (const auto& r : a.relations()) rels.push_back(exponents_to_json(r));
  json out{{"generators", std::move(gens)}, {"relations", std::move(rels)}};
  if (a.char2_odd_square_allowed()) out["char2_odd_squares"] = true;
  return out;
}

Element element_from_json(const json& j, const GradedAlgebra& a) {
  if (!j.is_array()) throw SchemaError("element: expected an array of terms");
  Element e = a.el_zero();
  for (const auto& t : j) {
    check_keys(t, {"mono", "coeff"}, "element term");
    Exponents m = exponents_from_json(get_arr(t, "mono", "element"), "element.mono");
    if ((int)m.size() != a.num_gens())
      throw SchemaError("element: monomial length " + std::to_string(m.size()) +
                        " does not match generator count " + std::to_string(a.num_gens()));
    Scalar c = a.field().from_string(get_str(t, "coeff", "element"));
    e = a.el_add(e, a.el_scale(c, a.el_mono(m)));
  }
  return e;
}

json element_to_json(const Element& e, const GradedAlgebra& a) {
  json out = json::array();
  for (const auto& [m, c] : e.terms)
    out.push_back(json{{"mono", exponents_to_json(m)}, {"coeff", a.field().str(c)}});
  return out;
}

GradedModule module_from_json(const json& j, AlgebraPtr a) {
  check_keys(j, {"generators", "relations"}, "module");
  std::vector<ModGen> gens;
  for (const auto& g : get_arr(j, "generators", "module")) {
    check_keys(g, {"name", "degree"}, "module.generators");
    gens.push_back({get_str(g, "name", "module generator"),
                    get_int(g, "degree", "module generator")});
  }
  std::vector<ModElement> rels;
  if (j.contains("relations")) {
    for (const auto& r : j["relations"]) {
      if (!r.is_array()) throw SchemaError("module.relations: each relation is an array of terms");
      ModElement el;
      for (const auto& t : r) {
        check_keys(t, {"mono", "gen", "coeff"}, "module relation term");
        el.push_back({exponents_from_json(get_arr(t, "mono", "relation"), "relation.mono"),
                      get_int(t, "gen", "relation"),
                      a->field().from_string(get_str(t, "coeff", "relation"))});
      }
      rels.push_back(std::move(el));
    }
  }
  return GradedModule(std::move(a), std::move(gens), std::move(rels));
}

json module_to_json(const GradedModule& m) {
  json gens = json::array();
  for (const auto& g : m.gens()) gens.push_back(json{{"name", g.name}, {"degree", g.degree}});
  json rels = json::array();
  for (const auto& r : m.relations()) {
    json terms = json::array();
    for (const auto& t : r)
      terms.push_back(json{{"mono", exponents_to_json(t.mono)},
                           {"gen", t.gen},
                           {"coeff", m.alg()->field().str(t.coeff)}});
    rels.push_back(std::move(terms));
  }
  return json{{"generators", std::move(gens)}, {"relations", std::move(rels)}};
}

AlgebraMap map_from_json(const json& j, AlgebraPtr src, AlgebraPtr dst) {
  check_keys(j, {"images"}, "map");
  const json& imgs = get_arr(j, "images", "map");
  if ((int)imgs.size() != src->num_gens())
    throw SchemaError("map: expected " + std::to_string(src->num_gens()) + " images, got " +
                      std::to_string(imgs.size()));
  std::vector<Element> images;
  for (const auto& e : imgs) images.push_back(element_from_json(e, *dst));
  return AlgebraMap(std::move(src), std::move(dst), std::move(images));
}

json map_to_json(const AlgebraMap& m) {
  json imgs = json::array();
  for (const auto& e : m.images()) imgs.push_back(element_to_json(e, *m.dst()));
  return json{{"images", std::move(imgs)}};
}

PullbackProblem pullback_from_json(const json& j, const FieldSpec& f) {
  PullbackProblem p;
  if (j.contains("sz_degrees") || j.contains("weights")) {
    check_keys(j, {"X", "sz_degrees", "weights"}, "pullback (loop form)");
    p.X_alg = algebra_from_json(get_obj(j, "X", "pullback"), f);
    for (const auto& d : get_arr(j, "sz_degrees", "pullback")) {
      if (!d.is_number_integer() || d.get<int>() <= 0)
        throw SchemaError("pullback.sz_degrees: positive integers required");
      p.sz_degrees.push_back(d.get<int>());
    }
    for (const auto& w : get_arr(j, "weights", "pullback"))
      p.weights.push_back(element_from_json(w, *p.X_alg));
    if (p.weights.size() != p.sz_degrees.size())
      throw SchemaError("pullback: sz_degrees and weights must have equal length");
    return p;
  }
  check_keys(j, {"E", "B", "X", "q_star", "phi_star"}, "pullback (map form)");
  p.E_alg = algebra_from_json(get_obj(j, "E", "pullback"), f);
  p.B_alg = algebra_from_json(get_obj(j, "B", "pullback"), f);
  p.X_alg = algebra_from_json(get_obj(j, "X", "pullback"), f);
  p.q_star = map_from_json(get_obj(j, "q_star", "pullback"), p.B_alg, p.E_alg);
  p.phi_star = map_from_json(get_obj(j, "phi_star", "pullback"), p.B_alg, p.X_alg);
  return p;
}

json pullback_to_json(const PullbackProblem& p) {
  if (p.case_two()) {
    json degs = json::array();
    for (int d : p.sz_degrees) degs.push_back(d);
    json ws = json::array();
    for (const auto& w : p.weights) ws.push_back(element_to_json(w, *p.X_alg));
    return json{{"X", algebra_to_json(*p.X_alg)},
                {"sz_degrees", std::move(degs)},
                {"weights", std::move(ws)}};
  }
  return json{{"E", algebra_to_json(*p.E_alg)},
              {"B", algebra_to_json(*p.B_alg)},
              {"X", algebra_to_json(*p.X_alg)},
              {"q_star", map_to_json(*p.q_star)},
              {"phi_star", map_to_json(*p.phi_star)}};
}

ChainProblem chain_from_json(const json& j, const FieldSpec& f) {
  check_keys(j, {"loop_homology", "fibre_module", "total_cohomology", "fibre_is_point"},
             "chain");
  ChainProblem p;
  p.loop_homology = algebra_from_json(get_obj(j, "loop_homology", "chain"), f);
  p.fibre_homology = std::make_shared<const GradedModule>(
      module_from_json(get_obj(j, "fibre_module", "chain"), p.loop_homology));
  p.total_cohomology = algebra_from_json(get_obj(j, "total_cohomology", "chain"), f);
  if (!j.contains("fibre_is_point") || !j["fibre_is_point"].is_boolean())
    throw SchemaError("chain: missing boolean field 'fibre_is_point'");
  p.fibre_is_point = j["fibre_is_point"].get<bool>();
  return p;
}

json chain_to_json(const ChainProblem& p) {
  return json{{"loop_homology", algebra_to_json(*p.loop_homology)},
              {"fibre_module", module_to_json(*p.fibre_homology)},
              {"total_cohomology", algebra_to_json(*p.total_cohomology)},
              {"fibre_is_point", p.fibre_is_point}};
}

SimplicialComplex complex_from_json(const json& j) {
  check_keys(j, {"vertices", "facets"}, "complex");
  int n = get_int(j, "vertices", "complex");
  if (n < 0 || n > 30) throw SchemaError("complex: vertices must be in [0, 30]");
  std::vector<std::vector<int>> facets;
  for (const auto& f : get_arr(j, "facets", "complex")) {
    if (!f.is_array()) throw SchemaError("complex.facets: each facet is an array of vertices");
    std::vector<int> fc;
    for (const auto& v : f) {
      if (!v.is_number_integer() || v.get<int>() < 0 || v.get<int>() >= n)
        throw SchemaError("complex.facets: vertex out of range");
      fc.push_back(v.get<int>());
    }
    facets.push_back(std::move(fc));
  }
  return SimplicialComplex(n, std::move(facets));
}

json complex_to_json(const SimplicialComplex& k) {
  json facets = json::array();
  for (const auto& f : k.facets()) {
    json fc = json::array();
    for (int v : f) fc.push_back(v);
    facets.push_back(std::move(fc));
  }
  return json{{"vertices", k.n_vertices()}, {"facets", std::move(facets)}};
}

TorusCheckProblem torus_from_json(const json& j, const FieldSpec& f) {
  check_keys(j, {"full", "torus", "witnesses"}, "torus-check");
  TorusCheckProblem t;
  t.full = pullback_from_json(get_obj(j, "full", "torus-check"), f);
  t.torus = pullback_from_json(get_obj(j, "torus", "torus-check"), f);
  if (j.contains("witnesses")) {
    for (const auto& w : j["witnesses"]) {
      check_keys(w, {"images", "basis"}, "torus-check witness");
      AlgebraMap psi = map_from_json(json{{"images", get_arr(w, "images", "witness")}},
                                     t.full.X_alg, t.torus.X_alg);
      std::vector<Element> basis;
      for (const auto& b : get_arr(w, "basis", "witness"))
        basis.push_back(element_from_json(b, *t.torus.X_alg));
      t.witnesses.push_back(FreenessWitness{std::move(psi), std::move(basis)});
    }
  }
  return t;
}

json torus_to_json(const TorusCheckProblem& t) {
  json ws = json::array();
  for (const auto& w : t.witnesses) {
    json imgs = json::array();
    for (const auto& e : w.psi.images()) imgs.push_back(element_to_json(e, *w.psi.dst()));
    json basis = json::array();
    for (const auto& b : w.basis) basis.push_back(element_to_json(b, *w.psi.dst()));
    ws.push_back(json{{"images", std::move(imgs)}, {"basis", std::move(basis)}});
  }
  return json{{"full", pullback_to_json(t.full)},
              {"torus", pullback_to_json(t.torus)},
              {"witnesses", std::move(ws)}};
}

json level_result_to_json(const LevelResult& r) {
  json out;
  switch (r.kind) {
    case LevelResult::Kind::Exact: out["kind"] = "Exact"; break;
    case LevelResult::Kind::Interval: out["kind"] = "Interval"; break;
    case LevelResult::Kind::LowerOnly: out["kind"] = "LowerOnly"; break;
  }
  out["lower"] = r.lower;
  if (r.has_upper()) out["upper"] = r.upper;
  out["display"] = r.str();
  json prov = json::array();
  for (const auto& p : r.provenance) {
    json caveats = json::array();
    for (const auto& c : p.caveats) caveats.push_back(c);
    prov.push_back(json{{"endpoint", p.endpoint},
                        {"tag", p.tag},
                        {"bounds", bounds_to_json(p.bounds)},
                        {"caveats", std::move(caveats)}});
  }
  out["provenance"] = std::move(prov);
  return out;
}

LevelResult expected_from_json(const json& j) {
  check_keys(j, {"kind", "lower", "upper"}, "expected");
  std::string kind = get_str(j, "kind", "expected");
  int lower = get_int(j, "lower", "expected");
  if (kind == "Exact") {
    if (j.contains("upper") && j["upper"].get<int>() != lower)
      throw SchemaError("expected: Exact requires lower == upper");
    return LevelResult::exact(lower);
  }
  if (kind == "Interval") return LevelResult::interval(lower, get_int(j, "upper", "expected"));
  if (kind == "LowerOnly") {
    if (j.contains("upper")) throw SchemaError("expected: LowerOnly carries no upper endpoint");
    return LevelResult::lower_only(lower);
  }
  throw SchemaError("expected: unknown kind '" + kind + "'");
}

json expected_to_json(const LevelResult& r) {
  json out;
  switch (r.kind) {
    case LevelResult::Kind::Exact: out["kind"] = "Exact"; break;
    case LevelResult::Kind::Interval: out["kind"] = "Interval"; break;
    case LevelResult::Kind::LowerOnly: out["kind"] = "LowerOnly"; break;
  }
  out["lower"] = r.lower;
  if (r.has_upper()) out["upper"] = r.upper;
  return out;
}

json tor_table_to_json(const TorTable& t) {
  json entries = json::array();
  for (const auto& [ij, d] : t.entries)
    entries.push_back(json{{"i", ij.first}, {"j", ij.second}, {"dim", d}});
  return json{{"bounds", bounds_to_json(t.bounds)},
              {"terminated", t.terminated},
              {"entries", std::move(entries)}};
}

json resolution_to_json(const Resolution& r) {
  json steps = json::array();
  for (int s = 0; s <= r.last_step(); ++s) {
    json degs = json::array();
    for (int d : r.step(s).gen_degrees) degs.push_back(d);
    steps.push_back(json{{"step", s}, {"rank", r.rank_at(s)}, {"degrees", std::move(degs)}});
  }
  Bound pd = projective_dimension(r);
  Bound g = grade(r);
  return json{{"bounds", bounds_to_json(r.bounds())},
              {"terminated", r.terminated()},
              {"steps", std::move(steps)},
              {"projective_dimension", pd.str()},
              {"grade", g.str()}};
}

json obstruction_to_json(const ObstructionReport& r) {
  json caveats = json::array();
  for (const auto& c : r.caveats) caveats.push_back(c);
  json out{{"obstructed", r.obstructed}};
  if (r.obstructed) out["witness_index"] = r.witness;
  out["bounds"] = bounds_to_json(r.bounds);
  out["caveats"] = std::move(caveats);
  return out;
}

json filtration_check_to_json(const FiltrationCheck& c) {
  json subs = json::array();
  for (const auto& s : c.subquotients) {
    json shifts = json::array();
    for (int d : s.shift_degrees) shifts.push_back(d);
    subs.push_back(json{{"step", s.step}, {"rank", s.rank}, {"shifts", std::move(shifts)}});
  }
  json caveats = json::array();
  for (const auto& cv : c.caveats) caveats.push_back(cv);
  json out{{"ok", c.ok}, {"class", c.verified_class}, {"subquotients", std::move(subs)}};
  if (!c.ok) out["witness"] = c.witness;
  out["caveats"] = std::move(caveats);
  return out;
}

json torus_report_to_json(const TorusReductionReport& r) {
  json caveats = json::array();
  for (const auto& c : r.caveats) caveats.push_back(c);
  json out{{"equal", r.equal},
           {"full", level_result_to_json(r.full)},
           {"torus", level_result_to_json(r.torus)}};
  if (!r.equal) out["mismatch"] = r.mismatch;
  out["caveats"] = std::move(caveats);
  return out;
}

ProblemFile problem_file_from_json(const json& j) {
  check_keys(j, {"version", "field", "problem", "bounds", "payload", "expected", "notes"},
             "problem file");
  ProblemFile pf;
  pf.version = get_int(j, "version", "problem file");
  if (pf.version != 1) throw SchemaError("problem file: unsupported version");
  if (!j.contains("field")) throw SchemaError("problem file: missing 'field'");
  pf.field = field_from_json(j["field"]);
  pf.problem = get_str(j, "problem", "problem file");
  bool known = false;
  for (const char* k : kProblemKinds)
    if (pf.problem == k) known = true;
  if (!known) throw SchemaError("problem file: unknown problem kind '" + pf.problem + "'");
  if (j.contains("bounds")) {
    pf.bounds = bounds_from_json(j["bounds"]);
    pf.bounds_given = true;
  }
  if (!j.contains("payload") || !j["payload"].is_object())
    throw SchemaError("problem file: missing object field 'payload'");
  pf.payload = j["payload"];
  if (j.contains("expected")) pf.expected = expected_from_json(j["expected"]);
  if (j.contains("notes")) {
    if (!j["notes"].is_array()) throw SchemaError("problem file: 'notes' must be an array");
    for (const auto& n : j["notes"]) pf.notes.push_back(n.get<std::string>());
  }
  return pf;
}

json scenario_to_problem_file(const Scenario& s) {
  json out;
  out["version"] = 1;
  out["field"] = s.field.name();
  std::string kind;
  json payload;
  if (s.complex) {
    kind = "dj-level";
    payload = complex_to_json(*s.complex);
  } else if (s.torus) {
    kind = "torus-check";
    payload = torus_to_json(*s.torus);
  } else if (s.pullback) {
    kind = s.fibre_route ? "level-fibre" : "level-pullback";
    payload = pullback_to_json(*s.pullback);
  } else if (s.chain) {
    kind = "level-chain";
    payload = chain_to_json(*s.chain);
  } else if (s.graded) {
    kind = "level-graded";
    payload = json{{"algebra", algebra_to_json(*s.graded->first)},
                   {"module", module_to_json(*s.graded->second)}};
  } else {
    throw SchemaError("scenario '" + s.name + "': nothing to emit");
  }
  out["problem"] = kind;
  out["bounds"] = bounds_to_json(s.bounds);
  out["payload"] = std::move(payload);
  if (s.expected) out["expected"] = expected_to_json(*s.expected);
  if (!s.notes.empty()) {
    json notes = json::array();
    for (const auto& n : s.notes) notes.push_back(n);
    out["notes"] = std::move(notes);
  }
  return out;
}

}  // namespace lvl::io
