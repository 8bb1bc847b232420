#include "lvl/catalog.hpp"

#include <algorithm>

namespace lvl {

namespace {

AlgebraPtr make_alg(const FieldSpec& f, std::vector<Generator> gens,
                    std::vector<Exponents> rels) {
  return std::make_shared<GradedAlgebra>(f, std::move(gens), std::move(rels));
}

AlgebraPtr point_algebra(const FieldSpec& f) {
  return make_alg(f, {}, {});
}

void need_params(const std::string& name, const std::vector<int>& params, size_t count) {
  if (params.size() != count)
    throw SchemaError("space_algebra: " + name + " takes " + std::to_string(count) +
                      " parameter(s), got " + std::to_string(params.size()));
}

int require_range(const std::string& what, int v, int lo, int hi) {
  if (v < lo || v > hi)
    throw SchemaError("space_algebra: " + what + " = " + std::to_string(v) +
                      " out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v;
}

}  // namespace

AlgebraPtr space_algebra(const std::string& name, const std::vector<int>& params,
                         const FieldSpec& f) {
  if (name == "sphere") {
    need_params(name, params, 1);
    int n = require_range("n", params[0], 1, 6);
    return make_alg(f, {{"x", n}}, {Exponents{2}});
  }
  if (name == "cpn") {
    need_params(name, params, 1);
    int n = require_range("n", params[0], 1, 6);
    return make_alg(f, {{"x", 2}}, {Exponents{n + 1}});
  }
  if (name == "btm") {
    need_params(name, params, 1);
    int m = require_range("m", params[0], 1, 8);
    std::vector<Generator> gens;
    for (int i = 1; i <= m; ++i) gens.push_back({"t" + std::to_string(i), 2});
    return make_alg(f, std::move(gens), {});
  }
  if (name == "bsun") {
    need_params(name, params, 1);
    int n = require_range("n", params[0], 2, 6);
    std::vector<Generator> gens;
    for (int i = 2; i <= n; ++i) gens.push_back({"c" + std::to_string(i), 2 * i});
    return make_alg(f, std::move(gens), {});
  }
  if (name == "bun") {
    need_params(name, params, 1);
    int n = require_range("n", params[0], 1, 6);
    std::vector<Generator> gens;
    for (int i = 1; i <= n; ++i) gens.push_back({"c" + std::to_string(i), 2 * i});
    return make_alg(f, std::move(gens), {});
  }
  if (name == "exterior") {
    if (params.empty()) throw SchemaError("space_algebra: exterior needs at least one degree");
    if (params.size() > 8) throw SchemaError("space_algebra: exterior supports at most 8 letters");
    std::vector<Generator> gens;
    std::vector<Exponents> rels;
    for (size_t i = 0; i < params.size(); ++i) {
      int d = require_range("degree", params[i], 1, 15);
      if (d % 2 == 0)
        throw SchemaError("space_algebra: exterior degrees must be odd, got " + std::to_string(d));
      gens.push_back({"x" + std::to_string(i + 1), d});
      Exponents sq(params.size(), 0);
      sq[i] = 2;
      rels.push_back(sq);
    }
    return make_alg(f, std::move(gens), std::move(rels));
  }
  if (name == "truncated") {
    need_params(name, params, 2);
    int d = require_range("deg", params[0], 2, 16);
    int l = require_range("l", params[1], 1, 6);
    if (d % 2 != 0)
      throw SchemaError("space_algebra: truncated generator degree must be even, got " +
                        std::to_string(d));
    return make_alg(f, {{"x", d}}, {Exponents{l + 1}});
  }
  throw SchemaError("space_algebra: unknown name '" + name + "'");
}

/* ------------------------------------------------------------------ */
/* Scenarios                                                           */
/* ------------------------------------------------------------------ */

namespace {

FieldSpec field_or(const ScenarioParams& prm, FieldSpec dflt) {
  return prm.field ? *prm.field : dflt;
}

/* phi*: H*(BSU(n)) -> H*(BT^{n-1}) obtained by restricting the Chern classes
   to the maximal torus, written in the root basis t_1..t_{n-1} with
   t_n = -(t_1 + ... + t_{n-1}).  Only n = 2, 3 are catalogued. */
std::vector<Element> chern_restriction(const AlgebraPtr& X, int n) {
  Scalar m1 = X->field().neg(X->field().one());
  if (n == 2) {
    Element t = X->el_gen(0);
    return {X->el_scale(m1, X->el_pow(t, 2))};
  }
  Element t1 = X->el_gen(0), t2 = X->el_gen(1);
  Element e2 = X->el_add(X->el_add(X->el_pow(t1, 2), X->el_mul(t1, t2)), X->el_pow(t2, 2));
  Element e3 = X->el_mul(X->el_mul(t1, t2), X->el_add(t1, t2));
  return {X->el_scale(m1, e2), X->el_scale(m1, e3)};
}

/* One side of a rank-one torus-reduction instance.  `square` selects
   phi*(u) = s^2 (target a torus) versus phi*(u) = v (target the group). */
PullbackProblem su2_side(const FieldSpec& f, const std::string& xname, bool square) {
  PullbackProblem p;
  p.E_alg = make_alg(f, {{"t", 2}}, {});
  p.B_alg = make_alg(f, {{"u", 4}}, {});
  p.X_alg = make_alg(f, {{xname, square ? 2 : 4}}, {});
  p.q_star = AlgebraMap(p.B_alg, p.E_alg, {p.E_alg->el_pow(p.E_alg->el_gen(0), 2)});
  Element img = square ? p.X_alg->el_pow(p.X_alg->el_gen(0), 2) : p.X_alg->el_gen(0);
  p.phi_star = AlgebraMap(p.B_alg, p.X_alg, {img});
  return p;
}

FreenessWitness rank_one_splitting(const AlgebraPtr& group_side, const AlgebraPtr& torus_side) {
  Element s = torus_side->el_gen(0);
  return FreenessWitness{AlgebraMap(group_side, torus_side, {torus_side->el_pow(s, 2)}),
                         {torus_side->el_one(), s}};
}

}  // namespace

std::vector<std::pair<std::string, std::string>> catalog_list() {
  return {
      {"remark_2_4", "rank-one pullback dichotomy: Exact(2) when the structure map is "
                     "nonzero, Exact(1) when it vanishes (k = 1 or 0)"},
      {"prop_5_4", "loop-form dichotomy over F_p with weight (1-k)x: Exact(2) iff p does "
                   "not divide 1-k (params n, p, k)"},
      {"prop_5_5", "flag-variety fibre level over the classifying space of the maximal "
                   "torus: Exact(n) for SU(n), n in {2, 3}"},
      {"example_6_4", "chain-type sandwich for truncated polynomial total cohomology: "
                      "Exact(l+1) (param l)"},
      {"example_6_5", "chain-type sandwich for a rational H-space with l odd generators: "
                      "Exact(l+1) (param l)"},
      {"remark_7_4", "non-terminating graded resolution over k[x]/(x^2): lower bound only, "
                     "with the strictness warning"},
      {"dj_full_simplex", "Davis-Januszkiewicz level of the full simplex: Exact(1) (param m)"},
      {"dj_two_points", "Davis-Januszkiewicz level of two disjoint vertices: Exact(2)"},
      {"dj_4cycle", "Davis-Januszkiewicz level of the 4-cycle: Exact(3)"},
      {"torus_su2", "torus-reduction equality on rank-one instances: n = 1 (H = K = T), "
                    "2 (H = T, K = G), 3 (H = K = G)"},
  };
}

Scenario make_scenario(const std::string& name, const ScenarioParams& prm) {
  Scenario s;
  s.name = name;

  if (name == "remark_2_4") {
    int k = prm.k < 0 ? 1 : prm.k;
    if (k != 0 && k != 1) throw SchemaError("remark_2_4: k must be 0 or 1");
    s.field = field_or(prm, FieldSpec::Q());
    s.title = k ? "pullback along a nonzero degree-4 class" : "pullback along the constant map";
    s.bounds = {6, 14};
    PullbackProblem p;
    p.E_alg = point_algebra(s.field);
    p.B_alg = space_algebra("bsun", {2}, s.field);
    p.X_alg = space_algebra("sphere", {4}, s.field);
    p.q_star = AlgebraMap::zero(p.B_alg, p.E_alg);
    p.phi_star = k ? AlgebraMap(p.B_alg, p.X_alg, {p.X_alg->el_gen(0)})
                   : AlgebraMap::zero(p.B_alg, p.X_alg);
    s.pullback = std::move(p);
    s.expected = LevelResult::exact(k ? 2 : 1);
    return s;
  }

  if (name == "prop_5_4") {
    int n = prm.n < 0 ? 2 : prm.n;
    int p = prm.p < 0 ? 2 : prm.p;
    int k = prm.k < 0 ? 0 : prm.k;
    require_range("n", n, 2, 6);
    if (p != 2 && p != 3 && p != 5 && p != 7 && p != 11 && p != 13)
      throw SchemaError("prop_5_4: p must be a prime <= 13");
    require_range("k", k, 0, 1000);
    s.field = FieldSpec::Fp(p);
    s.title = "loop-form weights (1-k)x over F_" + std::to_string(p);
    s.bounds = {std::max(6, n + 2), std::max(14, n * n + n + 4)};
    PullbackProblem pb;
    pb.X_alg = space_algebra("sphere", {4}, s.field);
    for (int i = 2; i <= n; ++i) pb.sz_degrees.push_back(2 * i);
    pb.weights.assign(pb.sz_degrees.size(), pb.X_alg->el_zero());
    pb.weights[0] = pb.X_alg->el_scale(s.field.from_int(1 - k), pb.X_alg->el_gen(0));
    s.pullback = std::move(pb);
    bool unit = ((1 - k) % p + p) % p != 0;
    s.expected = LevelResult::exact(unit ? 2 : 1);
    return s;
  }

  if (name == "prop_5_5") {
    int n = prm.n < 0 ? 2 : prm.n;
    if (n != 2 && n != 3) throw SchemaError("prop_5_5: n must be 2 or 3");
    s.field = field_or(prm, FieldSpec::Q());
    s.title = "SU(" + std::to_string(n) + ") flag variety over the torus classifying space";
    s.bounds = {n == 2 ? 6 : 8, 14};
    PullbackProblem p;
    p.E_alg = point_algebra(s.field);
    p.B_alg = space_algebra("bsun", {n}, s.field);
    p.X_alg = space_algebra("btm", {n - 1}, s.field);
    p.q_star = AlgebraMap::zero(p.B_alg, p.E_alg);
    p.phi_star = AlgebraMap(p.B_alg, p.X_alg, chern_restriction(p.X_alg, n));
    s.fibre_route = true;
    /* self-hosted quotient cohomology: the homology of the derived tensor,
       re-presented as a module over the torus algebra */
    auto dt = make_derived_tensor(p, s.bounds.d_max);
    s.graded = {p.X_alg, std::make_shared<const GradedModule>(
                             dt->homology_presentation(s.bounds.d_max - 2))};
    s.pullback = std::move(p);
    s.expected = LevelResult::exact(n);
    return s;
  }

  if (name == "example_6_4") {
    int l = prm.l < 0 ? 2 : prm.l;
    require_range("l", l, 1, 6);
    s.field = field_or(prm, FieldSpec::Q());
    s.title = "loops on a truncated projective-like space, fibre a point";
    s.bounds = {8, std::max(16, 4 * l + 2)};
    ChainProblem p;
    p.loop_homology = make_alg(s.field, {{"y1", 1}, {"y2", 2 * l}}, {Exponents{2, 0}});
    p.fibre_homology = std::make_shared<const GradedModule>(
        GradedModule::trivial_module(p.loop_homology, {{"n", 0}}));
    p.total_cohomology = space_algebra("truncated", {2, l}, s.field);
    p.fibre_is_point = true;
    s.chain = std::move(p);
    s.expected = LevelResult::exact(l + 1);
    return s;
  }

  if (name == "example_6_5") {
    int l = prm.l < 0 ? 2 : prm.l;
    require_range("l", l, 1, 6);
    s.field = FieldSpec::Q(); /* rational H-space data */
    s.title = "rational H-space with " + std::to_string(l) + " odd generators";
    s.bounds = {l + 4, std::max(12, l * l + 2 * l + 2)};
    ChainProblem p;
    std::vector<Generator> yg;
    std::vector<int> xdeg;
    for (int i = 1; i <= l; ++i) {
      yg.push_back({"y" + std::to_string(i), 2 * i});
      xdeg.push_back(2 * i + 1);
    }
    p.loop_homology = make_alg(s.field, std::move(yg), {});
    p.fibre_homology = std::make_shared<const GradedModule>(
        GradedModule::trivial_module(p.loop_homology, {{"n", 0}}));
    p.total_cohomology = space_algebra("exterior", xdeg, s.field);
    p.fibre_is_point = true;
    s.chain = std::move(p);
    s.expected = LevelResult::exact(l + 1);
    return s;
  }

  if (name == "remark_7_4") {
    s.field = field_or(prm, FieldSpec::Q());
    s.title = "two-generator module over the degree-2 dual numbers";
    s.bounds = {10, 24};
    auto A = space_algebra("truncated", {2, 1}, s.field);
    GradedModule k0 = GradedModule::trivial_module(A, {{"a", 0}});
    s.graded = {A, std::make_shared<const GradedModule>(
                       GradedModule::direct_sum(k0, k0.shifted(-3)))};
    s.expected = LevelResult::lower_only(s.bounds.n_max + 2);
    s.notes = {"graded-module level of the homology; the cochain-type level of this "
               "instance is 2 and is not this quantity"};
    return s;
  }

  if (name == "dj_full_simplex" || name == "dj_two_points" || name == "dj_4cycle") {
    s.field = field_or(prm, FieldSpec::Fp(2));
    int expected = 0;
    if (name == "dj_full_simplex") {
      int m = prm.m < 0 ? 3 : prm.m;
      require_range("m", m, 1, 8);
      std::vector<int> all(m);
      for (int i = 0; i < m; ++i) all[i] = i;
      s.complex = SimplicialComplex(m, {all});
      s.title = "full simplex on " + std::to_string(m) + " vertices";
      expected = 1;
    } else if (name == "dj_two_points") {
      s.complex = SimplicialComplex(2, {{0}, {1}});
      s.title = "two disjoint vertices";
      expected = 2;
    } else {
      s.complex = SimplicialComplex(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
      s.title = "boundary of the square";
      expected = 3;
    }
    int m = s.complex->n_vertices();
    s.bounds = {m, 2 * m};
    s.expected = LevelResult::exact(expected);
    return s;
  }

  if (name == "torus_su2") {
    int n = prm.n < 0 ? 1 : prm.n;
    if (n < 1 || n > 3) throw SchemaError("torus_su2: n must be 1, 2 or 3");
    s.field = field_or(prm, FieldSpec::Q());
    s.bounds = {6, 12};
    TorusCheckProblem t;
    if (n == 1) {
      s.title = "H = K = T";
      t.full = su2_side(s.field, "s", true);
      t.torus = t.full;
      t.witnesses = {FreenessWitness{AlgebraMap::identity(t.full.X_alg),
                                     {t.full.X_alg->el_one()}}};
    } else if (n == 2) {
      s.title = "H = T, K = G";
      t.full = su2_side(s.field, "v", false);
      t.torus = su2_side(s.field, "s", true);
      t.witnesses = {rank_one_splitting(t.full.X_alg, t.torus.X_alg)};
    } else {
      s.title = "H = K = G";
      PullbackProblem full;
      full.E_alg = make_alg(s.field, {{"u", 4}}, {});
      full.B_alg = make_alg(s.field, {{"w", 4}}, {});
      full.X_alg = make_alg(s.field, {{"v", 4}}, {});
      full.q_star = AlgebraMap(full.B_alg, full.E_alg, {full.E_alg->el_gen(0)});
      full.phi_star = AlgebraMap(full.B_alg, full.X_alg, {full.X_alg->el_gen(0)});
      t.torus = su2_side(s.field, "s", true);
      t.witnesses = {rank_one_splitting(full.X_alg, t.torus.X_alg)};
      t.full = std::move(full);
    }
    s.torus = std::move(t);
    s.expected = LevelResult::exact(1);
    return s;
  }

  throw SchemaError("unknown scenario '" + name + "'");
}

ScenarioOutcome run_scenario(const Scenario& s) {
  std::optional<TorusReductionReport> trep;

  auto compute = [&]() -> LevelResult {
    if (s.complex) {
      LevelResult r = LevelResult::exact(dj_level(*s.complex, s.field));
      r.provenance.push_back({"exact", "P5.1", s.bounds, {}});
      return r;
    }
    if (s.torus) {
      trep = torus_reduction_check(s.torus->full, s.torus->torus, s.torus->witnesses, s.bounds);
      return trep->full;
    }
    if (s.pullback && s.fibre_route) {
      LevelResult r = fibre_level(*s.pullback, s.bounds);
      if (s.graded) {
        LevelResult g = formal_fibration_level(s.graded->first, *s.graded->second, s.bounds);
        if (!g.same_endpoints(r))
          throw CrossCheckError("scenario " + s.name + ": fibre route " + r.str() +
                                " disagrees with the graded route " + g.str());
      }
      return r;
    }
    if (s.pullback) return pullback_level_bound(*s.pullback, s.bounds);
    if (s.chain) return chain_level_sandwich(*s.chain, s.bounds);
    if (s.graded) {
      LevelResult r = level_graded_module(s.graded->first, *s.graded->second, s.bounds);
      for (const auto& note : s.notes) r.provenance.push_back({"note", "L7.1", s.bounds, {note}});
      return r;
    }
    throw SchemaError("scenario " + s.name + ": no problem attached");
  };

  ScenarioOutcome o{compute(), std::move(trep), false, false};
  if (s.expected) {
    o.has_expected = true;
    o.matches = o.result.same_endpoints(*s.expected);
    if (o.torus_report) o.matches = o.matches && o.torus_report->equal;
  } else if (o.torus_report) {
    o.has_expected = true;
    o.matches = o.torus_report->equal;
  }
  return o;
}

}  // namespace lvl
