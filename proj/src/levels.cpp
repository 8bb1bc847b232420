#include "lvl/levels.hpp"

#include <algorithm>
#include <map>

namespace lvl {

/* ------------------------------------------------------------------ */
/* LevelResult                                                         */
/* ------------------------------------------------------------------ */

LevelResult LevelResult::exact(int n) {
  LevelResult r;
  r.kind = Kind::Exact;
  r.lower = n;
  r.upper = n;
  return r;
}

LevelResult LevelResult::interval(int lo, int hi) {
  if (lo == hi) return exact(lo);
  if (lo > hi) throw SchemaError("level interval: lower endpoint exceeds upper endpoint");
  LevelResult r;
  r.kind = Kind::Interval;
  r.lower = lo;
  r.upper = hi;
  return r;
}

LevelResult LevelResult::lower_only(int n) {
  LevelResult r;
  r.kind = Kind::LowerOnly;
  r.lower = n;
  r.upper = -1;
  return r;
}

bool LevelResult::same_endpoints(const LevelResult& o) const {
  if (kind != o.kind || lower != o.lower) return false;
  return !has_upper() || upper == o.upper;
}

bool LevelResult::has_certificate(const std::string& endpoint, const std::string& tag) const {
  for (const auto& p : provenance)
    if (p.endpoint == endpoint && p.tag == tag) return true;
  return false;
}

std::string LevelResult::str() const {
  switch (kind) {
    case Kind::Exact:
      return "Exact(" + std::to_string(lower) + ")";
    case Kind::Interval:
      return "Interval(" + std::to_string(lower) + "," + std::to_string(upper) + ")";
    default:
      return "LowerOnly(" + std::to_string(lower) + ")";
  }
}

/* ------------------------------------------------------------------ */
/* Problem normalization                                               */
/* ------------------------------------------------------------------ */

namespace {

std::vector<Scalar> element_coords(const AlgebraPtr& a, const Element& e, int d) {
  const FieldSpec& f = a->field();
  std::vector<Scalar> out(a->dim(d), f.from_int(0));
  for (const auto& [mono, c] : e.terms) out[a->basis_index(d, mono)] = c;
  return out;
}

/* Per-degree kernel/completion split of a family of images living in the
   degree-matching components of the target algebra.  Returns, per input
   index group, combination vectors: kernel combos first. */
struct DegreeSplit {
  std::vector<int> indices;               /* original letter indices, this degree */
  std::vector<std::vector<Scalar>> combos; /* coefficient rows over indices */
  int kernel_count = 0;
};

std::vector<DegreeSplit> split_by_kernel(const FieldSpec& f, const std::vector<int>& degrees,
                                         const AlgebraPtr& target,
                                         const std::vector<Element>& images, bool* already_split) {
  std::map<int, std::vector<int>> groups;
  for (size_t i = 0; i < degrees.size(); ++i) groups[degrees[i]].push_back(static_cast<int>(i));

  std::vector<DegreeSplit> out;
  *already_split = true;
  for (auto& [d, idx] : groups) {
    DegreeSplit sp;
    sp.indices = idx;
    int cols = static_cast<int>(idx.size());
    std::vector<std::tuple<int, int, Scalar>> trips;
    int rows = target->dim(d);
    for (int c = 0; c < cols; ++c) {
      auto dense = element_coords(target, images[idx[c]], d);
      for (int r = 0; r < rows; ++r)
        if (!f.is_zero(dense[r])) trips.push_back({r, c, dense[r]});
    }
    Mat m = Mat::from_triplets(f, rows, cols, trips);
    std::vector<SparseVec> ker = m.kernel_basis();
    sp.kernel_count = static_cast<int>(ker.size());

    RowSpace span(f, cols);
    for (const auto& v : ker) {
      if (v.size() != 1 || !f.eq(v.front().second, f.one())) *already_split = false;
      sp.combos.push_back(dense_from_sparse(f, v, cols));
      span.insert(v);
    }
    for (int c = 0; c < cols; ++c) {
      SparseVec unit{{c, f.one()}};
      if (span.insert(unit)) sp.combos.push_back(dense_from_sparse(f, unit, cols));
    }
    out.push_back(std::move(sp));
  }
  return out;
}

Element combine(const AlgebraPtr& a, const std::vector<Element>& images,
                const std::vector<int>& indices, const std::vector<Scalar>& combo) {
  Element acc = a->el_zero();
  for (size_t c = 0; c < indices.size(); ++c)
    acc = a->el_add(acc, a->el_scale(combo[c], images[indices[c]]));
  return acc;
}

AlgebraPtr point_algebra(const FieldSpec& f) {
  return std::make_shared<GradedAlgebra>(f, std::vector<Generator>{}, std::vector<Exponents>{});
}

std::vector<std::string> merged_caveats(const FiltrationCertificate& cert,
                                        const FiltrationCheck& chk) {
  std::vector<std::string> out = cert.caveats;
  out.insert(out.end(), chk.caveats.begin(), chk.caveats.end());
  return out;
}

}  // namespace

NormalizedPullback normalize_pullback(const PullbackProblem& p) {
  const FieldSpec& f = p.X_alg->field();
  NormalizedPullback out;

  if (p.case_two()) {
    bool split = false;
    auto groups = split_by_kernel(f, p.sz_degrees, p.X_alg, p.weights, &split);
    if (split) {
      out.problem = p;
      for (size_t i = 0; i < p.weights.size(); ++i)
        if (p.weights[i].is_zero()) out.gamma.push_back(static_cast<int>(i));
      return out;
    }
    PullbackProblem q;
    q.X_alg = p.X_alg;
    for (const auto& sp : groups) {
      int d = p.sz_degrees[sp.indices.front()];
      for (size_t r = 0; r < sp.combos.size(); ++r) {
        if (static_cast<int>(r) < sp.kernel_count)
          out.gamma.push_back(static_cast<int>(q.sz_degrees.size()));
        q.sz_degrees.push_back(d);
        q.weights.push_back(combine(p.X_alg, p.weights, sp.indices, sp.combos[r]));
      }
    }
    out.problem = std::move(q);
    return out;
  }

  if (!p.q_star || !p.phi_star)
    throw SchemaError("pullback problem: the map form requires both q* and phi*");
  std::vector<int> degs;
  for (const auto& g : p.B_alg->gens()) degs.push_back(g.degree);
  bool split = false;
  auto groups = split_by_kernel(f, degs, p.X_alg, p.phi_star->images(), &split);
  if (split) {
    out.problem = p;
    for (int i = 0; i < p.B_alg->num_gens(); ++i)
      if (p.phi_star->image(i).is_zero()) out.gamma.push_back(i);
    return out;
  }

  std::vector<Generator> new_gens;
  std::vector<std::vector<Scalar>> combos;   /* rows over original generators */
  std::vector<std::vector<int>> combo_idx;
  for (const auto& sp : groups) {
    int d = degs[sp.indices.front()];
    for (size_t r = 0; r < sp.combos.size(); ++r) {
      if (static_cast<int>(r) < sp.kernel_count)
        out.gamma.push_back(static_cast<int>(new_gens.size()));
      new_gens.push_back({"w" + std::to_string(new_gens.size() + 1), d});
      combos.push_back(sp.combos[r]);
      combo_idx.push_back(sp.indices);
    }
  }
  auto B2 = std::make_shared<GradedAlgebra>(f, new_gens, std::vector<Exponents>{});
  std::vector<Element> q_imgs, phi_imgs;
  for (size_t r = 0; r < combos.size(); ++r) {
    q_imgs.push_back(combine(p.E_alg, p.q_star->images(), combo_idx[r], combos[r]));
    phi_imgs.push_back(combine(p.X_alg, p.phi_star->images(), combo_idx[r], combos[r]));
  }
  PullbackProblem q;
  q.E_alg = p.E_alg;
  q.B_alg = B2;
  q.X_alg = p.X_alg;
  q.q_star = AlgebraMap(B2, p.E_alg, q_imgs);
  q.phi_star = AlgebraMap(B2, p.X_alg, phi_imgs);
  out.problem = std::move(q);
  return out;
}

std::shared_ptr<DerivedTensor> make_derived_tensor(const PullbackProblem& p, int d_max) {
  if (p.case_two())
    return DerivedTensor::of_loop_weights(p.X_alg, p.sz_degrees, p.weights, d_max);
  if (!p.q_star || !p.phi_star)
    throw SchemaError("pullback problem: the map form requires both q* and phi*");
  return DerivedTensor::of_maps(p.E_alg, p.B_alg, p.X_alg, *p.q_star, *p.phi_star, d_max);
}

/* ------------------------------------------------------------------ */
/* Graded-module level                                                 */
/* ------------------------------------------------------------------ */

LevelResult level_graded_module(const AlgebraPtr& a, const GradedModule& m, BoundSpec bounds) {
  if (a != m.alg()) throw SchemaError("level: the module is not over the given algebra");
  PresentedView view(std::make_shared<const GradedModule>(m));
  Resolution r = minimal_free_resolution(view, bounds);
  Bound pd = projective_dimension(r);

  if (pd.is_exact()) {
    if (pd.value < 0) {
      LevelResult out = LevelResult::exact(0);
      out.provenance.push_back({"exact", "L7.1", bounds, {"zero module"}});
      return out;
    }
    LevelResult out = LevelResult::exact(pd.value + 1);
    out.provenance.push_back({"lower", "L7.2", bounds, {}});
    out.provenance.push_back(
        {"upper", "L7.1", bounds,
         {"Tor degreewise finiteness verified for internal degrees <= " +
          std::to_string(bounds.d_max)}});
    return out;
  }
  LevelResult out = LevelResult::lower_only(pd.value + 1);
  out.provenance.push_back(
      {"lower", "L7.2", bounds,
       {"resolution did not terminate within n_max = " + std::to_string(bounds.n_max) +
        "; no upper bound certified"}});
  return out;
}

ObstructionReport level_one_obstruction(const AlgebraPtr& a, const GradedModule& m,
                                        BoundSpec bounds) {
  if (a != m.alg()) throw SchemaError("level: the module is not over the given algebra");
  PresentedView view(std::make_shared<const GradedModule>(m));
  TorTable t = tor_table(view, bounds);
  ObstructionReport rep;
  rep.bounds = bounds;
  for (int i = 1; i <= std::max(t.top_index(), 0); ++i)
    if (t.total_dim(i) > 0) {
      rep.obstructed = true;
      rep.witness = i;
      return rep;
    }
  if (!t.terminated)
    rep.caveats.push_back("no obstruction within n_max = " + std::to_string(bounds.n_max) +
                          "; freeness not certified");
  return rep;
}

/* ------------------------------------------------------------------ */
/* Pullback levels                                                     */
/* ------------------------------------------------------------------ */

namespace {

LevelResult derived_tensor_estimate(const PullbackProblem& p, BoundSpec bounds,
                                    bool with_homology_upper) {
  NormalizedPullback np = normalize_pullback(p);
  auto dt = make_derived_tensor(np.problem, bounds.d_max);
  FiltrationCertificate cert = koszul_filtration(dt, np.gamma);
  FiltrationCheck chk = check_semifree_filtration(cert, bounds.d_max);
  if (!chk.ok)
    throw HypothesisError("pullback level: filtration certificate failed: " + chk.witness);
  auto caveats = merged_caveats(cert, chk);

  if (cert.filtration_class == 0) {
    LevelResult out = LevelResult::exact(1);
    caveats.push_back("structure map vanishes; homology verified degreewise free");
    out.provenance.push_back({"exact", "T2.2", bounds, caveats});
    return out;
  }

  int upper = cert.filtration_class + 1;
  std::string upper_tag = "T2.2";
  GradedModule H = dt->homology_presentation(bounds.d_max);
  std::vector<std::string> upper_caveats = caveats;
  std::vector<Provenance> notes;

  if (with_homology_upper) {
    LevelResult hom = upper_by_homology(np.problem.X_alg, H, bounds);
    if (hom.has_upper() && hom.upper < upper) {
      notes.push_back({"note", "T2.2", bounds,
                       {"filtration upper bound " + std::to_string(upper) +
                        " superseded by the homology route"}});
      upper = hom.upper;
      upper_tag = "L7.1";
      upper_caveats = {"upper bound via the graded level of the homology module"};
    }
  }

  ObstructionReport obs = level_one_obstruction(np.problem.X_alg, H, bounds);
  int lower = obs.obstructed ? 2 : 1;
  if (lower > upper)
    throw CrossCheckError("pullback level: obstruction lower bound " + std::to_string(lower) +
                          " exceeds certified upper bound " + std::to_string(upper));

  LevelResult out = LevelResult::interval(lower, upper);
  out.provenance.push_back({"upper", upper_tag, bounds, upper_caveats});
  if (obs.obstructed)
    out.provenance.push_back({"lower", "P2.3", bounds,
                              {"Tor obstruction at homological index " +
                               std::to_string(obs.witness)}});
  else
    out.provenance.push_back({"lower", "P2.3", bounds,
                              {"no obstruction found within bounds; lower endpoint 1"}});
  for (auto& n : notes) out.provenance.push_back(std::move(n));
  return out;
}

}  // namespace

LevelResult pullback_level_bound(const PullbackProblem& p, BoundSpec bounds) {
  return derived_tensor_estimate(p, bounds, false);
}

LevelResult derived_tensor_level(const PullbackProblem& p, BoundSpec bounds) {
  return derived_tensor_estimate(p, bounds, true);
}

LevelResult fibre_level(const PullbackProblem& p, BoundSpec bounds) {
  if (p.case_two())
    throw SchemaError("fibre level requires the map form of the pullback problem");
  NormalizedPullback np = normalize_pullback(p);
  const PullbackProblem& q = np.problem;

  TrivialActionReport tri =
      trivial_action_test(q.E_alg, q.B_alg, *q.q_star, np.gamma, bounds.d_max);
  if (!tri.trivial) {
    LevelResult out = pullback_level_bound(p, bounds);
    out.provenance.push_back(
        {"note", "P4.3.1", bounds,
         {"trivial-action hypothesis failed; direct pullback estimate returned"}});
    return out;
  }

  /* level of the corner space = level of the homotopy fibre (E -> point) */
  const FieldSpec& f = q.X_alg->field();
  PullbackProblem fib;
  fib.E_alg = point_algebra(f);
  fib.B_alg = q.B_alg;
  fib.X_alg = q.X_alg;
  fib.q_star = AlgebraMap::zero(q.B_alg, fib.E_alg);
  fib.phi_star = q.phi_star;

  bool equated = q.E_alg->num_gens() > 0;
  Provenance equate_note{"note", "P4.3.1", bounds,
                         tri.caveats}; /* records the bounded trivial-action window */
  equate_note.caveats.push_back("level equated with the homotopy fibre");

  if (q.X_alg->is_polynomial() && q.X_alg->generators_even()) {
    auto dtf = make_derived_tensor(fib, bounds.d_max);
    auto table = dtf->homology_table();
    int top = 0, band = 1;
    for (const auto& [key, dim] : table) top = std::max(top, key.first + key.second);
    for (int d : dtf->su_degrees()) band = std::max(band, d);
    for (const auto& g : q.X_alg->gens()) band = std::max(band, g.degree);
    if (top <= bounds.d_max - band) {
      int qdim = 0;
      for (const auto& [d, k] : q.X_alg->indecomposable_dims()) qdim += k;
      LevelResult out = LevelResult::exact(qdim + 1);
      out.provenance.push_back(
          {"exact", "P4.3.2", bounds,
           {"fibre homology verified finite within total degree <= " +
            std::to_string(bounds.d_max)}});
      if (equated) out.provenance.push_back(equate_note);
      return out;
    }
  }

  LevelResult out = pullback_level_bound(fib, bounds);
  if (equated) out.provenance.push_back(equate_note);
  return out;
}

LevelResult formal_fibration_level(const AlgebraPtr& base_alg, const GradedModule& total_module,
                                   BoundSpec bounds) {
  LevelResult out = level_graded_module(base_alg, total_module, bounds);
  for (auto& pr : out.provenance) pr.tag = "P5.2";
  out.provenance.push_back(
      {"note", "P5.2", bounds, {"formalizability of the fibration asserted by the caller"}});
  return out;
}

/* ------------------------------------------------------------------ */
/* Chain-level sandwich                                                */
/* ------------------------------------------------------------------ */

LevelResult chain_level_sandwich(const ChainProblem& p, BoundSpec bounds) {
  if (!p.fibre_homology || p.fibre_homology->alg() != p.loop_homology)
    throw SchemaError("chain problem: the fibre homology must be a module over the loop homology");
  PresentedView view(p.fibre_homology);
  Resolution r = minimal_free_resolution(view, bounds);
  Bound g = grade(r);
  Bound pd = projective_dimension(r);

  int lower = g.value + 1;
  Provenance low{"lower", "T6.1", bounds, {}};
  low.caveats.push_back(g.is_exact()
                            ? "grade certificate: nonzero Ext at step " + std::to_string(g.value)
                            : "grade bounded below only within the window");
  auto total = p.total_cohomology->total_dim();
  if (p.fibre_is_point && total) {
    int cup = p.total_cohomology->cup_length();
    if (cup + 1 > lower) {
      lower = cup + 1;
      low.caveats.push_back("raised by the cup-length route (trivial fibre module)");
    }
  }
  low.caveats.push_back("Ecat not computed; it sits between grade and level - 1");

  std::optional<int> upper;
  std::string upper_note;
  if (total) {
    upper = static_cast<int>(*total);
    upper_note = "dim H*(X) = " + std::to_string(*upper);
  }
  if (pd.is_exact() && (!upper || pd.value + 1 < *upper)) {
    upper = pd.value + 1;
    upper_note = "pd + 1 with Tor finiteness verified within internal degree <= " +
                 std::to_string(bounds.d_max);
  }

  if (!upper) {
    LevelResult out = LevelResult::lower_only(lower);
    out.provenance.push_back(low);
    out.provenance.push_back(
        {"note", "T6.1", bounds,
         {"total cohomology is infinite-dimensional and the resolution did not terminate; "
          "no upper bound certified"}});
    return out;
  }
  if (lower > *upper)
    throw CrossCheckError("chain sandwich: certified lower endpoint " + std::to_string(lower) +
                          " exceeds certified upper endpoint " + std::to_string(*upper));
  LevelResult out = LevelResult::interval(lower, *upper);
  out.provenance.push_back(low);
  out.provenance.push_back({"upper", "T6.1", bounds, {upper_note}});
  return out;
}

/* ------------------------------------------------------------------ */
/* Torus reduction                                                     */
/* ------------------------------------------------------------------ */

TorusReductionReport torus_reduction_check(const PullbackProblem& full_problem,
                                           const PullbackProblem& torus_problem,
                                           const std::vector<FreenessWitness>& splittings,
                                           BoundSpec bounds) {
  for (const auto& w : splittings) verify_freeness_witness(w, bounds.d_max);

  TorusReductionReport rep;
  rep.full = derived_tensor_level(full_problem, bounds);
  rep.torus = derived_tensor_level(torus_problem, bounds);
  rep.equal = rep.full.same_endpoints(rep.torus);
  if (!rep.equal)
    rep.mismatch = "full side " + rep.full.str() + " vs torus side " + rep.torus.str();
  rep.caveats.push_back(
      splittings.empty()
          ? "no splitting witnesses supplied"
          : std::to_string(splittings.size()) +
                " splitting witness(es) verified degreewise to degree " +
                std::to_string(bounds.d_max));
  return rep;
}

/* ------------------------------------------------------------------ */
/* Homology-route upper bound                                          */
/* ------------------------------------------------------------------ */

LevelResult upper_by_homology(const AlgebraPtr& a, const GradedModule& dg_homology,
                              BoundSpec bounds) {
  LevelResult g = level_graded_module(a, dg_homology, bounds);
  if (g.has_upper()) {
    LevelResult out = g.upper <= 1 ? LevelResult::exact(g.upper)
                                   : LevelResult::interval(1, g.upper);
    out.provenance.push_back(
        {"upper", "L7.1", bounds,
         {"upper bound via the graded level of the homology; the DG level may be strictly "
          "smaller"}});
    return out;
  }
  LevelResult out = LevelResult::lower_only(1);
  out.provenance.push_back(
      {"note", "L7.1", bounds,
       {"homology-route upper bound unavailable: the resolution of the homology did not "
        "terminate within n_max = " +
        std::to_string(bounds.n_max)}});
  return out;
}

}  // namespace lvl
