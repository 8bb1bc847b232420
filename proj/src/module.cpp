#include "lvl/module.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace lvl {

bool same_algebra(const GradedAlgebra& a, const GradedAlgebra& b) {
  if (!(a.field() == b.field()) || a.num_gens() != b.num_gens()) return false;
  for (int i = 0; i < a.num_gens(); ++i)
    if (a.gen(i).name != b.gen(i).name || a.gen(i).degree != b.gen(i).degree) return false;
  return a.relations() == b.relations() &&
         a.char2_odd_square_allowed() == b.char2_odd_square_allowed();
}

/* ---- FreeModule ---- */

FreeModule::FreeModule(AlgebraPtr alg, std::vector<int> gen_degrees)
    : alg_(std::move(alg)), degs_(std::move(gen_degrees)) {}

int FreeModule::lowest_degree() const {
  int lo = 0;
  for (size_t k = 0; k < degs_.size(); ++k)
    lo = k == 0 ? degs_[k] : std::min(lo, degs_[k]);
  return lo;
}

const std::vector<FreeModule::Term>& FreeModule::basis(int d) const {
  auto it = basis_cache_.find(d);
  if (it != basis_cache_.end()) return it->second;
  std::vector<Term> out;
  for (int k = 0; k < num_gens(); ++k)
    for (auto& m : alg_->basis(d - degs_[k])) out.push_back({m, k});
  return basis_cache_.emplace(d, std::move(out)).first->second;
}

int FreeModule::index(int d, const Exponents& mono, int gen) const {
  int off = 0;
  for (int k = 0; k < gen; ++k) off += alg_->dim(d - degs_[k]);
  int i = alg_->basis_index(d - degs_[gen], mono);
  return i < 0 ? -1 : off + i;
}

static bool modterm_before(const ModTerm& a, const ModTerm& b) {
  if (a.gen != b.gen) return a.gen < b.gen;
  return mono_before(a.mono, b.mono);
}

ModElement FreeModule::canonical(ModElement v) const {
  const FieldSpec& f = alg_->field();
  ModElement kept;
  for (auto& t : v) {
    if (f.is_zero(t.coeff) || alg_->mono_is_zero(t.mono)) continue;
    kept.push_back(t);
  }
  std::sort(kept.begin(), kept.end(), modterm_before);
  ModElement out;
  for (auto& t : kept) {
    if (!out.empty() && out.back().gen == t.gen && out.back().mono == t.mono) {
      out.back().coeff = f.add(out.back().coeff, t.coeff);
      if (f.is_zero(out.back().coeff)) out.pop_back();
    } else {
      out.push_back(t);
    }
  }
  return out;
}

ModElement FreeModule::add(const ModElement& a, const ModElement& b) const {
  ModElement v = a;
  v.insert(v.end(), b.begin(), b.end());
  return canonical(std::move(v));
}

ModElement FreeModule::scale(const Scalar& c, const ModElement& v) const {
  const FieldSpec& f = alg_->field();
  if (f.is_zero(c)) return {};
  ModElement out = v;
  for (auto& t : out) t.coeff = f.mul(c, t.coeff);
  return out;
}

ModElement FreeModule::mul_mono(const Exponents& m, const ModElement& v) const {
  const FieldSpec& f = alg_->field();
  ModElement out;
  for (auto& t : v) {
    auto prod = alg_->mono_mul(m, t.mono);
    if (!prod) continue;
    Scalar c = prod->first < 0 ? f.neg(t.coeff) : t.coeff;
    out.push_back({prod->second, t.gen, std::move(c)});
  }
  return canonical(std::move(out));
}

ModElement FreeModule::mul_element(const Element& a, const ModElement& v) const {
  ModElement out;
  for (auto& [m, c] : a.terms) out = add(out, scale(c, mul_mono(m, v)));
  return out;
}

SparseVec FreeModule::coords(const ModElement& v, int d) const {
  SparseVec out;
  for (auto& t : v) {
    int i = index(d, t.mono, t.gen);
    if (i < 0) throw std::logic_error("free module: term outside degree-" + std::to_string(d) + " basis");
    out.emplace_back(i, t.coeff);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

ModElement FreeModule::from_coords(int d, const SparseVec& v) const {
  const auto& b = basis(d);
  ModElement out;
  for (auto& [i, c] : v) out.push_back({b[i].mono, b[i].gen, c});
  return canonical(std::move(out));
}

std::optional<int> FreeModule::degree(const ModElement& v) const {
  if (v.empty()) return std::nullopt;
  int d = alg_->mono_degree(v[0].mono) + degs_[v[0].gen];
  for (auto& t : v)
    if (alg_->mono_degree(t.mono) + degs_[t.gen] != d)
      throw SchemaError("module element is not homogeneous");
  return d;
}

std::string FreeModule::str(const ModElement& v, const std::vector<std::string>& gen_names) const {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& t : v) {
    if (!first) os << " + ";
    first = false;
    os << alg_->el_str(Element{{{t.mono, t.coeff}}}) << "*";
    if (t.gen < static_cast<int>(gen_names.size()))
      os << gen_names[t.gen];
    else
      os << "e" << t.gen;
  }
  return os.str();
}

/* ---- action helpers ---- */

Mat monomial_action(const DegreewiseModule& m, const Exponents& mono, int d) {
  const GradedAlgebra& a = *m.alg();
  const FieldSpec& f = a.field();
  int cur = d;
  /* start from identity on M^d */
  Mat acc(f, m.dim(d), m.dim(d));
  for (int i = 0; i < m.dim(d); ++i) acc.add_to(i, i, f.one());
  /* the word x_1^{e_1}..x_n^{e_n} acts as L_{x_1} ∘ .. ∘ L_{x_n}: apply the
     last letter first so odd-odd signs come out right */
  for (int g = static_cast<int>(mono.size()) - 1; g >= 0; --g)
    for (int k = 0; k < mono[g]; ++k) {
      acc = m.action(g, cur).mul(acc);
      cur += a.gen(g).degree;
    }
  return acc;
}

Mat element_action(const DegreewiseModule& m, const Element& el, int d) {
  const GradedAlgebra& a = *m.alg();
  const FieldSpec& f = a.field();
  auto deg = a.el_degree(el);
  if (!deg) return Mat(f, 0, m.dim(d)); /* zero element: callers handle shape */
  Mat out(f, m.dim(d + *deg), m.dim(d));
  for (auto& [mono, c] : el.terms) {
    Mat part = monomial_action(m, mono, d);
    for (int r = 0; r < part.rows(); ++r)
      for (auto& [cc, v] : part.row_data()[r]) out.add_to(r, cc, f.mul(c, v));
  }
  return out;
}

/* ---- GradedModule ---- */

GradedModule::GradedModule(AlgebraPtr alg, std::vector<ModGen> gens,
                           std::vector<ModElement> relations)
    : cover_(alg,
             [&] {
               std::vector<int> ds;
               for (auto& g : gens) ds.push_back(g.degree);
               return ds;
             }()),
      gens_(std::move(gens)) {
  for (auto& r : relations) {
    for (auto& t : r) {
      if (t.gen < 0 || t.gen >= static_cast<int>(gens_.size()))
        throw SchemaError("module relation references missing generator");
      if (t.mono.size() != static_cast<size_t>(alg->num_gens()))
        throw SchemaError("module relation monomial arity mismatch");
    }
    ModElement c = cover_.canonical(r);
    if (c.empty()) continue;
    cover_.degree(c); /* throws if mixed */
    relations_.push_back(std::move(c));
  }
}

GradedModule GradedModule::free_module(AlgebraPtr alg, std::vector<ModGen> gens) {
  return GradedModule(std::move(alg), std::move(gens), {});
}

GradedModule GradedModule::trivial_module(AlgebraPtr alg, std::vector<ModGen> gens) {
  std::vector<ModElement> rels;
  for (int g = 0; g < static_cast<int>(gens.size()); ++g)
    for (int i = 0; i < alg->num_gens(); ++i) {
      Exponents e(alg->num_gens(), 0);
      e[i] = 1;
      if (alg->mono_is_zero(e)) continue;
      rels.push_back({{e, g, alg->field().one()}});
    }
  return GradedModule(std::move(alg), std::move(gens), std::move(rels));
}

const RowSpace& GradedModule::relation_space(int d) const {
  auto it = relspan_.find(d);
  if (it != relspan_.end()) return it->second;
  RowSpace rs(alg()->field(), cover_.dim(d));
  for (auto& r : relations_) {
    int dr = *cover_.degree(r);
    if (dr > d) continue;
    for (auto& m : alg()->basis(d - dr)) rs.insert(cover_.coords(cover_.mul_mono(m, r), d));
  }
  return relspan_.emplace(d, std::move(rs)).first->second;
}

const std::vector<int>& GradedModule::quotient_cols(int d) const {
  auto it = qcols_.find(d);
  if (it != qcols_.end()) return it->second;
  const RowSpace& rs = relation_space(d);
  std::vector<int> cols;
  for (int c = 0; c < cover_.dim(d); ++c)
    if (!rs.is_pivot(c)) cols.push_back(c);
  return qcols_.emplace(d, std::move(cols)).first->second;
}

int GradedModule::dim(int d) const { return static_cast<int>(quotient_cols(d).size()); }

std::vector<Scalar> GradedModule::to_quotient(const ModElement& v, int d) const {
  const FieldSpec& f = alg()->field();
  SparseVec r = relation_space(d).residue(cover_.coords(v, d));
  const auto& cols = quotient_cols(d);
  std::vector<Scalar> out(cols.size(), f.zero());
  size_t j = 0;
  for (auto& [c, x] : r) {
    while (j < cols.size() && cols[j] < c) ++j;
    assert(j < cols.size() && cols[j] == c); /* residue is supported on free columns */
    out[j] = x;
  }
  return out;
}

Mat GradedModule::action(int gen, int d) const {
  auto key = std::make_pair(gen, d);
  auto it = action_cache_.find(key);
  if (it != action_cache_.end()) return it->second;
  const FieldSpec& f = alg()->field();
  int dd = d + alg()->gen(gen).degree;
  const auto& cols = quotient_cols(d);
  const auto& fb = cover_.basis(d);
  Mat m(f, dim(dd), dim(d));
  Exponents xg(alg()->num_gens(), 0);
  xg[gen] = 1;
  for (size_t j = 0; j < cols.size(); ++j) {
    ModElement img = cover_.mul_mono(xg, {{fb[cols[j]].mono, fb[cols[j]].gen, f.one()}});
    auto q = to_quotient(img, dd);
    for (size_t i = 0; i < q.size(); ++i) m.add_to(static_cast<int>(i), static_cast<int>(j), q[i]);
  }
  action_cache_.emplace(key, m);
  return m;
}

GradedModule GradedModule::shifted(int s) const {
  std::vector<ModGen> gens = gens_;
  for (auto& g : gens) g.degree -= s;
  return GradedModule(alg(), std::move(gens), relations_);
}

GradedModule GradedModule::direct_sum(const GradedModule& a, const GradedModule& b) {
  if (!same_algebra(*a.alg(), *b.alg()))
    throw SchemaError("direct sum: modules over different algebras");
  std::vector<ModGen> gens = a.gens_;
  gens.insert(gens.end(), b.gens_.begin(), b.gens_.end());
  std::vector<ModElement> rels = a.relations_;
  int off = static_cast<int>(a.gens_.size());
  for (auto r : b.relations_) {
    for (auto& t : r) t.gen += off;
    rels.push_back(std::move(r));
  }
  return GradedModule(a.alg(), std::move(gens), std::move(rels));
}

int GradedModule::max_input_degree() const {
  int d = alg()->max_input_degree();
  for (auto& g : gens_) d = std::max(d, std::abs(g.degree));
  for (auto& r : relations_) d = std::max(d, std::abs(*cover_.degree(r)));
  return d;
}

std::vector<int> GradedModule::hilbert(int lo, int hi) const {
  std::vector<int> out;
  for (int d = lo; d <= hi; ++d) out.push_back(dim(d));
  return out;
}

/* ---- views ---- */

RestrictedView::RestrictedView(AlgebraMap phi, std::shared_ptr<const DegreewiseModule> base)
    : phi_(std::move(phi)), base_(std::move(base)) {
  if (phi_.dst().get() != base_->alg().get() && !same_algebra(*phi_.dst(), *base_->alg()))
    throw SchemaError("restriction: map target is not the module's algebra");
}

Mat RestrictedView::action(int gen, int d) const {
  const Element& im = phi_.image(gen);
  if (im.is_zero()) {
    int deg = phi_.src()->gen(gen).degree;
    return Mat(alg()->field(), base_->dim(d + deg), base_->dim(d));
  }
  return element_action(*base_, im, d);
}

ExplicitModule::ExplicitModule(AlgebraPtr alg, int lo, int hi) : alg_(std::move(alg)), lo_(lo), hi_(hi) {}

void ExplicitModule::set_dim(int d, int n) { dims_[d] = n; }
void ExplicitModule::set_action(int gen, int d, Mat m) { act_.emplace(std::make_pair(gen, d), std::move(m)); }

int ExplicitModule::dim(int d) const {
  if (d < lo_) return 0;
  if (d > hi_) throw std::logic_error("ExplicitModule: dim query beyond window");
  auto it = dims_.find(d);
  return it == dims_.end() ? 0 : it->second;
}

Mat ExplicitModule::action(int gen, int d) const {
  int dd = d + alg_->gen(gen).degree;
  auto it = act_.find({gen, d});
  if (it != act_.end()) return it->second;
  return Mat(alg_->field(), dim(dd), dim(d));
}

/* ---- minimal generators / presentation extraction ---- */

std::vector<std::pair<int, int>> minimal_generators(const DegreewiseModule& m, int d_max) {
  const GradedAlgebra& a = *m.alg();
  std::vector<std::pair<int, int>> out;
  for (int d = m.lowest_degree(); d <= d_max; ++d) {
    int n = m.dim(d);
    if (n == 0) continue;
    RowSpace span(a.field(), n);
    for (int g = 0; g < a.num_gens(); ++g) {
      int dd = d - a.gen(g).degree;
      if (dd < m.lowest_degree() || m.dim(dd) == 0) continue;
      Mat cols = m.action(g, dd).transpose();
      for (auto& row : cols.row_data()) span.insert(row);
    }
    for (int i = 0; i < n; ++i)
      if (span.insert({{i, a.field().one()}})) out.emplace_back(d, i);
  }
  return out;
}

std::vector<std::pair<int, ModElement>> minimal_kernel_generators(
    const FreeModule& cover, const std::function<Mat(int)>& eval, int d_max) {
  const GradedAlgebra& a = *cover.alg();
  const FieldSpec& f = a.field();
  std::map<int, std::vector<SparseVec>> kernel_by_degree;
  std::vector<std::pair<int, ModElement>> out;
  for (int d = cover.lowest_degree(); d <= d_max; ++d) {
    if (cover.dim(d) == 0) continue;
    Mat A = eval(d);
    auto ker = A.kernel_basis();
    RowSpace span(f, cover.dim(d));
    for (int g = 0; g < a.num_gens(); ++g) {
      auto it = kernel_by_degree.find(d - a.gen(g).degree);
      if (it == kernel_by_degree.end()) continue;
      Exponents xg(a.num_gens(), 0);
      xg[g] = 1;
      for (auto& w : it->second) {
        ModElement v = cover.mul_mono(xg, cover.from_coords(d - a.gen(g).degree, w));
        if (!v.empty()) span.insert(cover.coords(v, d));
      }
    }
    for (auto& w : ker) {
      SparseVec r = span.residue(w);
      if (r.empty()) continue;
      out.emplace_back(d, cover.from_coords(d, r));
      span.insert(r);
    }
    kernel_by_degree.emplace(d, std::move(ker));
  }
  return out;
}

Mat cover_eval_matrix(const DegreewiseModule& m, const FreeModule& cover,
                      const std::vector<std::pair<int, int>>& gens, int d) {
  const FieldSpec& f = m.alg()->field();
  const auto& fb = cover.basis(d);
  Mat A(f, m.dim(d), static_cast<int>(fb.size()));
  for (size_t j = 0; j < fb.size(); ++j) {
    Mat ma = monomial_action(m, fb[j].mono, gens[fb[j].gen].first);
    int src = gens[fb[j].gen].second;
    for (int r = 0; r < ma.rows(); ++r) {
      Scalar v = ma.get(r, src);
      if (!f.is_zero(v)) A.add_to(r, static_cast<int>(j), v);
    }
  }
  return A;
}

GradedModule extract_presentation(const DegreewiseModule& m, int d_max,
                                  const std::string& gen_prefix) {
  auto mins = minimal_generators(m, d_max);
  std::vector<ModGen> gens;
  std::vector<int> degs;
  for (size_t k = 0; k < mins.size(); ++k) {
    gens.push_back({gen_prefix + std::to_string(k), mins[k].first});
    degs.push_back(mins[k].first);
  }
  FreeModule cover(m.alg(), degs);
  auto eval = [&](int d) { return cover_eval_matrix(m, cover, mins, d); };
  auto rels = minimal_kernel_generators(cover, eval, d_max);
  std::vector<ModElement> relations;
  for (auto& [d, r] : rels) relations.push_back(r);
  return GradedModule(m.alg(), std::move(gens), std::move(relations));
}

GradedModule restrict_module(const AlgebraMap& map, const GradedModule& m, int d_max) {
  auto base = std::make_shared<PresentedView>(std::make_shared<const GradedModule>(m));
  RestrictedView view(map, base);
  return extract_presentation(view, d_max);
}

}  // namespace lvl
