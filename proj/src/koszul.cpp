#include "lvl/koszul.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <set>

#include "lvl/parallel.hpp"

namespace lvl {

namespace {

int popcount(uint32_t m) { return std::popcount(m); }

std::vector<uint32_t> words_grouped_by_size(int m, std::vector<uint32_t>* offsets) {
  std::vector<uint32_t> out;
  out.reserve(1u << m);
  offsets->assign(m + 2, 0);
  for (int s = 0; s <= m; ++s) {
    (*offsets)[s] = static_cast<uint32_t>(out.size());
    for (uint32_t w = 0; w < (1u << m); ++w)
      if (popcount(w) == s) out.push_back(w);
  }
  (*offsets)[m + 1] = static_cast<uint32_t>(out.size());
  return out;
}

}  // namespace

/* ------------------------------------------------------------------ */
/* KoszulComplex                                                       */
/* ------------------------------------------------------------------ */

KoszulComplex::KoszulComplex(std::shared_ptr<const GradedModule> coefficients, int d_max)
    : coeff_(std::move(coefficients)), base_(coeff_->alg()), d_max_(d_max) {
  if (!base_->is_polynomial())
    throw HypothesisError("Koszul path requires polynomial base; use resolve");
  m_ = base_->num_gens();
  if (m_ > 20) throw SchemaError("koszul: at most 20 base generators supported");
  if (d_max_ < 0) throw SchemaError("koszul: d_max must be >= 0");
  j_lo_ = coeff_->lowest_degree();
  words_ = words_grouped_by_size(m_, &words_by_size_offsets_);
}

const uint32_t* KoszulComplex::words_of_size(int s, int* count) const {
  if (s < 0 || s > m_) {
    *count = 0;
    return nullptr;
  }
  *count = static_cast<int>(words_by_size_offsets_[s + 1] - words_by_size_offsets_[s]);
  return words_.data() + words_by_size_offsets_[s];
}

int KoszulComplex::word_degree(uint32_t mask) const {
  int d = 0;
  for (int l = 0; l < m_; ++l)
    if (mask >> l & 1) d += base_->gen(l).degree;
  return d;
}

int KoszulComplex::dim(int s, int j) const {
  int count = 0;
  const uint32_t* ws = words_of_size(s, &count);
  int d = 0;
  for (int k = 0; k < count; ++k) {
    int md = j - word_degree(ws[k]);
    if (md >= j_lo_) d += coeff_->dim(md);
  }
  return d;
}

Mat KoszulComplex::delta(int s, int j) const {
  const FieldSpec& f = base_->field();
  auto mdim = [&](int d) { return d < j_lo_ ? 0 : coeff_->dim(d); };
  int scount = 0, tcount = 0;
  const uint32_t* sw = words_of_size(s, &scount);
  const uint32_t* tw = words_of_size(s - 1, &tcount);
  /* column/row offsets per word block */
  std::vector<int> sbase(scount + 1, 0);
  for (int k = 0; k < scount; ++k)
    sbase[k + 1] = sbase[k] + mdim(j - word_degree(sw[k]));
  std::map<uint32_t, int> tbase;
  int trows = 0;
  for (int k = 0; k < tcount; ++k) {
    tbase[tw[k]] = trows;
    trows += mdim(j - word_degree(tw[k]));
  }
  std::vector<std::tuple<int, int, Scalar>> ts;
  for (int k = 0; k < scount; ++k) {
    uint32_t S = sw[k];
    int dS = j - word_degree(S);
    if (mdim(dS) == 0) continue;
    int pos = 0;
    for (int l = 0; l < m_; ++l) {
      if (!(S >> l & 1)) continue;
      bool negate = (pos & 1) != 0;
      ++pos;
      Mat act = coeff_->action(l, dS);
      int tb = tbase.at(S & ~(1u << l));
      for (int r = 0; r < act.rows(); ++r)
        for (const auto& [c, v] : act.row_data()[r])
          ts.emplace_back(tb + r, sbase[k] + c, negate ? f.neg(v) : v);
    }
  }
  return Mat::from_triplets(f, trows, sbase[scount], ts);
}

bool KoszulComplex::square_zero(int j) const {
  for (int s = 2; s <= m_; ++s)
    if (delta(s - 1, j).mul(delta(s, j)).nnz() != 0) return false;
  return true;
}

int KoszulComplex::delta_rank(int s, int j) const {
  if (s < 1 || s > m_) return 0;
  auto key = std::make_pair(s, j);
  auto it = rank_cache_.find(key);
  if (it != rank_cache_.end()) return it->second;
  int r = delta(s, j).rank();
  rank_cache_[key] = r;
  return r;
}

int KoszulComplex::homology_dim(int s, int j) const {
  int d = dim(s, j);
  if (d == 0) return 0;
  return d - delta_rank(s, j) - delta_rank(s + 1, j);
}

TorTable koszul_tor_impl(const std::shared_ptr<const GradedModule>& coefficients, int d_max,
                         bool parallel) {
  KoszulComplex kc(coefficients, d_max);
  const auto& M = kc.coeff_;
  int m = kc.m_, j_lo = kc.j_lo_;
  int width = d_max - j_lo + 1;
  TorTable t;
  t.bounds = {m, d_max};
  t.terminated = true; /* the complex is exact beyond homological degree m */
  if (width <= 0) return t;

  /* warm shared caches so the sweep below only reads them */
  for (int d = j_lo; d <= d_max; ++d) {
    M->dim(d);
    for (int g = 0; g < m; ++g)
      if (d + kc.base_->gen(g).degree <= d_max) M->action(g, d);
  }

  std::vector<std::vector<int>> ranks(m + 2, std::vector<int>(width, 0));
  std::vector<std::pair<int, int>> cells;
  for (int s = 1; s <= m; ++s)
    for (int j = j_lo; j <= d_max; ++j) cells.emplace_back(s, j);

  if (parallel) {
    int nt = par::thread_cap();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
    for (int64_t k = 0; k < static_cast<int64_t>(cells.size()); ++k) {
      auto [s, j] = cells[k];
      ranks[s][j - j_lo] = kc.delta(s, j).rank();
    }
    (void)nt;
  } else {
    for (auto [s, j] : cells) ranks[s][j - j_lo] = kc.delta(s, j).rank();
  }

  for (int s = 0; s <= m; ++s)
    for (int j = j_lo; j <= d_max; ++j) {
      int h = kc.dim(s, j) - ranks[s][j - j_lo] - ranks[s + 1][j - j_lo];
      if (h > 0) t.entries[{s, j}] = h;
    }
  return t;
}

TorTable koszul_tor(const std::shared_ptr<const GradedModule>& coefficients, int d_max) {
  return koszul_tor_impl(coefficients, d_max, true);
}

TorTable koszul_tor_serial(const std::shared_ptr<const GradedModule>& coefficients, int d_max) {
  return koszul_tor_impl(coefficients, d_max, false);
}

/* ------------------------------------------------------------------ */
/* Word complex engine for derived tensors                             */
/* ------------------------------------------------------------------ */

namespace {

/* The complex spanned by a subset of exterior words inside
   L ⊗ Λ(su) ⊗ R, with the differential projected back to the subset.
   Used for the full derived tensor (all words), filtration subquotients
   (one step's words), and gamma subcomplexes. */
struct WordComplex {
  FieldSpec f;
  AlgebraPtr left;
  AlgebraPtr right;
  std::vector<int> su_deg;
  std::vector<Element> lambda;
  std::vector<Element> rho;
  std::vector<uint32_t> words; /* sorted by (size, mask) */
  std::set<uint32_t> word_set;

  struct Item {
    uint32_t mask;
    int dl; /* left internal degree */
    int li; /* index into left basis(dl) */
    int ri; /* index into right basis(jr) */
  };
  struct Cell {
    int dim = 0;
    std::vector<Item> items;
    /* (mask, dl) -> (base index, right-block dimension) */
    std::map<std::pair<uint32_t, int>, std::pair<int, int>> blocks;
  };
  struct HomCell {
    std::vector<std::vector<Scalar>> reps; /* cycle representatives, dense */
    RowSpace image;                        /* boundary space, full-reduced */
    Mat solve_mat;                         /* columns = residues of reps */
    HomCell(FieldSpec fs, int dim) : image(fs, dim), solve_mat(fs, 0, 0) {}
  };

  mutable std::map<std::pair<int, int>, Cell> cells;
  mutable std::map<std::pair<int, int>, int> ranks;
  mutable std::map<std::pair<int, int>, HomCell> homs;

  WordComplex(AlgebraPtr l, AlgebraPtr r, std::vector<int> sd, std::vector<Element> la,
              std::vector<Element> rh, std::vector<uint32_t> ws)
      : f(l->field()),
        left(std::move(l)),
        right(std::move(r)),
        su_deg(std::move(sd)),
        lambda(std::move(la)),
        rho(std::move(rh)),
        words(std::move(ws)) {
    std::sort(words.begin(), words.end(), [](uint32_t a, uint32_t b) {
      return std::make_pair(popcount(a), a) < std::make_pair(popcount(b), b);
    });
    word_set.insert(words.begin(), words.end());
  }

  int letters() const { return static_cast<int>(su_deg.size()); }

  int word_degree(uint32_t mask) const {
    int d = 0;
    for (int l = 0; l < letters(); ++l)
      if (mask >> l & 1) d += su_deg[l];
    return d;
  }

  std::vector<int> sizes_present() const {
    std::set<int> s;
    for (uint32_t w : words) s.insert(popcount(w));
    return {s.begin(), s.end()};
  }

  const Cell& cell(int s, int j) const {
    auto key = std::make_pair(s, j);
    auto it = cells.find(key);
    if (it != cells.end()) return it->second;
    Cell c;
    for (uint32_t w : words) {
      if (popcount(w) != s) continue;
      int wd = word_degree(w);
      for (int dl = 0; dl + wd <= j; ++dl) {
        int jr = j - wd - dl;
        int ld = left->dim(dl), rd = right->dim(jr);
        if (ld == 0 || rd == 0) continue;
        c.blocks[{w, dl}] = {c.dim, rd};
        for (int li = 0; li < ld; ++li)
          for (int ri = 0; ri < rd; ++ri) c.items.push_back({w, dl, li, ri});
        c.dim += ld * rd;
      }
    }
    return cells.emplace(key, std::move(c)).first->second;
  }

  /* δ : C_{s,j} -> C_{s-1,j}, projected to the word subset */
  Mat build_delta(int s, int j) const {
    const Cell& src = cell(s, j);
    const Cell& tgt = cell(s - 1, j);
    std::vector<std::tuple<int, int, Scalar>> ts;
    for (int idx = 0; idx < src.dim; ++idx) {
      const Item& it = src.items[idx];
      const Exponents& a = left->basis(it.dl)[it.li];
      int jr = j - word_degree(it.mask) - it.dl;
      const Exponents& b = right->basis(jr)[it.ri];
      int pos = 0;
      for (int l = 0; l < letters(); ++l) {
        if (!(it.mask >> l & 1)) continue;
        bool negate = (pos & 1) != 0;
        ++pos;
        uint32_t wm = it.mask & ~(1u << l);
        if (!word_set.count(wm)) continue;
        int du = su_deg[l];
        if (!lambda[l].is_zero()) {
          Element prod = left->el_mul(left->el_mono(a), lambda[l]);
          for (const auto& [e, cf] : prod.terms) {
            int dl2 = it.dl + du;
            int li2 = left->basis_index(dl2, e);
            auto bit = tgt.blocks.find({wm, dl2});
            if (li2 < 0 || bit == tgt.blocks.end()) continue;
            int row = bit->second.first + li2 * bit->second.second + it.ri;
            ts.emplace_back(row, idx, negate ? f.neg(cf) : cf);
          }
        }
        if (!rho[l].is_zero()) {
          Element prod = right->el_mul(rho[l], right->el_mono(b));
          for (const auto& [e, cf] : prod.terms) {
            int ri2 = right->basis_index(jr + du, e);
            auto bit = tgt.blocks.find({wm, it.dl});
            if (ri2 < 0 || bit == tgt.blocks.end()) continue;
            int row = bit->second.first + it.li * bit->second.second + ri2;
            ts.emplace_back(row, idx, negate ? cf : f.neg(cf));
          }
        }
      }
    }
    return Mat::from_triplets(f, tgt.dim, src.dim, ts);
  }

  int rank(int s, int j) const {
    if (s < 1) return 0;
    auto key = std::make_pair(s, j);
    auto it = ranks.find(key);
    if (it != ranks.end()) return it->second;
    int r = cell(s, j).dim == 0 ? 0 : build_delta(s, j).rank();
    ranks[key] = r;
    return r;
  }

  int hom_dim(int s, int j) const {
    int d = cell(s, j).dim;
    if (d == 0) return 0;
    return d - rank(s, j) - rank(s + 1, j);
  }

  const HomCell& hom(int s, int j) const {
    auto key = std::make_pair(s, j);
    auto it = homs.find(key);
    if (it != homs.end()) return it->second;
    const Cell& c = cell(s, j);
    HomCell h(f, c.dim);
    Mat dout_t = build_delta(s + 1, j).transpose();
    for (const auto& row : dout_t.row_data()) h.image.insert(row);
    RowSpace repspan(f, c.dim);
    std::vector<SparseVec> residues;
    if (c.dim > 0) {
      for (const auto& kv : build_delta(s, j).kernel_basis()) {
        SparseVec r = h.image.residue(kv);
        if (r.empty() || !repspan.insert(r)) continue;
        h.reps.push_back(dense_from_sparse(f, kv, c.dim));
        residues.push_back(std::move(r));
      }
    }
    std::vector<std::tuple<int, int, Scalar>> ts;
    for (size_t k = 0; k < residues.size(); ++k)
      for (const auto& [row, v] : residues[k]) ts.emplace_back(row, static_cast<int>(k), v);
    h.solve_mat = Mat::from_triplets(f, c.dim, static_cast<int>(residues.size()), ts);
    assert(static_cast<int>(h.reps.size()) == hom_dim(s, j));
    return homs.emplace(key, std::move(h)).first->second;
  }

  /* homology coordinates of a cycle (throws if not a cycle mod boundaries) */
  std::vector<Scalar> to_coords(int s, int j, const std::vector<Scalar>& v) const {
    const HomCell& h = hom(s, j);
    int n = static_cast<int>(h.reps.size());
    SparseVec res = h.image.residue(sparse_from_dense(f, v));
    if (res.empty()) return std::vector<Scalar>(n, f.zero());
    auto sol = h.solve_mat.solve(dense_from_sparse(f, res, static_cast<int>(v.size())));
    if (!sol) throw std::logic_error("word complex: vector is not a cycle modulo boundaries");
    return *sol;
  }

  /* multiply the right-hand factor on the left by el (degree de) */
  std::vector<Scalar> right_mult(int s, int j, const std::vector<Scalar>& v, const Element& el,
                                 int de) const {
    const Cell& src = cell(s, j);
    const Cell& tgt = cell(s, j + de);
    std::vector<Scalar> out(tgt.dim, f.zero());
    for (int idx = 0; idx < src.dim; ++idx) {
      if (f.is_zero(v[idx])) continue;
      const Item& it = src.items[idx];
      int jr = j - word_degree(it.mask) - it.dl;
      Element prod = right->el_mul(el, right->el_mono(right->basis(jr)[it.ri]));
      for (const auto& [e, cf] : prod.terms) {
        int ri2 = right->basis_index(jr + de, e);
        auto bit = tgt.blocks.find({it.mask, it.dl});
        if (ri2 < 0 || bit == tgt.blocks.end()) continue;
        int row = bit->second.first + it.li * bit->second.second + ri2;
        out[row] = f.add(out[row], f.mul(cf, v[idx]));
      }
    }
    return out;
  }

  /* multiply the left-hand factor on the left by el (degree de) */
  std::vector<Scalar> left_mult(int s, int j, const std::vector<Scalar>& v, const Element& el,
                                int de) const {
    const Cell& src = cell(s, j);
    const Cell& tgt = cell(s, j + de);
    std::vector<Scalar> out(tgt.dim, f.zero());
    for (int idx = 0; idx < src.dim; ++idx) {
      if (f.is_zero(v[idx])) continue;
      const Item& it = src.items[idx];
      Element prod = left->el_mul(el, left->el_mono(left->basis(it.dl)[it.li]));
      for (const auto& [e, cf] : prod.terms) {
        int dl2 = it.dl + de;
        int li2 = left->basis_index(dl2, e);
        auto bit = tgt.blocks.find({it.mask, dl2});
        if (li2 < 0 || bit == tgt.blocks.end()) continue;
        int row = bit->second.first + li2 * bit->second.second + it.ri;
        out[row] = f.add(out[row], f.mul(cf, v[idx]));
      }
    }
    return out;
  }

  bool square_zero(int j) const {
    int m = letters();
    for (int s = 2; s <= m; ++s)
      if (build_delta(s - 1, j).mul(build_delta(s, j)).nnz() != 0) return false;
    return true;
  }
};

/* Homology of a word complex as a degreewise module over `ground`, acting
   through mu : ground -> right on the right-hand factor; graded by total
   degree n = j - s, valid on [0, n_hi]. */
std::shared_ptr<ExplicitModule> homology_module(const WordComplex& wc, AlgebraPtr ground,
                                                const AlgebraMap& mu, int n_hi) {
  const FieldSpec& f = wc.f;
  auto sizes = wc.sizes_present();
  auto em = std::make_shared<ExplicitModule>(ground, 0, n_hi);
  for (int n = 0; n <= n_hi; ++n) {
    int d = 0;
    for (int s : sizes) d += wc.hom_dim(s, n + s);
    em->set_dim(n, d);
  }
  for (int g = 0; g < ground->num_gens(); ++g) {
    const Element& el = mu.image(g);
    if (el.is_zero()) continue; /* zero action matrices are the default */
    int dg = ground->gen(g).degree;
    for (int n = 0; n + dg <= n_hi; ++n) {
      Mat M(f, em->dim(n + dg), em->dim(n));
      int off_src = 0;
      for (int s : sizes) {
        int h_src = wc.hom_dim(s, n + s);
        int off_tgt = 0;
        for (int s2 : sizes) {
          if (s2 >= s) break;
          off_tgt += wc.hom_dim(s2, n + dg + s2);
        }
        for (int k = 0; k < h_src; ++k) {
          auto w = wc.right_mult(s, n + s, wc.hom(s, n + s).reps[k], el, dg);
          auto coords = wc.to_coords(s, n + dg + s, w);
          for (size_t r = 0; r < coords.size(); ++r)
            if (!f.is_zero(coords[r]))
              M.add_to(off_tgt + static_cast<int>(r), off_src + k, coords[r]);
        }
        off_src += h_src;
      }
      em->set_action(g, n, std::move(M));
    }
  }
  return em;
}

}  // namespace

/* ------------------------------------------------------------------ */
/* DerivedTensor                                                       */
/* ------------------------------------------------------------------ */

struct DerivedTensor::Engine {
  WordComplex wc;
};

DerivedTensor::DerivedTensor(AlgebraPtr left, AlgebraPtr right, std::vector<int> su_degrees,
                             std::vector<Element> lambda, std::vector<Element> rho, int d_max)
    : left_(std::move(left)),
      right_(std::move(right)),
      su_degrees_(std::move(su_degrees)),
      lambda_(std::move(lambda)),
      rho_(std::move(rho)),
      d_max_(d_max) {
  if (d_max_ < 0) throw SchemaError("derived tensor: d_max must be >= 0");
  int m = static_cast<int>(su_degrees_.size());
  if (m > 20) throw SchemaError("derived tensor: at most 20 exterior letters supported");
  std::vector<uint32_t> words;
  for (uint32_t w = 0; w < (1u << m); ++w) words.push_back(w);
  engine_ = std::make_unique<Engine>(
      Engine{WordComplex(left_, right_, su_degrees_, lambda_, rho_, std::move(words))});
}

DerivedTensor::~DerivedTensor() = default;

std::shared_ptr<DerivedTensor> DerivedTensor::of_maps(AlgebraPtr E_alg, AlgebraPtr B_alg,
                                                      AlgebraPtr X_alg, const AlgebraMap& q_star,
                                                      const AlgebraMap& phi_star, int d_max) {
  if (!B_alg->is_polynomial())
    throw HypothesisError("derived tensor: middle algebra must be polynomial");
  if (q_star.src().get() != B_alg.get() || q_star.dst().get() != E_alg.get())
    throw SchemaError("derived tensor: q* must map the middle algebra to the left algebra");
  if (phi_star.src().get() != B_alg.get() || phi_star.dst().get() != X_alg.get())
    throw SchemaError("derived tensor: phi* must map the middle algebra to the right algebra");
  std::vector<int> degs;
  std::vector<Element> lambda, rho;
  for (int i = 0; i < B_alg->num_gens(); ++i) {
    degs.push_back(B_alg->gen(i).degree);
    lambda.push_back(q_star.image(i));
    rho.push_back(phi_star.image(i));
  }
  return std::shared_ptr<DerivedTensor>(new DerivedTensor(
      std::move(E_alg), std::move(X_alg), std::move(degs), std::move(lambda), std::move(rho),
      d_max));
}

std::shared_ptr<DerivedTensor> DerivedTensor::of_loop_weights(AlgebraPtr X_alg,
                                                              std::vector<int> sz_degrees,
                                                              std::vector<Element> weights,
                                                              int d_max) {
  if (sz_degrees.size() != weights.size())
    throw SchemaError("derived tensor: one weight per exterior letter required");
  const FieldSpec& f = X_alg->field();
  auto trivial = std::make_shared<GradedAlgebra>(f, std::vector<Generator>{},
                                                 std::vector<Exponents>{});
  std::vector<Element> lambda(sz_degrees.size());
  std::vector<Element> rho;
  for (size_t i = 0; i < weights.size(); ++i) {
    if (sz_degrees[i] < 2 || sz_degrees[i] % 2 != 0)
      throw SchemaError("derived tensor: letter degrees must be even and >= 2");
    if (!weights[i].is_zero()) {
      auto d = X_alg->el_degree(weights[i]);
      if (!d || *d != sz_degrees[i])
        throw SchemaError("derived tensor: weight degree must match its letter");
    }
    /* δ(sz_i) = w_i is encoded as ρ_i = -w_i in the common differential */
    rho.push_back(X_alg->el_scale(f.neg(f.one()), weights[i]));
  }
  return std::shared_ptr<DerivedTensor>(new DerivedTensor(
      std::move(trivial), std::move(X_alg), std::move(sz_degrees), std::move(lambda),
      std::move(rho), d_max));
}

int DerivedTensor::dim(int s, int j) const { return engine_->wc.cell(s, j).dim; }

Mat DerivedTensor::delta(int s, int j) const { return engine_->wc.build_delta(s, j); }

bool DerivedTensor::square_zero(int j) const { return engine_->wc.square_zero(j); }

int DerivedTensor::homology_dim(int s, int j) const { return engine_->wc.hom_dim(s, j); }

std::map<std::pair<int, int>, int> DerivedTensor::homology_table_serial() const {
  std::map<std::pair<int, int>, int> out;
  int m = letters();
  for (int s = 0; s <= m; ++s)
    for (int j = 0; j <= d_max_; ++j) {
      int h = engine_->wc.hom_dim(s, j);
      if (h > 0) out[{-s, j}] = h;
    }
  return out;
}

std::map<std::pair<int, int>, int> DerivedTensor::homology_table() const {
  const WordComplex& wc = engine_->wc;
  int m = letters();
  /* warm every shared cache serially so the parallel rank sweep only reads */
  for (int d = 0; d <= d_max_; ++d) {
    left_->dim(d);
    right_->dim(d);
  }
  for (int s = 0; s <= m; ++s)
    for (int j = 0; j <= d_max_; ++j) wc.cell(s, j);
  std::vector<std::vector<int>> ranks(m + 2, std::vector<int>(d_max_ + 1, 0));
  std::vector<std::pair<int, int>> cells;
  for (int s = 1; s <= m; ++s)
    for (int j = 0; j <= d_max_; ++j)
      if (wc.cell(s, j).dim > 0) cells.emplace_back(s, j);
  int nt = par::thread_cap();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
  for (int64_t k = 0; k < static_cast<int64_t>(cells.size()); ++k) {
    auto [s, j] = cells[k];
    ranks[s][j] = wc.build_delta(s, j).rank();
  }
  (void)nt;
  std::map<std::pair<int, int>, int> out;
  for (int s = 0; s <= m; ++s)
    for (int j = 0; j <= d_max_; ++j) {
      int h = wc.cell(s, j).dim - ranks[s][j] - ranks[s + 1][j];
      if (h > 0) out[{-s, j}] = h;
    }
  return out;
}

GradedModule DerivedTensor::homology_presentation(int n_hi) const {
  auto em = homology_module(engine_->wc, right_, AlgebraMap::identity(right_), n_hi);
  return extract_presentation(*em, n_hi, "h");
}

bool DerivedTensor::left_mult_kills_homology(const Element& x, int n_hi,
                                             std::pair<int, int>* witness) const {
  if (x.is_zero()) return true;
  const WordComplex& wc = engine_->wc;
  int de = *left_->el_degree(x);
  for (int n = 0; n <= n_hi; ++n)
    for (int s = 0; s <= letters(); ++s) {
      int j = n + s;
      const auto& h = wc.hom(s, j);
      for (const auto& rep : h.reps) {
        auto w = wc.left_mult(s, j, rep, x, de);
        auto coords = wc.to_coords(s, j + de, w);
        bool zero = true;
        for (const auto& c : coords)
          if (!wc.f.is_zero(c)) zero = false;
        if (!zero) {
          if (witness) *witness = {-s, j};
          return false;
        }
      }
    }
  return true;
}

std::string word_label(uint32_t mask, const std::string& prefix) {
  if (mask == 0) return "1";
  std::string out;
  for (int l = 0; l < 32; ++l) {
    if (!(mask >> l & 1)) continue;
    if (!out.empty()) out += "*";
    out += prefix + std::to_string(l + 1);
  }
  return out;
}

/* ------------------------------------------------------------------ */
/* Filtrations                                                         */
/* ------------------------------------------------------------------ */

namespace {

/* the subcomplex left ⊗ Λ(su_γ : γ ∈ gamma) with δ(su_γ) = λ_γ */
WordComplex gamma_subcomplex(const DerivedTensor& dt, const std::vector<int>& gamma) {
  auto trivial = std::make_shared<GradedAlgebra>(dt.field(), std::vector<Generator>{},
                                                 std::vector<Exponents>{});
  std::vector<int> degs;
  std::vector<Element> lambda, rho;
  for (int g : gamma) {
    degs.push_back(dt.su_degrees()[g]);
    lambda.push_back(dt.left_mult(g));
    rho.push_back(Element{});
  }
  int m = static_cast<int>(gamma.size());
  std::vector<uint32_t> words;
  for (uint32_t w = 0; w < (1u << m); ++w) words.push_back(w);
  return WordComplex(dt.left(), trivial, std::move(degs), std::move(lambda), std::move(rho),
                     std::move(words));
}

}  // namespace

FiltrationCertificate koszul_filtration(std::shared_ptr<const DerivedTensor> dt,
                                        const std::vector<int>& gamma) {
  int m = dt->letters();
  uint32_t gmask = 0;
  for (int g : gamma) {
    if (g < 0 || g >= m) throw SchemaError("koszul_filtration: gamma index out of range");
    if (!dt->right_mult(g).is_zero())
      throw HypothesisError("koszul_filtration: gamma must lie in Ker phi*: letter " +
                            std::to_string(g + 1) + " has nonzero phi* image");
    gmask |= 1u << g;
  }
  std::vector<int> gdedup;
  for (int g = 0; g < m; ++g)
    if (gmask >> g & 1) gdedup.push_back(g);

  int l = m - popcount(gmask);
  std::vector<std::vector<uint32_t>> steps(l + 1);
  for (uint32_t w = 0; w < (1u << m); ++w) steps[popcount(w & ~gmask)].push_back(w);

  AlgebraPtr ground = dt->right();
  FiltrationCertificate cert{std::move(dt), std::move(steps), l, ground,
                             AlgebraMap::identity(ground), {}};

  /* bounded verification that H(left ⊗ Λ(sΓ)) is finite-dimensional */
  if (!cert.ambient->left()->top_degree_bound().has_value()) {
    WordComplex sub = gamma_subcomplex(*cert.ambient, gdedup);
    long long total = 0;
    for (int s = 0; s <= static_cast<int>(gdedup.size()); ++s)
      for (int j = 0; j <= cert.ambient->d_max(); ++j) total += sub.hom_dim(s, j);
    cert.caveats.push_back(
        "homology finiteness over the gamma-subalgebra verified only to internal degree " +
        std::to_string(cert.ambient->d_max()) + " (dimension found: " + std::to_string(total) +
        ")");
  }
  return cert;
}

FiltrationCheck check_semifree_filtration(const FiltrationCertificate& cert, int d_max) {
  FiltrationCheck out;
  out.caveats = cert.caveats;
  if (!cert.ambient) {
    out.witness = "certificate has no ambient derived tensor";
    return out;
  }
  const DerivedTensor& dt = *cert.ambient;
  int m = dt.letters();

  /* F^n must be closed under the differential: removing a letter with a
     nonzero multiplier must stay inside the current stage (word level) */
  std::set<uint32_t> seen;
  for (int n = 0; n < cert.steps(); ++n) {
    for (uint32_t w : cert.step_words[n]) seen.insert(w);
    for (uint32_t w : seen) {
      for (int l = 0; l < m; ++l) {
        if (!(w >> l & 1)) continue;
        if (dt.left_mult(l).is_zero() && dt.right_mult(l).is_zero()) continue;
        uint32_t wm = w & ~(1u << l);
        if (!seen.count(wm)) {
          out.witness = "F^" + std::to_string(n) + " is not closed under the differential: δ(" +
                        word_label(w) + ") meets " + word_label(wm) + " outside F^" +
                        std::to_string(n);
          return out;
        }
      }
    }
  }

  /* the steps must partition the full word set */
  std::set<uint32_t> all_words;
  size_t listed = 0;
  for (const auto& ws : cert.step_words) {
    listed += ws.size();
    all_words.insert(ws.begin(), ws.end());
  }
  if (listed != all_words.size()) {
    out.witness = "a word appears in two filtration steps";
    return out;
  }
  if (all_words.size() != (1u << m)) {
    for (uint32_t w = 0; w < (1u << m); ++w)
      if (!all_words.count(w)) {
        out.witness = "filtration is not exhaustive: word " + word_label(w) + " is missing";
        return out;
      }
  }

  /* each subquotient's homology must be degreewise a finite direct sum of
     shifts of the ground algebra */
  std::vector<Element> lambdas, rhos;
  for (int l = 0; l < m; ++l) {
    lambdas.push_back(dt.left_mult(l));
    rhos.push_back(dt.right_mult(l));
  }
  for (int n = 0; n < cert.steps(); ++n) {
    WordComplex sub(dt.left(), dt.right(), dt.su_degrees(), lambdas, rhos, cert.step_words[n]);
    auto em = homology_module(sub, cert.ground, cert.ground_map, d_max);
    auto gens = minimal_generators(*em, d_max);
    SubquotientReport rep;
    rep.step = n;
    rep.rank = static_cast<int>(gens.size());
    for (const auto& [deg, coord] : gens) rep.shift_degrees.push_back(deg);
    for (int d = 0; d <= d_max; ++d) {
      int expect = 0;
      for (int sd : rep.shift_degrees) expect += cert.ground->dim(d - sd);
      if (em->dim(d) != expect) {
        out.witness = "subquotient F^" + std::to_string(n) + "/F^" + std::to_string(n - 1) +
                      " is not degreewise free over the ground algebra: at total degree " +
                      std::to_string(d) + " found dimension " + std::to_string(em->dim(d)) +
                      " but the free module on shifts found so far gives " +
                      std::to_string(expect);
        return out;
      }
    }
    out.subquotients.push_back(std::move(rep));
  }

  out.ok = true;
  out.verified_class = cert.steps() - 1;
  out.caveats.push_back("subquotient freeness verified degreewise to total degree " +
                        std::to_string(d_max));
  return out;
}

/* ------------------------------------------------------------------ */
/* Trivial-action test                                                 */
/* ------------------------------------------------------------------ */

TrivialActionReport trivial_action_test(AlgebraPtr E_alg, AlgebraPtr B_alg,
                                        const AlgebraMap& q_star, const std::vector<int>& gamma,
                                        int d_max) {
  if (q_star.src().get() != B_alg.get() || q_star.dst().get() != E_alg.get())
    throw SchemaError("trivial_action_test: q* must map B to E");
  std::set<int> gset;
  for (int g : gamma) {
    if (g < 0 || g >= B_alg->num_gens())
      throw SchemaError("trivial_action_test: gamma index out of range");
    gset.insert(g);
  }
  const FieldSpec& f = E_alg->field();
  auto trivial = std::make_shared<GradedAlgebra>(f, std::vector<Generator>{},
                                                 std::vector<Exponents>{});
  std::vector<int> degs;
  std::vector<Element> lambda, rho;
  for (int g : gset) {
    degs.push_back(B_alg->gen(g).degree);
    lambda.push_back(q_star.image(g));
    rho.push_back(Element{});
  }
  int mg = static_cast<int>(degs.size());
  std::vector<uint32_t> words;
  for (uint32_t w = 0; w < (1u << mg); ++w) words.push_back(w);
  WordComplex wc(E_alg, trivial, std::move(degs), std::move(lambda), std::move(rho),
                 std::move(words));

  TrivialActionReport rep;
  rep.trivial = true;
  for (int i = 0; i < B_alg->num_gens(); ++i) {
    if (gset.count(i)) continue;
    const Element& x = q_star.image(i);
    if (x.is_zero()) continue;
    int de = B_alg->gen(i).degree;
    bool killed = true;
    std::pair<int, int> wit{0, 0};
    for (int n = 0; n <= d_max && killed; ++n)
      for (int s = 0; s <= mg && killed; ++s) {
        int j = n + s;
        const auto& h = wc.hom(s, j);
        for (const auto& r : h.reps) {
          auto w = wc.left_mult(s, j, r, x, de);
          auto coords = wc.to_coords(s, j + de, w);
          for (const auto& c : coords)
            if (!f.is_zero(c)) {
              killed = false;
              wit = {-s, j};
              break;
            }
          if (!killed) break;
        }
      }
    if (!killed) {
      rep.trivial = false;
      rep.witnesses.push_back({i, wit});
    }
  }
  rep.caveats.push_back("action tested on classes of total degree <= " + std::to_string(d_max));
  return rep;
}

/* ------------------------------------------------------------------ */
/* Restriction of scalars                                              */
/* ------------------------------------------------------------------ */

void verify_freeness_witness(const FreenessWitness& w, int d_max) {
  const AlgebraPtr& src = w.psi.src();
  const AlgebraPtr& dst = w.psi.dst();
  const FieldSpec& f = dst->field();
  std::vector<int> bdeg;
  for (const auto& b : w.basis) {
    if (b.is_zero()) throw SchemaError("freeness witness: basis elements must be nonzero");
    auto d = dst->el_degree(b);
    if (!d) throw SchemaError("freeness witness: basis elements must be homogeneous");
    bdeg.push_back(*d);
  }
  for (int d = 0; d <= d_max; ++d) {
    int expect = 0;
    for (int bd : bdeg) expect += src->dim(d - bd);
    if (expect != dst->dim(d))
      throw HypothesisError("freeness witness fails at degree " + std::to_string(d) +
                            ": expected dimension " + std::to_string(dst->dim(d)) + ", basis gives " +
                            std::to_string(expect));
    if (expect == 0) continue;
    std::vector<std::tuple<int, int, Scalar>> ts;
    int col = 0;
    for (size_t r = 0; r < w.basis.size(); ++r) {
      int ad = d - bdeg[r];
      for (const auto& mono : src->basis(ad)) {
        Element img = dst->el_mul(w.psi.apply_mono(mono), w.basis[r]);
        for (const auto& [e, cf] : img.terms) {
          int ri = dst->basis_index(d, e);
          if (ri >= 0) ts.emplace_back(ri, col, cf);
        }
        ++col;
      }
    }
    Mat M = Mat::from_triplets(f, dst->dim(d), col, ts);
    if (M.rank() != dst->dim(d))
      throw HypothesisError("freeness witness fails at degree " + std::to_string(d) +
                            ": basis multiples do not span");
  }
}

FiltrationCertificate restrict_scalars_certificate(const FiltrationCertificate& cert,
                                                   const FreenessWitness& w, int d_max) {
  if (w.psi.dst().get() != cert.ground.get())
    throw SchemaError("restrict_scalars_certificate: witness target must be the certificate's "
                      "ground algebra");
  verify_freeness_witness(w, d_max);
  FiltrationCertificate out = cert;
  out.ground = w.psi.src();
  out.ground_map = cert.ground_map.compose_after(w.psi);
  out.caveats.push_back("scalars restricted along a degreewise-freeness witness verified to "
                        "degree " +
                        std::to_string(d_max));
  return out;
}

}  // namespace lvl
