#include "lvl/resolution.hpp"

#include <climits>

namespace lvl {

Mat Resolution::diff_matrix(int s, int d) const {
  auto key = std::make_pair(s, d);
  auto it = diff_cache_.find(key);
  if (it != diff_cache_.end()) return it->second;
  const FreeModule& src = frees_[s];
  const FreeModule& dst = frees_[s - 1];
  const FieldSpec& f = alg_->field();
  const auto& fb = src.basis(d);
  Mat A(f, dst.dim(d), static_cast<int>(fb.size()));
  for (size_t j = 0; j < fb.size(); ++j) {
    ModElement img = dst.mul_mono(fb[j].mono, steps_[s].images[fb[j].gen]);
    for (auto& [row, v] : dst.coords(img, d)) A.add_to(row, static_cast<int>(j), v);
  }
  diff_cache_.emplace(key, A);
  return A;
}

ModElement Resolution::apply_diff(int s, const ModElement& v) const {
  const FreeModule& dst = frees_[s - 1];
  ModElement out;
  for (auto& t : v)
    out = dst.add(out, dst.scale(t.coeff, dst.mul_mono(t.mono, steps_[s].images[t.gen])));
  return out;
}

long long Resolution::euler(int d) const {
  long long x = 0;
  for (size_t i = 0; i < frees_.size(); ++i)
    x += (i % 2 == 0 ? 1 : -1) * static_cast<long long>(frees_[i].dim(d));
  return x;
}

Resolution minimal_free_resolution(const DegreewiseModule& m, BoundSpec b) {
  if (b.n_max < 0) throw SchemaError("resolution: n_max must be >= 0");
  if (b.d_max < m.lowest_degree()) throw SchemaError("resolution: d_max below module support");
  Resolution r;
  r.alg_ = m.alg();
  r.bounds_ = b;
  r.lo_ = m.lowest_degree();
  for (int d = r.lo_; d <= b.d_max; ++d) r.target_hilbert_[d] = m.dim(d);

  r.min_gens_ = minimal_generators(m, b.d_max);
  std::vector<int> degs0;
  for (auto& [d, c] : r.min_gens_) degs0.push_back(d);
  r.steps_.push_back({degs0, {}});
  r.frees_.emplace_back(m.alg(), degs0);
  if (degs0.empty()) {
    r.termination_ = 0;
    return r;
  }

  std::function<Mat(int)> eval = [&m, &r](int d) {
    return cover_eval_matrix(m, r.frees_[0], r.min_gens_, d);
  };

  /* one step past n_max so non-termination is witnessed by a nonzero F_{n_max+1} */
  for (int s = 1; s <= b.n_max + 1; ++s) {
    auto kg = minimal_kernel_generators(r.frees_[s - 1], eval, b.d_max);
    std::vector<int> degs;
    std::vector<ModElement> imgs;
    for (auto& [d, v] : kg) {
      degs.push_back(d);
      imgs.push_back(v);
    }
    r.steps_.push_back({degs, std::move(imgs)});
    r.frees_.emplace_back(m.alg(), degs);
    if (degs.empty()) {
      r.termination_ = s;
      break;
    }
    eval = [&r, s](int d) { return r.diff_matrix(s, d); };
  }
  return r;
}

TorTable tor_table(const Resolution& r) {
  TorTable t;
  t.bounds = r.bounds();
  t.terminated = r.terminated();
  for (int s = 0; s <= std::min(r.last_step(), r.bounds().n_max); ++s)
    for (int deg : r.step(s).gen_degrees)
      if (deg <= r.bounds().d_max) ++t.entries[{s, deg}];
  return t;
}

TorTable tor_table(const DegreewiseModule& m, BoundSpec b) {
  return tor_table(minimal_free_resolution(m, b));
}

Bound projective_dimension(const Resolution& r) {
  if (r.terminated()) return Bound::exact(r.termination_step() - 1);
  return Bound::at_least(r.bounds().n_max + 1);
}

Bound grade(const Resolution& r) {
  const GradedAlgebra& A = *r.alg();
  const FieldSpec& f = A.field();
  if (r.rank_at(0) == 0) return Bound::at_least(r.bounds().n_max + 1); /* zero module */

  int S = r.terminated() ? r.termination_step() - 1 : r.bounds().n_max;
  int min_gen = INT_MAX, max_gen = INT_MIN;
  for (int s = 0; s <= r.last_step(); ++s)
    for (int deg : r.step(s).gen_degrees) {
      min_gen = std::min(min_gen, deg);
      max_gen = std::max(max_gen, deg);
    }
  auto top = A.top_degree_bound();
  int e_lo = -max_gen;
  int e_hi = top ? (*top - min_gen) : (r.bounds().d_max - std::min(min_gen, 0));

  /* Hom(F_i, A)^e = ⊕_k A^{e + deg g_k}; D_i(φ) = φ ∘ d_{i+1} */
  auto hom_dim = [&](int i, int e) {
    int n = 0;
    for (int deg : r.step(i).gen_degrees) n += A.dim(e + deg);
    return n;
  };
  auto hom_map = [&](int i, int e) -> Mat {
    const auto& src_degs = r.step(i).gen_degrees;
    const auto& dst_degs = r.step(i + 1).gen_degrees;
    const auto& imgs = r.step(i + 1).images;
    std::vector<int> src_off(src_degs.size() + 1, 0), dst_off(dst_degs.size() + 1, 0);
    for (size_t k = 0; k < src_degs.size(); ++k)
      src_off[k + 1] = src_off[k] + A.dim(e + src_degs[k]);
    for (size_t l = 0; l < dst_degs.size(); ++l)
      dst_off[l + 1] = dst_off[l] + A.dim(e + dst_degs[l]);
    Mat D(f, dst_off.back(), src_off.back());
    for (size_t l = 0; l < dst_degs.size(); ++l) {
      int row_basis_deg = e + dst_degs[l];
      for (auto& t : imgs[l]) { /* term: coeff * mono * g_k of F_i */
        int k = t.gen;
        const auto& col_basis = A.basis(e + src_degs[k]);
        for (size_t a = 0; a < col_basis.size(); ++a) {
          auto prod = A.mono_mul(t.mono, col_basis[a]);
          if (!prod) continue;
          int row = dst_off[l] + A.basis_index(row_basis_deg, prod->second);
          Scalar v = prod->first < 0 ? f.neg(t.coeff) : t.coeff;
          D.add_to(row, src_off[k] + static_cast<int>(a), v);
        }
      }
    }
    return D;
  };
  std::map<std::pair<int, int>, int> rank_cache;
  auto map_rank = [&](int i, int e) {
    if (i + 1 > r.last_step() || r.rank_at(i + 1) == 0) return 0;
    auto key = std::make_pair(i, e);
    auto it = rank_cache.find(key);
    if (it != rank_cache.end()) return it->second;
    int rk = hom_map(i, e).rank();
    rank_cache.emplace(key, rk);
    return rk;
  };

  for (int i = 0; i <= S; ++i)
    for (int e = e_lo; e <= e_hi; ++e) {
      int dim_ie = hom_dim(i, e);
      if (dim_ie == 0) continue;
      int rank_out = map_rank(i, e);
      int rank_in = i > 0 ? map_rank(i - 1, e) : 0;
      if (dim_ie - rank_out - rank_in > 0) return Bound::exact(i);
    }
  return Bound::at_least(S + 1);
}

}  // namespace lvl
