#include "lvl/simplicial.hpp"

#include <algorithm>
#include <bit>

#include "lvl/parallel.hpp"

namespace lvl {

namespace {
std::vector<int> mask_to_list(uint32_t m) {
  std::vector<int> out;
  for (int v = 0; m; ++v, m >>= 1)
    if (m & 1u) out.push_back(v);
  return out;
}
}  // namespace

SimplicialComplex::SimplicialComplex(int n_vertices, std::vector<std::vector<int>> facets)
    : n_(n_vertices) {
  if (n_ < 0 || n_ > 20) throw SchemaError("simplicial complex: need 0 <= n_vertices <= 20");
  std::vector<uint32_t> ms;
  for (auto& fc : facets) {
    uint32_t m = 0;
    for (int v : fc) {
      if (v < 0 || v >= n_) throw SchemaError("simplicial complex: vertex out of range");
      if (m & (1u << v)) throw SchemaError("simplicial complex: repeated vertex in facet");
      m |= 1u << v;
    }
    ms.push_back(m);
  }
  /* keep maximal faces only (∅ is implicit when the list empties) */
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  for (uint32_t m : ms) {
    bool maximal = true;
    for (uint32_t o : ms)
      if (o != m && (m & o) == m) maximal = false;
    if (maximal && m != 0) masks_.push_back(m);
  }
  std::sort(masks_.begin(), masks_.end());
  for (uint32_t m : masks_) facets_.push_back(mask_to_list(m));
}

SimplicialComplex SimplicialComplex::full_simplex(int n) {
  std::vector<int> all;
  for (int v = 0; v < n; ++v) all.push_back(v);
  return SimplicialComplex(n, {all});
}

bool SimplicialComplex::is_face(uint32_t mask) const {
  if (mask == 0) return true;
  for (uint32_t m : masks_)
    if ((mask & m) == mask) return true;
  return false;
}

bool SimplicialComplex::is_face(const std::vector<int>& s) const {
  uint32_t m = 0;
  for (int v : s) {
    if (v < 0 || v >= n_) return false;
    m |= 1u << v;
  }
  return is_face(m);
}

int SimplicialComplex::dimension() const {
  int d = -1;
  for (uint32_t m : masks_) d = std::max(d, std::popcount(m) - 1);
  return d;
}

const std::set<uint32_t>& SimplicialComplex::all_faces() const {
  if (!faces_enumerated_) {
    face_cache_.insert(0);
    for (uint32_t m : masks_) /* all submasks of each facet */
      for (uint32_t s = m;; s = (s - 1) & m) {
        face_cache_.insert(s);
        if (s == 0) break;
      }
    faces_enumerated_ = true;
  }
  return face_cache_;
}

std::vector<uint32_t> SimplicialComplex::faces_of_card(int c) const {
  std::vector<uint32_t> out;
  for (uint32_t m : all_faces())
    if (std::popcount(m) == c) out.push_back(m);
  return out;
}

SimplicialComplex SimplicialComplex::full_subcomplex(uint32_t w_mask) const {
  std::vector<int> w = mask_to_list(w_mask);
  std::vector<int> pos(n_, -1);
  for (size_t i = 0; i < w.size(); ++i) pos[w[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> fs;
  for (uint32_t m : masks_) fs.push_back(mask_to_list(m & w_mask));
  for (auto& fc : fs)
    for (int& v : fc) v = pos[v];
  return SimplicialComplex(static_cast<int>(w.size()), fs);
}

std::vector<std::vector<int>> SimplicialComplex::minimal_non_faces() const {
  std::vector<std::vector<int>> out;
  for (uint32_t m = 1; m < (1u << n_); ++m) {
    if (std::popcount(m) > dimension() + 2) continue;
    if (is_face(m)) continue;
    bool minimal = true;
    for (int v = 0; v < n_ && minimal; ++v)
      if ((m & (1u << v)) && !is_face(m & ~(1u << v))) minimal = false;
    if (minimal) out.push_back(mask_to_list(m));
  }
  return out;
}

std::map<int, int> reduced_cohomology(const SimplicialComplex& K, const FieldSpec& f) {
  /* C̃^k = functions on k-faces (cardinality k+1); C̃^{-1} = F·∅ */
  int top = K.dimension();
  std::map<int, std::vector<uint32_t>> faces;
  for (int c = 0; c <= top + 1; ++c) faces[c] = K.faces_of_card(c);
  auto index_of = [&](int c, uint32_t m) {
    const auto& v = faces[c];
    return static_cast<int>(std::lower_bound(v.begin(), v.end(), m) - v.begin());
  };
  /* rank of δ_{k}: C^k -> C^{k+1}, cochains on cardinality k+1 -> k+2 */
  std::map<int, int> delta_rank;
  for (int k = -1; k <= top; ++k) {
    int csrc = k + 1, cdst = k + 2;
    Mat D(f, static_cast<int>(faces[cdst].size()), static_cast<int>(faces[csrc].size()));
    for (size_t r = 0; r < faces[cdst].size(); ++r) {
      uint32_t tau = faces[cdst][r];
      int posn = 0; /* (δφ)(τ) = Σ_{v∈τ} (-1)^{pos(v,τ)} φ(τ∖v) */
      for (int v = 0; v < K.n_vertices(); ++v) {
        if (!(tau & (1u << v))) continue;
        D.add_to(static_cast<int>(r), index_of(csrc, tau & ~(1u << v)),
                 posn % 2 == 0 ? f.one() : f.from_int(-1));
        ++posn;
      }
    }
    delta_rank[k] = D.rank();
  }
  std::map<int, int> h;
  for (int k = -1; k <= top; ++k) {
    int dim_k = static_cast<int>(faces[k + 1].size());
    int hk = dim_k - delta_rank[k] - (k >= 0 ? delta_rank[k - 1] : 0);
    if (hk != 0) h[k] = hk;
  }
  return h;
}

AlgebraPtr stanley_reisner(const SimplicialComplex& K, const FieldSpec& f) {
  std::vector<Generator> gens;
  for (int v = 0; v < K.n_vertices(); ++v) gens.push_back({"t" + std::to_string(v + 1), 2});
  std::vector<Exponents> rels;
  for (auto& nf : K.minimal_non_faces()) {
    Exponents e(K.n_vertices(), 0);
    for (int v : nf) e[v] = 1;
    rels.push_back(e);
  }
  return std::make_shared<GradedAlgebra>(f, std::move(gens), std::move(rels));
}

namespace {

void hochster_accumulate(const SimplicialComplex& K, const FieldSpec& f, uint32_t w,
                         std::map<std::pair<int, int>, int>& entries) {
  int card = std::popcount(w);
  auto h = reduced_cohomology(K.full_subcomplex(w), f);
  for (auto& [k, dim] : h) {
    int i = card - 1 - k;
    if (dim > 0) entries[{i, 2 * card}] += dim;
  }
}

TorTable hochster_finish(const SimplicialComplex& K, std::map<std::pair<int, int>, int> entries) {
  TorTable t;
  t.terminated = true;
  t.bounds = {K.n_vertices(), 2 * K.n_vertices()};
  t.entries = std::move(entries);
  return t;
}

}  // namespace

TorTable hochster_tor_serial(const SimplicialComplex& K, const FieldSpec& f) {
  std::map<std::pair<int, int>, int> entries;
  for (uint32_t w = 0; w < (1u << K.n_vertices()); ++w) hochster_accumulate(K, f, w, entries);
  return hochster_finish(K, std::move(entries));
}

TorTable hochster_tor(const SimplicialComplex& K, const FieldSpec& f) {
  const uint32_t total = 1u << K.n_vertices();
  int nt = par::thread_cap();
  std::vector<std::map<std::pair<int, int>, int>> local(nt);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) num_threads(nt)
#endif
  for (int64_t w = 0; w < static_cast<int64_t>(total); ++w) {
    int tid = par::thread_id();
    hochster_accumulate(K, f, static_cast<uint32_t>(w), local[tid]);
  }
  std::map<std::pair<int, int>, int> entries;
  for (auto& loc : local)
    for (auto& [k, v] : loc) entries[k] += v; /* integer sums: order-independent */
  return hochster_finish(K, std::move(entries));
}

int dj_level(const SimplicialComplex& K, const FieldSpec& f) {
  return hochster_tor(K, f).top_index() + 1;
}

std::map<int, int> moment_angle_cohomology(const SimplicialComplex& K, const FieldSpec& f) {
  std::map<int, int> out;
  for (auto& [ij, dim] : hochster_tor(K, f).entries) out[ij.second - ij.first] += dim;
  return out;
}

}  // namespace lvl
