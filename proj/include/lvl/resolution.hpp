#pragma once

#include "lvl/module.hpp"

namespace lvl {

/* Homological / internal-degree computation window. */
struct BoundSpec {
  int n_max;
  int d_max;
};

/* An integer known exactly or only from below (window-truncated invariants). */
struct Bound {
  enum class Kind { Exact, AtLeast };
  Kind kind;
  int value;

  static Bound exact(int v) { return {Kind::Exact, v}; }
  static Bound at_least(int v) { return {Kind::AtLeast, v}; }
  bool is_exact() const { return kind == Kind::Exact; }
  std::string str() const {
    return (is_exact() ? "" : ">=") + std::to_string(value);
  }
};

inline bool operator==(const Bound& a, const Bound& b) {
  return a.kind == b.kind && a.value == b.value;
}

/* Bigraded Tor dimensions: entries[(i, j)] = dim Tor_{i,j}, nonzero only.
   Complete for i <= bounds.n_max, j <= bounds.d_max. */
struct TorTable {
  BoundSpec bounds{};
  bool terminated = false; /* resolution reached 0 within the window */
  std::map<std::pair<int, int>, int> entries;

  int dim(int i, int j) const {
    auto it = entries.find({i, j});
    return it == entries.end() ? 0 : it->second;
  }
  int total_dim(int i) const {
    int n = 0;
    for (auto& [k, v] : entries)
      if (k.first == i) n += v;
    return n;
  }
  /* largest i with a nonzero entry; -1 if none */
  int top_index() const {
    int t = -1;
    for (auto& [k, v] : entries) t = std::max(t, k.first);
    return t;
  }
};

/* Minimal free resolution computed degreewise on a window.  Steps are
   computed internally to n_max + 1 so that "at least n_max + 1" claims made
   from a non-terminated resolution are witnessed by an actual nonzero step. */
class Resolution {
 public:
  struct Step {
    std::vector<int> gen_degrees;
    std::vector<ModElement> images; /* d(g_k) in F_{s-1}; empty at step 0 */
  };

  const AlgebraPtr& alg() const { return alg_; }
  BoundSpec bounds() const { return bounds_; }
  /* steps 0 .. last_step() hold data (last may be the empty terminating step) */
  int last_step() const { return static_cast<int>(steps_.size()) - 1; }
  const Step& step(int s) const { return steps_[s]; }
  const FreeModule& free_at(int s) const { return frees_[s]; }
  int rank_at(int s) const { return static_cast<int>(steps_[s].gen_degrees.size()); }

  bool terminated() const { return termination_ >= 0; }
  /* first s with F_s = 0 within the window; -1 if none found */
  int termination_step() const { return termination_; }

  /* minimal generators of the target: (degree, coordinate) per F_0 generator */
  const std::vector<std::pair<int, int>>& target_generators() const { return min_gens_; }
  int target_dim(int d) const {
    auto it = target_hilbert_.find(d);
    return it == target_hilbert_.end() ? 0 : it->second;
  }
  int lowest_degree() const { return lo_; }

  /* matrix of d_s : F_s^d -> F_{s-1}^d, s >= 1 */
  Mat diff_matrix(int s, int d) const;
  /* image of an element of F_s under d_s */
  ModElement apply_diff(int s, const ModElement& v) const;

  /* Σ_i (-1)^i dim F_i^d */
  long long euler(int d) const;

 private:
  friend Resolution minimal_free_resolution(const DegreewiseModule&, BoundSpec);
  AlgebraPtr alg_;
  BoundSpec bounds_{};
  int lo_ = 0;
  int termination_ = -1;
  std::vector<Step> steps_;
  std::vector<FreeModule> frees_;
  std::vector<std::pair<int, int>> min_gens_;
  std::map<int, int> target_hilbert_;
  mutable std::map<std::pair<int, int>, Mat> diff_cache_;
};

Resolution minimal_free_resolution(const DegreewiseModule& m, BoundSpec b);

/* Tor_{i,j}(M, k) read off a minimal resolution: generator counts of F_i. */
TorTable tor_table(const Resolution& r);
TorTable tor_table(const DegreewiseModule& m, BoundSpec b);

/* pd: Exact when the resolution terminated, else AtLeast(n_max + 1). */
Bound projective_dimension(const Resolution& r);

/* grade = inf{ i : Ext^i(M, A) != 0 }, from the dualized resolution.
   Exact when a nonzero Ext is found (vanishing below certified on the
   internal-degree window), else AtLeast(n_max + 1). */
Bound grade(const Resolution& r);

}  // namespace lvl
