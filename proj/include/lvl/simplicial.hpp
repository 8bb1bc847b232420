#pragma once

#include <cstdint>
#include <set>

#include "lvl/resolution.hpp"

namespace lvl {

/* Abstract simplicial complex on vertices 0..n-1, given by facets.  The empty
   face is always present; a vertex not covered by any facet is a non-face. */
class SimplicialComplex {
 public:
  SimplicialComplex(int n_vertices, std::vector<std::vector<int>> facets);
  static SimplicialComplex full_simplex(int n);
  static SimplicialComplex empty_complex(int n) { return SimplicialComplex(n, {}); }

  int n_vertices() const { return n_; }
  /* maximal faces, each sorted, list sorted; {} when the only face is ∅ */
  const std::vector<std::vector<int>>& facets() const { return facets_; }
  const std::vector<uint32_t>& facet_masks() const { return masks_; }

  bool is_face(uint32_t mask) const;
  bool is_face(const std::vector<int>& s) const;
  int dimension() const; /* -1 for {∅} */
  /* all faces of cardinality c (c = 0 gives {∅}), sorted by mask */
  std::vector<uint32_t> faces_of_card(int c) const;

  /* restriction to w, vertices renumbered by position in sorted w */
  SimplicialComplex full_subcomplex(uint32_t w_mask) const;
  std::vector<std::vector<int>> minimal_non_faces() const;

 private:
  int n_;
  std::vector<std::vector<int>> facets_;
  std::vector<uint32_t> masks_;
  mutable std::set<uint32_t> face_cache_; /* all faces, filled lazily */
  mutable bool faces_enumerated_ = false;

  const std::set<uint32_t>& all_faces() const;
};

/* dim H̃^k(K; F) for each k with a nonzero entry; k = -1 comes from C̃^{-1} = F·∅. */
std::map<int, int> reduced_cohomology(const SimplicialComplex& K, const FieldSpec& f);

/* Stanley-Reisner ring: one degree-2 generator per vertex, one squarefree
   monomial relation per minimal non-face. */
AlgebraPtr stanley_reisner(const SimplicialComplex& K, const FieldSpec& f);

/* Tor_{i, 2|ω|} += dim H̃^{|ω|-1-i}(K_ω; F) over all vertex subsets ω.
   The table is complete (terminated = true). */
TorTable hochster_tor_serial(const SimplicialComplex& K, const FieldSpec& f);
TorTable hochster_tor(const SimplicialComplex& K, const FieldSpec& f); /* OpenMP sweep */

/* sup{ i : Tor_i != 0 } + 1 */
int dj_level(const SimplicialComplex& K, const FieldSpec& f);

/* dim H^k of the moment-angle complex: entry (i, 2|ω|) counts at k = 2|ω| - i. */
std::map<int, int> moment_angle_cohomology(const SimplicialComplex& K, const FieldSpec& f);

}  // namespace lvl
