#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lvl/koszul.hpp"

namespace lvl {

/* ------------------------------------------------------------------ */
/* Results                                                             */
/* ------------------------------------------------------------------ */

/* One certified endpoint (or note) of a level computation.  The tag names
   the certificate rule so reports are auditable. */
struct Provenance {
  std::string endpoint; /* "lower" | "upper" | "exact" | "note" */
  std::string tag;      /* certificate label, e.g. "T2.2", "L7.1" */
  BoundSpec bounds{};
  std::vector<std::string> caveats;
};

/* A level value, a certified interval, or a bare lower bound.  An exact
   value is only ever produced when a lower and an upper certificate meet,
   or when an equality rule applies; endpoints carry their provenance. */
struct LevelResult {
  enum class Kind { Exact, Interval, LowerOnly };
  Kind kind = Kind::LowerOnly;
  int lower = 1;
  int upper = -1; /* meaningful for Exact and Interval only */
  std::vector<Provenance> provenance;

  static LevelResult exact(int n);
  static LevelResult interval(int lo, int hi); /* collapses to exact when lo == hi */
  static LevelResult lower_only(int n);

  bool has_upper() const { return kind != Kind::LowerOnly; }
  /* certified endpoints agree (provenance not compared) */
  bool same_endpoints(const LevelResult& o) const;
  bool has_certificate(const std::string& endpoint, const std::string& tag) const;
  std::string str() const; /* "Exact(2)", "Interval(2,4)", "LowerOnly(12)" */
};

/* ------------------------------------------------------------------ */
/* Problems                                                            */
/* ------------------------------------------------------------------ */

/* Fibre-square data.  Case (i): maps q*: B -> E and phi*: B -> X with a
   polynomial middle algebra B.  Case (ii) (no B): exterior letters sz_i of
   even internal degree with differentials delta(sz_i) = weights[i] in X. */
struct PullbackProblem {
  AlgebraPtr E_alg;                   /* case (i) */
  AlgebraPtr B_alg;                   /* case (i); null selects case (ii) */
  AlgebraPtr X_alg;                   /* both cases: the ground algebra */
  std::optional<AlgebraMap> q_star;   /* case (i): B -> E */
  std::optional<AlgebraMap> phi_star; /* case (i): B -> X */
  std::vector<int> sz_degrees;        /* case (ii) */
  std::vector<Element> weights;       /* case (ii): elements of X */

  bool case_two() const { return B_alg == nullptr; }
};

/* The problem rewritten so that the kernel part of the structure map is
   spanned by actual letters: a per-degree linear change of the middle
   generators (case (i)) or letters (case (ii)).  gamma lists the letter
   indices with vanishing image. */
struct NormalizedPullback {
  PullbackProblem problem;
  std::vector<int> gamma;
};
NormalizedPullback normalize_pullback(const PullbackProblem& p);

/* Derived tensor of the (normalized or raw) problem. */
std::shared_ptr<DerivedTensor> make_derived_tensor(const PullbackProblem& p, int d_max);

/* Chain-level data: loop-space homology R (homological grading), the fibre
   homology N as an R-module, and the total-space cohomology algebra. */
struct ChainProblem {
  AlgebraPtr loop_homology;                      /* R */
  std::shared_ptr<const GradedModule> fibre_homology; /* N over R */
  AlgebraPtr total_cohomology;                   /* H*(X) */
  bool fibre_is_point = false;                   /* the N = k situation */
};

/* ------------------------------------------------------------------ */
/* Level computations                                                  */
/* ------------------------------------------------------------------ */

/* Level of a graded module with zero differential: the projective
   dimension pinches the level from both sides, so a terminated resolution
   gives pd + 1 exactly; otherwise only the lower bound is certified. */
LevelResult level_graded_module(const AlgebraPtr& a, const GradedModule& m, BoundSpec bounds);

/* Least positive homological index with nonzero Tor, if any appears
   within bounds; such an index certifies level >= 2. */
struct ObstructionReport {
  bool obstructed = false;
  int witness = 0; /* least i > 0 with Tor_i != 0 (when obstructed) */
  BoundSpec bounds{};
  std::vector<std::string> caveats;
};
ObstructionReport level_one_obstruction(const AlgebraPtr& a, const GradedModule& m,
                                        BoundSpec bounds);

/* Level of the derived tensor over X: upper endpoint is the checked
   filtration class + 1; a vanishing structure map gives Exact(1) with the
   homology verified degreewise free; otherwise the lower endpoint 1 is
   improved to 2 by the Tor obstruction when it fires. */
LevelResult pullback_level_bound(const PullbackProblem& p, BoundSpec bounds);

/* Level via the homotopy fibre.  When the trivial-action test passes the
   level of the corner space equals the level of the fibre over the same
   ground algebra; if moreover X is polynomial and the fibre homology is
   finite (verified within bounds) the level is dim QH*(X) + 1 exactly.
   When a hypothesis cannot be verified the direct pullback interval is
   returned with a caveat. */
LevelResult fibre_level(const PullbackProblem& p, BoundSpec bounds);

/* Level of a formal fibration: the graded-module level of the total-space
   cohomology over the base cohomology, with the formality assumption
   recorded in provenance. */
LevelResult formal_fibration_level(const AlgebraPtr& base_alg, const GradedModule& total_module,
                                   BoundSpec bounds);

/* Sandwich for chain-type level: grade(N) + 1 from below (raised to
   cup-length + 1 when the fibre is a point), min(dim H*(X), pd(N) + 1)
   from above; exact when the endpoints meet. */
LevelResult chain_level_sandwich(const ChainProblem& p, BoundSpec bounds);

/* Combined two-sided estimate for a derived tensor: filtration upper and
   homology-module upper against the Tor-obstruction lower. */
LevelResult derived_tensor_level(const PullbackProblem& p, BoundSpec bounds);

/* Verifies the supplied splitting witnesses, computes the level of both
   derived tensors with the combined estimate, and compares every
   certified endpoint. */
struct TorusReductionReport {
  bool equal = false;
  LevelResult full;
  LevelResult torus;
  std::string mismatch; /* human-readable difference when !equal */
  std::vector<std::string> caveats;
};
TorusReductionReport torus_reduction_check(const PullbackProblem& full_problem,
                                           const PullbackProblem& torus_problem,
                                           const std::vector<FreenessWitness>& splittings,
                                           BoundSpec bounds);

/* Upper bound for the level of a DG module from the graded level of its
   homology; when the homology-side resolution does not terminate no upper
   bound is certified and the result warns instead. */
LevelResult upper_by_homology(const AlgebraPtr& a, const GradedModule& dg_homology,
                              BoundSpec bounds);

}  // namespace lvl
