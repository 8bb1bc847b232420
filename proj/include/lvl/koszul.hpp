#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lvl/resolution.hpp"

namespace lvl {

/* ------------------------------------------------------------------ */
/* Koszul complex of a module over a polynomial base                   */
/* ------------------------------------------------------------------ */

/* Carrier M ⊗ Λ(su_1..su_m), one exterior letter su_i of bidegree
   (-1, deg u_i) per base generator u_i; the differential removes one
   letter at a time against the action of the matching generator:

     δ(x ⊗ su_S) = Σ_{l ∈ S} (-1)^{pos(l,S)} u_l·x ⊗ su_{S\l}.

   Since the base is polynomial this computes Tor_{i,j}(M, k) exactly:
   the table is complete in the homological direction (zero above m)
   and complete per internal degree j (δ preserves j). */
class KoszulComplex {
 public:
  KoszulComplex(std::shared_ptr<const GradedModule> coefficients, int d_max);

  const AlgebraPtr& base() const { return base_; }
  const std::shared_ptr<const GradedModule>& coefficients() const { return coeff_; }
  int letters() const { return m_; }
  int d_max() const { return d_max_; }
  int j_lo() const { return j_lo_; }

  /* dim of the carrier in homological degree s, internal degree j */
  int dim(int s, int j) const;
  /* δ : C_{s,j} -> C_{s-1,j} */
  Mat delta(int s, int j) const;
  bool square_zero(int j) const;
  int homology_dim(int s, int j) const;

 private:
  std::shared_ptr<const GradedModule> coeff_;
  AlgebraPtr base_;
  int m_;
  int d_max_;
  int j_lo_;
  std::vector<uint32_t> words_by_size_offsets_; /* prefix offsets into words_ */
  std::vector<uint32_t> words_;                 /* masks, grouped by popcount */
  mutable std::map<std::pair<int, int>, int> rank_cache_;

  const uint32_t* words_of_size(int s, int* count) const;
  int word_degree(uint32_t mask) const;
  int delta_rank(int s, int j) const;
  friend TorTable koszul_tor_impl(const std::shared_ptr<const GradedModule>&, int, bool);
};

/* Tor_{i,j}(M, k) over the polynomial base of M, for j <= d_max; complete
   (terminated) table. Throws HypothesisError("Koszul path requires
   polynomial base; use resolve") when the base has relations or odd
   generators. The default entry point sweeps the bigraded grid in
   parallel; the _serial variant is the reference implementation. */
TorTable koszul_tor(const std::shared_ptr<const GradedModule>& coefficients, int d_max);
TorTable koszul_tor_serial(const std::shared_ptr<const GradedModule>& coefficients, int d_max);

/* ------------------------------------------------------------------ */
/* Derived tensor                                                      */
/* ------------------------------------------------------------------ */

/* DG module (L ⊗ Λ(su_1..su_m) ⊗ R, δ) over the ground algebra R, with
   one exterior letter per middle-algebra generator and

     δ(x ⊗ su_S ⊗ y) =
       Σ_{l ∈ S} (-1)^{pos(l,S)} (x·λ_l ⊗ su_{S\l} ⊗ y  -  x ⊗ su_{S\l} ⊗ ρ_l·y),

   all multipliers λ_l ∈ L, ρ_l ∈ R of even degree.  Internal degree j is
   preserved by δ; homological degree drops from s = |S| to s-1.  Reported
   bidegrees are (i, j) with i = -s; the total degree of a class is j + i,
   and homology is a module over R through the right-hand factor. */
class DerivedTensor {
 public:
  /* Pullback form: left = H(E), middle = B (polynomial, m generators),
     right = H(X); λ_i = q*(u_i), ρ_i = φ*(u_i). */
  static std::shared_ptr<DerivedTensor> of_maps(AlgebraPtr E_alg, AlgebraPtr B_alg,
                                                AlgebraPtr X_alg, const AlgebraMap& q_star,
                                                const AlgebraMap& phi_star, int d_max);

  /* Loop-space form: trivial left factor, letters sz_i of prescribed even
     internal degree, δ(sz_i) = w_i with w_i ∈ R. */
  static std::shared_ptr<DerivedTensor> of_loop_weights(AlgebraPtr X_alg,
                                                        std::vector<int> sz_degrees,
                                                        std::vector<Element> weights, int d_max);

  ~DerivedTensor();
  DerivedTensor(const DerivedTensor&) = delete;
  DerivedTensor& operator=(const DerivedTensor&) = delete;

  const AlgebraPtr& left() const { return left_; }
  const AlgebraPtr& right() const { return right_; }
  int letters() const { return static_cast<int>(su_degrees_.size()); }
  const std::vector<int>& su_degrees() const { return su_degrees_; }
  const Element& left_mult(int i) const { return lambda_[i]; }
  const Element& right_mult(int i) const { return rho_[i]; }
  int d_max() const { return d_max_; }
  const FieldSpec& field() const { return left_->field(); }

  int dim(int s, int j) const;
  Mat delta(int s, int j) const;
  bool square_zero(int j) const;
  int homology_dim(int s, int j) const;

  /* Nonzero homology dimensions keyed by display bidegree (-s, j), j <= d_max.
     Parallel bigraded sweep; the _serial variant is the reference. */
  std::map<std::pair<int, int>, int> homology_table() const;
  std::map<std::pair<int, int>, int> homology_table_serial() const;

  /* Homology as a presented module over right(), graded by total degree,
     valid through total degree n_hi (internally sweeps j <= n_hi + m). */
  GradedModule homology_presentation(int n_hi) const;

  /* True when x·(every homology class) is a boundary, for all classes of
     total degree <= n_hi; on failure reports a witness (-s, j). */
  bool left_mult_kills_homology(const Element& x, int n_hi,
                                std::pair<int, int>* witness = nullptr) const;

 private:
  DerivedTensor(AlgebraPtr left, AlgebraPtr right, std::vector<int> su_degrees,
                std::vector<Element> lambda, std::vector<Element> rho, int d_max);

  AlgebraPtr left_;
  AlgebraPtr right_;
  std::vector<int> su_degrees_;
  std::vector<Element> lambda_;
  std::vector<Element> rho_;
  int d_max_;
  struct Engine;
  std::unique_ptr<Engine> engine_;
};

std::string word_label(uint32_t mask, const std::string& prefix = "su");

/* ------------------------------------------------------------------ */
/* Semi-free filtration certificates                                   */
/* ------------------------------------------------------------------ */

/* Increasing chain F^{-1}=0 ⊆ F^0 ⊆ … ⊆ F^l of sub-DG-modules of a derived
   tensor, described by the exterior words each step adds; the class l
   certifies level <= l + 1 over the ground algebra once checked. */
struct FiltrationCertificate {
  std::shared_ptr<const DerivedTensor> ambient;
  std::vector<std::vector<uint32_t>> step_words; /* step n: words added to F^n */
  int filtration_class = 0;                      /* = #steps - 1 */
  AlgebraPtr ground;                             /* freeness is tested over this */
  AlgebraMap ground_map;                         /* ground -> ambient->right() */
  std::vector<std::string> caveats;

  int steps() const { return static_cast<int>(step_words.size()); }
};

/* Filtration by the number of letters outside Γ: F^n = span of words with
   at most n factors outside gamma.  Pre: every γ ∈ gamma has ρ_γ = 0
   (throws HypothesisError with the offending generator otherwise).  The
   finiteness of the homology of (left ⊗ Λ(sΓ)) is verified within the
   window; a caveat is recorded when the left algebra is not finite-
   dimensional (bounded verification only). */
FiltrationCertificate koszul_filtration(std::shared_ptr<const DerivedTensor> dt,
                                        const std::vector<int>& gamma);

struct SubquotientReport {
  int step = 0;
  int rank = 0;                   /* generators found within the window */
  std::vector<int> shift_degrees; /* their total degrees */
};

struct FiltrationCheck {
  bool ok = false;
  int verified_class = -1;
  std::vector<SubquotientReport> subquotients;
  std::string witness; /* failure description when !ok */
  std::vector<std::string> caveats;
};

/* Verifies, degreewise up to total degree d_max: each F^n is closed under
   the differential (word-level, respecting zero multipliers); the steps
   partition the full word set; and each subquotient's homology is
   degreewise isomorphic to a finite direct sum of shifts of the ground
   algebra (rank and shift list reported).  Failures carry a witness. */
FiltrationCheck check_semifree_filtration(const FiltrationCertificate& cert, int d_max);

/* ------------------------------------------------------------------ */
/* Trivial-action test                                                 */
/* ------------------------------------------------------------------ */

struct TrivialActionReport {
  bool trivial = false;
  /* (generator index, display bidegree) for each detected nonzero action */
  std::vector<std::pair<int, std::pair<int, int>>> witnesses;
  std::vector<std::string> caveats;
};

/* Computes H(left ⊗ Λ(sΓ)) with δ(su_γ) = q*(u_γ) and checks that every
   remaining middle-algebra generator acts as zero on it through q*, for
   total degrees <= d_max (bounded check, caveat recorded). */
TrivialActionReport trivial_action_test(AlgebraPtr E_alg, AlgebraPtr B_alg,
                                        const AlgebraMap& q_star, const std::vector<int>& gamma,
                                        int d_max);

/* ------------------------------------------------------------------ */
/* Restriction of scalars                                              */
/* ------------------------------------------------------------------ */

/* Witness that psi.dst() is degreewise free as a psi.src()-module on the
   given homogeneous basis elements. */
struct FreenessWitness {
  AlgebraMap psi;
  std::vector<Element> basis; /* elements of psi.dst() */
};

/* Checks the witness degreewise for 0 <= d <= d_max; throws HypothesisError
   naming the first failing degree. */
void verify_freeness_witness(const FreenessWitness& w, int d_max);

/* Re-reads a certificate over the source of the witness map (class is
   preserved: sums of shifts of a free module stay free).  Pre: the
   certificate's current ground equals w.psi.dst(). */
FiltrationCertificate restrict_scalars_certificate(const FiltrationCertificate& cert,
                                                   const FreenessWitness& w, int d_max);

}  // namespace lvl
