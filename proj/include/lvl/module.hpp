#pragma once

#include <functional>
#include <map>
#include <memory>

#include "lvl/algebra.hpp"

namespace lvl {

struct ModGen {
  std::string name;
  int degree; /* any integer */
};

/* coeff * (monomial · generator) */
struct ModTerm {
  Exponents mono;
  int gen;
  Scalar coeff;
};
inline bool operator==(const ModTerm& a, const ModTerm& b) {
  return a.gen == b.gen && a.mono == b.mono && a.coeff == b.coeff;
}

/* canonical: sorted by (gen, mono desc-lex), coeffs nonzero, monomials nonzero */
using ModElement = std::vector<ModTerm>;

bool same_algebra(const GradedAlgebra& a, const GradedAlgebra& b);

/* Free module ⊕ A·e_k with cached degreewise bases (gen-major order). */
class FreeModule {
 public:
  struct Term {
    Exponents mono;
    int gen;
  };

  FreeModule(AlgebraPtr alg, std::vector<int> gen_degrees);

  const AlgebraPtr& alg() const { return alg_; }
  const std::vector<int>& gen_degrees() const { return degs_; }
  int num_gens() const { return static_cast<int>(degs_.size()); }
  int lowest_degree() const;

  const std::vector<Term>& basis(int d) const;
  int dim(int d) const { return static_cast<int>(basis(d).size()); }
  int index(int d, const Exponents& mono, int gen) const;

  ModElement canonical(ModElement v) const;
  ModElement add(const ModElement& a, const ModElement& b) const;
  ModElement scale(const Scalar& c, const ModElement& v) const;
  ModElement mul_mono(const Exponents& m, const ModElement& v) const;
  ModElement mul_element(const Element& a, const ModElement& v) const;
  SparseVec coords(const ModElement& v, int d) const;
  ModElement from_coords(int d, const SparseVec& v) const;
  /* degree of homogeneous element (throws on mixed); nullopt for 0 */
  std::optional<int> degree(const ModElement& v) const;
  std::string str(const ModElement& v, const std::vector<std::string>& gen_names = {}) const;

 private:
  AlgebraPtr alg_;
  std::vector<int> degs_;
  mutable std::map<int, std::vector<Term>> basis_cache_;
};

/* Degreewise view of a (possibly not finitely presented) graded module:
   finite-dimensional in each degree, with generator action matrices.
   Caches are lazily filled; warm them serially before parallel reads. */
class DegreewiseModule {
 public:
  virtual ~DegreewiseModule() = default;
  virtual AlgebraPtr alg() const = 0;
  virtual int lowest_degree() const = 0;
  virtual int dim(int d) const = 0;
  /* matrix of x_gen : M^d -> M^{d + deg(x_gen)} in the chosen bases */
  virtual Mat action(int gen, int d) const = 0;
};

/* Action of a homogeneous algebra element through composed generator actions. */
Mat element_action(const DegreewiseModule& m, const Element& el, int d);
Mat monomial_action(const DegreewiseModule& m, const Exponents& mono, int d);

/* Finitely presented graded module over a monomial quotient algebra. */
class GradedModule {
 public:
  GradedModule(AlgebraPtr alg, std::vector<ModGen> gens, std::vector<ModElement> relations);
  static GradedModule free_module(AlgebraPtr alg, std::vector<ModGen> gens);
  /* every algebra generator acts as zero */
  static GradedModule trivial_module(AlgebraPtr alg, std::vector<ModGen> gens);

  const AlgebraPtr& alg() const { return cover_.alg(); }
  const std::vector<ModGen>& gens() const { return gens_; }
  const std::vector<ModElement>& relations() const { return relations_; }
  const FreeModule& cover() const { return cover_; }

  int lowest_degree() const { return cover_.lowest_degree(); }
  int dim(int d) const;
  /* free-basis indices representing the quotient basis of M^d */
  const std::vector<int>& quotient_cols(int d) const;
  /* class of a free element in quotient coordinates */
  std::vector<Scalar> to_quotient(const ModElement& v, int d) const;
  Mat action(int gen, int d) const;

  GradedModule shifted(int s) const; /* (Σ^s M)^n = M^{n+s} */
  static GradedModule direct_sum(const GradedModule& a, const GradedModule& b);

  int max_input_degree() const;
  std::vector<int> hilbert(int lo, int hi) const;

 private:
  FreeModule cover_;
  std::vector<ModGen> gens_;
  std::vector<ModElement> relations_;
  mutable std::map<int, RowSpace> relspan_;
  mutable std::map<int, std::vector<int>> qcols_;
  mutable std::map<std::pair<int, int>, Mat> action_cache_;

  const RowSpace& relation_space(int d) const;
};

class PresentedView : public DegreewiseModule {
 public:
  explicit PresentedView(std::shared_ptr<const GradedModule> m) : m_(std::move(m)) {}
  AlgebraPtr alg() const override { return m_->alg(); }
  int lowest_degree() const override { return m_->lowest_degree(); }
  int dim(int d) const override { return m_->dim(d); }
  Mat action(int gen, int d) const override { return m_->action(gen, d); }
  const GradedModule& module() const { return *m_; }

 private:
  std::shared_ptr<const GradedModule> m_;
};

/* Restriction of scalars along phi : A -> B of a module over B. */
class RestrictedView : public DegreewiseModule {
 public:
  RestrictedView(AlgebraMap phi, std::shared_ptr<const DegreewiseModule> base);
  AlgebraPtr alg() const override { return phi_.src(); }
  int lowest_degree() const override { return base_->lowest_degree(); }
  int dim(int d) const override { return base_->dim(d); }
  Mat action(int gen, int d) const override;

 private:
  AlgebraMap phi_;
  std::shared_ptr<const DegreewiseModule> base_;
};

/* Concrete degreewise data on a window [lo, hi]; queries outside throw. */
class ExplicitModule : public DegreewiseModule {
 public:
  ExplicitModule(AlgebraPtr alg, int lo, int hi);
  void set_dim(int d, int n);
  void set_action(int gen, int d, Mat m);
  int window_hi() const { return hi_; }
  AlgebraPtr alg() const override { return alg_; }
  int lowest_degree() const override { return lo_; }
  int dim(int d) const override;
  Mat action(int gen, int d) const override;

 private:
  AlgebraPtr alg_;
  int lo_, hi_;
  std::map<int, int> dims_;
  std::map<std::pair<int, int>, Mat> act_;
};

/* Minimal generators of a degreewise module up to d_max: (degree, coordinate). */
std::vector<std::pair<int, int>> minimal_generators(const DegreewiseModule& m, int d_max);

/* Minimal generators of ker(eval) where eval(d) maps cover coords into a target. */
std::vector<std::pair<int, ModElement>> minimal_kernel_generators(
    const FreeModule& cover, const std::function<Mat(int)>& eval, int d_max);

/* Matrix at degree d of cover -> m sending cover generator k to the class of
   coordinate gens[k].second in m at degree gens[k].first. */
Mat cover_eval_matrix(const DegreewiseModule& m, const FreeModule& cover,
                      const std::vector<std::pair<int, int>>& gens, int d);

/* Finite presentation valid degreewise up to d_max. */
GradedModule extract_presentation(const DegreewiseModule& m, int d_max,
                                  const std::string& gen_prefix = "g");

/* Module over map.src() with action through the map; presentation valid to d_max. */
GradedModule restrict_module(const AlgebraMap& map, const GradedModule& m, int d_max);

}  // namespace lvl
