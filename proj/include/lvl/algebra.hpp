#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lvl/field.hpp"
#include "lvl/linalg.hpp"

namespace lvl {

struct Generator {
  std::string name;
  int degree; /* >= 1 */
};

/* Exponent vector indexed by generator. */
using Exponents = std::vector<int>;

/* Descending lexicographic; ties broken nowhere (total order). */
bool mono_before(const Exponents& a, const Exponents& b);

class GradedAlgebra;
using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

/* Homogeneous linear combination of canonical monomials, sorted by mono_before. */
struct Element {
  std::vector<std::pair<Exponents, Scalar>> terms;
  bool is_zero() const { return terms.empty(); }
};

/* Finitely presented graded-commutative monomial quotient:
   k<x_1..x_n> / (sign rule, odd squares, monomial relations). */
class GradedAlgebra {
 public:
  GradedAlgebra(FieldSpec field, std::vector<Generator> gens, std::vector<Exponents> relations,
                bool char2_odd_square_allowed = false);

  const FieldSpec& field() const { return field_; }
  int num_gens() const { return static_cast<int>(gens_.size()); }
  const std::vector<Generator>& gens() const { return gens_; }
  const Generator& gen(int i) const { return gens_[i]; }
  const std::vector<Exponents>& relations() const { return relations_; }
  bool char2_odd_square_allowed() const { return char2_override_; }

  bool gen_is_odd(int i) const { return gens_[i].degree % 2 != 0; }
  /* odd generators square to zero unless the char-2 override is active */
  bool odd_squares_vanish() const;

  int mono_degree(const Exponents& e) const;
  bool mono_is_zero(const Exponents& e) const;

  /* Canonical basis of A^d (nonzero monomials, descending lex). */
  const std::vector<Exponents>& basis(int d) const;
  int dim(int d) const { return static_cast<int>(basis(d).size()); }
  /* Index of monomial in basis(d); -1 if zero/absent. */
  int basis_index(int d, const Exponents& e) const;

  /* x^a * x^b with the graded sign; nullopt when the product is zero. */
  std::optional<std::pair<int, Exponents>> mono_mul(const Exponents& a, const Exponents& b) const;

  Element el_zero() const { return {}; }
  Element el_one() const;
  Element el_gen(int i) const;
  Element el_mono(const Exponents& e) const;
  Element el_add(const Element& a, const Element& b) const;
  Element el_scale(const Scalar& c, const Element& a) const;
  Element el_mul(const Element& a, const Element& b) const;
  Element el_pow(const Element& a, int n) const;
  bool el_eq(const Element& a, const Element& b) const;
  /* Degree of a homogeneous element; nullopt for 0; throws if mixed. */
  std::optional<int> el_degree(const Element& a) const;
  std::string el_str(const Element& a) const;

  /* True if free graded-commutative with no forced nilpotents (polynomial). */
  bool is_polynomial() const;
  /* All generators even (vacuous in characteristic 2). */
  bool generators_even() const;

  /* Q(A)^d = A^+/(A^+ A^+) in degree d: surviving degree-d generators. */
  std::vector<int> indecomposables(int d) const;
  std::vector<std::pair<int, int>> indecomposable_dims() const; /* (degree, dim), all degrees */

  /* dim A^d for 0 <= d <= up_to */
  std::vector<int> hilbert(int up_to) const;

  /* nullopt if some generator has no nilpotency bound (infinite-dimensional). */
  std::optional<int> top_degree_bound() const;
  std::optional<long long> total_dim() const;
  /* Largest n with (A^+)^n != 0; throws HypothesisError if not finite-dim. */
  int cup_length() const;

  /* max over generator and relation degrees (for default bounds) */
  int max_input_degree() const;

  std::string describe() const;

 private:
  FieldSpec field_;
  std::vector<Generator> gens_;
  std::vector<Exponents> relations_;
  bool char2_override_ = false;
  mutable std::map<int, std::vector<Exponents>> basis_cache_;

  bool divisible_by_relation(const Exponents& e) const;
};

/* Degree-preserving algebra map given by generator images; relations checked. */
class AlgebraMap {
 public:
  AlgebraMap(AlgebraPtr src, AlgebraPtr dst, std::vector<Element> images);
  static AlgebraMap identity(AlgebraPtr a);
  static AlgebraMap zero(AlgebraPtr src, AlgebraPtr dst);

  const AlgebraPtr& src() const { return src_; }
  const AlgebraPtr& dst() const { return dst_; }
  const Element& image(int i) const { return images_[i]; }
  const std::vector<Element>& images() const { return images_; }

  Element apply_mono(const Exponents& e) const;
  Element apply(const Element& a) const;
  AlgebraMap compose_after(const AlgebraMap& inner) const; /* this ∘ inner */

 private:
  AlgebraPtr src_, dst_;
  std::vector<Element> images_;

  Element apply_mono_unchecked(const Exponents& e) const;
};

}  // namespace lvl
