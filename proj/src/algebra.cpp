#include "lvl/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace lvl {

bool mono_before(const Exponents& a, const Exponents& b) {
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

static bool mono_divides(const Exponents& d, const Exponents& e) {
  for (size_t i = 0; i < d.size(); ++i)
    if (d[i] > e[i]) return false;
  return true;
}

GradedAlgebra::GradedAlgebra(FieldSpec field, std::vector<Generator> gens,
                             std::vector<Exponents> relations, bool char2_odd_square_allowed)
    : field_(field), gens_(std::move(gens)), char2_override_(char2_odd_square_allowed) {
  for (auto& g : gens_) {
    if (g.degree < 1)
      throw SchemaError("algebra: generator \"" + g.name + "\" must have degree >= 1");
    if (g.name.empty()) throw SchemaError("algebra: generator with empty name");
  }
  for (size_t i = 0; i < gens_.size(); ++i)
    for (size_t j = i + 1; j < gens_.size(); ++j)
      if (gens_[i].name == gens_[j].name)
        throw SchemaError("algebra: duplicate generator name \"" + gens_[i].name + "\"");
  if (char2_override_ && field_.characteristic() != 2)
    throw SchemaError("algebra: char2_odd_square_allowed requires characteristic 2");

  for (auto& r : relations) {
    if (r.size() != gens_.size()) throw SchemaError("algebra: relation arity mismatch");
    bool nonzero = false;
    for (int e : r) {
      if (e < 0) throw SchemaError("algebra: negative exponent in relation");
      nonzero = nonzero || e > 0;
    }
    if (!nonzero) throw SchemaError("algebra: relation 1 = 0 not allowed");
  }
  /* drop relations implied by odd squares, then by divisibility; sort */
  std::vector<Exponents> kept;
  for (auto& r : relations) {
    bool implied = false;
    if (odd_squares_vanish())
      for (size_t i = 0; i < gens_.size(); ++i)
        if (gen_is_odd(static_cast<int>(i)) && r[i] >= 2) implied = true;
    if (!implied) kept.push_back(r);
  }
  std::sort(kept.begin(), kept.end(), mono_before);
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  for (auto& r : kept) {
    bool redundant = false;
    for (auto& s : kept)
      if (&s != &r && mono_divides(s, r)) {
        redundant = true;
        break;
      }
    if (!redundant) relations_.push_back(r);
  }
}

bool GradedAlgebra::odd_squares_vanish() const {
  return !(field_.characteristic() == 2 && char2_override_);
}

int GradedAlgebra::mono_degree(const Exponents& e) const {
  int d = 0;
  for (size_t i = 0; i < e.size(); ++i) d += e[i] * gens_[i].degree;
  return d;
}

bool GradedAlgebra::divisible_by_relation(const Exponents& e) const {
  for (auto& r : relations_)
    if (mono_divides(r, e)) return true;
  return false;
}

bool GradedAlgebra::mono_is_zero(const Exponents& e) const {
  if (odd_squares_vanish())
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] >= 2 && gen_is_odd(static_cast<int>(i))) return true;
  return divisible_by_relation(e);
}

const std::vector<Exponents>& GradedAlgebra::basis(int d) const {
  auto it = basis_cache_.find(d);
  if (it != basis_cache_.end()) return it->second;
  std::vector<Exponents> out;
  if (d >= 0) {
    Exponents e(gens_.size(), 0);
    /* descending lex: largest exponent of the first generator first */
    auto rec = [&](auto&& self, size_t i, int rem) -> void {
      if (i == gens_.size()) {
        if (rem == 0 && !mono_is_zero(e)) out.push_back(e);
        return;
      }
      int cap = rem / gens_[i].degree;
      if (gen_is_odd(static_cast<int>(i)) && odd_squares_vanish()) cap = std::min(cap, 1);
      for (int k = cap; k >= 0; --k) {
        e[i] = k;
        self(self, i + 1, rem - k * gens_[i].degree);
      }
      e[i] = 0;
    };
    rec(rec, 0, d);
  }
  return basis_cache_.emplace(d, std::move(out)).first->second;
}

int GradedAlgebra::basis_index(int d, const Exponents& e) const {
  const auto& b = basis(d);
  auto it = std::lower_bound(b.begin(), b.end(), e, mono_before);
  if (it != b.end() && *it == e) return static_cast<int>(it - b.begin());
  return -1;
}

std::optional<std::pair<int, Exponents>> GradedAlgebra::mono_mul(const Exponents& a,
                                                                 const Exponents& b) const {
  Exponents c(gens_.size());
  for (size_t i = 0; i < gens_.size(); ++i) c[i] = a[i] + b[i];
  if (mono_is_zero(c)) return std::nullopt;
  /* sign: letters of b with index j pass letters of a with index i > j */
  long swaps = 0;
  if (field_.characteristic() != 2) {
    long odd_a_above = 0; /* sum over i > j of odd a_i, computed descending */
    for (int j = static_cast<int>(gens_.size()) - 1; j >= 0; --j) {
      if (gen_is_odd(j) && b[j]) swaps += static_cast<long>(b[j]) * odd_a_above;
      if (gen_is_odd(j) && a[j]) odd_a_above += a[j];
    }
  }
  return std::make_pair(swaps % 2 == 0 ? 1 : -1, std::move(c));
}

Element GradedAlgebra::el_one() const { return el_mono(Exponents(gens_.size(), 0)); }

Element GradedAlgebra::el_gen(int i) const {
  Exponents e(gens_.size(), 0);
  e[i] = 1;
  return el_mono(e);
}

Element GradedAlgebra::el_mono(const Exponents& e) const {
  if (mono_is_zero(e)) return {};
  return Element{{{e, field_.one()}}};
}

Element GradedAlgebra::el_add(const Element& a, const Element& b) const {
  Element out;
  size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    if (j == b.terms.size() ||
        (i < a.terms.size() && mono_before(a.terms[i].first, b.terms[j].first))) {
      out.terms.push_back(a.terms[i++]);
    } else if (i == a.terms.size() || mono_before(b.terms[j].first, a.terms[i].first)) {
      out.terms.push_back(b.terms[j++]);
    } else {
      Scalar s = field_.add(a.terms[i].second, b.terms[j].second);
      if (!field_.is_zero(s)) out.terms.emplace_back(a.terms[i].first, std::move(s));
      ++i, ++j;
    }
  }
  return out;
}

Element GradedAlgebra::el_scale(const Scalar& c, const Element& a) const {
  if (field_.is_zero(c)) return {};
  Element out = a;
  for (auto& [m, s] : out.terms) s = field_.mul(c, s);
  return out;
}

Element GradedAlgebra::el_mul(const Element& a, const Element& b) const {
  Element out;
  for (auto& [ma, ca] : a.terms)
    for (auto& [mb, cb] : b.terms) {
      auto prod = mono_mul(ma, mb);
      if (!prod) continue;
      Scalar c = field_.mul(ca, cb);
      if (prod->first < 0) c = field_.neg(c);
      out = el_add(out, Element{{{prod->second, c}}});
    }
  return out;
}

Element GradedAlgebra::el_pow(const Element& a, int n) const {
  Element out = el_one();
  for (int k = 0; k < n; ++k) out = el_mul(out, a);
  return out;
}

bool GradedAlgebra::el_eq(const Element& a, const Element& b) const {
  if (a.terms.size() != b.terms.size()) return false;
  for (size_t i = 0; i < a.terms.size(); ++i)
    if (a.terms[i].first != b.terms[i].first || !field_.eq(a.terms[i].second, b.terms[i].second))
      return false;
  return true;
}

std::optional<int> GradedAlgebra::el_degree(const Element& a) const {
  if (a.terms.empty()) return std::nullopt;
  int d = mono_degree(a.terms[0].first);
  for (auto& [m, c] : a.terms)
    if (mono_degree(m) != d) throw SchemaError("element is not homogeneous");
  return d;
}

std::string GradedAlgebra::el_str(const Element& a) const {
  if (a.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : a.terms) {
    if (!first) os << " + ";
    first = false;
    os << field_.str(c);
    for (size_t i = 0; i < m.size(); ++i)
      if (m[i]) {
        os << "*" << gens_[i].name;
        if (m[i] > 1) os << "^" << m[i];
      }
  }
  return os.str();
}

bool GradedAlgebra::is_polynomial() const {
  if (!relations_.empty()) return false;
  for (size_t i = 0; i < gens_.size(); ++i)
    if (gen_is_odd(static_cast<int>(i)) && odd_squares_vanish()) return false;
  return true;
}

bool GradedAlgebra::generators_even() const {
  for (size_t i = 0; i < gens_.size(); ++i)
    if (gen_is_odd(static_cast<int>(i))) return false;
  return true;
}

std::vector<int> GradedAlgebra::indecomposables(int d) const {
  std::vector<int> out;
  for (int i = 0; i < num_gens(); ++i) {
    if (gens_[i].degree != d) continue;
    Exponents e(gens_.size(), 0);
    e[i] = 1;
    if (!mono_is_zero(e)) out.push_back(i);
  }
  return out;
}

std::vector<std::pair<int, int>> GradedAlgebra::indecomposable_dims() const {
  std::map<int, int> by_deg;
  for (int i = 0; i < num_gens(); ++i) {
    Exponents e(gens_.size(), 0);
    e[i] = 1;
    if (!mono_is_zero(e)) by_deg[gens_[i].degree]++;
  }
  return {by_deg.begin(), by_deg.end()};
}

std::vector<int> GradedAlgebra::hilbert(int up_to) const {
  std::vector<int> out;
  for (int d = 0; d <= up_to; ++d) out.push_back(dim(d));
  return out;
}

std::optional<int> GradedAlgebra::top_degree_bound() const {
  int bound = 0;
  for (int i = 0; i < num_gens(); ++i) {
    int cap = -1; /* least k with x_i^k = 0 */
    if (gen_is_odd(i) && odd_squares_vanish()) cap = 2;
    for (auto& r : relations_) {
      bool pure = r[i] > 0;
      for (int j = 0; j < num_gens() && pure; ++j)
        if (j != i && r[j] > 0) pure = false;
      if (pure && (cap < 0 || r[i] < cap)) cap = r[i];
    }
    if (cap < 0) return std::nullopt; /* x_i^k never dies: infinite-dimensional */
    bound += (cap - 1) * gens_[i].degree;
  }
  return bound;
}

std::optional<long long> GradedAlgebra::total_dim() const {
  auto top = top_degree_bound();
  if (!top) return std::nullopt;
  long long n = 0;
  for (int d = 0; d <= *top; ++d) n += dim(d);
  return n;
}

int GradedAlgebra::cup_length() const {
  auto top = top_degree_bound();
  if (!top)
    throw HypothesisError("cup length undefined without finiteness: algebra is not finite-dimensional");
  int best = 0;
  for (int d = 0; d <= *top; ++d)
    for (auto& m : basis(d)) {
      int len = 0;
      for (int e : m) len += e;
      best = std::max(best, len);
    }
  return best;
}

int GradedAlgebra::max_input_degree() const {
  int d = 1;
  for (auto& g : gens_) d = std::max(d, g.degree);
  for (auto& r : relations_) d = std::max(d, mono_degree(r));
  return d;
}

std::string GradedAlgebra::describe() const {
  std::ostringstream os;
  os << field_.name() << "<";
  for (int i = 0; i < num_gens(); ++i)
    os << (i ? "," : "") << gens_[i].name << ":" << gens_[i].degree;
  os << ">/" << relations_.size() << " rels";
  return os.str();
}

/* ---- AlgebraMap ---- */

AlgebraMap::AlgebraMap(AlgebraPtr src, AlgebraPtr dst, std::vector<Element> images)
    : src_(std::move(src)), dst_(std::move(dst)), images_(std::move(images)) {
  if (!(src_->field() == dst_->field()))
    throw SchemaError("algebra map: source and target fields differ");
  if (static_cast<int>(images_.size()) != src_->num_gens())
    throw SchemaError("algebra map: expected one image per generator");
  for (int i = 0; i < src_->num_gens(); ++i) {
    auto d = dst_->el_degree(images_[i]);
    if (d && *d != src_->gen(i).degree)
      throw SchemaError("algebra map: image of \"" + src_->gen(i).name +
                        "\" has degree " + std::to_string(*d) + ", expected " +
                        std::to_string(src_->gen(i).degree));
  }
  /* relations (and implicit odd squares) must map to zero */
  for (auto& r : src_->relations()) {
    if (!apply_mono_unchecked(r).is_zero())
      throw SchemaError("algebra map: image of a relation is nonzero");
  }
  if (src_->odd_squares_vanish())
    for (int i = 0; i < src_->num_gens(); ++i)
      if (src_->gen_is_odd(i) && !dst_->el_mul(images_[i], images_[i]).is_zero())
        throw SchemaError("algebra map: image of odd generator \"" + src_->gen(i).name +
                          "\" has nonzero square");
}

Element AlgebraMap::apply_mono_unchecked(const Exponents& e) const {
  Element out = dst_->el_one();
  for (size_t i = 0; i < e.size(); ++i)
    for (int k = 0; k < e[i]; ++k) out = dst_->el_mul(out, images_[i]);
  return out;
}

AlgebraMap AlgebraMap::identity(AlgebraPtr a) {
  std::vector<Element> imgs;
  for (int i = 0; i < a->num_gens(); ++i) imgs.push_back(a->el_gen(i));
  return AlgebraMap(a, a, std::move(imgs));
}

AlgebraMap AlgebraMap::zero(AlgebraPtr src, AlgebraPtr dst) {
  std::vector<Element> imgs(src->num_gens());
  return AlgebraMap(std::move(src), std::move(dst), std::move(imgs));
}

Element AlgebraMap::apply_mono(const Exponents& e) const { return apply_mono_unchecked(e); }

Element AlgebraMap::apply(const Element& a) const {
  Element out;
  for (auto& [m, c] : a.terms) out = dst_->el_add(out, dst_->el_scale(c, apply_mono(m)));
  return out;
}

AlgebraMap AlgebraMap::compose_after(const AlgebraMap& inner) const {
  if (inner.dst_.get() != src_.get())
    throw SchemaError("algebra map: composition type mismatch");
  std::vector<Element> imgs;
  for (auto& im : inner.images_) imgs.push_back(apply(im));
  return AlgebraMap(inner.src_, dst_, std::move(imgs));
}

}  // namespace lvl
