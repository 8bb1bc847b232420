#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace lvl {

/* Input/data errors (CLI exit 2). */
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* A hypothesis required by the chosen method fails on the given input (CLI exit 3). */
struct HypothesisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* Cross-check between independent computation paths disagreed (CLI exit 4). */
struct CrossCheckError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* Exact scalar: residue in [0,p) for F_p, or an arbitrary-precision rational. */
using Scalar = std::variant<uint64_t, mpq_class>;

class FieldSpec {
 public:
  enum class Kind { fp, rationals };

  FieldSpec() = default;
  static FieldSpec Fp(uint64_t p);
  static FieldSpec Q();
  /* "fp:5" or "q" */
  static FieldSpec parse(const std::string& s);

  Kind kind() const { return kind_; }
  uint64_t p() const { return p_; }
  bool operator==(const FieldSpec& o) const { return kind_ == o.kind_ && p_ == o.p_; }
  uint64_t characteristic() const { return kind_ == Kind::fp ? p_ : 0; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long n) const;
  Scalar from_string(const std::string& s) const;

  bool is_zero(const Scalar& a) const;
  bool is_one(const Scalar& a) const;
  bool eq(const Scalar& a, const Scalar& b) const;
  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const;

  std::string str(const Scalar& a) const;
  std::string name() const;

 private:
  Kind kind_ = Kind::rationals;
  uint64_t p_ = 0;

  uint64_t fp(const Scalar& a) const;
  const mpq_class& q(const Scalar& a) const;
};

}  // namespace lvl
