#include "lvl/field.hpp"

namespace lvl {

static bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::Fp(uint64_t p) {
  if (p >= (1ull << 31) || !is_prime_u64(p))
    throw SchemaError("field: p must be a prime below 2^31, got " + std::to_string(p));
  FieldSpec f;
  f.kind_ = Kind::fp;
  f.p_ = p;
  return f;
}

FieldSpec FieldSpec::Q() {
  FieldSpec f;
  f.kind_ = Kind::rationals;
  return f;
}

FieldSpec FieldSpec::parse(const std::string& s) {
  if (s == "q" || s == "Q") return Q();
  if (s.rfind("fp:", 0) == 0) {
    try {
      return Fp(std::stoull(s.substr(3)));
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
  }
  throw SchemaError("field: expected \"q\" or \"fp:P\", got \"" + s + "\"");
}

uint64_t FieldSpec::fp(const Scalar& a) const { return std::get<uint64_t>(a); }
const mpq_class& FieldSpec::q(const Scalar& a) const { return std::get<mpq_class>(a); }

Scalar FieldSpec::zero() const {
  return kind_ == Kind::fp ? Scalar(uint64_t(0)) : Scalar(mpq_class(0));
}

Scalar FieldSpec::one() const {
  return kind_ == Kind::fp ? Scalar(uint64_t(1)) : Scalar(mpq_class(1));
}

Scalar FieldSpec::from_int(long long n) const {
  if (kind_ == Kind::rationals) return mpq_class(static_cast<long>(n));
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<uint64_t>(r);
}

Scalar FieldSpec::from_string(const std::string& s) const {
  mpq_class v;
  if (v.set_str(s, 10) != 0) throw SchemaError("coefficient: cannot parse \"" + s + "\"");
  v.canonicalize();
  if (kind_ == Kind::rationals) return v;
  mpz_class den = v.get_den(), p(static_cast<unsigned long>(p_));
  if (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t()))
    throw SchemaError("coefficient \"" + s + "\" has denominator divisible by p=" + std::to_string(p_));
  mpz_class num = v.get_num() % p;
  if (num < 0) num += p;
  mpz_class dinv;
  if (!mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()))
    throw SchemaError("coefficient \"" + s + "\": denominator not invertible mod p");
  mpz_class r = (num * dinv) % p;
  return static_cast<uint64_t>(r.get_ui());
}

bool FieldSpec::is_zero(const Scalar& a) const {
  return kind_ == Kind::fp ? fp(a) == 0 : sgn(q(a)) == 0;
}

bool FieldSpec::is_one(const Scalar& a) const {
  return kind_ == Kind::fp ? fp(a) == 1 : q(a) == 1;
}

bool FieldSpec::eq(const Scalar& a, const Scalar& b) const {
  return kind_ == Kind::fp ? fp(a) == fp(b) : q(a) == q(b);
}

Scalar FieldSpec::add(const Scalar& a, const Scalar& b) const {
  if (kind_ == Kind::fp) {
    uint64_t s = fp(a) + fp(b);
    if (s >= p_) s -= p_;
    return s;
  }
  return mpq_class(q(a) + q(b));
}

Scalar FieldSpec::sub(const Scalar& a, const Scalar& b) const {
  if (kind_ == Kind::fp) {
    uint64_t x = fp(a), y = fp(b);
    return x >= y ? x - y : x + p_ - y;
  }
  return mpq_class(q(a) - q(b));
}

Scalar FieldSpec::mul(const Scalar& a, const Scalar& b) const {
  if (kind_ == Kind::fp) return (fp(a) * fp(b)) % p_;
  return mpq_class(q(a) * q(b));
}

Scalar FieldSpec::neg(const Scalar& a) const {
  if (kind_ == Kind::fp) {
    uint64_t x = fp(a);
    return x == 0 ? x : p_ - x;
  }
  return mpq_class(-q(a));
}

Scalar FieldSpec::inv(const Scalar& a) const {
  if (is_zero(a)) throw std::domain_error("field: inverse of zero");
  if (kind_ == Kind::rationals) return mpq_class(1 / q(a));
  /* extended Euclid on (a, p) */
  int64_t t = 0, nt = 1, r = static_cast<int64_t>(p_), nr = static_cast<int64_t>(fp(a));
  while (nr != 0) {
    int64_t qt = r / nr;
    std::swap(t -= qt * nt, nt);
    std::swap(r -= qt * nr, nr);
  }
  if (t < 0) t += static_cast<int64_t>(p_);
  return static_cast<uint64_t>(t);
}

Scalar FieldSpec::div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

std::string FieldSpec::str(const Scalar& a) const {
  return kind_ == Kind::fp ? std::to_string(fp(a)) : q(a).get_str();
}

std::string FieldSpec::name() const {
  return kind_ == Kind::fp ? "fp:" + std::to_string(p_) : "q";
}

}  // namespace lvl
