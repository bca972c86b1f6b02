#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mforge {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Bad input shape or malformed document. The CLI maps these to exit code 2.
struct ParseError : Error {
  using Error::Error;
};
struct ShapeError : Error {
  using Error::Error;
};
struct FieldMismatch : Error {
  using Error::Error;
};
// A mathematical precondition does not hold (w outside W0, non-surjective map, ...).
struct DomainError : Error {
  using Error::Error;
};
struct BudgetExceeded : Error {
  using Error::Error;
};

// p == 0 stands for the rationals.
struct FieldTag {
  uint32_t p = 0;

  bool operator==(const FieldTag&) const = default;
  bool rational() const { return p == 0; }
  std::string name() const;

  static FieldTag rationals() { return {}; }
  static FieldTag prime(uint32_t p);
  // Accepts "rationals", "Q", "gf:p", "GF(p)".
  static FieldTag parse(std::string_view s);
};

bool is_prime(uint32_t p);

inline void require_same(FieldTag a, FieldTag b) {
  if (a != b) throw FieldMismatch("mixed fields: " + a.name() + " vs " + b.name());
}

class Rational {
 public:
  Rational() = default;
  Rational(long n) : v_(n) {}
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
  Rational(long num, long den);

  static Rational zero(FieldTag f) { return from_int(f, 0); }
  static Rational one(FieldTag f) { return from_int(f, 1); }
  static Rational from_int(FieldTag f, long n);
  // "a/b" or "a".
  static Rational parse(FieldTag f, std::string_view s);

  FieldTag field() const { return {}; }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }
  Rational inv() const;
  std::string str() const;
  const mpq_class& value() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(mpq_class(-v_)); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

 private:
  mpq_class v_;
};

// Element of GF(p), p < 2^16. A default-constructed value has p == 0 and
// mixes with nothing.
class ModP {
 public:
  ModP() = default;

  static ModP zero(FieldTag f) { return from_int(f, 0); }
  static ModP one(FieldTag f) { return from_int(f, 1); }
  static ModP from_int(FieldTag f, long n);
  static ModP parse(FieldTag f, std::string_view s);

  FieldTag field() const { return {p_}; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  uint32_t value() const { return v_; }
  ModP inv() const;
  std::string str() const { return std::to_string(v_) + "/1"; }

  ModP& operator+=(const ModP& o) {
    check(o);
    v_ += o.v_;
    if (v_ >= p_) v_ -= p_;
    return *this;
  }
  ModP& operator-=(const ModP& o) {
    check(o);
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
    return *this;
  }
  ModP& operator*=(const ModP& o) {
    check(o);
    v_ = v_ * o.v_ % p_;
    return *this;
  }
  ModP& operator/=(const ModP& o) { return *this *= o.inv(); }
  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  ModP operator-() const {
    ModP r = *this;
    r.v_ = v_ == 0 ? 0 : p_ - v_;
    return r;
  }
  friend bool operator==(const ModP& a, const ModP& b) { return a.p_ == b.p_ && a.v_ == b.v_; }

 private:
  void check(const ModP& o) const {
    if (p_ != o.p_ || p_ == 0) require_same(field(), o.field());
  }
  uint32_t v_ = 0;
  uint32_t p_ = 0;
};

template <class F>
concept ExactField = requires(F a, const F b, FieldTag t, long k, std::string_view s) {
  { F::zero(t) } -> std::same_as<F>;
  { F::one(t) } -> std::same_as<F>;
  { F::from_int(t, k) } -> std::same_as<F>;
  { F::parse(t, s) } -> std::same_as<F>;
  { b.field() } -> std::same_as<FieldTag>;
  { b.is_zero() } -> std::same_as<bool>;
  { b.inv() } -> std::same_as<F>;
  { b.str() } -> std::same_as<std::string>;
  { a + b } -> std::same_as<F>;
  { a - b } -> std::same_as<F>;
  { a * b } -> std::same_as<F>;
  { a / b } -> std::same_as<F>;
  { -b } -> std::same_as<F>;
  { a == b } -> std::same_as<bool>;
};

static_assert(ExactField<Rational>);
static_assert(ExactField<ModP>);

}  // namespace mforge
