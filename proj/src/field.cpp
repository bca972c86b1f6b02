#include "mforge/field.hpp"

#include <charconv>

namespace mforge {

namespace {

long parse_long(std::string_view s) {
  long v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ParseError("not an integer: '" + std::string(s) + "'");
  return v;
}

}  // namespace

bool is_prime(uint32_t p) {
  if (p < 2) return false;
  for (uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::string FieldTag::name() const { return p == 0 ? "rationals" : "gf:" + std::to_string(p); }

FieldTag FieldTag::prime(uint32_t p) {
  if (p >= (1u << 16) || !is_prime(p)) throw ParseError("GF(p) needs a prime p < 65536, got " + std::to_string(p));
  return {p};
}

FieldTag FieldTag::parse(std::string_view s) {
  if (s == "rationals" || s == "Q" || s == "QQ") return rationals();
  std::string_view body;
  if (s.starts_with("gf:"))
    body = s.substr(3);
  else if (s.starts_with("GF(") && s.ends_with(")"))
    body = s.substr(3, s.size() - 4);
  else
    throw ParseError("unknown field '" + std::string(s) + "'");
  long p = parse_long(body);
  if (p <= 0) throw ParseError("bad characteristic in '" + std::string(s) + "'");
  return prime(static_cast<uint32_t>(p));
}

Rational::Rational(long num, long den) : v_(num, den) {
  if (den == 0) throw DomainError("zero denominator");
  v_.canonicalize();
}

Rational Rational::from_int(FieldTag f, long n) {
  if (!f.rational()) throw FieldMismatch("Rational requested for " + f.name());
  return Rational(n);
}

Rational Rational::parse(FieldTag f, std::string_view s) {
  if (!f.rational()) throw FieldMismatch("Rational requested for " + f.name());
  std::string str(s);
  auto slash = str.find('/');
  auto valid = [](const std::string& t) {
    size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string num = slash == std::string::npos ? str : str.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : str.substr(slash + 1);
  if (!valid(num) || !valid(den)) throw ParseError("not a rational: '" + str + "'");
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw ParseError("zero denominator in '" + str + "'");
  mpq_class q(n, d);
  return Rational(q);
}

Rational Rational::inv() const {
  if (is_zero()) throw DomainError("division by zero");
  return Rational(mpq_class(1 / v_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  v_ /= o.v_;
  return *this;
}

std::string Rational::str() const { return v_.get_num().get_str() + "/" + v_.get_den().get_str(); }

ModP ModP::from_int(FieldTag f, long n) {
  if (f.rational()) throw FieldMismatch("ModP requested for rationals");
  ModP r;
  r.p_ = f.p;
  long m = n % static_cast<long>(f.p);
  if (m < 0) m += f.p;
  r.v_ = static_cast<uint32_t>(m);
  return r;
}

ModP ModP::parse(FieldTag f, std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return from_int(f, parse_long(s));
  ModP num = from_int(f, parse_long(s.substr(0, slash)));
  ModP den = from_int(f, parse_long(s.substr(slash + 1)));
  if (den.is_zero()) throw ParseError("denominator vanishes mod " + std::to_string(f.p));
  return num / den;
}

ModP ModP::inv() const {
  if (v_ == 0) throw DomainError("division by zero in " + field().name());
  // Fermat: v^(p-2).
  uint64_t base = v_, e = p_ - 2, acc = 1;
  while (e) {
    if (e & 1) acc = acc * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  ModP r;
  r.p_ = p_;
  r.v_ = static_cast<uint32_t>(acc);
  return r;
}

}  // namespace mforge
