#include "godron/rational.hpp"

#include "godron/error.hpp"

#include <charconv>
#include <string_view>

namespace godron {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw UsageError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational& Rational::operator+=(const Rational& o) {
  const std::int64_t g = std::gcd(den_, o.den_);
  const std::int64_t lhs = num_ * (o.den_ / g);
  const std::int64_t rhs = o.num_ * (den_ / g);
  *this = Rational(lhs + rhs, den_ / g * o.den_);
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  const std::int64_t g1 = std::gcd(num_, o.den_);
  const std::int64_t g2 = std::gcd(o.num_, den_);
  *this = Rational((num_ / g1) * (o.num_ / g2), (den_ / g2) * (o.den_ / g1));
  return *this;
}

std::string Rational::to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

Rational Rational::parse(const std::string& text) {
  const auto bad = [&] { return ValidationError("not a rational: '" + text + "'"); };
  const auto integer = [&](std::string_view part) {
    std::int64_t v = 0;
    const auto r = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || r.ec != std::errc() || r.ptr != part.data() + part.size()) throw bad();
    return v;
  };
  const std::string_view sv(text);
  const auto slash = sv.find('/');
  if (slash == std::string_view::npos) return Rational(integer(sv));
  const std::int64_t den = integer(sv.substr(slash + 1));
  if (den == 0) throw bad();
  return Rational(integer(sv.substr(0, slash)), den);
}

}  // namespace godron
