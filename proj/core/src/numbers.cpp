#include "corrset/numbers.hpp"

#include "corrset/errors.hpp"

namespace corrset {

Rat parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ValidationError("rational: empty string");
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw ValidationError("rational: zero denominator in '" + s + "'");
    return Rat(num, den);
  } catch (const std::exception&) {
    throw ValidationError("rational: cannot parse '" + s + "'");
  }
}

std::string to_string(const Rat& q) {
  return q.str();
}

Prob& Prob::operator+=(const Prob& o) {
  if (is_exact() && o.is_exact())
    value_ = Rat(std::get<Rat>(value_) + std::get<Rat>(o.value_));
  else
    value_ = Real(real() + o.real());
  return *this;
}

Prob& Prob::operator-=(const Prob& o) {
  if (is_exact() && o.is_exact())
    value_ = Rat(std::get<Rat>(value_) - std::get<Rat>(o.value_));
  else
    value_ = Real(real() - o.real());
  return *this;
}

Prob& Prob::operator*=(const Prob& o) {
  if (is_exact() && o.is_exact())
    value_ = Rat(std::get<Rat>(value_) * std::get<Rat>(o.value_));
  else
    value_ = Real(real() * o.real());
  return *this;
}

Prob Prob::abs() const {
  if (is_exact()) return Prob(Rat(boost::multiprecision::abs(std::get<Rat>(value_))));
  return Prob(Real(boost::multiprecision::abs(std::get<Real>(value_))));
}

int Prob::compare(const Prob& o) const {
  if (is_exact() && o.is_exact()) {
    const Rat &a = std::get<Rat>(value_), &b = std::get<Rat>(o.value_);
    return a < b ? -1 : (a > b ? 1 : 0);
  }
  Real a = real(), b = o.real();
  return a < b ? -1 : (a > b ? 1 : 0);
}

std::string Prob::str(unsigned real_digits) const {
  if (is_exact()) return std::get<Rat>(value_).str();
  return std::get<Real>(value_).str(real_digits);
}

}  // namespace corrset
