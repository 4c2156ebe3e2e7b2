#ifndef CORRSET_NUMBERS_HPP
#define CORRSET_NUMBERS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace corrset {

// Exact arithmetic everywhere except circle-rotation codings, which work in
// configurable-precision reals (MPFR, precision in decimal digits).
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float;
using Wide = boost::multiprecision::int256_t;

inline constexpr unsigned kDefaultRealDigits = 50;

inline void set_real_precision(unsigned decimal_digits) {
  Real::default_precision(decimal_digits);
}

Rat parse_rational(std::string_view text);
std::string to_string(const Rat& q);

inline Int rational_ceil(const Rat& q) {
  Int num = numerator(q), den = denominator(q);
  Int quot = num / den;
  if (quot * den < num) ++quot;
  return quot;
}

inline Int rational_floor(const Rat& q) {
  Int num = numerator(q), den = denominator(q);
  Int quot = num / den;
  if (quot * den > num) --quot;
  return quot;
}

// A probability value: exact rational for finitely-described measures,
// high-precision real once a rotation coding enters the computation.
class Prob {
 public:
  Prob() : value_(Rat(0)) {}
  Prob(Rat q) : value_(std::move(q)) {}
  Prob(Real r) : value_(std::move(r)) {}
  Prob(int n) : value_(Rat(n)) {}

  bool is_exact() const { return std::holds_alternative<Rat>(value_); }
  const Rat& rat() const {
    if (!is_exact()) throw std::logic_error("Prob: rational value requested from real");
    return std::get<Rat>(value_);
  }
  Real real() const {
    if (is_exact()) {
      const Rat& q = std::get<Rat>(value_);
      return Real(numerator(q)) / Real(denominator(q));
    }
    return std::get<Real>(value_);
  }

  Prob& operator+=(const Prob& o);
  Prob& operator-=(const Prob& o);
  Prob& operator*=(const Prob& o);
  friend Prob operator+(Prob a, const Prob& b) { return a += b; }
  friend Prob operator-(Prob a, const Prob& b) { return a -= b; }
  friend Prob operator*(Prob a, const Prob& b) { return a *= b; }

  Prob abs() const;
  int compare(const Prob& o) const;  // -1, 0, +1
  bool operator<(const Prob& o) const { return compare(o) < 0; }
  bool operator>(const Prob& o) const { return compare(o) > 0; }
  bool operator<=(const Prob& o) const { return compare(o) <= 0; }
  bool operator>=(const Prob& o) const { return compare(o) >= 0; }
  bool operator==(const Prob& o) const { return compare(o) == 0; }

  double to_double() const { return static_cast<double>(real()); }
  // "a/b" for rationals, decimal expansion for reals.
  std::string str(unsigned real_digits = kDefaultRealDigits) const;

 private:
  std::variant<Rat, Real> value_;
};

}  // namespace corrset

#endif
