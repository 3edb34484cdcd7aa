#ifndef EISP_RATIONAL_HPP
#define EISP_RATIONAL_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace eisp {

// Exact rational on 128-bit integers. Used for priors, rewards and the
// test-side oracles; the solver hot path converts to double once per step.
// Arithmetic throws InvariantError on overflow instead of wrapping.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(long long num, long long den);

  // Accepts "8", "-3", "0.25", "12.5" and the "num/den" fallback form.
  static Rational parse(const std::string& text);

  // Canonical form: integer, finite decimal when the reduced denominator is
  // 2^a*5^b, otherwise "num/den". parse(to_string(x)) == x.
  std::string to_string() const;

  double to_double() const;

  bool is_integer() const { return den_ == 1; }
  long long to_int64() const;  // throws unless an integer that fits

  // Smallest positive integer L with L * v integral for every v.
  static Rational denominator_lcm(const std::vector<Rational>& values);

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_positive() const { return num_ > 0; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return *this < o || *this == o; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

  Rational abs() const { return num_ < 0 ? -*this : *this; }
  Rational pow(int exponent) const;

 private:
  Rational(__int128 num, __int128 den, bool normalize_input);
  void normalize();

  __int128 num_;
  __int128 den_;  // > 0
};

}  // namespace eisp

#endif  // EISP_RATIONAL_HPP
