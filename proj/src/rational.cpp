#include "eisp/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "eisp/errors.hpp"

namespace eisp {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

__int128 checked_mul(__int128 a, __int128 b) {
  __int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw InvariantError("rational overflow in multiply");
  return r;
}

__int128 checked_add(__int128 a, __int128 b) {
  __int128 r;
  if (__builtin_add_overflow(a, b, &r)) throw InvariantError("rational overflow in add");
  return r;
}

std::string int128_to_string(__int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
  std::string digits;
  while (u > 0) {
    digits.push_back(static_cast<char>('0' + (int)(u % 10)));
    u /= 10;
  }
  if (neg) digits.push_back('-');
  return std::string(digits.rbegin(), digits.rend());
}

}  // namespace

Rational::Rational(long long num, long long den) : num_(num), den_(den) {
  if (den == 0) throw InvariantError("rational with zero denominator");
  normalize();
}

Rational::Rational(__int128 num, __int128 den, bool) : num_(num), den_(den) {
  if (den == 0) throw InvariantError("rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  __int128 g = gcd128(num_, den_);
  num_ /= g;
  den_ /= g;
}

Rational Rational::parse(const std::string& text) {
  if (text.empty()) throw ValidationError("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational n = parse(text.substr(0, slash));
    Rational d = parse(text.substr(slash + 1));
    if (d.is_zero()) throw ValidationError("rational literal with zero denominator: " + text);
    return n / d;
  }
  size_t i = 0;
  bool neg = false;
  if (text[i] == '+' || text[i] == '-') {
    neg = text[i] == '-';
    ++i;
  }
  __int128 num = 0;
  __int128 den = 1;
  bool seen_digit = false;
  bool seen_dot = false;
  try {
    for (; i < text.size(); ++i) {
      char c = text[i];
      if (c == '.') {
        if (seen_dot) throw ValidationError("malformed rational literal: " + text);
        seen_dot = true;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ValidationError("malformed rational literal: " + text);
      seen_digit = true;
      num = checked_add(checked_mul(num, 10), c - '0');
      if (seen_dot) den = checked_mul(den, 10);
    }
  } catch (const InvariantError&) {
    throw ValidationError("rational literal out of range: " + text);
  }
  if (!seen_digit) throw ValidationError("malformed rational literal: " + text);
  return Rational(neg ? -num : num, den, true);
}

std::string Rational::to_string() const {
  if (den_ == 1) return int128_to_string(num_);
  // Try a finite decimal expansion.
  __int128 rest = den_;
  int twos = 0;
  int fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest == 1) {
    int digits = twos > fives ? twos : fives;
    __int128 scale = 1;
    bool ok = true;
    for (int k = 0; k < digits; ++k) {
      if (__builtin_mul_overflow(scale, (__int128)10, &scale)) {
        ok = false;
        break;
      }
    }
    __int128 scaled = 0;
    // den divides 10^digits exactly, so scale/den is integral.
    if (ok) ok = !__builtin_mul_overflow(num_, scale / den_, &scaled);
    if (ok) {
      std::string body = int128_to_string(scaled < 0 ? -scaled : scaled);
      while ((int)body.size() <= digits) body.insert(body.begin(), '0');
      body.insert(body.size() - digits, ".");
      while (body.back() == '0') body.pop_back();
      if (body.back() == '.') body.pop_back();
      return (num_ < 0 ? "-" : "") + body;
    }
  }
  return int128_to_string(num_) + "/" + int128_to_string(den_);
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

long long Rational::to_int64() const {
  if (den_ != 1) throw InvariantError("to_int64 on a non-integer rational " + to_string());
  if (num_ > (__int128)INT64_MAX || num_ < (__int128)INT64_MIN)
    throw InvariantError("rational does not fit in int64: " + to_string());
  return static_cast<long long>(num_);
}

Rational Rational::denominator_lcm(const std::vector<Rational>& values) {
  __int128 l = 1;
  for (const Rational& v : values) {
    __int128 g = gcd128(l, v.den_);
    l = checked_mul(l / g, v.den_);
  }
  return Rational(l, 1, true);
}

Rational Rational::operator-() const { return Rational(-num_, den_, true); }

Rational Rational::operator+(const Rational& o) const {
  __int128 g = gcd128(den_, o.den_);
  __int128 lhs = checked_mul(num_, o.den_ / g);
  __int128 rhs = checked_mul(o.num_, den_ / g);
  return Rational(checked_add(lhs, rhs), checked_mul(den_ / g, o.den_), true);
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  __int128 g1 = gcd128(num_, o.den_);
  __int128 g2 = gcd128(o.num_, den_);
  return Rational(checked_mul(num_ / g1, o.num_ / g2), checked_mul(den_ / g2, o.den_ / g1), true);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.is_zero()) throw InvariantError("rational division by zero");
  return *this * Rational(o.den_, o.num_, true);
}

bool Rational::operator<(const Rational& o) const {
  __int128 lhs = checked_mul(num_, o.den_);
  __int128 rhs = checked_mul(o.num_, den_);
  return lhs < rhs;
}

Rational Rational::pow(int exponent) const {
  if (exponent < 0) return (Rational(1) / *this).pow(-exponent);
  Rational r(1);
  for (int i = 0; i < exponent; ++i) r *= *this;
  return r;
}

}  // namespace eisp
