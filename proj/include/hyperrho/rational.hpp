#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace hyperrho {

// Exact rational arithmetic for the exponent identities. Intermediate
// products run through __int128 and overflow is rejected rather than wrapped.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d = 1) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double to_double() const { return static_cast<double>(num) / den; }
};

inline Rational make_reduced(__int128 n, __int128 d) {
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 a = n < 0 ? -n : n;
  __int128 b = d;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    n /= a;
    d /= a;
  }
  constexpr __int128 lim = static_cast<__int128>(INT64_MAX);
  if (n > lim || n < -lim || d > lim)
    throw std::overflow_error("rational overflow");
  Rational r;
  r.num = static_cast<long long>(n);
  r.den = static_cast<long long>(d);
  return r;
}

inline Rational operator+(const Rational& a, const Rational& b) {
  return make_reduced(static_cast<__int128>(a.num) * b.den +
                          static_cast<__int128>(b.num) * a.den,
                      static_cast<__int128>(a.den) * b.den);
}
inline Rational operator-(const Rational& a, const Rational& b) {
  return make_reduced(static_cast<__int128>(a.num) * b.den -
                          static_cast<__int128>(b.num) * a.den,
                      static_cast<__int128>(a.den) * b.den);
}
inline Rational operator*(const Rational& a, const Rational& b) {
  return make_reduced(static_cast<__int128>(a.num) * b.num,
                      static_cast<__int128>(a.den) * b.den);
}
inline Rational reciprocal(const Rational& a) {
  return make_reduced(a.den, a.num);
}
inline bool operator==(const Rational& a, const Rational& b) {
  return a.num == b.num && a.den == b.den;
}
inline bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}
inline bool operator>(const Rational& a, const Rational& b) { return b < a; }
inline bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
inline bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

}  // namespace hyperrho
