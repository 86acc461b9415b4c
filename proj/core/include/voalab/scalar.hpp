#ifndef VOALAB_SCALAR_HPP
#define VOALAB_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace voalab {

// The two arithmetic modes of the workbench: exact rationals for algebraic
// identities, complex doubles for analytic experiments. All graded-vector and
// mode machinery is templated on the scalar and never mixes the two.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Cplx = std::complex<double>;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Rational pow_rational(const Rational& base, long exp) {
  if (exp == 0) return Rational(1);
  if (base == 0) {
    if (exp > 0) return Rational(0);
    throw std::domain_error("pow_rational: zero base with negative exponent");
  }
  Rational b = base;
  long e = exp;
  if (e < 0) {
    b = 1 / b;
    e = -e;
  }
  Rational out(1);
  while (e > 0) {
    if (e & 1) out *= b;
    b *= b;
    e >>= 1;
  }
  return out;
}

// Integer power of a complex number by squaring; deterministic across calls.
inline Cplx cpow_int(Cplx z, long exp) {
  if (exp == 0) return Cplx(1.0, 0.0);
  bool inv = exp < 0;
  unsigned long e = inv ? static_cast<unsigned long>(-exp) : static_cast<unsigned long>(exp);
  Cplx b = z, out(1.0, 0.0);
  while (e > 0) {
    if (e & 1ul) out *= b;
    b *= b;
    e >>= 1;
  }
  return inv ? Cplx(1.0, 0.0) / out : out;
}

// binom(n, k) for n >= 0, 0 <= k <= n.
inline BigInt binom_big(long n, long k) {
  if (k < 0 || k > n) return BigInt(0);
  if (k > n - k) k = n - k;
  BigInt out(1);
  for (long i = 1; i <= k; ++i) {
    out *= (n - k + i);
    out /= i;
  }
  return out;
}

Rational parse_rational(const std::string& text);
std::string rational_to_string(const Rational& q);

template <class S>
struct scalar_ops;

template <>
struct scalar_ops<Rational> {
  static constexpr bool exact = true;
  static Rational from_rational(const Rational& q) { return q; }
  static Rational from_long(long n) { return Rational(n); }
  static Rational from_bigint(const BigInt& n) { return Rational(n); }
  static bool is_zero(const Rational& q) { return q == 0; }
  static double magnitude(const Rational& q) { return std::abs(to_double(q)); }
  static Cplx to_complex(const Rational& q) { return Cplx(to_double(q), 0.0); }
};

template <>
struct scalar_ops<Cplx> {
  static constexpr bool exact = false;
  static Cplx from_rational(const Rational& q) { return Cplx(to_double(q), 0.0); }
  static Cplx from_long(long n) { return Cplx(static_cast<double>(n), 0.0); }
  static Cplx from_bigint(const BigInt& n) { return Cplx(n.convert_to<double>(), 0.0); }
  static bool is_zero(const Cplx& z) { return z == Cplx(0.0, 0.0); }
  static double magnitude(const Cplx& z) { return std::abs(z); }
  static Cplx to_complex(const Cplx& z) { return z; }
};

}  // namespace voalab

#endif
