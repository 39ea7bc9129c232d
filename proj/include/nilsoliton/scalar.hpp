#pragma once

// Two-backend scalar abstraction: exact rationals (default) and double.
// Everything downstream is generic over T via ScalarTraits<T>.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

namespace nilsoliton {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  using value_type = Rational;
  static constexpr bool is_exact = true;
  static const char* backend_name() { return "exact"; }

  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(long long v) { return Rational(v); }
  static Rational from_ratio(long long p, long long q) {
    return Rational(BigInt(p), BigInt(q));
  }

  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static bool equal(const Rational& a, const Rational& b) { return a == b; }

  static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
  static int sign(const Rational& x) { return x.sign(); }

  // Exact square root when the value is a perfect square of a rational.
  static std::optional<Rational> sqrt_exact(const Rational& x) {
    if (x < 0) return std::nullopt;
    if (x.is_zero()) return Rational(0);
    const BigInt num = boost::multiprecision::numerator(x);
    const BigInt den = boost::multiprecision::denominator(x);
    const BigInt rn = boost::multiprecision::sqrt(num);
    const BigInt rd = boost::multiprecision::sqrt(den);
    if (rn * rn != num || rd * rd != den) return std::nullopt;
    return Rational(rn, rd);
  }

  static double to_double(const Rational& x) {
    return static_cast<double>(x);
  }
  static std::string to_string(const Rational& x) { return x.str(); }
};

template <>
struct ScalarTraits<double> {
  using value_type = double;
  static constexpr bool is_exact = false;
  static const char* backend_name() { return "float"; }

  // Comparison tolerance for the float backend; exactness lives upstream.
  static constexpr double tolerance = 1e-9;

  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_int(long long v) { return static_cast<double>(v); }
  static double from_ratio(long long p, long long q) {
    return static_cast<double>(p) / static_cast<double>(q);
  }

  static bool is_zero(double x) { return std::fabs(x) <= tolerance; }
  static bool equal(double a, double b) { return std::fabs(a - b) <= tolerance; }

  static double abs(double x) { return std::fabs(x); }
  static int sign(double x) {
    if (is_zero(x)) return 0;
    return x > 0 ? 1 : -1;
  }

  static std::optional<double> sqrt_exact(double x) {
    if (x < 0) return std::nullopt;
    return std::sqrt(x);
  }

  static double to_double(double x) { return x; }
  static std::string to_string(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
  }
};

}  // namespace nilsoliton
