#ifndef WEYL_SCALAR_HPP
#define WEYL_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>

namespace weyl {

/// Exact scalar for the algebraic side of the library. Identities that hold
/// algebraically are checked over this field, with zero tolerance.
using Rational = boost::multiprecision::cpp_rational;

enum class ScalarMode { Exact, Float64 };

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr ScalarMode mode = ScalarMode::Float64;
  static double frac(long long num, long long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double from_int(long long v) { return static_cast<double>(v); }
  static double abs(double v) { return std::fabs(v); }
  static double to_double(double v) { return v; }
  static double from_rational(const Rational& r) {
    return r.convert_to<double>();
  }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr ScalarMode mode = ScalarMode::Exact;
  static Rational frac(long long num, long long den) {
    if (den < 0) return Rational(-num, -den);
    return Rational(num, den);
  }
  static Rational from_int(long long v) { return Rational(v); }
  static Rational abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }
  static double to_double(const Rational& v) { return v.convert_to<double>(); }
  static Rational from_rational(const Rational& r) { return r; }
};

template <class S>
S scalar_frac(long long num, long long den) {
  return ScalarTraits<S>::frac(num, den);
}

template <class S>
S scalar_abs(const S& v) {
  return ScalarTraits<S>::abs(v);
}

std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& s);

}  // namespace weyl

#endif
