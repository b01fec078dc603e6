#include "weyl/scalar.hpp"

#include "weyl/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace weyl {

std::string rational_to_string(const Rational& r) {
  std::string num = numerator(r).str();
  std::string den = denominator(r).str();
  if (den == "1") return num;
  return num + "/" + den;
}

Rational rational_from_string(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(boost::multiprecision::cpp_int(s));
    }
    boost::multiprecision::cpp_int num(s.substr(0, slash));
    boost::multiprecision::cpp_int den(s.substr(slash + 1));
    if (den == 0) throw ParseError("rational with zero denominator: " + s);
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw ParseError("malformed rational: " + s);
  }
}

}  // namespace weyl
