#ifndef WEYL_TEST_HELPERS_HPP
#define WEYL_TEST_HELPERS_HPP

#include "weyl/builders.hpp"
#include "weyl/decomp.hpp"
#include "weyl/traces.hpp"

#include <doctest.h>

#include <vector>

namespace weyltest {

using weyl::Model;
using weyl::Rational;
using weyl::ScalarMode;

inline Model euclid(int n, ScalarMode mode = ScalarMode::Exact) {
  return Model(n, 0, n, mode);
}

inline Model lorentz(int n, ScalarMode mode = ScalarMode::Exact) {
  return Model(n, 1, n - 1, mode);
}

/// The (n, signature) grid most batteries run over.
inline std::vector<Model> battery_models(ScalarMode mode = ScalarMode::Exact) {
  std::vector<Model> out;
  for (int n : {3, 4, 5, 6}) {
    out.push_back(euclid(n, mode));
    out.push_back(lorentz(n, mode));
  }
  return out;
}

template <class S>
double resid(const weyl::Curv4<S>& a) {
  return weyl::ScalarTraits<S>::to_double(a.max_abs());
}

template <class S>
double resid(const weyl::Bilinear<S>& a) {
  return weyl::ScalarTraits<S>::to_double(a.max_abs());
}

template <class T>
void check_zero_exact(const T& t) {
  CHECK(resid(t) == 0.0);
}

/// h wedge h for the model, the constant-curvature generator.
template <class S>
weyl::Curv4<S> hwh(const Model& m) {
  const auto h = weyl::metric_bilinear<S>(m);
  return weyl::wedge(h, h);
}

}  // namespace weyltest

#endif
