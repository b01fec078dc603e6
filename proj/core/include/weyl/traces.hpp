#ifndef WEYL_TRACES_HPP
#define WEYL_TRACES_HPP

#include "weyl/spaces.hpp"
#include "weyl/tensor.hpp"

namespace weyl {

/// Ric_jk = h^{il} A_{ijkl}.
template <class S>
Bilinear<S> ricci(const Curv4<S>& a) {
  return pair_trace(a, 1, 4);
}

/// Ric*_ij = h^{kl} A_{iklj}, by its own contraction (slots 2 and 3).
/// ricci_star(A) == ricci(conjugate(A)) is a theorem, tested, not assumed.
template <class S>
Bilinear<S> ricci_star(const Curv4<S>& a) {
  return pair_trace(a, 2, 3);
}

/// tau = h^{ij} Ric_ij.
template <class S>
S scalar_tau(const Curv4<S>& a) {
  const Bilinear<S> ric = ricci(a);
  const Model& m = a.model();
  S tau(0);
  for (int i = 0; i < m.n(); ++i) {
    if (m.h(i) < 0)
      tau -= ric(i, i);
    else
      tau += ric(i, i);
  }
  return tau;
}

/// Lambda Ric, the alternating part of the Ricci contraction.
template <class S>
Bilinear<S> lambda_ricci(const Curv4<S>& a) {
  return alt_part(ricci(a));
}

/// F = -(2/n) Lambda Ric; antisymmetric for every A.
template <class S>
Bilinear<S> length_form(const Curv4<S>& a) {
  Bilinear<S> f = alt_part(ricci(a));
  f *= scalar_frac<S>(-2, a.n());
  return f;
}

template <class S>
void require_weyl(const Curv4<S>& a, double tol, const char* who) {
  const auto report = membership(a, SpaceTag::Weyl, tol);
  if (!report.holds)
    throw NotWeyl(std::string(who) + ": not-weyl (worst residual " +
                  std::to_string(ScalarTraits<S>::to_double(report.worst_residual)) + ")");
}

/// sigma = (1/(n-2)) [ S Ric - tau/(2(n-1)) h ], the Schouten analogue.
template <class S>
Bilinear<S> weyl_schouten(const Curv4<S>& a, double tol = kDefaultTolerance) {
  require_weyl(a, tol, "weyl_schouten");
  const Model& m = a.model();
  const int n = m.n();
  Bilinear<S> sigma = sym_part(ricci(a));
  Bilinear<S> h = metric_bilinear<S>(m);
  h *= scalar_tau(a) * scalar_frac<S>(1, 2 * (n - 1));
  sigma -= h;
  sigma *= scalar_frac<S>(1, n - 2);
  return sigma;
}

/// D(x,y,z,w) = -(A(x,y,z,w) + A(x,y,w,z)); A* = A + D.
template <class S>
Curv4<S> d_tensor(const Curv4<S>& a) {
  const int n = a.n();
  Curv4<S> d(a.model());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) d(i, j, k, l) = -(a(i, j, k, l) + a(i, j, l, k));
  return d;
}

/// K = (A + A*)/2, the lowered directional curvature.
template <class S>
Curv4<S> directional(const Curv4<S>& a) {
  Curv4<S> k = a + conjugate(a);
  k *= scalar_frac<S>(1, 2);
  return k;
}

}  // namespace weyl

#endif
