#ifndef WEYL_DECOMP_HPP
#define WEYL_DECOMP_HPP

#include "weyl/builders.hpp"
#include "weyl/traces.hpp"

#include <array>
#include <optional>

namespace weyl {

template <class S>
struct Classification {
  bool is_algebraic = false;
  bool is_trivial_pointwise = false;
  bool is_einstein_weyl = false;
  std::optional<S> lambda;  // tau/n, set when Einstein
  bool is_constant_curvature_type = false;
  bool is_ricci_flat = false;
};

namespace detail {

// 2 theta . h + theta wedge_r h, the recurring mixed block of the projections
template <class S>
Curv4<S> mixed_block(const Bilinear<S>& theta, const S& r) {
  const Bilinear<S> h = metric_bilinear<S>(theta.model());
  Curv4<S> out = tensor_dot(theta, h);
  out *= S(2);
  out += wedge_r(theta, h, r);
  return out;
}

template <class S>
bool near_zero(const S& residual, const S& scale, double tol) {
  if constexpr (ScalarTraits<S>::mode == ScalarMode::Exact) {
    (void)tol;
    return residual == S(0);
  } else {
    const double s = ScalarTraits<S>::to_double(scale);
    return ScalarTraits<S>::to_double(residual) <= tol * (s > 0 ? s : 1.0);
  }
}

// the contractions every projection formula reads
template <class S>
struct TraceData {
  Bilinear<S> sric;
  Bilinear<S> lam;
  S tau;

  explicit TraceData(const Curv4<S>& a)
      : sric(a.model()), lam(a.model()), tau(0) {
    const Bilinear<S> ric = ricci(a);
    auto parts = split2(ric);
    sric = std::move(parts.first);
    lam = std::move(parts.second);
    const Model& m = a.model();
    for (int i = 0; i < m.n(); ++i) {
      if (m.h(i) < 0)
        tau -= ric(i, i);
      else
        tau += ric(i, i);
    }
  }
};

template <class S>
Curv4<S> alpha_component(const Curv4<S>& a, const TraceData<S>& t, int i) {
  const Model& m = a.model();
  const int n = m.n();
  const Bilinear<S> h = metric_bilinear<S>(m);
  switch (i) {
    case 1: {
      Curv4<S> out = wedge(h, h);
      out *= scalar_frac<S>(-1, static_cast<long long>(n) * (n - 1)) * t.tau;
      return out;
    }
    case 2: {
      Curv4<S> out = wedge_r(t.sric, h, S(1));
      out *= scalar_frac<S>(-1, n - 2);
      Curv4<S> hh = wedge(h, h);
      hh *= scalar_frac<S>(2, static_cast<long long>(n) * (n - 2)) * t.tau;
      out += hh;
      return out;
    }
    case 4: {
      Curv4<S> out = mixed_block(t.lam, S(-1));
      out *= scalar_frac<S>(-1, 2 * n);
      return out;
    }
    case 5: {
      Curv4<S> out = mixed_block(t.lam, S(3));
      out *= scalar_frac<S>(-1, 2 * n);
      return out;
    }
    case 6: {
      Curv4<S> out = a;
      Curv4<S> block = mixed_block(t.lam, S(1));
      block *= scalar_frac<S>(1, n);
      out += block;
      Curv4<S> sric = wedge_r(t.sric, h, S(1));
      sric *= scalar_frac<S>(1, n - 2);
      out += sric;
      Curv4<S> hh = wedge(h, h);
      hh *= scalar_frac<S>(-1, static_cast<long long>(n - 1) * (n - 2)) * t.tau;
      out += hh;
      return out;
    }
    default:  // 3, 7, 8 vanish identically on the admissible inputs
      return Curv4<S>(m);
  }
}

template <class S>
Curv4<S> pi_component(const Curv4<S>& a, const TraceData<S>& t, int i) {
  const Model& m = a.model();
  const int n = m.n();
  const Bilinear<S> h = metric_bilinear<S>(m);
  switch (i) {
    case 1:
      return alpha_component(a, t, 1);
    case 2: {
      Bilinear<S> theta = h;
      theta *= t.tau * scalar_frac<S>(1, n);
      theta -= t.sric;
      Curv4<S> out = wedge(theta, h);
      out *= scalar_frac<S>(1, n - 1);
      return out;
    }
    case 3: {
      Curv4<S> out = mixed_block(t.lam, S(0));
      out *= scalar_frac<S>(-1, n + 1);
      return out;
    }
    case 4: {
      Curv4<S> out = mixed_block(t.lam, ScalarTraits<S>::from_int(n + 1));
      out *= scalar_frac<S>(-1, static_cast<long long>(n) * (n + 1));
      return out;
    }
    case 5: {
      Curv4<S> out = wedge(h, h);
      out *= t.tau;
      out -= wedge_r(t.sric, h, ScalarTraits<S>::from_int(n - 1));
      out *= scalar_frac<S>(1, static_cast<long long>(n - 1) * (n - 2));
      return out;
    }
    case 6:
      return alpha_component(a, t, 6);
    default:  // 7 and 8 vanish identically on the admissible inputs
      return Curv4<S>(m);
  }
}

}  // namespace detail

/// Component i of the decomposition adapted to the conjugate-symmetric split.
template <class S>
Curv4<S> alpha(const Curv4<S>& a, int i, double tol = kDefaultTolerance) {
  if (i < 1 || i > 8) throw InvalidSlot("alpha: component index must be in 1..8");
  require_weyl(a, tol, "alpha");
  return detail::alpha_component(a, detail::TraceData<S>(a), i);
}

/// Component i of the decomposition adapted to the directional-curvature split.
/// Component 6 coincides with alpha(A, 6).
template <class S>
Curv4<S> pi_w(const Curv4<S>& a, int i, double tol = kDefaultTolerance) {
  if (i < 1 || i > 8) throw InvalidSlot("pi_w: component index must be in 1..8");
  require_weyl(a, tol, "pi_w");
  return detail::pi_component(a, detail::TraceData<S>(a), i);
}

template <class S>
std::array<Curv4<S>, 8> alpha_all(const Curv4<S>& a, double tol = kDefaultTolerance) {
  require_weyl(a, tol, "alpha_all");
  const detail::TraceData<S> t(a);
  std::array<Curv4<S>, 8> out{Curv4<S>(a.model()), Curv4<S>(a.model()),
                              Curv4<S>(a.model()), Curv4<S>(a.model()),
                              Curv4<S>(a.model()), Curv4<S>(a.model()),
                              Curv4<S>(a.model()), Curv4<S>(a.model())};
  for (int i = 1; i <= 8; ++i) out[i - 1] = detail::alpha_component(a, t, i);
  return out;
}

template <class S>
std::array<Curv4<S>, 8> pi_all(const Curv4<S>& a, double tol = kDefaultTolerance) {
  require_weyl(a, tol, "pi_all");
  const detail::TraceData<S> t(a);
  std::array<Curv4<S>, 8> out{Curv4<S>(a.model()), Curv4<S>(a.model()),
                              Curv4<S>(a.model()), Curv4<S>(a.model()),
                              Curv4<S>(a.model()), Curv4<S>(a.model()),
                              Curv4<S>(a.model()), Curv4<S>(a.model())};
  for (int i = 1; i <= 8; ++i) out[i - 1] = detail::pi_component(a, t, i);
  return out;
}

/// H(A) = -(1/n)(2 (Lambda Ric).h + (Lambda Ric) wedge_1 h); the projection
/// onto the complement of the algebraic tensors. A - H(A) is algebraic.
template <class S>
Curv4<S> higa(const Curv4<S>& a, double tol = kDefaultTolerance) {
  require_weyl(a, tol, "higa");
  Curv4<S> out = detail::mixed_block(lambda_ricci(a), S(1));
  out *= scalar_frac<S>(-1, a.n());
  return out;
}

/// p(A) = A + (1/(n+1))(2 LambdaRic.h + LambdaRic wedge h)
///          + (1/(n-1)) SRic wedge h; the Ricci-free remainder.
template <class S>
Curv4<S> projective(const Curv4<S>& a, double tol = kDefaultTolerance) {
  require_weyl(a, tol, "projective");
  const Model& m = a.model();
  const int n = m.n();
  const detail::TraceData<S> t(a);
  Curv4<S> out = a;
  Curv4<S> block = detail::mixed_block(t.lam, S(0));
  block *= scalar_frac<S>(1, n + 1);
  out += block;
  Curv4<S> sric = wedge(t.sric, metric_bilinear<S>(m));
  sric *= scalar_frac<S>(1, n - 1);
  out += sric;
  return out;
}

template <class S>
Classification<S> classify(const Curv4<S>& a, double tol = kDefaultTolerance) {
  require_weyl(a, tol, "classify");
  const Model& m = a.model();
  const int n = m.n();
  const S scale = a.max_abs();
  const detail::TraceData<S> t(a);

  Classification<S> c;
  c.is_algebraic = detail::near_zero(t.lam.max_abs(), scale, tol);
  c.is_trivial_pointwise = c.is_algebraic;
  c.is_ricci_flat =
      detail::near_zero((t.sric + t.lam).max_abs(), scale, tol);

  Bilinear<S> einstein_res = t.sric;
  {
    Bilinear<S> th = metric_bilinear<S>(m);
    th *= t.tau * scalar_frac<S>(1, n);
    einstein_res -= th;
  }
  c.is_einstein_weyl = detail::near_zero(einstein_res.max_abs(), scale, tol);
  if (c.is_einstein_weyl) c.lambda = t.tau * scalar_frac<S>(1, n);

  Curv4<S> cct_res = a - detail::alpha_component(a, t, 1);
  c.is_constant_curvature_type = detail::near_zero(cct_res.max_abs(), scale, tol);
  return c;
}

}  // namespace weyl

#endif
