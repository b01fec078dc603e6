#ifndef WEYL_BUILDERS_HPP
#define WEYL_BUILDERS_HPP

#include "weyl/dims.hpp"
#include "weyl/spaces.hpp"
#include "weyl/tensor.hpp"

#include <cstdint>
#include <random>

namespace weyl {

/// (theta1 . theta2)(x,y,z,w) = theta1(x,y) theta2(z,w).
template <class S>
Curv4<S> tensor_dot(const Bilinear<S>& t1, const Bilinear<S>& t2) {
  require_same_model<S>(t1.model(), t2.model());
  const int n = t1.n();
  Curv4<S> out(t1.model());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const S& a = t1(i, j);
      if (a == S(0)) continue;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) out(i, j, k, l) = a * t2(k, l);
    }
  return out;
}

/// theta1(x,z)theta2(y,w) - theta1(y,z)theta2(x,w)
///   - r [theta1(x,w)theta2(y,z) - theta1(y,w)theta2(x,z)];  wedge = wedge_r(0).
/// r is an arbitrary scalar: the projection formulas use r in {-1, 1, 3, n+-1}.
template <class S>
Curv4<S> wedge_r(const Bilinear<S>& t1, const Bilinear<S>& t2, const S& r) {
  require_same_model<S>(t1.model(), t2.model());
  const int n = t1.n();
  Curv4<S> out(t1.model());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          out(i, j, k, l) = t1(i, k) * t2(j, l) - t1(j, k) * t2(i, l) -
                            r * (t1(i, l) * t2(j, k) - t1(j, l) * t2(i, k));
  return out;
}

template <class S>
Curv4<S> wedge(const Bilinear<S>& t1, const Bilinear<S>& t2) {
  return wedge_r(t1, t2, S(0));
}

template <class S>
void require_antisymmetric(const Bilinear<S>& phi, const char* who) {
  const auto report = membership(phi, SpaceTag::Alt);
  if (!report.holds)
    throw NotAntisymmetric(std::string(who) + ": not-antisymmetric input");
}

/// sigma4(phi)(x,y,z,w) = 2 phi(x,y)h(z,w) + phi(x,z)h(y,w) - phi(y,z)h(x,w).
template <class S>
Curv4<S> sigma4(const Bilinear<S>& phi) {
  require_antisymmetric(phi, "sigma4");
  const Model& m = phi.model();
  const Bilinear<S> h = metric_bilinear<S>(m);
  Curv4<S> out = tensor_dot(phi, h);
  out *= S(2);
  const int n = m.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          out(i, j, k, l) += phi(i, k) * h(j, l) - phi(j, k) * h(i, l);
  return out;
}

/// sigma5(phi)(x,y,z,w) = phi(x,w)h(y,z) - phi(y,w)h(x,z).
template <class S>
Curv4<S> sigma5(const Bilinear<S>& phi) {
  require_antisymmetric(phi, "sigma5");
  const Model& m = phi.model();
  const Bilinear<S> h = metric_bilinear<S>(m);
  const int n = m.n();
  Curv4<S> out(m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          out(i, j, k, l) = phi(i, l) * h(j, k) - phi(j, l) * h(i, k);
  return out;
}

/// The generator of the Higa complement: (sigma4 - sigma5)(phi).
template <class S>
Curv4<S> higa_generator(const Bilinear<S>& phi) {
  return sigma4(phi) - sigma5(phi);
}

/// pi_{Lambda(x)S}(A)(x,y,z,w) = (A(x,y,z,w) + A(x,y,w,z))/2.
/// Restricted to GenCurv its kernel is the algebraic tensors.
template <class S>
Curv4<S> pi_lambda_s(const Curv4<S>& a) {
  const int n = a.n();
  Curv4<S> out(a.model());
  const S half = scalar_frac<S>(1, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          out(i, j, k, l) = half * (a(i, j, k, l) + a(i, j, l, k));
  return out;
}

/// The splitting of pi_lambda_s: Theta must be antisymmetric in (1,2) and
/// symmetric in (3,4).
template <class S>
Curv4<S> sigma_lambda_s(const Curv4<S>& theta, double tol = kDefaultTolerance) {
  const int n = theta.n();
  {
    detail::WorstTracker<S> w;
    detail::check_antisym12(theta, w);
    detail::check_sym34(theta, w);
    bool ok;
    if constexpr (ScalarTraits<S>::mode == ScalarMode::Exact) {
      ok = (w.worst == S(0));
    } else {
      const double scale = ScalarTraits<S>::to_double(theta.max_abs());
      ok = ScalarTraits<S>::to_double(w.worst) <= tol * (scale > 0 ? scale : 1.0);
    }
    if (!ok)
      throw WrongSymmetry(
          "sigma_lambda_s: wrong-symmetry-type (input must be antisymmetric in "
          "(1,2) and symmetric in (3,4))");
  }
  Curv4<S> out(theta.model());
  const S half = scalar_frac<S>(1, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          out(i, j, k, l) = theta(i, j, k, l) +
                            half * (theta(k, j, i, l) + theta(i, k, j, l) -
                                    theta(l, j, i, k) - theta(i, l, j, k));
  return out;
}

/// 4 psi(A)(x,y,z,w) = A(x,y,z,w) + A(y,x,w,z) + A(z,w,x,y) + A(w,z,y,x).
template <class S>
Curv4<S> psi(const Curv4<S>& a) {
  const int n = a.n();
  Curv4<S> out(a.model());
  const S quarter = scalar_frac<S>(1, 4);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          out(i, j, k, l) = quarter * (a(i, j, k, l) + a(j, i, l, k) +
                                       a(k, l, i, j) + a(l, k, j, i));
  return out;
}

/// 8 mu(A)(x,y,z,w) = 3A(x,y,z,w) + 3A(x,y,w,z) + A(x,w,z,y) + A(x,z,w,y)
///                    + A(w,y,z,x) + A(z,y,w,x).
template <class S>
Curv4<S> mu(const Curv4<S>& a) {
  const int n = a.n();
  Curv4<S> out(a.model());
  const S eighth = scalar_frac<S>(1, 8);
  const S three(3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          out(i, j, k, l) =
              eighth * (three * a(i, j, k, l) + three * a(i, j, l, k) +
                        a(i, l, k, j) + a(i, k, l, j) + a(l, j, k, i) +
                        a(k, j, l, i));
  return out;
}

namespace detail {

inline int draw_coeff(std::mt19937_64& rng) {
  return static_cast<int>(rng() % 19) - 9;  // uniform over [-9, 9]
}

}  // namespace detail

/// Deterministic random antisymmetric bilinear with integer entries in [-9,9].
template <class S>
Bilinear<S> random_bilinear(SpaceTag space, const Model& model, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = model.n();
  Bilinear<S> out(model);
  switch (space) {
    case SpaceTag::Alt:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const S v = ScalarTraits<S>::from_int(detail::draw_coeff(rng));
          out(i, j) = v;
          out(j, i) = -v;
        }
      break;
    case SpaceTag::Sym0: {
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          const S v = ScalarTraits<S>::from_int(detail::draw_coeff(rng));
          out(i, j) = v;
          out(j, i) = v;
        }
      // remove the h-trace
      S tr(0);
      for (int i = 0; i < n; ++i) {
        if (model.h(i) < 0)
          tr -= out(i, i);
        else
          tr += out(i, i);
      }
      const S shift = tr * scalar_frac<S>(1, n);
      for (int i = 0; i < n; ++i)
        out(i, i) -= shift * ScalarTraits<S>::from_int(model.h(i));
      break;
    }
    case SpaceTag::Sym:
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          const S v = ScalarTraits<S>::from_int(detail::draw_coeff(rng));
          out(i, j) = v;
          out(j, i) = v;
        }
      break;
    default:
      throw InvalidSlot("random_bilinear: tag must be Alt, Sym or Sym0");
  }
  return out;
}

/// Deterministic random curvature tensor in Algebraic or Weyl. Algebraic
/// samples are integer combinations of an exact null-space basis of the
/// constraint system; Weyl samples add (sigma4 - sigma5) of a random 2-form.
template <class S>
Curv4<S> random_curv(SpaceTag space, const Model& model, std::uint64_t seed) {
  if (space != SpaceTag::Algebraic && space != SpaceTag::Weyl)
    throw InvalidSlot("random_curv: tag must be Algebraic or Weyl");
  std::mt19937_64 rng(seed);
  const auto& basis = algebraic_basis_cached(model.n());
  Curv4<S> out(model);
  for (const auto& vec : basis) {
    const int c = detail::draw_coeff(rng);
    if (c == 0) continue;
    const S cs = ScalarTraits<S>::from_int(c);
    for (const auto& [idx, val] : vec.entries)
      out.data()[idx] += cs * ScalarTraits<S>::from_rational(val);
  }
  if (space == SpaceTag::Weyl) {
    const Bilinear<S> phi = random_bilinear<S>(SpaceTag::Alt, model, rng());
    out += higa_generator(phi);
  }
  return out;
}

/// Random element of Lambda^2 (x) S^2: antisymmetric in (1,2), symmetric in
/// (3,4), integer seeds. Feeds the sigma_lambda_s splitting checks.
template <class S>
Curv4<S> random_theta_ls(const Model& model, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = model.n();
  Curv4<S> out(model);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = k; l < n; ++l) {
          const S v = ScalarTraits<S>::from_int(detail::draw_coeff(rng));
          out(i, j, k, l) = v;
          out(j, i, k, l) = -v;
          out(i, j, l, k) = v;
          out(j, i, l, k) = -v;
        }
  return out;
}

}  // namespace weyl

#endif
