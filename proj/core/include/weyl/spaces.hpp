#ifndef WEYL_SPACES_HPP
#define WEYL_SPACES_HPP

#include "weyl/tensor.hpp"

#include <optional>
#include <string>

namespace weyl {

/// The tensor spaces the library can test membership of.
enum class SpaceTag {
  GenCurv,    // first-pair antisymmetry + the cyclic (Bianchi) identity
  Algebraic,  // + antisymmetry in the last pair
  Weyl,       // + last-pair symmetric part proportional to (Lambda Ric) (x) h
  W6,
  W7,
  W8,
  Sym,   // rank 2, symmetric
  Sym0,  // rank 2, symmetric trace-free
  Alt,   // rank 2, antisymmetric
};

inline bool space_is_rank4(SpaceTag t) {
  return t != SpaceTag::Sym && t != SpaceTag::Sym0 && t != SpaceTag::Alt;
}

std::string space_name(SpaceTag t);
std::optional<SpaceTag> space_from_name(const std::string& name);

template <class S>
struct MembershipReport {
  SpaceTag space;
  bool holds = false;
  S worst_residual = S(0);
  std::optional<std::string> violated_constraint;
};

namespace detail {

template <class S>
struct WorstTracker {
  S worst = S(0);
  std::string label;
  void update(const S& value, const char* what) {
    S a = scalar_abs(value);
    if (a > worst) {
      worst = std::move(a);
      label = what;
    }
  }
};

template <class S>
void check_antisym12(const Curv4<S>& a, WorstTracker<S>& w) {
  const int n = a.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          w.update(a(i, j, k, l) + a(j, i, k, l), "antisym(1,2)");
}

template <class S>
void check_bianchi(const Curv4<S>& a, WorstTracker<S>& w) {
  const int n = a.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          w.update(a(i, j, k, l) + a(j, k, i, l) + a(k, i, j, l), "bianchi");
}

template <class S>
void check_antisym34(const Curv4<S>& a, WorstTracker<S>& w) {
  const int n = a.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          w.update(a(i, j, k, l) + a(i, j, l, k), "antisym(3,4)");
}

// Last-pair symmetric part must equal -(4/n)(Lambda Ric)_ij h_kl, with Ric
// computed from A itself.
template <class S>
void check_weyl_pair(const Curv4<S>& a, WorstTracker<S>& w) {
  const Model& m = a.model();
  const int n = m.n();
  const Bilinear<S> ric = pair_trace(a, 1, 4);
  const Bilinear<S> lam = alt_part(ric);
  const S four_over_n = scalar_frac<S>(4, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          S rhs(0);
          if (k == l) rhs = -four_over_n * lam(i, j) * ScalarTraits<S>::from_int(m.h(k));
          w.update(a(i, j, k, l) + a(i, j, l, k) - rhs, "weyl-pair");
        }
}

template <class S>
void check_pair_sym(const Curv4<S>& a, int sign, WorstTracker<S>& w) {
  const int n = a.n();
  const char* what = sign > 0 ? "pair-symmetry" : "pair-antisymmetry";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          if (sign > 0)
            w.update(a(i, j, k, l) - a(k, l, i, j), what);
          else
            w.update(a(i, j, k, l) + a(k, l, i, j), what);
        }
}

template <class S>
void check_sym34(const Curv4<S>& a, WorstTracker<S>& w) {
  const int n = a.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          w.update(a(i, j, k, l) - a(i, j, l, k), "sym(3,4)");
}

template <class S>
void check_traceless(const Curv4<S>& a, WorstTracker<S>& w) {
  const Bilinear<S> ric = pair_trace(a, 1, 4);
  const int n = a.n();
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) w.update(ric(j, k), "trace-free");
}

template <class S>
void check_w7(const Curv4<S>& a, WorstTracker<S>& w) {
  const int n = a.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          w.update(a(k, j, i, l) + a(i, k, j, l) - a(l, j, i, k) - a(i, l, j, k),
                   "w7-exchange");
}

}  // namespace detail

constexpr double kDefaultTolerance = 1e-9;

/// Checks every defining linear constraint of the space and reports the worst
/// absolute residual. In float mode, holds iff residual <= tol relative to the
/// max-norm of A; in exact mode the residual must be exactly zero.
template <class S>
MembershipReport<S> membership(const Curv4<S>& a, SpaceTag space,
                               double tol = kDefaultTolerance) {
  detail::WorstTracker<S> w;
  switch (space) {
    case SpaceTag::GenCurv:
      detail::check_antisym12(a, w);
      detail::check_bianchi(a, w);
      break;
    case SpaceTag::Algebraic:
      detail::check_antisym12(a, w);
      detail::check_bianchi(a, w);
      detail::check_antisym34(a, w);
      break;
    case SpaceTag::Weyl:
      detail::check_antisym12(a, w);
      detail::check_bianchi(a, w);
      detail::check_weyl_pair(a, w);
      break;
    case SpaceTag::W6:
      detail::check_antisym12(a, w);
      detail::check_pair_sym(a, +1, w);
      detail::check_traceless(a, w);
      detail::check_bianchi(a, w);
      break;
    case SpaceTag::W7:
      detail::check_antisym12(a, w);
      detail::check_sym34(a, w);
      detail::check_traceless(a, w);
      detail::check_w7(a, w);
      break;
    case SpaceTag::W8:
      detail::check_antisym12(a, w);
      detail::check_pair_sym(a, -1, w);
      detail::check_traceless(a, w);
      break;
    default:
      throw InvalidSlot("membership: rank-2 space tag applied to a rank-4 tensor");
  }

  MembershipReport<S> report;
  report.space = space;
  report.worst_residual = w.worst;
  if constexpr (ScalarTraits<S>::mode == ScalarMode::Exact) {
    report.holds = (w.worst == S(0));
  } else {
    const S scale = a.max_abs();
    report.holds = ScalarTraits<S>::to_double(w.worst) <=
                   tol * (ScalarTraits<S>::to_double(scale) > 0
                              ? ScalarTraits<S>::to_double(scale)
                              : 1.0);
  }
  if (!report.holds) report.violated_constraint = w.label;
  return report;
}

/// Rank-2 overload for the Sym / Sym0 / Alt tags.
template <class S>
MembershipReport<S> membership(const Bilinear<S>& theta, SpaceTag space,
                               double tol = kDefaultTolerance) {
  detail::WorstTracker<S> w;
  const Model& m = theta.model();
  const int n = m.n();
  switch (space) {
    case SpaceTag::Sym:
    case SpaceTag::Sym0:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w.update(theta(i, j) - theta(j, i), "symmetry");
      if (space == SpaceTag::Sym0) {
        S tr(0);
        for (int i = 0; i < n; ++i) {
          if (m.h(i) < 0)
            tr -= theta(i, i);
          else
            tr += theta(i, i);
        }
        w.update(tr, "trace-free");
      }
      break;
    case SpaceTag::Alt:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w.update(theta(i, j) + theta(j, i), "antisymmetry");
      break;
    default:
      throw InvalidSlot("membership: rank-4 space tag applied to a rank-2 tensor");
  }

  MembershipReport<S> report;
  report.space = space;
  report.worst_residual = w.worst;
  if constexpr (ScalarTraits<S>::mode == ScalarMode::Exact) {
    report.holds = (w.worst == S(0));
  } else {
    const S scale = theta.max_abs();
    report.holds = ScalarTraits<S>::to_double(w.worst) <=
                   tol * (ScalarTraits<S>::to_double(scale) > 0
                              ? ScalarTraits<S>::to_double(scale)
                              : 1.0);
  }
  if (!report.holds) report.violated_constraint = w.label;
  return report;
}

}  // namespace weyl

#endif
