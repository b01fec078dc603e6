#ifndef WEYL_TENSOR_HPP
#define WEYL_TENSOR_HPP

#include "weyl/model.hpp"

#include <utility>
#include <vector>

namespace weyl {

/// Rank-2 tensor in (x)^2 V*, dense n x n storage.
template <class S>
class Bilinear {
 public:
  explicit Bilinear(const Model& m) : model_(m), c_(m.n() * m.n(), S(0)) {}

  const Model& model() const { return model_; }
  int n() const { return model_.n(); }

  S& operator()(int i, int j) { return c_[i * n() + j]; }
  const S& operator()(int i, int j) const { return c_[i * n() + j]; }

  std::vector<S>& data() { return c_; }
  const std::vector<S>& data() const { return c_; }

  Bilinear& operator+=(const Bilinear& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Bilinear& operator-=(const Bilinear& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Bilinear& operator*=(const S& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend Bilinear operator+(Bilinear a, const Bilinear& b) { return a += b; }
  friend Bilinear operator-(Bilinear a, const Bilinear& b) { return a -= b; }
  friend Bilinear operator*(const S& s, Bilinear a) { return a *= s; }

  friend bool operator==(const Bilinear& a, const Bilinear& b) {
    return a.model_.same_space(b.model_) && a.c_ == b.c_;
  }

  S max_abs() const {
    S m(0);
    for (const auto& v : c_)
      if (scalar_abs(v) > m) m = scalar_abs(v);
    return m;
  }

 private:
  Model model_;
  std::vector<S> c_;
};

/// Rank-4 tensor in (x)^4 V*, dense n^4 storage, index order (i, j, k, l).
template <class S>
class Curv4 {
 public:
  explicit Curv4(const Model& m)
      : model_(m), c_(static_cast<std::size_t>(m.n()) * m.n() * m.n() * m.n(), S(0)) {}

  const Model& model() const { return model_; }
  int n() const { return model_.n(); }

  S& operator()(int i, int j, int k, int l) {
    return c_[((static_cast<std::size_t>(i) * n() + j) * n() + k) * n() + l];
  }
  const S& operator()(int i, int j, int k, int l) const {
    return c_[((static_cast<std::size_t>(i) * n() + j) * n() + k) * n() + l];
  }

  std::vector<S>& data() { return c_; }
  const std::vector<S>& data() const { return c_; }

  Curv4& operator+=(const Curv4& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Curv4& operator-=(const Curv4& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Curv4& operator*=(const S& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend Curv4 operator+(Curv4 a, const Curv4& b) { return a += b; }
  friend Curv4 operator-(Curv4 a, const Curv4& b) { return a -= b; }
  friend Curv4 operator*(const S& s, Curv4 a) { return a *= s; }

  friend bool operator==(const Curv4& a, const Curv4& b) {
    return a.model_.same_space(b.model_) && a.c_ == b.c_;
  }

  S max_abs() const {
    S m(0);
    for (const auto& v : c_)
      if (scalar_abs(v) > m) m = scalar_abs(v);
    return m;
  }

  bool is_zero() const {
    for (const auto& v : c_)
      if (v != S(0)) return false;
    return true;
  }

 private:
  Model model_;
  std::vector<S> c_;
};

template <class S>
void require_same_model(const Model& a, const Model& b) {
  if (!a.same_space(b)) throw ModelMismatch("model-mismatch: operands live on different models");
}

/// The scalar product h itself as a Bilinear.
template <class S>
Bilinear<S> metric_bilinear(const Model& m) {
  Bilinear<S> h(m);
  for (int i = 0; i < m.n(); ++i) h(i, i) = ScalarTraits<S>::from_int(m.h(i));
  return h;
}

/// (theta_ij + theta_ji)/2 and (theta_ij - theta_ji)/2; S + Lambda = theta.
template <class S>
std::pair<Bilinear<S>, Bilinear<S>> split2(const Bilinear<S>& theta) {
  const int n = theta.n();
  Bilinear<S> sym(theta.model()), alt(theta.model());
  const S half = scalar_frac<S>(1, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      sym(i, j) = half * (theta(i, j) + theta(j, i));
      alt(i, j) = half * (theta(i, j) - theta(j, i));
    }
  return {sym, alt};
}

template <class S>
Bilinear<S> sym_part(const Bilinear<S>& theta) { return split2(theta).first; }

template <class S>
Bilinear<S> alt_part(const Bilinear<S>& theta) { return split2(theta).second; }

/// h^{ab}-contraction of T over the two named slots (1-based); the remaining
/// slots keep their order.
template <class S>
Bilinear<S> pair_trace(const Curv4<S>& t, int slot_a, int slot_b) {
  if (slot_a < 1 || slot_a > 4 || slot_b < 1 || slot_b > 4 || slot_a == slot_b)
    throw InvalidSlot("invalid-slot: slots must be distinct members of {1,2,3,4}");
  const Model& m = t.model();
  const int n = m.n();
  Bilinear<S> out(m);
  int idx[4];
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      S sum(0);
      for (int a = 0; a < n; ++a) {
        int free_pos = 0;
        int free_vals[2] = {u, v};
        for (int s = 1; s <= 4; ++s) {
          if (s == slot_a || s == slot_b)
            idx[s - 1] = a;
          else
            idx[s - 1] = free_vals[free_pos++];
        }
        const S term = t(idx[0], idx[1], idx[2], idx[3]);
        if (m.h(a) < 0)
          sum -= term;
        else
          sum += term;
      }
      out(u, v) = sum;
    }
  return out;
}

/// A*(x,y,z,w) = -A(x,y,w,z).
template <class S>
Curv4<S> conjugate(const Curv4<S>& a) {
  const int n = a.n();
  Curv4<S> out(a.model());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) out(i, j, k, l) = -a(i, j, l, k);
  return out;
}

/// h-induced inner product on (x)^4 V*. With h diagonal +-1 the metric factor
/// is the product of the four signs.
template <class S>
S inner(const Curv4<S>& a, const Curv4<S>& b) {
  require_same_model<S>(a.model(), b.model());
  const Model& m = a.model();
  const int n = m.n();
  S sum(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const int sign = m.h(i) * m.h(j) * m.h(k) * m.h(l);
          const S term = a(i, j, k, l) * b(i, j, k, l);
          if (sign < 0)
            sum -= term;
          else
            sum += term;
        }
  return sum;
}

}  // namespace weyl

#endif
