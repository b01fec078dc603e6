#ifndef WEYL_MODEL_HPP
#define WEYL_MODEL_HPP

#include "weyl/errors.hpp"
#include "weyl/scalar.hpp"

#include <string>

namespace weyl {

/// A scalar-product space (V, h) of dimension n and signature (p, q),
/// h = diag(-1 x p, +1 x q) in the standard basis.
class Model {
 public:
  Model(int n, int p, int q, ScalarMode mode) : n_(n), p_(p), q_(q), mode_(mode) {
    if (n < 3) {
      throw DimensionError("dimension-too-small: n = " + std::to_string(n) +
                           " but n >= 3 is required");
    }
    if (p < 0 || q < 0 || p + q != n) {
      throw SignatureError("signature-mismatch: p + q must equal n, got (" +
                           std::to_string(p) + ", " + std::to_string(q) +
                           ") for n = " + std::to_string(n));
    }
  }

  int n() const { return n_; }
  int p() const { return p_; }
  int q() const { return q_; }
  ScalarMode mode() const { return mode_; }

  /// Diagonal entry h_ii = h^ii, which is -1 for i < p and +1 otherwise.
  int h(int i) const { return i < p_ ? -1 : +1; }

  bool euclidean() const { return p_ == 0; }

  friend bool operator==(const Model& a, const Model& b) {
    return a.n_ == b.n_ && a.p_ == b.p_ && a.q_ == b.q_ && a.mode_ == b.mode_;
  }
  friend bool operator!=(const Model& a, const Model& b) { return !(a == b); }

  /// Same space, possibly different scalar mode.
  bool same_space(const Model& o) const {
    return n_ == o.n_ && p_ == o.p_ && q_ == o.q_;
  }

 private:
  int n_, p_, q_;
  ScalarMode mode_;
};

inline Model make_model(int n, int p, int q, ScalarMode mode) {
  return Model(n, p, q, mode);
}

}  // namespace weyl

#endif
