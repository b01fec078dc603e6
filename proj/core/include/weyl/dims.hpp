#ifndef WEYL_DIMS_HPP
#define WEYL_DIMS_HPP

#include "weyl/spaces.hpp"
#include "weyl/tensor.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace weyl {

/// One sparse linear functional on the flattened component vector.
struct SparseRow {
  std::vector<std::pair<int, Rational>> terms;  // sorted by column
  std::string label;
};

/// The full constraint system for a space: a member is exactly a component
/// vector annihilated by every row.
struct ConstraintSystem {
  SpaceTag space;
  int n = 0;
  int ncols = 0;
  std::vector<SparseRow> rows;
};

struct SparseVec {
  std::vector<std::pair<std::size_t, Rational>> entries;  // sorted by index
};

/// Default cap on the model dimension for the exact elimination (n^4 growth).
constexpr int kDefaultMaxDimsN = 8;

ConstraintSystem constraint_system(SpaceTag space, const Model& model,
                                   int max_n = kDefaultMaxDimsN);

int module_dimension(SpaceTag space, const Model& model,
                     int max_n = kDefaultMaxDimsN);

/// Exact rational basis of the null space of the constraint system.
std::vector<SparseVec> null_basis_sparse(SpaceTag space, const Model& model,
                                         int max_n = kDefaultMaxDimsN);

std::vector<Curv4<Rational>> null_basis_rank4(SpaceTag space, const Model& model,
                                              int max_n = kDefaultMaxDimsN);
std::vector<Bilinear<Rational>> null_basis_rank2(SpaceTag space, const Model& model,
                                                 int max_n = kDefaultMaxDimsN);

/// Closed-form dimensions (Weyl is algebraic + alternating, the others are
/// the classical module dimension polynomials; n = 3 gives W6 = W8 = 0).
long long dimension_formula(SpaceTag space, int n);

/// Cached exact basis of the algebraic curvature tensors for dimension n.
/// The defining constraints are pure index symmetries, so the basis does not
/// depend on the signature.
const std::vector<SparseVec>& algebraic_basis_cached(int n);

/// Incremental sparse row-echelon form over the rationals. Pivot of each
/// stored row is its smallest column; rows are reduced against all earlier
/// pivots on insertion.
class RationalEchelon {
 public:
  /// Reduces the row against the current pivots and stores the remainder if
  /// it is nonzero. Returns true if the row added a new pivot.
  bool add_row(const SparseRow& row);

  int rank() const { return static_cast<int>(pivot_cols_.size()); }

  /// One basis vector per free column; entries sorted by index.
  std::vector<SparseVec> null_basis(int ncols) const;

 private:
  // parallel arrays sorted by pivot column
  std::vector<int> pivot_cols_;
  std::vector<std::vector<std::pair<int, Rational>>> rows_;

  int find_pivot(int col) const;
};

}  // namespace weyl

#endif
