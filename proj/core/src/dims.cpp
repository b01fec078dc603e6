#include "weyl/dims.hpp"

#include "weyl/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace weyl {

namespace {

void require_exact(const Model& model, const char* who) {
  if (model.mode() != ScalarMode::Exact)
    throw RequiresExactMode(std::string(who) + ": requires-exact-mode");
}

void require_small(int n, int max_n, const char* who) {
  if (n > max_n)
    throw DimensionError(std::string(who) + ": n = " + std::to_string(n) +
                         " exceeds the configured cap " + std::to_string(max_n));
}

int flat4(int n, int i, int j, int k, int l) {
  return ((i * n + j) * n + k) * n + l;
}

std::string tuple_label(const char* name, int i, int j, int k, int l) {
  return std::string(name) + "(" + std::to_string(i) + "," + std::to_string(j) +
         "," + std::to_string(k) + "," + std::to_string(l) + ")";
}

// Accumulate coefficients of a row in a map, then emit sorted and compacted.
class RowBuilder {
 public:
  void add(int col, const Rational& coeff) { acc_[col] += coeff; }
  SparseRow take(std::string label) {
    SparseRow row;
    row.label = std::move(label);
    for (auto& [col, coeff] : acc_)
      if (coeff != 0) row.terms.emplace_back(col, coeff);
    acc_.clear();
    return row;
  }

 private:
  std::map<int, Rational> acc_;
};

void emit_rank4_rows(SpaceTag space, const Model& model, ConstraintSystem& sys) {
  const int n = model.n();
  RowBuilder rb;
  const bool antisym12 = true;  // all rank-4 spaces here share first-pair antisymmetry
  if (antisym12) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            rb.add(flat4(n, i, j, k, l), 1);
            rb.add(flat4(n, j, i, k, l), 1);
            sys.rows.push_back(rb.take(tuple_label("antisym", i, j, k, l)));
          }
  }

  const bool bianchi = space == SpaceTag::GenCurv || space == SpaceTag::Algebraic ||
                       space == SpaceTag::Weyl || space == SpaceTag::W6;
  if (bianchi) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            rb.add(flat4(n, i, j, k, l), 1);
            rb.add(flat4(n, j, k, i, l), 1);
            rb.add(flat4(n, k, i, j, l), 1);
            sys.rows.push_back(rb.take(tuple_label("bianchi", i, j, k, l)));
          }
  }

  if (space == SpaceTag::Algebraic) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            rb.add(flat4(n, i, j, k, l), 1);
            rb.add(flat4(n, i, j, l, k), 1);
            sys.rows.push_back(rb.take(tuple_label("pair-alt", i, j, k, l)));
          }
  }

  if (space == SpaceTag::Weyl) {
    // A_ijkl + A_ijlk + (4/n) (Lambda Ric)_ij h_kl = 0, Ric a contraction of A
    const Rational two_over_n(2, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            rb.add(flat4(n, i, j, k, l), 1);
            rb.add(flat4(n, i, j, l, k), 1);
            if (k == l) {
              const Rational c = two_over_n * model.h(k);
              for (int a = 0; a < n; ++a) {
                rb.add(flat4(n, a, i, j, a), c * model.h(a));
                rb.add(flat4(n, a, j, i, a), -c * model.h(a));
              }
            }
            sys.rows.push_back(rb.take(tuple_label("weyl-pair", i, j, k, l)));
          }
  }

  const bool pair_sym = space == SpaceTag::W6;
  const bool pair_alt_exchange = space == SpaceTag::W8;
  if (pair_sym || pair_alt_exchange) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            rb.add(flat4(n, i, j, k, l), 1);
            rb.add(flat4(n, k, l, i, j), pair_sym ? Rational(-1) : Rational(1));
            sys.rows.push_back(
                rb.take(tuple_label(pair_sym ? "pair-sym" : "pair-anti", i, j, k, l)));
          }
  }

  if (space == SpaceTag::W7) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            rb.add(flat4(n, i, j, k, l), 1);
            rb.add(flat4(n, i, j, l, k), -1);
            sys.rows.push_back(rb.take(tuple_label("sym34", i, j, k, l)));
          }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            rb.add(flat4(n, k, j, i, l), 1);
            rb.add(flat4(n, i, k, j, l), 1);
            rb.add(flat4(n, l, j, i, k), -1);
            rb.add(flat4(n, i, l, j, k), -1);
            sys.rows.push_back(rb.take(tuple_label("exchange", i, j, k, l)));
          }
  }

  const bool traceless =
      space == SpaceTag::W6 || space == SpaceTag::W7 || space == SpaceTag::W8;
  if (traceless) {
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        for (int a = 0; a < n; ++a) rb.add(flat4(n, a, j, k, a), model.h(a));
        sys.rows.push_back(rb.take("trace(" + std::to_string(j) + "," +
                                   std::to_string(k) + ")"));
      }
  }
}

void emit_rank2_rows(SpaceTag space, const Model& model, ConstraintSystem& sys) {
  const int n = model.n();
  RowBuilder rb;
  const int sign = space == SpaceTag::Alt ? 1 : -1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      rb.add(i * n + j, 1);
      rb.add(j * n + i, sign);
      sys.rows.push_back(rb.take((sign > 0 ? "antisym(" : "sym(") +
                                 std::to_string(i) + "," + std::to_string(j) + ")"));
    }
  if (space == SpaceTag::Sym0) {
    for (int i = 0; i < n; ++i) rb.add(i * n + i, model.h(i));
    sys.rows.push_back(rb.take("trace"));
  }
}

}  // namespace

ConstraintSystem constraint_system(SpaceTag space, const Model& model, int max_n) {
  require_exact(model, "constraint_system");
  require_small(model.n(), max_n, "constraint_system");
  const int n = model.n();
  ConstraintSystem sys;
  sys.space = space;
  sys.n = n;
  if (space_is_rank4(space)) {
    sys.ncols = n * n * n * n;
    emit_rank4_rows(space, model, sys);
  } else {
    sys.ncols = n * n;
    emit_rank2_rows(space, model, sys);
  }
  return sys;
}

int RationalEchelon::find_pivot(int col) const {
  const auto it = std::lower_bound(pivot_cols_.begin(), pivot_cols_.end(), col);
  if (it == pivot_cols_.end() || *it != col) return -1;
  return static_cast<int>(it - pivot_cols_.begin());
}

bool RationalEchelon::add_row(const SparseRow& row) {
  std::vector<std::pair<int, Rational>> work = row.terms;
  std::vector<std::pair<int, Rational>> merged;
  while (!work.empty()) {
    const int lead = work.front().first;
    const int p = find_pivot(lead);
    if (p < 0) {
      // normalize leading coefficient to 1 and store
      const Rational inv = Rational(1) / work.front().second;
      for (auto& [c, v] : work) v *= inv;
      const auto it = std::lower_bound(pivot_cols_.begin(), pivot_cols_.end(), lead);
      const auto pos = it - pivot_cols_.begin();
      pivot_cols_.insert(it, lead);
      rows_.insert(rows_.begin() + pos, std::move(work));
      return true;
    }
    // work -= coeff * rows_[p]  (rows_[p] has leading coefficient 1)
    const Rational coeff = work.front().second;
    const auto& pivot_row = rows_[p];
    merged.clear();
    merged.reserve(work.size() + pivot_row.size());
    std::size_t a = 0, b = 0;
    while (a < work.size() || b < pivot_row.size()) {
      if (b == pivot_row.size() || (a < work.size() && work[a].first < pivot_row[b].first)) {
        merged.push_back(work[a++]);
      } else if (a == work.size() || pivot_row[b].first < work[a].first) {
        merged.emplace_back(pivot_row[b].first, -coeff * pivot_row[b].second);
        ++b;
      } else {
        Rational v = work[a].second - coeff * pivot_row[b].second;
        if (v != 0) merged.emplace_back(work[a].first, std::move(v));
        ++a;
        ++b;
      }
    }
    work.swap(merged);
  }
  return false;
}

std::vector<SparseVec> RationalEchelon::null_basis(int ncols) const {
  std::vector<bool> is_pivot(ncols, false);
  for (int c : pivot_cols_) is_pivot[c] = true;

  std::vector<SparseVec> basis;
  std::vector<Rational> value(ncols);
  for (int f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::fill(value.begin(), value.end(), Rational(0));
    value[f] = 1;
    // pivots in descending column order; each row touches only columns >= pivot
    for (int p = static_cast<int>(pivot_cols_.size()) - 1; p >= 0; --p) {
      const int pc = pivot_cols_[p];
      Rational sum(0);
      for (const auto& [c, v] : rows_[p]) {
        if (c == pc) continue;
        if (value[c] != 0) sum += v * value[c];
      }
      value[pc] = -sum;
    }
    SparseVec vec;
    for (int c = 0; c < ncols; ++c)
      if (value[c] != 0) vec.entries.emplace_back(static_cast<std::size_t>(c), value[c]);
    basis.push_back(std::move(vec));
  }
  return basis;
}

namespace {

RationalEchelon eliminate(const ConstraintSystem& sys) {
  // feed short rows first: the two-term symmetry rows collapse most of the
  // system before any fill-in can happen
  std::vector<const SparseRow*> order;
  order.reserve(sys.rows.size());
  for (const auto& r : sys.rows) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(),
                   [](const SparseRow* a, const SparseRow* b) {
                     return a->terms.size() < b->terms.size();
                   });
  RationalEchelon ech;
  for (const SparseRow* r : order) ech.add_row(*r);
  return ech;
}

}  // namespace

int module_dimension(SpaceTag space, const Model& model, int max_n) {
  const ConstraintSystem sys = constraint_system(space, model, max_n);
  const RationalEchelon ech = eliminate(sys);
  return sys.ncols - ech.rank();
}

std::vector<SparseVec> null_basis_sparse(SpaceTag space, const Model& model, int max_n) {
  const ConstraintSystem sys = constraint_system(space, model, max_n);
  const RationalEchelon ech = eliminate(sys);
  return ech.null_basis(sys.ncols);
}

std::vector<Curv4<Rational>> null_basis_rank4(SpaceTag space, const Model& model,
                                              int max_n) {
  if (!space_is_rank4(space))
    throw InvalidSlot("null_basis_rank4: rank-2 space tag");
  std::vector<Curv4<Rational>> out;
  for (const auto& vec : null_basis_sparse(space, model, max_n)) {
    Curv4<Rational> t(model);
    for (const auto& [idx, val] : vec.entries) t.data()[idx] = val;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Bilinear<Rational>> null_basis_rank2(SpaceTag space, const Model& model,
                                                 int max_n) {
  if (space_is_rank4(space)) throw InvalidSlot("null_basis_rank2: rank-4 space tag");
  std::vector<Bilinear<Rational>> out;
  for (const auto& vec : null_basis_sparse(space, model, max_n)) {
    Bilinear<Rational> t(model);
    for (const auto& [idx, val] : vec.entries) t.data()[idx] = val;
    out.push_back(std::move(t));
  }
  return out;
}

long long dimension_formula(SpaceTag space, int n) {
  const long long nn = n;
  switch (space) {
    case SpaceTag::GenCurv: return nn * nn * (nn * nn - 1) / 3;
    case SpaceTag::Algebraic: return nn * nn * (nn * nn - 1) / 12;
    case SpaceTag::Weyl:
      return dimension_formula(SpaceTag::Algebraic, n) + nn * (nn - 1) / 2;
    case SpaceTag::W6: return nn * (nn + 1) * (nn - 3) * (nn + 2) / 12;
    case SpaceTag::W7: return (nn - 1) * (nn - 2) * (nn + 1) * (nn + 4) / 8;
    case SpaceTag::W8: return nn * (nn - 1) * (nn - 3) * (nn + 2) / 8;
    case SpaceTag::Sym: return nn * (nn + 1) / 2;
    case SpaceTag::Sym0: return (nn - 1) * (nn + 2) / 2;
    case SpaceTag::Alt: return nn * (nn - 1) / 2;
  }
  return -1;
}

const std::vector<SparseVec>& algebraic_basis_cached(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<SparseVec>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    const Model model(n, 0, n, ScalarMode::Exact);
    it = cache.emplace(n, null_basis_sparse(SpaceTag::Algebraic, model)).first;
  }
  return it->second;
}

}  // namespace weyl
