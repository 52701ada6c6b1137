#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "symflat/poly.hpp"

namespace symflat::linalg {

/// Sparse vector over Q: entries sorted by index, no stored zeros.
using SparseVector = std::vector<std::pair<int, Rational>>;

SparseVector axpy(const SparseVector& y, const Rational& a, const SparseVector& x); // y + a x
SparseVector scaled(const SparseVector& x, const Rational& a);
SparseVector from_dense(const std::vector<Rational>& dense);

/// Column-oriented sparse matrix.
struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<SparseVector> columns;

  SparseMatrix() = default;
  SparseMatrix(int r, int c) : rows(r), cols(c), columns(static_cast<std::size_t>(c)) {}
  std::size_t nonzeros() const;
  SparseVector apply(const SparseVector& x) const;
};

/// Incrementally built echelon basis of a subspace of Q^m. Each stored
/// vector is normalized so that its leading (smallest) index has
/// coefficient 1, and no two stored vectors share a leading index. Optionally
/// records, for every stored vector, its expression as a combination of the
/// inserted inputs (identified by caller-supplied ids).
class Echelon {
public:
  explicit Echelon(bool track_combinations = false) : track_(track_combinations) {}

  /// Reduces v against the stored basis. When `combination` is non-null it
  /// accumulates the multiples of inputs that were subtracted, so that
  /// original = remainder + Σ combination[id] * input[id].
  SparseVector reduce(SparseVector v, SparseVector* combination = nullptr) const;

  /// Adds v (input id `id`) to the span. Returns true when v was
  /// independent. On dependence and when tracking, `relation` (if non-null)
  /// receives a combination of inputs equal to zero with coefficient 1 on `id`.
  bool insert(SparseVector v, int id = -1, SparseVector* relation = nullptr);

  int rank() const { return static_cast<int>(rows_.size()); }
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }

private:
  struct Row {
    SparseVector vec;
    SparseVector combo;
  };
  bool track_;
  std::map<int, Row> rows_;
};

int rank(const SparseMatrix& m);
/// Basis of {x : m x = 0}.
std::vector<SparseVector> kernel_basis(const SparseMatrix& m);
/// Some x with m x = rhs, or std::nullopt when rhs is not in the image.
std::optional<SparseVector> solve(const SparseMatrix& m, const SparseVector& rhs);

} // namespace symflat::linalg
