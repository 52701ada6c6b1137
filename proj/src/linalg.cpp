#include "symflat/linalg.hpp"

#include <stdexcept>

namespace symflat::linalg {

SparseVector axpy(const SparseVector& y, const Rational& a, const SparseVector& x) {
  if (a == 0 || x.empty()) return y;
  SparseVector out;
  out.reserve(y.size() + x.size());
  auto i = y.begin();
  auto j = x.begin();
  while (i != y.end() || j != x.end()) {
    if (j == x.end() || (i != y.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == y.end() || j->first < i->first) {
      out.emplace_back(j->first, a * j->second);
      ++j;
    } else {
      Rational s = i->second + a * j->second;
      if (s != 0) out.emplace_back(i->first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVector scaled(const SparseVector& x, const Rational& a) {
  if (a == 0) return {};
  SparseVector out = x;
  for (auto& e : out) e.second *= a;
  return out;
}

SparseVector from_dense(const std::vector<Rational>& dense) {
  SparseVector out;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i] != 0) out.emplace_back(static_cast<int>(i), dense[i]);
  return out;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t nnz = 0;
  for (const auto& c : columns) nnz += c.size();
  return nnz;
}

SparseVector SparseMatrix::apply(const SparseVector& x) const {
  SparseVector out;
  for (const auto& [j, c] : x) out = axpy(out, c, columns.at(static_cast<std::size_t>(j)));
  return out;
}

SparseVector Echelon::reduce(SparseVector v, SparseVector* combination) const {
  std::size_t pos = 0;
  while (pos < v.size()) {
    auto it = rows_.find(v[pos].first);
    if (it == rows_.end()) {
      ++pos;
      continue;
    }
    Rational factor = v[pos].second;
    v = axpy(v, -factor, it->second.vec);
    if (combination && track_) *combination = axpy(*combination, factor, it->second.combo);
  }
  return v;
}

bool Echelon::insert(SparseVector v, int id, SparseVector* relation) {
  SparseVector combo;
  SparseVector* combo_ptr = track_ ? &combo : nullptr;
  SparseVector rem = reduce(std::move(v), combo_ptr);
  if (rem.empty()) {
    if (relation && track_) {
      // input_id - Σ combo = 0
      SparseVector rel = scaled(combo, -1);
      rel = axpy(rel, 1, SparseVector{{id, Rational(1)}});
      *relation = std::move(rel);
    }
    return false;
  }
  Rational lead = rem.front().second;
  Rational inv = 1 / lead;
  Row row;
  row.vec = scaled(rem, inv);
  if (track_) {
    // rem = input_id - Σ combo
    SparseVector c = scaled(combo, -1);
    c = axpy(c, 1, SparseVector{{id, Rational(1)}});
    row.combo = scaled(c, inv);
  }
  rows_.emplace(rem.front().first, std::move(row));
  return true;
}

int rank(const SparseMatrix& m) {
  Echelon e;
  for (const auto& c : m.columns) e.insert(c);
  return e.rank();
}

std::vector<SparseVector> kernel_basis(const SparseMatrix& m) {
  Echelon e(true);
  std::vector<SparseVector> out;
  for (int j = 0; j < m.cols; ++j) {
    SparseVector rel;
    if (!e.insert(m.columns[static_cast<std::size_t>(j)], j, &rel)) out.push_back(std::move(rel));
  }
  return out;
}

std::optional<SparseVector> solve(const SparseMatrix& m, const SparseVector& rhs) {
  Echelon e(true);
  for (int j = 0; j < m.cols; ++j) e.insert(m.columns[static_cast<std::size_t>(j)], j);
  SparseVector combo;
  SparseVector rem = e.reduce(rhs, &combo);
  if (!rem.empty()) return std::nullopt;
  return combo;
}

} // namespace symflat::linalg
