#include "symflat/cohomology.hpp"

#include <algorithm>
#include <stdexcept>

#include "symflat/lefschetz.hpp"
#include "symflat/twist.hpp"

namespace symflat {

std::string to_string(ComplexKind kind) { return kind == ComplexKind::primitive ? "prim" : "cone"; }

namespace {

// Exponent vectors of total degree d in `vars` variables, lexicographically descending.
void monomials_of_degree(int vars, int d, std::vector<Monomial>& out) {
  Monomial m(vars);
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == vars - 1) {
      m.set_exponent(var, left);
      out.push_back(m);
      return;
    }
    for (int e = left; e >= 0; --e) {
      m.set_exponent(var, e);
      self(self, var + 1, left - e);
    }
    m.set_exponent(var, 0);
  };
  rec(rec, 0, d);
}

// Reduced row echelon basis of the span of the given constant forms.
std::vector<std::pair<Form, FormIndex>> rref_basis(int n, int degree, const std::vector<Form>& forms) {
  const auto& idx = basis_indices(n, degree);
  const std::size_t cols = idx.size();
  std::vector<std::vector<Rational>> rows;
  for (const Form& f : forms) {
    std::vector<Rational> row(cols, 0);
    for (std::size_t k = 0; k < cols; ++k) {
      auto c = f.coefficient(idx[k]).as_constant();
      if (!c) throw std::logic_error("rref_basis: expected constant forms");
      row[k] = *c;
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][col] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    Rational lead = rows[rank][col];
    for (auto& x : rows[rank]) x /= lead;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rational f = rows[r][col];
      for (std::size_t k = 0; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    pivots.push_back(col);
    ++rank;
  }
  std::vector<std::pair<Form, FormIndex>> out;
  for (std::size_t r = 0; r < rank; ++r) {
    Form f(n, degree);
    for (std::size_t k = 0; k < cols; ++k)
      if (rows[r][k] != 0) f += Form::basis(n, idx[k], rows[r][k]);
    out.emplace_back(std::move(f), idx[pivots[r]]);
  }
  return out;
}

bool in_range(int n, int degree) { return degree >= 0 && degree <= 2 * n; }

} // namespace

TruncatedSpace::TruncatedSpace(ComplexKind kind, int n, int rank, int grading, int max_degree)
    : kind_(kind), n_(n), rank_(rank), grading_(grading), max_degree_(max_degree) {
  if (n < 1 || rank < 1) throw std::invalid_argument("truncated space: need n ≥ 1 and rank ≥ 1");
  for (int d = 0; d <= max_degree; ++d) monomials_of_degree(2 * n, d, monomials_);
  for (std::size_t i = 0; i < monomials_.size(); ++i) monomial_index_.emplace(monomials_[i], static_cast<int>(i));
  if (kind == ComplexKind::primitive) {
    position_ = position_of_grading(n, grading);
    const int s = position_.s;
    if (s >= 0 && s <= n) {
      std::vector<Form> prims;
      for (FormIndex I : basis_indices(n, s)) prims.push_back(pi_p(0, Form::basis(n, I)));
      for (auto& [f, pivot] : rref_basis(n, s, prims)) fiber_forms_.push_back({std::move(f), pivot, false});
    }
    eta_fibers_ = static_cast<int>(fiber_forms_.size());
  } else {
    if (in_range(n, grading))
      for (FormIndex I : basis_indices(n, grading)) fiber_forms_.push_back({Form::basis(n, I), I, false});
    eta_fibers_ = static_cast<int>(fiber_forms_.size());
    if (in_range(n, grading - 1))
      for (FormIndex I : basis_indices(n, grading - 1)) fiber_forms_.push_back({Form::basis(n, I), I, true});
  }
}

int TruncatedSpace::dimension() const {
  return static_cast<int>(monomials_.size()) * fiber_dimension() * rank_;
}

int TruncatedSpace::index_of(const Monomial& m, int fiber, int unit) const {
  auto it = monomial_index_.find(m);
  if (it == monomial_index_.end())
    throw std::out_of_range("truncated space: coefficient degree exceeds truncation " + std::to_string(max_degree_));
  return (it->second * fiber_dimension() + fiber) * rank_ + unit;
}

void TruncatedSpace::add_form_coordinates(const Form& f, int fiber_begin, int fiber_end, int unit,
                                          linalg::SparseVector& out) const {
  for (int i = fiber_begin; i < fiber_end; ++i) {
    const Poly& p = f.coefficient(fiber_forms_[static_cast<std::size_t>(i)].pivot);
    for (const auto& [m, c] : p.terms()) out.emplace_back(index_of(m, i, unit), c);
  }
}

linalg::SparseVector TruncatedSpace::coordinates(const PrimElement& e) const {
  if (kind_ != ComplexKind::primitive) throw std::invalid_argument("truncated space: not a primitive space");
  if (e.grading() != grading_ || e.rank() != rank_) throw std::invalid_argument("truncated space: element mismatch");
  linalg::SparseVector out;
  const ValuedForm& v = e.payload();
  if (v.is_zero()) return out;
  for (int u = 0; u < rank_; ++u) add_form_coordinates(v.entry(u), 0, fiber_dimension(), u, out);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

linalg::SparseVector TruncatedSpace::coordinates(const ConeElement& e) const {
  if (kind_ != ComplexKind::cone) throw std::invalid_argument("truncated space: not a cone space");
  if (e.grading() != grading_ || e.rank() != rank_) throw std::invalid_argument("truncated space: element mismatch");
  linalg::SparseVector out;
  for (int u = 0; u < rank_; ++u) {
    if (!e.eta().is_zero()) add_form_coordinates(e.eta().entry(u), 0, eta_fibers_, u, out);
    if (!e.xi().is_zero()) add_form_coordinates(e.xi().entry(u), eta_fibers_, fiber_dimension(), u, out);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

ValuedForm TruncatedSpace::slot_payload(const linalg::SparseVector& v, bool xi_slot, int degree) const {
  ValuedForm out(FiberKind::vector, rank_, n_, degree);
  const int fibers = fiber_dimension();
  for (const auto& [idx, c] : v) {
    const int unit = idx % rank_;
    const int fiber = (idx / rank_) % fibers;
    const int mono = idx / (rank_ * fibers);
    const Fiber& fb = fiber_forms_[static_cast<std::size_t>(fiber)];
    if (fb.xi_slot != xi_slot) continue;
    out.entry(unit) += Poly::monomial(n_, monomials_.at(static_cast<std::size_t>(mono)), c) * fb.form;
  }
  return out;
}

PrimElement TruncatedSpace::to_prim(const linalg::SparseVector& v) const {
  if (kind_ != ComplexKind::primitive) throw std::invalid_argument("truncated space: not a primitive space");
  return PrimElement(position_.side, position_.s, slot_payload(v, false, position_.s));
}

ConeElement TruncatedSpace::to_cone(const linalg::SparseVector& v) const {
  if (kind_ != ComplexKind::cone) throw std::invalid_argument("truncated space: not a cone space");
  return ConeElement(grading_, slot_payload(v, false, grading_), slot_payload(v, true, grading_ - 1));
}

PrimElement TruncatedSpace::prim_basis(int i) const { return to_prim({{i, Rational(1)}}); }
ConeElement TruncatedSpace::cone_basis(int i) const { return to_cone({{i, Rational(1)}}); }

int growth_bound(const Connection& c, ComplexKind kind, int grading) {
  const int a = std::max(0, c.A().max_coefficient_degree());
  const int n = c.chart_dim();
  const bool two = kind == ComplexKind::cone || grading == n;
  return two ? 2 * a : a;
}

LinOpMatrix assemble_operator(const Connection& c, ComplexKind kind, int grading, int d_source, int d_target) {
  const int growth = growth_bound(c, kind, grading);
  if (d_target < d_source + growth)
    throw std::invalid_argument("assemble_operator: target truncation " + std::to_string(d_target) +
                                " is below source truncation plus growth " + std::to_string(d_source + growth));
  const int n = c.chart_dim();
  const int r = c.rank();
  LinOpMatrix out{TruncatedSpace(kind, n, r, grading, d_source), TruncatedSpace(kind, n, r, grading + 1, d_target), {}};
  const int cols = out.source.dimension();
  out.matrix = linalg::SparseMatrix(out.target.dimension(), cols);
  for (int i = 0; i < cols; ++i) {
    auto& col = out.matrix.columns[static_cast<std::size_t>(i)];
    if (kind == ComplexKind::primitive) {
      col = out.target.coordinates(twisted_m1(c, out.source.prim_basis(i), TwistMode::fast));
    } else {
      col = out.target.coordinates(cone_d(c, out.source.cone_basis(i)));
    }
  }
  return out;
}

bool CohomologyReport::all_stabilized() const {
  return std::all_of(positions.begin(), positions.end(), [](const auto& p) { return p.stabilized; });
}

std::vector<int> CohomologyReport::dims() const {
  std::vector<int> out;
  for (const auto& p : positions) out.push_back(p.dim);
  return out;
}

namespace {

std::string position_label(ComplexKind kind, int n, int grading) {
  if (kind == ComplexKind::cone) return "C^" + std::to_string(grading);
  auto pos = position_of_grading(n, grading);
  return "P^" + std::to_string(pos.s) + (pos.side == Side::plus ? "_+" : "_-");
}

} // namespace

CohomologyReport cohomology_dims(const Connection& c, ComplexKind kind, int truncation,
                                 const std::vector<int>& margins) {
  if (margins.empty()) throw std::invalid_argument("cohomology_dims: need at least one margin");
  if (truncation < 0) throw std::invalid_argument("cohomology_dims: truncation must be non-negative");
  std::vector<int> sorted = margins;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const int n = c.chart_dim();
  CohomologyReport rep;
  rep.kind = kind;
  rep.truncation = truncation;
  rep.margins = sorted;
  for (int p = 0; p <= 2 * n + 1; ++p) {
    PositionCohomology pc;
    pc.grading = p;
    pc.label = position_label(kind, n, p);
    LinOpMatrix out = assemble_operator(c, kind, p, truncation, truncation + growth_bound(c, kind, p));
    std::vector<linalg::SparseVector> kernel = linalg::kernel_basis(out.matrix);
    std::vector<std::vector<linalg::SparseVector>> accepted_by_margin;
    if (p == 0) {
      for (std::size_t i = 0; i < sorted.size(); ++i) accepted_by_margin.push_back(kernel);
    } else {
      const int smax = sorted.back();
      const int g_in = growth_bound(c, kind, p - 1);
      LinOpMatrix in = assemble_operator(c, kind, p - 1, truncation + smax, truncation + smax + g_in);
      linalg::Echelon image;
      int inserted = 0;
      for (int s : sorted) {
        const int upto = TruncatedSpace(kind, n, c.rank(), p - 1, truncation + s).dimension();
        for (; inserted < upto; ++inserted) image.insert(in.matrix.columns[static_cast<std::size_t>(inserted)]);
        linalg::Echelon quotient = image;
        std::vector<linalg::SparseVector> accepted;
        for (const auto& k : kernel)
          if (quotient.insert(k)) accepted.push_back(k);
        accepted_by_margin.push_back(std::move(accepted));
      }
    }
    std::size_t chosen = accepted_by_margin.size() - 1;
    for (std::size_t i = 0; i < accepted_by_margin.size(); ++i) pc.dims_by_margin.push_back(static_cast<int>(accepted_by_margin[i].size()));
    for (std::size_t i = 0; i + 1 < pc.dims_by_margin.size(); ++i)
      if (pc.dims_by_margin[i] == pc.dims_by_margin[i + 1]) {
        pc.stabilized = true;
        chosen = i;
        break;
      }
    if (sorted.size() == 1) pc.stabilized = false;
    pc.dim = pc.dims_by_margin[chosen];
    for (const auto& w : accepted_by_margin[chosen]) {
      pc.witness_coordinates.push_back(w);
      pc.witnesses.push_back(kind == ComplexKind::primitive ? to_string(out.source.to_prim(w).payload())
                                                            : to_string(out.source.to_cone(w)));
    }
    rep.positions.push_back(std::move(pc));
  }
  return rep;
}

CohomologyReport cone_cohomology_dims(const Connection& c, int truncation, const std::vector<int>& margins) {
  return cohomology_dims(c, ComplexKind::cone, truncation, margins);
}

namespace {

template <class Element>
std::optional<Element> solve_preimage(const Connection& c, ComplexKind kind, const Element& e, int element_degree,
                                      int d_search) {
  const int p = e.grading() - 1;
  if (d_search < 0) d_search = std::max(0, element_degree) + 2;
  const int n = c.chart_dim();
  if (e.is_zero()) {
    if constexpr (std::is_same_v<Element, PrimElement>) {
      return PrimElement::zero_at_grading(p, FiberKind::vector, c.rank(), n);
    } else {
      return ConeElement::zero(n, c.rank(), p);
    }
  }
  if (p < 0 || p > 2 * n + 1) return std::nullopt;
  const int d_target = std::max(d_search + growth_bound(c, kind, p), element_degree);
  LinOpMatrix op = assemble_operator(c, kind, p, d_search, d_target);
  auto x = linalg::solve(op.matrix, op.target.coordinates(e));
  if (!x) return std::nullopt;
  if constexpr (std::is_same_v<Element, PrimElement>) {
    return op.source.to_prim(*x);
  } else {
    return op.source.to_cone(*x);
  }
}

} // namespace

std::optional<PrimElement> exactness_witness(const Connection& c, const PrimElement& e, int d_search) {
  return solve_preimage(c, ComplexKind::primitive, e, e.payload().max_coefficient_degree(), d_search);
}

std::optional<ConeElement> exactness_witness(const Connection& c, const ConeElement& e, int d_search) {
  const int deg = std::max(e.eta().max_coefficient_degree(), e.xi().max_coefficient_degree());
  return solve_preimage(c, ComplexKind::cone, e, deg, d_search);
}

namespace {

std::vector<linalg::SparseVector> random_kernel_combinations(const std::vector<linalg::SparseVector>& kernel,
                                                             int count, Rng& rng) {
  std::vector<linalg::SparseVector> out;
  if (kernel.empty()) return out;
  for (int t = 0; t < count; ++t) {
    linalg::SparseVector v;
    for (const auto& k : kernel)
      if (rng.chance(50)) v = linalg::axpy(v, rng.small_rational(), k);
    if (v.empty()) v = linalg::scaled(kernel[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(kernel.size()) - 1))],
                                      rng.small_rational());
    out.push_back(std::move(v));
  }
  return out;
}

} // namespace

std::vector<PrimElement> sample_closed_prim(const Connection& c, int grading, int max_degree, int count, Rng& rng) {
  LinOpMatrix op = assemble_operator(c, ComplexKind::primitive, grading, max_degree,
                                     max_degree + growth_bound(c, ComplexKind::primitive, grading));
  std::vector<PrimElement> out;
  for (const auto& v : random_kernel_combinations(linalg::kernel_basis(op.matrix), count, rng))
    out.push_back(op.source.to_prim(v));
  return out;
}

std::vector<ConeElement> sample_closed_cone(const Connection& c, int grading, int max_degree, int count, Rng& rng) {
  LinOpMatrix op =
      assemble_operator(c, ComplexKind::cone, grading, max_degree, max_degree + growth_bound(c, ComplexKind::cone, grading));
  std::vector<ConeElement> out;
  for (const auto& v : random_kernel_combinations(linalg::kernel_basis(op.matrix), count, rng))
    out.push_back(op.source.to_cone(v));
  return out;
}

ClosedLemReport closedlem_check(const Connection& c, int samples_per_position, std::uint64_t seed, int max_degree) {
  const int n = c.chart_dim();
  const int r = c.rank();
  const MatrixForm& phi = c.Phi();
  if (phi.max_coefficient_degree() > 0) throw std::invalid_argument("closedlem_check: Phi is not constant");
  std::vector<Rational> phi0;
  for (const Form& f : phi.entries()) phi0.push_back(f.is_zero() ? Rational(0) : *f.coefficient(FormIndex()).as_constant());
  if (!(c.A() == ValuedForm::form_times_matrix(lambda_form(n), r, phi0)))
    throw std::invalid_argument("closedlem_check: connection is not of the form Phi0 * lambda");

  ClosedLemReport rep;
  rep.seed = seed;
  Rng rng(seed);
  const PrimElement lambda(Side::plus, 1, lambda_form(n));
  auto fail = [&](int& counter, const PrimElement& b) {
    ++counter;
    if (!rep.counterexample) rep.counterexample = describe(b) + " " + to_string(b.payload());
  };
  for (int g = 0; g <= 2 * n + 1; ++g) {
    for (const PrimElement& b : sample_closed_prim(c, g, max_degree, samples_per_position, rng)) {
      ++rep.samples;
      const int s = b.primitive_degree();
      const PrimElement phi_b(b.side(), s, wedge(phi, b.payload()));
      PrimElement explicit_pre;
      if (b.side() == Side::plus) {
        PrimElement w(Side::plus, s - 1, s >= 1 ? del_minus_A(c, b.payload()) : ValuedForm(FiberKind::vector, r, n, -1));
        if (!m1(b - m2(lambda, w)).is_zero()) fail(rep.closedness_failures, b);
        explicit_pre = w;
      } else {
        ValuedForm up = del_plus_A(c, b.payload());
        PrimElement u(Side::minus, s + 1, up);
        if (s < n && !m1(b + m2(lambda, u)).is_zero()) fail(rep.closedness_failures, b);
        explicit_pre = s < n ? -u : PrimElement(Side::plus, n, b.payload());
      }
      if (!(twisted_m1(c, explicit_pre) == phi_b)) fail(rep.explicit_witness_failures, b);
      if (!exactness_witness(c, phi_b)) fail(rep.solver_witness_failures, b);
    }
  }
  return rep;
}

} // namespace symflat
