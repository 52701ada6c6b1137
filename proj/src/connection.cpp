#include "symflat/connection.hpp"

#include <stdexcept>

#include "symflat/lefschetz.hpp"

namespace symflat {

Form lambda_form(int n, LambdaChoice choice) {
  Form l(n, 1);
  for (int i = 0; i < n; ++i) {
    Poly x = Poly::coordinate(n, i);
    Poly y = Poly::coordinate(n, n + i);
    if (choice == LambdaChoice::standard) {
      l += x * Form::dy(n, i + 1);
    } else {
      l += Rational(1, 2) * (x * Form::dy(n, i + 1));
      l -= Rational(1, 2) * (y * Form::dx(n, i + 1));
    }
  }
  return l;
}

Connection::Connection(MatrixForm A) : A_(std::move(A)) {
  if (A_.kind() != FiberKind::matrix) throw std::invalid_argument("connection: A must be matrix valued");
  if (A_.degree() != 1) throw std::invalid_argument("connection: A must be a 1-form");
  F_ = exterior_d(A_) + wedge(A_, A_);
  Phi_ = L_power(-1, F_);
}

Connection Connection::trivial(int n, int rank) { return Connection(ValuedForm(FiberKind::matrix, rank, n, 1)); }

MatrixForm curvature(const Connection& c) { return c.F(); }

VectorForm covariant_d(const Connection& c, const VectorForm& v) {
  if (v.kind() != FiberKind::vector || v.rank() != c.rank())
    throw std::invalid_argument("covariant_d: expected a vector form of the connection's rank");
  return exterior_d(v) + wedge(c.A(), v);
}

MatrixForm covariant_d_end(const Connection& c, const MatrixForm& m) {
  if (m.kind() != FiberKind::matrix || m.rank() != c.rank())
    throw std::invalid_argument("covariant_d_end: expected a matrix form of the connection's rank");
  return exterior_d(m) + commutator(c.A(), m);
}

FlatnessReport analyze_flatness(const Connection& c) {
  FlatnessReport r;
  r.F = c.F();
  r.F0 = pi_p(0, r.F);
  r.Phi = c.Phi();
  r.dAPhi = covariant_d_end(c, r.Phi);
  const bool primitive_free = r.F0.is_zero();
  r.is_symplectically_flat = primitive_free && r.dAPhi.is_zero();
  if (primitive_free && c.chart_dim() >= 2) {
    // d_A F = 0 always; with F = Φω this forces (d_AΦ)∧ω = 0, and L is
    // injective on 1-forms once n ≥ 2.
    bool bianchi = covariant_d_end(c, r.F).is_zero();
    r.bianchi_consistent = bianchi && r.dAPhi.is_zero();
  }
  return r;
}

Gauge identity_gauge(int n, int rank) {
  auto I = ValuedForm::identity(n, rank);
  return {I, I};
}

Gauge unipotent_gauge(const MatrixForm& N) {
  if (N.kind() != FiberKind::matrix || N.degree() != 0)
    throw std::invalid_argument("unipotent_gauge: expected a degree-0 matrix");
  const int r = N.rank();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j <= i; ++j)
      if (!N.entry(i, j).is_zero()) throw std::invalid_argument("unipotent_gauge: N must be strictly upper triangular");
  auto I = ValuedForm::identity(N.chart_dim(), r);
  MatrixForm inv = I;
  MatrixForm power = I;
  for (int k = 1; k < r; ++k) {
    power = -wedge(power, N);
    inv += power;
  }
  return {I + N, inv};
}

Gauge constant_gauge(int n, int rank, const std::vector<Rational>& entries) {
  const auto r = static_cast<std::size_t>(rank);
  if (entries.size() != r * r) throw std::invalid_argument("constant_gauge: expected rank² entries");
  std::vector<Rational> a = entries;
  std::vector<Rational> inv(r * r, 0);
  for (std::size_t i = 0; i < r; ++i) inv[i * r + i] = 1;
  for (std::size_t col = 0; col < r; ++col) {
    std::size_t pivot = col;
    while (pivot < r && a[pivot * r + col] == 0) ++pivot;
    if (pivot == r) throw std::invalid_argument("constant_gauge: matrix is singular");
    for (std::size_t k = 0; k < r; ++k) {
      std::swap(a[pivot * r + k], a[col * r + k]);
      std::swap(inv[pivot * r + k], inv[col * r + k]);
    }
    Rational p = a[col * r + col];
    for (std::size_t k = 0; k < r; ++k) {
      a[col * r + k] /= p;
      inv[col * r + k] /= p;
    }
    for (std::size_t row = 0; row < r; ++row) {
      if (row == col || a[row * r + col] == 0) continue;
      Rational f = a[row * r + col];
      for (std::size_t k = 0; k < r; ++k) {
        a[row * r + k] -= f * a[col * r + k];
        inv[row * r + k] -= f * inv[col * r + k];
      }
    }
  }
  return {ValuedForm::constant_matrix(n, rank, entries), ValuedForm::constant_matrix(n, rank, inv)};
}

Gauge compose(const Gauge& a, const Gauge& b) { return {wedge(a.g, b.g), wedge(b.g_inv, a.g_inv)}; }

Gauge random_unipotent_gauge(Rng& rng, int n, int rank, int max_degree) {
  MatrixForm N(FiberKind::matrix, rank, n, 0);
  for (int i = 0; i < rank; ++i)
    for (int j = i + 1; j < rank; ++j) N.entry(i, j) = Form::function(random_poly(rng, n, max_degree, 2));
  return unipotent_gauge(N);
}

Connection gauge_apply(const Connection& c, const Gauge& g) {
  if (g.g.rank() != c.rank() || g.g_inv.rank() != c.rank()) throw std::invalid_argument("gauge_apply: rank mismatch");
  if (!(wedge(g.g, g.g_inv) == ValuedForm::identity(c.chart_dim(), c.rank())))
    throw std::invalid_argument("gauge_apply: g·g⁻¹ ≠ I");
  return Connection(wedge(wedge(g.g, c.A()), g.g_inv) + wedge(g.g, exterior_d(g.g_inv)));
}

Connection generate_flat(int n, int rank, const std::vector<Rational>& phi0, const Gauge& g, LambdaChoice lambda) {
  Connection canonical(ValuedForm::form_times_matrix(lambda_form(n, lambda), rank, phi0));
  return gauge_apply(canonical, g);
}

Connection random_connection(Rng& rng, int n, int rank, int max_degree) {
  RandomShape shape{max_degree, 2, 50};
  return Connection(random_valued_form(rng, FiberKind::matrix, rank, n, 1, false, shape));
}

MatrixForm yang_mills_residual(const Connection& c) {
  FlatnessReport rep = analyze_flatness(c);
  if (!rep.F0.is_zero()) throw std::invalid_argument("yang_mills_residual: curvature has a primitive part");
  const int n = c.chart_dim();
  const Form w = Form::omega_power(n, n - 1);
  return rep.dAPhi.map([&](const Form& f) { return wedge(f, w); });
}

} // namespace symflat
