#include "symflat/twist.hpp"

#include <stdexcept>

#include "symflat/lefschetz.hpp"

namespace symflat {

int delta_sign(int k) {
  if (k < 1) throw std::invalid_argument("delta_sign: k must be at least 1");
  return (((k - 1) * (k - 2) / 2) % 2) ? -1 : 1;
}

namespace {

ValuedForm covariant(const Connection& c, const ValuedForm& beta) {
  if (beta.kind() == FiberKind::scalar || beta.rank() != c.rank())
    throw std::invalid_argument("twist: expected a vector or matrix form of the connection's rank");
  return exterior_d(beta) + wedge(c.A(), beta);
}

void require_primitive(const ValuedForm& beta) {
  if (!is_primitive(beta)) throw std::invalid_argument("twist: input is not primitive");
}

} // namespace

ValuedForm del_plus_A(const Connection& c, const ValuedForm& beta) {
  require_primitive(beta);
  return pi_p(0, covariant(c, beta));
}

ValuedForm del_minus_A(const Connection& c, const ValuedForm& beta) {
  require_primitive(beta);
  return L_power(-1, covariant(c, beta));
}

PrimElement connection_element(const Connection& c) { return PrimElement(Side::plus, 1, c.A()); }

PrimElement twist_series(const Connection& c, const PrimElement& b, int max_k) {
  const PrimElement a = connection_element(c);
  std::vector<PrimElement> inputs;
  PrimElement total = m1(b);
  for (int k = 2; k <= max_k; ++k) {
    inputs.assign(static_cast<std::size_t>(k - 1), a);
    inputs.push_back(b);
    PrimElement term = m_k(inputs);
    total += delta_sign(k) < 0 ? -term : term;
  }
  return total;
}

PrimElement twist_branch(const Connection& c, const PrimElement& b) {
  const int n = c.chart_dim();
  const int s = b.primitive_degree();
  const int out = b.grading() + 1;
  auto at = [&](ValuedForm v) {
    auto pos = position_of_grading(n, out);
    return PrimElement(pos.side, pos.s, std::move(v));
  };
  if (s < 0 || s > n) return PrimElement::zero_at_grading(out, b.kind(), b.rank(), n);
  const ValuedForm& beta = b.payload();
  if (b.side() == Side::minus) return at(-del_minus_A(c, beta));
  if (s < n) return at(del_plus_A(c, beta));
  return at(wedge(c.Phi(), beta) - del_plus_A(c, del_minus_A(c, beta)));
}

PrimElement twisted_m1(const Connection& c, const PrimElement& b, TwistMode mode) {
  PrimElement branch = twist_branch(c, b);
  if (mode == TwistMode::fast) return branch;
  PrimElement series = twist_series(c, b);
  if (!(series == branch)) throw std::logic_error("twisted_m1: branch table and series disagree on " + describe(b));
  return branch;
}

PrimElement m1_prime_of_A(const Connection& c) {
  const PrimElement a = connection_element(c);
  return m1(a) + m2(a, a) - m3(a, a, a);
}

PrimElement m1_prime_of_A_closed_form(const Connection& c) {
  const int n = c.chart_dim();
  if (n >= 2) return PrimElement(Side::plus, 2, pi_p(0, c.F()));
  return PrimElement(Side::minus, 1, -covariant_d_end(c, c.Phi()));
}

PrimElement random_prim_element(Rng& rng, int n, int rank, int grading, int max_degree, FiberKind kind) {
  auto pos = position_of_grading(n, grading);
  RandomShape shape{max_degree, 2, 60};
  if (pos.s < 0 || pos.s > n) return PrimElement::zero(pos.side, pos.s, kind, rank, n);
  return PrimElement(pos.side, pos.s, random_valued_form(rng, kind, rank, n, pos.s, true, shape));
}

namespace {

// Basis elements x^m e_I ⊗ u_i with total coefficient degree ≤ max_degree.
std::optional<SquareZeroWitness> scan_basis(const Connection& c, int max_degree) {
  const int n = c.chart_dim();
  const int r = c.rank();
  for (int g = 0; g <= 2 * n + 1; ++g) {
    auto pos = position_of_grading(n, g);
    for (FormIndex idx : basis_indices(n, pos.s)) {
      Form prim = pi_p(0, Form::basis(n, idx));
      if (prim.is_zero()) continue;
      std::vector<Monomial> monos{Monomial(2 * n)};
      for (int d = 1; d <= max_degree; ++d) {
        std::vector<Monomial> next;
        for (const auto& m : monos)
          if (m.total_degree() == d - 1)
            for (int v = 0; v < 2 * n; ++v) next.push_back(m * Monomial::variable(2 * n, v));
        monos.insert(monos.end(), next.begin(), next.end());
      }
      for (const auto& m : monos)
        for (int i = 0; i < r; ++i) {
          ValuedForm payload(FiberKind::vector, r, n, pos.s);
          payload.entry(i) = Poly::monomial(n, m, 1) * prim;
          PrimElement b(pos.side, pos.s, payload);
          PrimElement res = twisted_m1(c, twisted_m1(c, b, TwistMode::fast), TwistMode::fast);
          if (!res.is_zero()) return SquareZeroWitness{b, res};
        }
    }
  }
  return std::nullopt;
}

} // namespace

SquareZeroReport check_square_zero(const Connection& c, int trials, std::uint64_t seed, int max_degree) {
  SquareZeroReport rep;
  rep.flat = m1_prime_of_A(c).is_zero();
  rep.trials = trials;
  Rng rng(seed);
  const int n = c.chart_dim();
  for (int t = 0; t < trials; ++t) {
    PrimElement b = random_prim_element(rng, n, c.rank(), rng.uniform(0, 2 * n + 1), max_degree);
    PrimElement res = twisted_m1(c, twisted_m1(c, b));
    if (!res.is_zero()) {
      ++rep.residual_failures;
      if (!rep.witness) rep.witness = SquareZeroWitness{b, res};
    }
  }
  if (!rep.witness && !rep.flat) rep.witness = scan_basis(c, 1);
  return rep;
}

} // namespace symflat
