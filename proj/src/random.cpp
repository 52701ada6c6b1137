#include "symflat/random.hpp"

#include <stdexcept>

#include "symflat/lefschetz.hpp"

namespace symflat {

int Rng::uniform(int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("rng: empty range");
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

Rational Rng::small_rational() {
  int p = uniform(1, 5);
  if (chance(50)) p = -p;
  int q = uniform(1, 3);
  Rational out(p, q);
  out.canonicalize();
  return out;
}

Poly random_poly(Rng& rng, int n, int max_degree, int max_terms) {
  Poly p(n);
  int terms = rng.uniform(1, std::max(1, max_terms));
  for (int t = 0; t < terms; ++t) {
    Monomial m(2 * n);
    int degree = rng.uniform(0, std::max(0, max_degree));
    for (int k = 0; k < degree; ++k) {
      int var = rng.uniform(0, 2 * n - 1);
      m.set_exponent(var, m.exponent(var) + 1);
    }
    p.add_term(m, rng.small_rational());
  }
  return p;
}

Form random_form(Rng& rng, int n, int degree, const RandomShape& shape) {
  Form f(n, degree);
  if (!f.in_range()) return f;
  for (FormIndex I : basis_indices(n, degree)) {
    if (!rng.chance(shape.density)) continue;
    f.add_term(I, random_poly(rng, n, shape.max_coeff_degree, shape.max_terms));
  }
  return f;
}

Form random_primitive_form(Rng& rng, int n, int s, const RandomShape& shape) {
  if (s < 0 || s > n) return Form(n, s);
  return pi_p(0, random_form(rng, n, s, shape));
}

ValuedForm random_valued_form(Rng& rng, FiberKind kind, int rank, int n, int degree, bool primitive,
                              const RandomShape& shape) {
  ValuedForm out(kind, rank, n, degree);
  for (std::size_t i = 0; i < out.size(); ++i)
    out.entry(static_cast<int>(i)) =
        primitive ? random_primitive_form(rng, n, degree, shape) : random_form(rng, n, degree, shape);
  return out;
}

} // namespace symflat
