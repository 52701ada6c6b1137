#pragma once

#include <cstdint>
#include <random>

#include "symflat/form.hpp"
#include "symflat/valued_form.hpp"

namespace symflat {

/// Seeded generator for randomized identity checks. Draws are derived from
/// the raw 64-bit engine output, so a seed reproduces the same sequence on
/// every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  int uniform(int lo, int hi);
  bool chance(int percent) { return uniform(0, 99) < percent; }
  /// Nonzero rational p/q with |p| ≤ 5, q ∈ {1, 2, 3}.
  Rational small_rational();

private:
  std::mt19937_64 engine_;
};

struct RandomShape {
  int max_coeff_degree = 2; ///< bound on total degree of coefficients
  int max_terms = 3;        ///< terms per coefficient polynomial
  int density = 60;         ///< percent of basis slots that get a coefficient
};

Poly random_poly(Rng& rng, int n, int max_degree, int max_terms);
Form random_form(Rng& rng, int n, int degree, const RandomShape& shape = {});
/// Π of a random form: primitive of degree s (zero when s > n).
Form random_primitive_form(Rng& rng, int n, int s, const RandomShape& shape = {});
ValuedForm random_valued_form(Rng& rng, FiberKind kind, int rank, int n, int degree, bool primitive,
                              const RandomShape& shape = {});

} // namespace symflat
