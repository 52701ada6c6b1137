#pragma once

#include <cstdint>
#include <optional>

#include "symflat/connection.hpp"
#include "symflat/tty.hpp"

namespace symflat {

/// δ_k = (−1)^{(k−1)(k−2)/2}. Throws for k < 1.
int delta_sign(int k);

/// ∂_{+A}β = Π(d_Aβ) and ∂_{−A}β = L⁻¹(d_Aβ) on primitive β with vector or
/// matrix fiber; A acts on the left.
ValuedForm del_plus_A(const Connection& c, const ValuedForm& beta);
ValuedForm del_minus_A(const Connection& c, const ValuedForm& beta);

/// The connection form as a grading-one element of the matrix-valued TTY algebra.
PrimElement connection_element(const Connection& c);

/// Σ_{k=1}^{max_k} δ_k m_k(A^{⊗(k−1)} ⊗ b). Terms past m_3 vanish in the TTY algebra.
PrimElement twist_series(const Connection& c, const PrimElement& b, int max_k = 3);
/// Closed form: ∂_{+A} on P^k_+ (k<n), −∂_{+A}∂_{−A}+Φ on P^n_+, −∂_{−A} on P^k_−.
PrimElement twist_branch(const Connection& c, const PrimElement& b);

enum class TwistMode { dual, fast };

/// m′1(b). In dual mode both evaluations run and a disagreement throws
/// std::logic_error; fast mode uses the branch table only.
PrimElement twisted_m1(const Connection& c, const PrimElement& b, TwistMode mode = TwistMode::dual);

/// m′1(A) = m1(A) + m2(A,A) − m3(A,A,A). Vanishes iff c is symplectically flat.
PrimElement m1_prime_of_A(const Connection& c);
/// Closed forms of m′1(A): Π F for n ≥ 2 and −(dΦ + [A,Φ]) on P^1_− for n = 1.
PrimElement m1_prime_of_A_closed_form(const Connection& c);

struct SquareZeroWitness {
  PrimElement input;
  PrimElement residual;
};

struct SquareZeroReport {
  bool flat = false;
  int trials = 0;
  int residual_failures = 0;
  std::optional<SquareZeroWitness> witness;
};

/// Random vector-valued element at the given grading with coefficient degree ≤ max_degree.
PrimElement random_prim_element(Rng& rng, int n, int rank, int grading, int max_degree,
                                FiberKind kind = FiberKind::vector);

/// Applies m′1 twice to `trials` random elements. If none fails and c is not
/// flat, scans low-degree basis elements for a witness as well.
SquareZeroReport check_square_zero(const Connection& c, int trials, std::uint64_t seed, int max_degree = 2);

} // namespace symflat
