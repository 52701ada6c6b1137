#pragma once

#include <span>
#include <string>
#include <vector>

#include "symflat/valued_form.hpp"

namespace symflat {

enum class Side { plus, minus };

std::string to_string(Side side);

/// Grading of P^s_± inside F = {P^0_+, …, P^n_+, P^n_−, …, P^0_−}:
/// s on the plus side, 2n+1−s on the minus side.
int grading_of(int n, Side side, int s);

struct Position {
  Side side;
  int s;
  friend bool operator==(const Position&, const Position&) = default;
};

/// Inverse of grading_of, extended past both ends of the complex: gradings
/// below 0 map to plus with s < 0 and gradings above 2n+1 map to minus with
/// s < 0. Those positions hold only zero.
Position position_of_grading(int n, int grading);

/// An element of the TTY module: a primitive form of degree s on the given
/// side, with scalar, vector or matrix fiber. Positions with s outside 0..n
/// are the zero space.
class PrimElement {
public:
  PrimElement() = default;
  PrimElement(Side side, int s, ValuedForm payload);
  PrimElement(Side side, int s, const Form& payload) : PrimElement(side, s, ValuedForm::scalar(payload)) {}

  static PrimElement zero(Side side, int s, FiberKind kind, int rank, int n);
  static PrimElement zero_at_grading(int grading, FiberKind kind, int rank, int n);

  Side side() const { return side_; }
  int primitive_degree() const { return s_; }
  int grading() const { return grading_of(payload_.chart_dim(), side_, s_); }
  Position position() const { return {side_, s_}; }
  int chart_dim() const { return payload_.chart_dim(); }
  FiberKind kind() const { return payload_.kind(); }
  int rank() const { return payload_.rank(); }
  const ValuedForm& payload() const { return payload_; }
  bool is_zero() const { return payload_.is_zero(); }
  /// True when the payload passes the primitivity test.
  bool is_valid() const;

  PrimElement& operator+=(const PrimElement& other);
  PrimElement& operator-=(const PrimElement& other);
  PrimElement operator-() const;
  friend PrimElement operator+(PrimElement a, const PrimElement& b) { return a += b; }
  friend PrimElement operator-(PrimElement a, const PrimElement& b) { return a -= b; }
  friend PrimElement operator*(const Rational& c, PrimElement a);
  friend bool operator==(const PrimElement& a, const PrimElement& b);

private:
  Side side_ = Side::plus;
  int s_ = 0;
  ValuedForm payload_;
};

std::string describe(const PrimElement& e);

/// The differential: ∂+ on P^k_+ (k<n), −∂+∂− on P^n_+, −∂− on P^k_−.
PrimElement m1(const PrimElement& a);
/// The product a × b (four cases by side). Fibers compose in argument order.
PrimElement m2(const PrimElement& a, const PrimElement& b);
/// Nonzero only for three plus-side inputs with i+j+k ≥ n+2.
PrimElement m3(const PrimElement& a, const PrimElement& b, const PrimElement& c);
/// m_k for any k ≥ 1; m_k = 0 for k ≥ 4.
PrimElement m_k(std::span<const PrimElement> inputs);

/// Residual of the degree-k Stasheff identity
///   Σ_{r+s+t=k} (−1)^{r+st} m_{r+t+1}(1^{⊗r} ⊗ m_s ⊗ 1^{⊗t})
/// on the given k inputs, with Koszul signs from F-gradings. Zero when the
/// identity holds.
PrimElement check_stasheff(std::span<const PrimElement> inputs);

} // namespace symflat
