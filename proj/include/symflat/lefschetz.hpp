#pragma once

#include <vector>

#include "symflat/form.hpp"
#include "symflat/valued_form.hpp"

namespace symflat {

/// Lefschetz decomposition a = Σ_r ω^r ∧ parts[r] of a degree-k form; parts[r]
/// is the primitive component of degree k−2r (zero where absent).
template <class T>
struct Components {
  int chart_dim = 0;
  int degree = 0;
  std::vector<T> parts;

  /// Component of primitive degree s, or nullptr when s has the wrong parity
  /// or lies outside the stored range.
  const T* of_primitive_degree(int s) const {
    if (s < 0 || (degree - s) % 2 != 0) return nullptr;
    std::size_t r = static_cast<std::size_t>((degree - s) / 2);
    return r < parts.size() ? &parts[r] : nullptr;
  }
};

using LefschetzComponents = Components<Form>;
using ValuedLefschetzComponents = Components<ValuedForm>;

/// Primitivity via the lowering operator: Λa = 0.
bool is_primitive(const Form& a);
bool is_primitive(const ValuedForm& a);
/// Independent test for degree s ≤ n: ω^{n−s+1} ∧ a = 0.
bool is_primitive_by_omega_power(const Form& a);

LefschetzComponents decompose(const Form& a);
ValuedLefschetzComponents decompose(const ValuedForm& a);
Form reassemble(const LefschetzComponents& c);
ValuedForm reassemble(const ValuedLefschetzComponents& c);

/// L^p: ω^p ∧ a for p ≥ 0; for p < 0 removes |p| powers of ω from each
/// Lefschetz component and drops components with fewer powers.
Form L_power(int p, const Form& a);
ValuedForm L_power(int p, const ValuedForm& a);
/// Π^p: keeps the components ω^r ∧ β with r ≤ p. Π = Π^0.
Form pi_p(int p, const Form& a);
ValuedForm pi_p(int p, const ValuedForm& a);
/// *_r a = L^{n−k} a on a degree-k form.
Form star_r(const Form& a);
ValuedForm star_r(const ValuedForm& a);

/// ∂+ = Π d and ∂− = L^{-1} d on primitive forms. Non-primitive input throws
/// std::invalid_argument.
Form del_plus(const Form& beta);
Form del_minus(const Form& beta);
ValuedForm del_plus(const ValuedForm& beta);
ValuedForm del_minus(const ValuedForm& beta);

namespace detail {
// Unchecked variants for callers that already guarantee primitivity.
inline Form del_plus_unchecked(const Form& b) { return pi_p(0, exterior_d(b)); }
inline Form del_minus_unchecked(const Form& b) { return L_power(-1, exterior_d(b)); }
} // namespace detail

} // namespace symflat
