#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "symflat/poly.hpp"

namespace symflat {

/// A strictly increasing set of coordinate indices (0-based; index i < n is
/// dx_{i+1}, index n+i is dy_{i+1}), stored as a bitmask.
class FormIndex {
public:
  FormIndex() = default;
  explicit FormIndex(std::uint32_t mask) : mask_(mask) {}
  static FormIndex from_indices(const std::vector<int>& indices);

  std::uint32_t mask() const { return mask_; }
  int size() const;
  bool contains(int i) const { return (mask_ >> i) & 1U; }
  std::vector<int> indices() const;

  /// Sign of e_a ∧ e_b rewritten as e_{a∪b}, or 0 when the index sets meet.
  static int wedge_sign(FormIndex a, FormIndex b);

  friend bool operator==(FormIndex a, FormIndex b) { return a.mask_ == b.mask_; }
  /// Lexicographic on the increasing index lists (masks of equal size).
  friend bool operator<(FormIndex a, FormIndex b);

private:
  std::uint32_t mask_ = 0;
};

/// All index sets of the given size over 2n coordinates, in lexicographic order.
const std::vector<FormIndex>& basis_indices(int n, int degree);

/// A homogeneous differential form with polynomial coefficients on the
/// Darboux chart R^{2n}, ω = Σ dx_i ∧ dy_i. A degree outside 0..2n is allowed
/// and denotes the zero space; such forms never hold terms.
class Form {
public:
  using Terms = std::map<FormIndex, Poly>;

  Form() = default;
  Form(int n, int degree);

  static Form function(const Poly& f);
  static Form constant(int n, const Rational& c);
  static Form basis(int n, FormIndex index, const Poly& coefficient);
  static Form basis(int n, FormIndex index, const Rational& c = 1);
  /// dx_i, i in 1..n.
  static Form dx(int n, int i);
  /// dy_i, i in 1..n.
  static Form dy(int n, int i);
  static Form omega(int n);
  static Form omega_power(int n, int p);

  int chart_dim() const { return n_; }
  int degree() const { return degree_; }
  bool in_range() const { return degree_ >= 0 && degree_ <= 2 * n_; }
  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  Poly coefficient(FormIndex index) const;
  /// Largest total degree among the coefficients, -1 for the zero form.
  int max_coefficient_degree() const;

  void add_term(FormIndex index, const Poly& coefficient);

  Form& operator+=(const Form& other);
  Form& operator-=(const Form& other);
  Form& operator*=(const Rational& c);
  Form operator-() const;
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const Rational& c, Form a) { return a *= c; }
  friend Form operator*(const Poly& f, const Form& a);
  friend bool operator==(const Form& a, const Form& b);

  /// Applies a coefficient-wise transformation that keeps the index set.
  Form map_coefficients(const std::function<Poly(const Poly&)>& fn) const;

private:
  void check_compatible(const Form& other) const;
  int n_ = 0;
  int degree_ = 0;
  Terms terms_;
};

Form wedge(const Form& a, const Form& b);
Form exterior_d(const Form& a);
/// Λ = Σ_i ι(∂/∂y_i) ι(∂/∂x_i): the sl(2) lowering operator, degree -2.
Form contract_lambda(const Form& a);

std::string to_string(const Form& f);

} // namespace symflat
