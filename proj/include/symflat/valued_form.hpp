#pragma once

#include <functional>
#include <string>
#include <vector>

#include "symflat/form.hpp"

namespace symflat {

enum class FiberKind { scalar, vector, matrix };

std::string to_string(FiberKind kind);

/// A form with values in the trivial bundle of rank r: a plain form
/// (scalar), a section-valued form (vector, r entries) or an
/// endomorphism-valued form (matrix, r×r entries, row-major). All entries
/// share one degree and chart.
///
/// Wedge composes fibers in argument order without extra signs: matrix∧matrix
/// is the matrix product, matrix∧vector applies the endomorphism, and a
/// scalar factor multiplies every entry.
class ValuedForm {
public:
  ValuedForm() = default;
  ValuedForm(FiberKind kind, int rank, int n, int degree);

  static ValuedForm scalar(const Form& f);
  static ValuedForm vector(std::vector<Form> entries);
  static ValuedForm matrix(int rank, std::vector<Form> entries);
  static ValuedForm identity(int n, int rank);
  /// Constant r×r matrix (row-major) as an endomorphism-valued 0-form.
  static ValuedForm constant_matrix(int n, int rank, const std::vector<Rational>& entries);
  /// Constant section v as a vector-valued 0-form.
  static ValuedForm constant_vector(int n, const std::vector<Rational>& entries);
  /// Form f times the constant endomorphism M (row-major), i.e. M⊗f.
  static ValuedForm form_times_matrix(const Form& f, int rank, const std::vector<Rational>& entries);

  FiberKind kind() const { return kind_; }
  int rank() const { return rank_; }
  int chart_dim() const { return n_; }
  int degree() const { return degree_; }
  int rows() const { return kind_ == FiberKind::scalar ? 1 : rank_; }
  int cols() const { return kind_ == FiberKind::matrix ? rank_ : 1; }
  std::size_t size() const { return entries_.size(); }

  const Form& entry(int i) const { return entries_.at(static_cast<std::size_t>(i)); }
  const Form& entry(int i, int j) const { return entries_.at(static_cast<std::size_t>(i * cols() + j)); }
  Form& entry(int i) { return entries_.at(static_cast<std::size_t>(i)); }
  Form& entry(int i, int j) { return entries_.at(static_cast<std::size_t>(i * cols() + j)); }
  const std::vector<Form>& entries() const { return entries_; }

  bool is_zero() const;
  int max_coefficient_degree() const;
  bool same_shape(const ValuedForm& other) const;

  ValuedForm& operator+=(const ValuedForm& other);
  ValuedForm& operator-=(const ValuedForm& other);
  ValuedForm& operator*=(const Rational& c);
  ValuedForm operator-() const;
  friend ValuedForm operator+(ValuedForm a, const ValuedForm& b) { return a += b; }
  friend ValuedForm operator-(ValuedForm a, const ValuedForm& b) { return a -= b; }
  friend ValuedForm operator*(const Rational& c, ValuedForm a) { return a *= c; }
  friend bool operator==(const ValuedForm& a, const ValuedForm& b);

  /// Applies a degree-shifting linear map to every entry.
  ValuedForm map(const std::function<Form(const Form&)>& fn) const;

private:
  FiberKind kind_ = FiberKind::scalar;
  int rank_ = 1;
  int n_ = 0;
  int degree_ = 0;
  std::vector<Form> entries_;
};

using VectorForm = ValuedForm;
using MatrixForm = ValuedForm;

/// True when a fiber of kind `a` can be composed with one of kind `b`.
bool composable(const ValuedForm& a, const ValuedForm& b);
ValuedForm wedge(const ValuedForm& a, const ValuedForm& b);
ValuedForm exterior_d(const ValuedForm& a);
/// Graded commutator [a, b] = a∧b − (−1)^{|a||b|} b∧a of matrix-valued forms.
ValuedForm commutator(const ValuedForm& a, const ValuedForm& b);

/// Form-DSL rendering: a plain form for scalars, [..] for vectors, [[..], ..] for matrices.
std::string to_string(const ValuedForm& a);

} // namespace symflat
