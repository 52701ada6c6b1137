#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace symflat {

using Rational = mpq_class;

/// Largest supported chart dimension n (coordinates x1..xn, y1..yn).
inline constexpr int kMaxChartDim = 4;
inline constexpr int kMaxVars = 2 * kMaxChartDim;

/// Exponent vector over the coordinates x1..xn, y1..yn (in that order).
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(int nvars);
  static Monomial variable(int nvars, int index, int power = 1);

  int nvars() const { return nvars_; }
  int exponent(int i) const { return exps_[static_cast<std::size_t>(i)]; }
  void set_exponent(int i, int e);
  int total_degree() const;

  Monomial operator*(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

private:
  std::uint8_t nvars_ = 0;
  std::array<std::uint8_t, kMaxVars> exps_{};
};

/// Sparse polynomial with exact rational coefficients in 2n variables.
/// Terms are kept sorted by monomial with no stored zeros.
class Poly {
public:
  using Term = std::pair<Monomial, Rational>;

  Poly() = default;
  explicit Poly(int n) : n_(n) {}
  static Poly constant(int n, const Rational& c);
  static Poly monomial(int n, const Monomial& m, const Rational& c = 1);
  /// The coordinate function with 0-based index in 0..2n-1 (x's first).
  static Poly coordinate(int n, int index);

  int chart_dim() const { return n_; }
  int nvars() const { return 2 * n_; }
  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  /// Maximum total degree; std::nullopt for the zero polynomial.
  std::optional<int> total_degree() const;
  std::optional<Rational> as_constant() const;

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Rational& c);
  Poly operator-() const;

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

  /// Adds c*m in place.
  void add_term(const Monomial& m, const Rational& c);
  /// Builds a polynomial from unsorted terms, merging duplicates.
  static Poly from_terms(int n, std::vector<Term> terms);

private:
  void check_compatible(const Poly& other) const;
  int n_ = 0;
  std::vector<Term> terms_;
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Rational& c, const Poly& a);
/// Formal partial derivative in the coordinate with 0-based index (x's first).
Poly poly_partial(const Poly& a, int coord);
/// Total degree, or std::nullopt (the "minus infinity" marker) for 0.
std::optional<int> poly_total_degree(const Poly& a);

/// Variable name for a 0-based coordinate index: x1..xn, y1..yn.
std::string coordinate_name(int n, int index);
std::string to_string(const Rational& q);
std::string to_string(const Poly& p);

} // namespace symflat
