#pragma once

#include <optional>
#include <vector>

#include "symflat/random.hpp"
#include "symflat/valued_form.hpp"

namespace symflat {

enum class LambdaChoice { standard, symmetric };

/// A 1-form with dλ = ω: Σ x_i dy_i (standard) or ½Σ(x_i dy_i − y_i dx_i).
Form lambda_form(int n, LambdaChoice choice = LambdaChoice::standard);

/// Connection d + A on the trivial rank-r bundle over a Darboux chart.
class Connection {
public:
  explicit Connection(MatrixForm A);
  static Connection trivial(int n, int rank);

  int chart_dim() const { return A_.chart_dim(); }
  int rank() const { return A_.rank(); }
  const MatrixForm& A() const { return A_; }
  /// Curvature dA + A∧A and Φ = L⁻¹F, computed once at construction.
  const MatrixForm& F() const { return F_; }
  const MatrixForm& Phi() const { return Phi_; }

private:
  MatrixForm A_;
  MatrixForm F_;
  MatrixForm Phi_;
};

struct FlatnessReport {
  MatrixForm F;
  MatrixForm F0;
  MatrixForm Phi;
  MatrixForm dAPhi;
  bool is_symplectically_flat = false;
  /// For n ≥ 2 and F0 = 0: whether d_AΦ = 0 came out as the Bianchi identity
  /// predicts. Vacuously true otherwise.
  bool bianchi_consistent = true;
};

MatrixForm curvature(const Connection& c);
FlatnessReport analyze_flatness(const Connection& c);

/// d v + A∧v for a vector-valued form.
VectorForm covariant_d(const Connection& c, const VectorForm& v);
/// d m + [A, m] for an endomorphism-valued form.
MatrixForm covariant_d_end(const Connection& c, const MatrixForm& m);

/// An invertible degree-0 matrix together with its exact inverse.
struct Gauge {
  MatrixForm g;
  MatrixForm g_inv;
};

Gauge identity_gauge(int n, int rank);
/// g = I + N for strictly upper triangular N, inverse Σ (−N)^k.
Gauge unipotent_gauge(const MatrixForm& N);
/// Constant invertible matrix (row-major); throws if singular.
Gauge constant_gauge(int n, int rank, const std::vector<Rational>& entries);
/// a·b, with inverse b⁻¹a⁻¹.
Gauge compose(const Gauge& a, const Gauge& b);
/// Unipotent gauge with random polynomial entries of degree ≤ max_degree above
/// the diagonal.
Gauge random_unipotent_gauge(Rng& rng, int n, int rank, int max_degree);

/// A′ = gAg⁻¹ + g d(g⁻¹). Throws std::invalid_argument unless g·g⁻¹ = I.
Connection gauge_apply(const Connection& c, const Gauge& g);

/// g(Φ0 λ)g⁻¹ + g d(g⁻¹): symplectically flat with Φ = gΦ0g⁻¹.
Connection generate_flat(int n, int rank, const std::vector<Rational>& phi0, const Gauge& g,
                         LambdaChoice lambda = LambdaChoice::standard);

/// Connection with random polynomial entries of degree ≤ max_degree; generically
/// not symplectically flat.
Connection random_connection(Rng& rng, int n, int rank, int max_degree);

/// (d_AΦ) ∧ ω^{n−1}. Throws std::invalid_argument if F has a primitive part.
MatrixForm yang_mills_residual(const Connection& c);

} // namespace symflat
