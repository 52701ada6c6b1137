#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symflat/cone.hpp"
#include "symflat/connection.hpp"
#include "symflat/linalg.hpp"
#include "symflat/tty.hpp"

namespace symflat {

enum class ComplexKind { primitive, cone };

std::string to_string(ComplexKind kind);

/// Finite model of P^s(U,E) or C^j(U,E): polynomial coefficients of total
/// degree ≤ max_degree. Basis vectors are ordered by monomial (graded
/// lexicographic, so a lower truncation is a prefix of a higher one), then
/// fiber form, then fiber unit. The primitive fiber forms are a reduced
/// echelon basis of the constant primitive s-forms; the cone fiber forms are
/// the η-slot basis e_I followed by the ξ-slot basis.
class TruncatedSpace {
public:
  TruncatedSpace(ComplexKind kind, int n, int rank, int grading, int max_degree);

  ComplexKind kind() const { return kind_; }
  int chart_dim() const { return n_; }
  int rank() const { return rank_; }
  int grading() const { return grading_; }
  int max_degree() const { return max_degree_; }
  /// Number of constant fiber forms (before tensoring with R^r).
  int fiber_dimension() const { return static_cast<int>(fiber_forms_.size()); }
  int dimension() const;

  /// Coordinates of an element; throws std::out_of_range if a coefficient
  /// exceeds the truncation.
  linalg::SparseVector coordinates(const PrimElement& e) const;
  linalg::SparseVector coordinates(const ConeElement& e) const;
  PrimElement to_prim(const linalg::SparseVector& v) const;
  ConeElement to_cone(const linalg::SparseVector& v) const;
  PrimElement prim_basis(int i) const;
  ConeElement cone_basis(int i) const;

private:
  struct Fiber {
    Form form;
    FormIndex pivot;
    bool xi_slot = false;
  };
  int index_of(const Monomial& m, int fiber, int unit) const;
  void add_form_coordinates(const Form& f, int fiber_begin, int fiber_end, int unit, linalg::SparseVector& out) const;
  ValuedForm slot_payload(const linalg::SparseVector& v, bool xi_slot, int degree) const;

  ComplexKind kind_;
  int n_;
  int rank_;
  int grading_;
  int max_degree_;
  Position position_{};
  int eta_fibers_ = 0;
  std::vector<Monomial> monomials_;
  std::map<Monomial, int> monomial_index_;
  std::vector<Fiber> fiber_forms_;
};

/// Coefficient-degree growth of the differential at a grading: the maximal
/// coefficient degree of A per application, two applications for the middle
/// map of the primitive complex and for the cone differential.
int growth_bound(const Connection& c, ComplexKind kind, int grading);

struct LinOpMatrix {
  TruncatedSpace source;
  TruncatedSpace target;
  linalg::SparseMatrix matrix;
};

/// Matrix of m′1 (primitive) or D_C (cone) from grading `grading` at
/// truncation d_source into grading+1 at truncation d_target. Throws
/// std::invalid_argument when d_target < d_source + growth_bound.
LinOpMatrix assemble_operator(const Connection& c, ComplexKind kind, int grading, int d_source, int d_target);

struct PositionCohomology {
  int grading = 0;
  std::string label;
  int dim = 0;
  /// Dimension computed at each stabilization margin, in order.
  std::vector<int> dims_by_margin;
  bool stabilized = false;
  /// Closed representatives spanning the classes, rendered in the form DSL.
  std::vector<std::string> witnesses;
  std::vector<linalg::SparseVector> witness_coordinates;
};

struct CohomologyReport {
  ComplexKind kind = ComplexKind::primitive;
  int truncation = 0;
  std::vector<int> margins;
  std::vector<PositionCohomology> positions;
  bool all_stabilized() const;
  std::vector<int> dims() const;
};

/// dim ker(differential on degree ≤ D) minus the part of it hit from degree
/// ≤ D+s, for every grading 0..2n+1 and every margin s. A position is
/// stabilized when two consecutive margins agree; its dim is the first such
/// agreeing value, otherwise the value at the last margin.
CohomologyReport cohomology_dims(const Connection& c, ComplexKind kind, int truncation,
                                 const std::vector<int>& margins = {2, 3});
CohomologyReport cone_cohomology_dims(const Connection& c, int truncation, const std::vector<int>& margins = {2, 3});

/// A preimage under m′1 (resp. D_C) with coefficients of degree ≤ d_search,
/// or nullopt. d_search < 0 selects the input's coefficient degree + 2.
std::optional<PrimElement> exactness_witness(const Connection& c, const PrimElement& e, int d_search = -1);
std::optional<ConeElement> exactness_witness(const Connection& c, const ConeElement& e, int d_search = -1);

/// Random closed elements: random rational combinations of a kernel basis
/// of the differential on degree ≤ max_degree.
std::vector<PrimElement> sample_closed_prim(const Connection& c, int grading, int max_degree, int count, Rng& rng);
std::vector<ConeElement> sample_closed_cone(const Connection& c, int grading, int max_degree, int count, Rng& rng);

struct ClosedLemReport {
  std::uint64_t seed = 0;
  int samples = 0;
  /// Closedness identities of the canonical frame: β − λ×∂_{−A}β on the plus
  /// side and β̄ + λ×∂_{+A}β̄ on the minus side (k < n) are m1-closed.
  int closedness_failures = 0;
  /// Φβ = m′1(w) for the explicit w: ∂_{−A}β (plus), −∂_{+A}β̄ (minus, k < n),
  /// β̄ read in P^n_+ (minus, k = n).
  int explicit_witness_failures = 0;
  /// Φβ has a preimage found by exactness_witness.
  int solver_witness_failures = 0;
  std::optional<std::string> counterexample;
  bool ok() const { return closedness_failures == 0 && explicit_witness_failures == 0 && solver_witness_failures == 0; }
};

/// Requires A = Φ0 λ with constant Φ0 (standard λ); throws std::invalid_argument otherwise.
ClosedLemReport closedlem_check(const Connection& c, int samples_per_position, std::uint64_t seed, int max_degree = 2);

} // namespace symflat
