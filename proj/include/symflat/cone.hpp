#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "symflat/connection.hpp"
#include "symflat/tty.hpp"

namespace symflat {

/// η + θξ in C^j = Ω^j ⊕ θΩ^{j−1}, with vector fiber of rank r. Slots whose
/// degree falls outside 0..2n hold only zero.
class ConeElement {
public:
  ConeElement() = default;
  ConeElement(int grading, ValuedForm eta, ValuedForm xi);
  static ConeElement zero(int n, int rank, int grading);

  int grading() const { return grading_; }
  int chart_dim() const { return eta_.chart_dim(); }
  int rank() const { return eta_.rank(); }
  const ValuedForm& eta() const { return eta_; }
  const ValuedForm& xi() const { return xi_; }
  bool is_zero() const { return eta_.is_zero() && xi_.is_zero(); }

  ConeElement& operator+=(const ConeElement& other);
  ConeElement& operator-=(const ConeElement& other);
  ConeElement operator-() const;
  friend ConeElement operator+(ConeElement a, const ConeElement& b) { return a += b; }
  friend ConeElement operator-(ConeElement a, const ConeElement& b) { return a -= b; }
  friend bool operator==(const ConeElement& a, const ConeElement& b);

private:
  int grading_ = 0;
  ValuedForm eta_;
  ValuedForm xi_;
};

std::string to_string(const ConeElement& a);

/// D_C(η, ξ) = (d_Aη + ω∧ξ, −(Φη + d_Aξ)).
ConeElement cone_d(const Connection& c, const ConeElement& a);
/// (Φη, Φξ) with Φ = L⁻¹F.
ConeElement apply_phi(const Connection& c, const ConeElement& a);

/// Lefschetz components of both slots: eta[r] and xi[r] are the primitive
/// parts multiplying ω^r.
struct ConeSplit {
  int grading = 0;
  std::vector<ValuedForm> eta;
  std::vector<ValuedForm> xi;
  /// Component of the given primitive degree in a slot, or zero of that degree.
  ValuedForm eta_part(int s) const;
  ValuedForm xi_part(int s) const;
};

/// Throws std::logic_error when j > n and the η slot is not divisible by
/// ω^{n−k+1}, k = 2n+1−j.
ConeSplit cone_split(const ConeElement& a);

/// f: β_j for j ≤ n; −(β_k + ∂_{+A}β_{k−1}) on P^k_− for j = 2n+1−k, with β_{−1} = 0.
PrimElement map_f(const Connection& c, const ConeElement& a);
/// g: β ↦ (β, −∂_{−A}β) on P^j_+; β ↦ (0, −ω^{n−k}∧β) on P^k_−.
ConeElement map_g(const Connection& c, const PrimElement& b);
/// G(η, ξ) = (ξ, L⁻¹η), lowering the grading by one.
ConeElement homotopy_G(const ConeElement& a);

/// Random cone element with coefficient degree ≤ max_degree.
ConeElement random_cone_element(Rng& rng, int n, int rank, int grading, int max_degree);

struct IdentityResult {
  std::string name;
  int trials = 0;
  int failures = 0;
  std::optional<std::string> counterexample;
};

struct ChainIdentityReport {
  std::uint64_t seed = 0;
  std::vector<IdentityResult> identities;
  bool all_pass() const;
};

using MapF = std::function<PrimElement(const Connection&, const ConeElement&)>;

/// Checks f∘D_C = m′1∘f, g∘m′1 = D_C∘g, f∘g = id, id − gf − Φ = D_CG + GD_C and
/// D_C(−ξ, 0) = Φα for closed α = (η, ξ), each on `trials` random elements
/// cycling through all gradings. Closed α are drawn from the kernel of D_C on
/// a truncated coefficient space. `f` replaces map_f when given.
ChainIdentityReport check_chain_identities(const Connection& c, int trials, std::uint64_t seed, int max_degree = 2,
                                           const MapF& f = {});

} // namespace symflat
