#include "symflat/cone.hpp"

#include <stdexcept>

#include "symflat/cohomology.hpp"
#include "symflat/lefschetz.hpp"
#include "symflat/twist.hpp"

namespace symflat {

namespace {

ValuedForm zero_vector(int n, int rank, int degree) { return ValuedForm(FiberKind::vector, rank, n, degree); }

ValuedForm omega_power_times(int p, const ValuedForm& v) { return L_power(p, v); }

} // namespace

ConeElement::ConeElement(int grading, ValuedForm eta, ValuedForm xi)
    : grading_(grading), eta_(std::move(eta)), xi_(std::move(xi)) {
  if (eta_.kind() != FiberKind::vector || xi_.kind() != FiberKind::vector)
    throw std::invalid_argument("cone element: slots must be vector valued");
  if (eta_.rank() != xi_.rank() || eta_.chart_dim() != xi_.chart_dim())
    throw std::invalid_argument("cone element: slot shapes differ");
  const int n = eta_.chart_dim();
  auto fix = [&](ValuedForm& slot, int degree, const char* name) {
    if (slot.degree() == degree) return;
    if (!slot.is_zero()) throw std::invalid_argument(std::string("cone element: wrong degree in ") + name + " slot");
    slot = zero_vector(n, slot.rank(), degree);
  };
  fix(eta_, grading, "eta");
  fix(xi_, grading - 1, "xi");
}

ConeElement ConeElement::zero(int n, int rank, int grading) {
  return ConeElement(grading, zero_vector(n, rank, grading), zero_vector(n, rank, grading - 1));
}

ConeElement& ConeElement::operator+=(const ConeElement& other) {
  if (other.grading_ != grading_) throw std::invalid_argument("cone element: sum across gradings");
  eta_ += other.eta_;
  xi_ += other.xi_;
  return *this;
}

ConeElement& ConeElement::operator-=(const ConeElement& other) { return *this += -other; }

ConeElement ConeElement::operator-() const { return ConeElement(grading_, -eta_, -xi_); }

bool operator==(const ConeElement& a, const ConeElement& b) {
  return a.grading_ == b.grading_ && a.eta_ == b.eta_ && a.xi_ == b.xi_;
}

std::string to_string(const ConeElement& a) {
  return "C^" + std::to_string(a.grading()) + " (" + to_string(a.eta()) + ", theta " + to_string(a.xi()) + ")";
}

ConeElement cone_d(const Connection& c, const ConeElement& a) {
  const ValuedForm& eta = a.eta();
  const ValuedForm& xi = a.xi();
  ValuedForm top = covariant_d(c, eta) + omega_power_times(1, xi);
  ValuedForm bottom = -(wedge(c.Phi(), eta) + covariant_d(c, xi));
  return ConeElement(a.grading() + 1, std::move(top), std::move(bottom));
}

ConeElement apply_phi(const Connection& c, const ConeElement& a) {
  return ConeElement(a.grading(), wedge(c.Phi(), a.eta()), wedge(c.Phi(), a.xi()));
}

namespace {

ValuedForm part_or_zero(const std::vector<ValuedForm>& parts, int slot_degree, int s, const ValuedForm& like) {
  if (s < 0 || (slot_degree - s) % 2 != 0) return ValuedForm(like.kind(), like.rank(), like.chart_dim(), s);
  auto r = static_cast<std::size_t>((slot_degree - s) / 2);
  if (r < parts.size()) return parts[r];
  return ValuedForm(like.kind(), like.rank(), like.chart_dim(), s);
}

} // namespace

ValuedForm ConeSplit::eta_part(int s) const {
  if (eta.empty()) return ValuedForm();
  return part_or_zero(eta, grading, s, eta.front());
}

ValuedForm ConeSplit::xi_part(int s) const {
  if (xi.empty()) return ValuedForm();
  return part_or_zero(xi, grading - 1, s, xi.front());
}

ConeSplit cone_split(const ConeElement& a) {
  const int n = a.chart_dim();
  const int j = a.grading();
  ConeSplit out;
  out.grading = j;
  auto parts = [&](const ValuedForm& v, int degree) {
    std::vector<ValuedForm> p;
    if (degree < 0 || degree > 2 * n) {
      p.push_back(v);
      return p;
    }
    return decompose(v).parts;
  };
  out.eta = parts(a.eta(), j);
  out.xi = parts(a.xi(), j - 1);
  if (j > n && j <= 2 * n) {
    const int k = 2 * n + 1 - j;
    for (int r = 0; r < n - k + 1 && r < static_cast<int>(out.eta.size()); ++r)
      if (!out.eta[static_cast<std::size_t>(r)].is_zero())
        throw std::logic_error("cone_split: eta slot is not divisible by omega^" + std::to_string(n - k + 1));
  }
  return out;
}

PrimElement map_f(const Connection& c, const ConeElement& a) {
  const int n = a.chart_dim();
  const int j = a.grading();
  const int rank = a.rank();
  if (j < 0 || j > 2 * n + 1) return PrimElement::zero_at_grading(j, FiberKind::vector, rank, n);
  ConeSplit split = cone_split(a);
  if (j <= n) return PrimElement(Side::plus, j, split.eta_part(j));
  const int k = 2 * n + 1 - j;
  ValuedForm beta_k = split.xi_part(k);
  ValuedForm value = beta_k;
  if (k >= 1) value += del_plus_A(c, split.eta_part(k - 1));
  return PrimElement(Side::minus, k, -value);
}

ConeElement map_g(const Connection& c, const PrimElement& b) {
  const int n = b.chart_dim();
  const int rank = b.rank();
  const int s = b.primitive_degree();
  const int j = b.grading();
  if (b.kind() != FiberKind::vector) throw std::invalid_argument("map_g: expected a vector-valued element");
  if (s < 0 || s > n) return ConeElement::zero(n, rank, j);
  if (b.side() == Side::plus) return ConeElement(j, b.payload(), -del_minus_A(c, b.payload()));
  return ConeElement(j, zero_vector(n, rank, j), -omega_power_times(n - s, b.payload()));
}

ConeElement homotopy_G(const ConeElement& a) {
  const ValuedForm& eta = a.eta();
  ValuedForm lowered = (a.grading() >= 0 && a.grading() <= 2 * a.chart_dim())
                           ? L_power(-1, eta)
                           : zero_vector(a.chart_dim(), a.rank(), a.grading() - 2);
  return ConeElement(a.grading() - 1, a.xi(), std::move(lowered));
}

ConeElement random_cone_element(Rng& rng, int n, int rank, int grading, int max_degree) {
  RandomShape shape{max_degree, 2, 50};
  auto slot = [&](int degree) {
    if (degree < 0 || degree > 2 * n) return zero_vector(n, rank, degree);
    return random_valued_form(rng, FiberKind::vector, rank, n, degree, false, shape);
  };
  ValuedForm eta = slot(grading);
  ValuedForm xi = slot(grading - 1);
  return ConeElement(grading, std::move(eta), std::move(xi));
}

bool ChainIdentityReport::all_pass() const {
  for (const auto& id : identities)
    if (id.failures != 0) return false;
  return true;
}

ChainIdentityReport check_chain_identities(const Connection& c, int trials, std::uint64_t seed, int max_degree,
                                           const MapF& f_override) {
  const MapF f = f_override ? f_override : MapF(map_f);
  const int n = c.chart_dim();
  const int r = c.rank();
  const int top = 2 * n + 1;
  Rng rng(seed);
  ChainIdentityReport rep;
  rep.seed = seed;
  IdentityResult f_chain{"f_chain_map", 0, 0, {}}, g_chain{"g_chain_map", 0, 0, {}};
  IdentityResult fg_id{"fg_identity", 0, 0, {}}, homotopy{"homotopy", 0, 0, {}}, phi_exact{"phi_exact", 0, 0, {}};
  auto record = [](IdentityResult& id, bool ok, const std::string& input) {
    ++id.trials;
    if (!ok) {
      ++id.failures;
      if (!id.counterexample) id.counterexample = input;
    }
  };
  for (int t = 0; t < trials; ++t) {
    const int j = t % (top + 1);
    ConeElement a = random_cone_element(rng, n, r, j, max_degree);
    record(f_chain, f(c, cone_d(c, a)) == twisted_m1(c, f(c, a), TwistMode::fast), to_string(a));
    ConeElement lhs = a - map_g(c, f(c, a)) - apply_phi(c, a);
    ConeElement rhs = cone_d(c, homotopy_G(a)) + homotopy_G(cone_d(c, a));
    record(homotopy, lhs == rhs, to_string(a));

    PrimElement b = random_prim_element(rng, n, r, j, max_degree);
    record(g_chain, map_g(c, twisted_m1(c, b, TwistMode::fast)) == cone_d(c, map_g(c, b)), describe(b) + " " +
                                                                                              to_string(b.payload()));
    record(fg_id, f(c, map_g(c, b)) == b, describe(b) + " " + to_string(b.payload()));
  }
  // Closed elements come in batches per grading from one kernel computation;
  // gradings with only the zero cocycle are skipped and the rest round-robin.
  std::vector<std::vector<ConeElement>> batches;
  for (int j = 0; j <= top; ++j) {
    auto batch = sample_closed_cone(c, j, max_degree, trials, rng);
    std::erase_if(batch, [](const ConeElement& e) { return e.is_zero(); });
    if (!batch.empty()) batches.push_back(std::move(batch));
  }
  for (int t = 0; t < trials && !batches.empty(); ++t) {
    const auto& batch = batches[static_cast<std::size_t>(t) % batches.size()];
    const ConeElement& alpha = batch[(static_cast<std::size_t>(t) / batches.size()) % batch.size()];
    const int j = alpha.grading();
    ConeElement pre(j - 1, -alpha.xi(), ValuedForm(FiberKind::vector, r, n, j - 2));
    record(phi_exact, cone_d(c, pre) == apply_phi(c, alpha), to_string(alpha));
  }
  rep.identities = {f_chain, g_chain, fg_id, homotopy, phi_exact};
  return rep;
}

} // namespace symflat
