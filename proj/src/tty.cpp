#include "symflat/tty.hpp"

#include <stdexcept>

#include "symflat/lefschetz.hpp"

namespace symflat {

std::string to_string(Side side) { return side == Side::plus ? "plus" : "minus"; }

int grading_of(int n, Side side, int s) { return side == Side::plus ? s : 2 * n + 1 - s; }

Position position_of_grading(int n, int grading) {
  if (grading <= n) return {Side::plus, grading};
  return {Side::minus, 2 * n + 1 - grading};
}

PrimElement::PrimElement(Side side, int s, ValuedForm payload) : side_(side), s_(s), payload_(std::move(payload)) {
  const int n = payload_.chart_dim();
  if (!payload_.is_zero()) {
    if (payload_.degree() != s) throw std::invalid_argument("prim element: payload degree differs from s");
    if (s < 0 || s > n) throw std::invalid_argument("prim element: nonzero payload outside the complex");
  } else if (payload_.degree() != s) {
    payload_ = ValuedForm(payload_.kind(), payload_.rank(), n, s);
  }
}

PrimElement PrimElement::zero(Side side, int s, FiberKind kind, int rank, int n) {
  return PrimElement(side, s, ValuedForm(kind, rank, n, s));
}

PrimElement PrimElement::zero_at_grading(int grading, FiberKind kind, int rank, int n) {
  auto pos = position_of_grading(n, grading);
  return zero(pos.side, pos.s, kind, rank, n);
}

bool PrimElement::is_valid() const { return is_primitive(payload_); }

PrimElement& PrimElement::operator+=(const PrimElement& other) {
  if (other.is_zero() && other.grading() == grading()) return *this;
  if (other.position() != position()) throw std::invalid_argument("prim element: sum across positions");
  payload_ += other.payload_;
  return *this;
}

PrimElement& PrimElement::operator-=(const PrimElement& other) { return *this += -other; }

PrimElement PrimElement::operator-() const {
  PrimElement out = *this;
  out.payload_ = -payload_;
  return out;
}

PrimElement operator*(const Rational& c, PrimElement a) {
  a.payload_ *= c;
  return a;
}

bool operator==(const PrimElement& a, const PrimElement& b) {
  return a.position() == b.position() && a.payload_ == b.payload_;
}

std::string describe(const PrimElement& e) {
  return "P^" + std::to_string(e.primitive_degree()) + "_" + to_string(e.side()) + " (" + to_string(e.kind()) +
         ", grading " + std::to_string(e.grading()) + ")";
}

namespace {

struct Shape {
  FiberKind kind;
  int rank;
};

Shape composed_shape(const PrimElement& a, const PrimElement& b) {
  if (!composable(a.payload(), b.payload()))
    throw std::invalid_argument("tty: incomposable fiber kinds " + to_string(a.kind()) + " and " + to_string(b.kind()));
  if (a.kind() == FiberKind::scalar) return {b.kind(), b.rank()};
  if (b.kind() == FiberKind::scalar) return {a.kind(), a.rank()};
  return {b.kind(), a.rank()};
}

ValuedForm fwedge(const ValuedForm& a, const ValuedForm& b) { return wedge(a, b); }

ValuedForm dplus(const ValuedForm& b) {
  return b.map([](const Form& f) { return detail::del_plus_unchecked(f); });
}
ValuedForm dminus(const ValuedForm& b) {
  return b.map([](const Form& f) { return detail::del_minus_unchecked(f); });
}

PrimElement at_grading(int grading, ValuedForm payload) {
  const int n = payload.chart_dim();
  auto pos = position_of_grading(n, grading);
  return PrimElement(pos.side, pos.s, std::move(payload));
}

} // namespace

PrimElement m1(const PrimElement& a) {
  const int n = a.chart_dim();
  const int s = a.primitive_degree();
  const int out_grading = a.grading() + 1;
  if (s < 0 || s > n) return PrimElement::zero_at_grading(out_grading, a.kind(), a.rank(), n);
  const ValuedForm& b = a.payload();
  if (a.side() == Side::plus) {
    if (s < n) return at_grading(out_grading, dplus(b));
    return at_grading(out_grading, -dplus(dminus(b)));
  }
  return at_grading(out_grading, -dminus(b));
}

PrimElement m2(const PrimElement& a, const PrimElement& b) {
  const int n = a.chart_dim();
  if (b.chart_dim() != n) throw std::invalid_argument("m2: chart dimension mismatch");
  const Shape shape = composed_shape(a, b);
  const int out_grading = a.grading() + b.grading();
  const int j = a.primitive_degree();
  const int k = b.primitive_degree();
  auto zero = [&] { return PrimElement::zero_at_grading(out_grading, shape.kind, shape.rank, n); };
  if (j < 0 || j > n || k < 0 || k > n) return zero();
  const ValuedForm& beta = a.payload();
  const ValuedForm& gamma = b.payload();

  if (a.side() == Side::plus && b.side() == Side::plus) {
    ValuedForm bg = fwedge(beta, gamma);
    ValuedForm first = pi_p(0, bg);
    ValuedForm inner = -exterior_d(L_power(-1, bg));
    inner += fwedge(dminus(beta), gamma);
    ValuedForm second_piece = fwedge(beta, dminus(gamma));
    inner += (j % 2) ? -second_piece : second_piece;
    ValuedForm second = pi_p(0, star_r(inner));
    // Exactly one of the two terms can be nonzero; the other lands outside P^*.
    if (j + k <= n) {
      if (!second.is_zero()) throw std::logic_error("m2: second term nonzero below the middle degree");
      return at_grading(out_grading, std::move(first));
    }
    if (!first.is_zero()) throw std::logic_error("m2: first term nonzero above the middle degree");
    return at_grading(out_grading, std::move(second));
  }
  if (a.side() == Side::plus && b.side() == Side::minus) {
    ValuedForm v = star_r(fwedge(beta, star_r(gamma)));
    if (j % 2) v = -v;
    return at_grading(out_grading, std::move(v));
  }
  if (a.side() == Side::minus && b.side() == Side::plus)
    return at_grading(out_grading, star_r(fwedge(star_r(beta), gamma)));
  return zero();
}

PrimElement m3(const PrimElement& a, const PrimElement& b, const PrimElement& c) {
  const int n = a.chart_dim();
  if (b.chart_dim() != n || c.chart_dim() != n) throw std::invalid_argument("m3: chart dimension mismatch");
  Shape ab = composed_shape(a, b);
  PrimElement probe = PrimElement::zero(Side::plus, 0, ab.kind, ab.rank, n);
  const Shape shape = composed_shape(probe, c);
  const int out_grading = a.grading() + b.grading() + c.grading() - 1;
  auto zero = [&] { return PrimElement::zero_at_grading(out_grading, shape.kind, shape.rank, n); };
  const int i = a.primitive_degree(), j = b.primitive_degree(), k = c.primitive_degree();
  bool all_plus = a.side() == Side::plus && b.side() == Side::plus && c.side() == Side::plus;
  if (!all_plus || i + j + k < n + 2) return zero();
  if (i < 0 || j < 0 || k < 0 || i > n || j > n || k > n) return zero();
  const ValuedForm& beta = a.payload();
  const ValuedForm& gamma = b.payload();
  const ValuedForm& sigma = c.payload();
  ValuedForm inner = fwedge(beta, L_power(-1, fwedge(gamma, sigma)));
  inner -= fwedge(L_power(-1, fwedge(beta, gamma)), sigma);
  return at_grading(out_grading, pi_p(0, star_r(inner)));
}

PrimElement m_k(std::span<const PrimElement> in) {
  switch (in.size()) {
  case 1: return m1(in[0]);
  case 2: return m2(in[0], in[1]);
  case 3: return m3(in[0], in[1], in[2]);
  default: break;
  }
  if (in.empty()) throw std::invalid_argument("m_k: no inputs");
  // m_k = 0 for k ≥ 4; the zero lives at grading Σ|a_i| + 2 − k.
  const int n = in[0].chart_dim();
  int grading = 2 - static_cast<int>(in.size());
  PrimElement acc = in[0];
  for (const auto& e : in) grading += e.grading();
  FiberKind kind = in[0].kind();
  int rank = in[0].rank();
  for (std::size_t i = 1; i < in.size(); ++i) {
    Shape s = composed_shape(PrimElement::zero(Side::plus, 0, kind, rank, n), in[i]);
    kind = s.kind;
    rank = s.rank;
  }
  return PrimElement::zero_at_grading(grading, kind, rank, n);
}

PrimElement check_stasheff(std::span<const PrimElement> inputs) {
  const int k = static_cast<int>(inputs.size());
  if (k < 1) throw std::invalid_argument("check_stasheff: need at least one input");
  std::vector<PrimElement> outer;
  PrimElement residual;
  bool have = false;
  for (int s = 1; s <= k; ++s) {
    for (int r = 0; r + s <= k; ++r) {
      const int t = k - r - s;
      PrimElement inner = m_k(inputs.subspan(static_cast<std::size_t>(r), static_cast<std::size_t>(s)));
      int prefix_grading = 0;
      for (int i = 0; i < r; ++i) prefix_grading += inputs[static_cast<std::size_t>(i)].grading();
      // Koszul sign of passing m_s (degree 2−s) over the first r inputs.
      int sign_exp = r + s * t + (2 - s) * prefix_grading;
      outer.assign(inputs.begin(), inputs.begin() + r);
      outer.push_back(std::move(inner));
      outer.insert(outer.end(), inputs.begin() + r + s, inputs.end());
      PrimElement term = m_k(outer);
      if (((sign_exp % 2) + 2) % 2) term = -term;
      if (!have) {
        residual = std::move(term);
        have = true;
      } else {
        residual += term;
      }
    }
  }
  return residual;
}

} // namespace symflat
