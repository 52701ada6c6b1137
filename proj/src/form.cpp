#include "symflat/form.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <stdexcept>

namespace symflat {

FormIndex FormIndex::from_indices(const std::vector<int>& indices) {
  std::uint32_t mask = 0;
  int prev = -1;
  for (int i : indices) {
    if (i <= prev) throw std::invalid_argument("form index: indices must be strictly increasing");
    if (i < 0 || i >= kMaxVars) throw std::out_of_range("form index: coordinate out of range");
    mask |= 1U << i;
    prev = i;
  }
  return FormIndex(mask);
}

int FormIndex::size() const { return std::popcount(mask_); }

std::vector<int> FormIndex::indices() const {
  std::vector<int> out;
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

int FormIndex::wedge_sign(FormIndex a, FormIndex b) {
  if (a.mask_ & b.mask_) return 0;
  // Count pairs (i in a, j in b) with i > j: each costs one transposition.
  int inversions = 0;
  for (std::uint32_t m = b.mask_; m != 0; m &= m - 1) {
    int j = std::countr_zero(m);
    inversions += std::popcount(a.mask_ >> (j + 1));
  }
  return (inversions % 2) ? -1 : 1;
}

bool operator<(FormIndex a, FormIndex b) {
  std::uint32_t x = a.mask_, y = b.mask_;
  while (x != 0 && y != 0) {
    int i = std::countr_zero(x), j = std::countr_zero(y);
    if (i != j) return i < j;
    x &= x - 1;
    y &= y - 1;
  }
  return x == 0 && y != 0;
}

const std::vector<FormIndex>& basis_indices(int n, int degree) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<FormIndex>> cache;
  std::lock_guard lock(mu);
  auto [it, inserted] = cache.try_emplace({n, degree});
  if (inserted && degree >= 0 && degree <= 2 * n) {
    for (std::uint32_t m = 0; m < (1U << (2 * n)); ++m)
      if (std::popcount(m) == degree) it->second.emplace_back(m);
    std::sort(it->second.begin(), it->second.end());
  }
  return it->second;
}

Form::Form(int n, int degree) : n_(n), degree_(degree) {
  if (n < 1 || n > kMaxChartDim) throw std::invalid_argument("form: unsupported chart dimension");
}

Form Form::function(const Poly& f) {
  Form out(f.chart_dim(), 0);
  out.add_term(FormIndex(0), f);
  return out;
}

Form Form::constant(int n, const Rational& c) { return function(Poly::constant(n, c)); }

Form Form::basis(int n, FormIndex index, const Poly& coefficient) {
  Form out(n, index.size());
  out.add_term(index, coefficient);
  return out;
}

Form Form::basis(int n, FormIndex index, const Rational& c) { return basis(n, index, Poly::constant(n, c)); }

Form Form::dx(int n, int i) {
  if (i < 1 || i > n) throw std::out_of_range("dx: index out of range");
  return basis(n, FormIndex(1U << (i - 1)));
}

Form Form::dy(int n, int i) {
  if (i < 1 || i > n) throw std::out_of_range("dy: index out of range");
  return basis(n, FormIndex(1U << (n + i - 1)));
}

Form Form::omega(int n) {
  Form w(n, 2);
  for (int i = 0; i < n; ++i) w.add_term(FormIndex((1U << i) | (1U << (n + i))), Poly::constant(n, 1));
  return w;
}

Form Form::omega_power(int n, int p) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, Form> cache;
  if (p < 0) throw std::invalid_argument("omega_power: negative power");
  std::lock_guard lock(mu);
  auto it = cache.find({n, p});
  if (it != cache.end()) return it->second;
  Form w = Form::constant(n, 1);
  Form om = Form::omega(n);
  for (int k = 0; k < p; ++k) w = wedge(w, om);
  cache.emplace(std::make_pair(n, p), w);
  return w;
}

Poly Form::coefficient(FormIndex index) const {
  auto it = terms_.find(index);
  return it == terms_.end() ? Poly(n_) : it->second;
}

int Form::max_coefficient_degree() const {
  int d = -1;
  for (const auto& [idx, c] : terms_) d = std::max(d, c.total_degree().value_or(-1));
  return d;
}

void Form::add_term(FormIndex index, const Poly& coefficient) {
  if (index.size() != degree_) throw std::invalid_argument("form: index length does not match degree");
  if (index.mask() >> (2 * n_)) throw std::out_of_range("form: coordinate index out of range");
  if (coefficient.chart_dim() != n_) throw std::invalid_argument("form: chart dimension mismatch");
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(index, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Form::check_compatible(const Form& other) const {
  if (n_ != other.n_) throw std::invalid_argument("form: chart dimension mismatch");
  if (degree_ != other.degree_ && !is_zero() && !other.is_zero())
    throw std::invalid_argument("form: degree mismatch in sum");
}

Form& Form::operator+=(const Form& other) {
  check_compatible(other);
  if (other.is_zero()) return *this;
  if (is_zero()) degree_ = other.degree_;
  for (const auto& [idx, c] : other.terms_) add_term(idx, c);
  return *this;
}

Form& Form::operator-=(const Form& other) { return *this += -other; }

Form& Form::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [idx, p] : terms_) p *= c;
  return *this;
}

Form Form::operator-() const {
  Form out = *this;
  for (auto& [idx, p] : out.terms_) p = -p;
  return out;
}

Form operator*(const Poly& f, const Form& a) {
  Form out(a.n_, a.degree_);
  for (const auto& [idx, c] : a.terms_) out.add_term(idx, f * c);
  return out;
}

bool operator==(const Form& a, const Form& b) {
  if (a.n_ != b.n_) return false;
  if (a.is_zero() && b.is_zero()) return true;
  return a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

Form Form::map_coefficients(const std::function<Poly(const Poly&)>& fn) const {
  Form out(n_, degree_);
  for (const auto& [idx, c] : terms_) out.add_term(idx, fn(c));
  return out;
}

Form wedge(const Form& a, const Form& b) {
  if (a.chart_dim() != b.chart_dim()) throw std::invalid_argument("wedge: chart dimension mismatch");
  Form out(a.chart_dim(), a.degree() + b.degree());
  if (!out.in_range()) return out;
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      int sign = FormIndex::wedge_sign(ia, ib);
      if (sign == 0) continue;
      Poly prod = ca * cb;
      if (sign < 0) prod = -prod;
      out.add_term(FormIndex(ia.mask() | ib.mask()), prod);
    }
  }
  return out;
}

Form exterior_d(const Form& a) {
  const int n = a.chart_dim();
  Form out(n, a.degree() + 1);
  if (!out.in_range()) return out;
  for (const auto& [idx, c] : a.terms()) {
    for (int k = 0; k < 2 * n; ++k) {
      if (idx.contains(k)) continue;
      Poly dk = poly_partial(c, k);
      if (dk.is_zero()) continue;
      // dz_k ∧ dz_I: sign from moving dz_k past the indices below k.
      int sign = FormIndex::wedge_sign(FormIndex(1U << k), idx);
      out.add_term(FormIndex(idx.mask() | (1U << k)), sign < 0 ? -dk : dk);
    }
  }
  return out;
}

namespace {

// Interior product with ∂/∂z_k on a single basis element; returns the sign
// (0 when k is absent) and writes the remaining index set.
int contract_basis(FormIndex idx, int k, FormIndex& rest) {
  if (!idx.contains(k)) return 0;
  int before = std::popcount(idx.mask() & ((1U << k) - 1U));
  rest = FormIndex(idx.mask() & ~(1U << k));
  return (before % 2) ? -1 : 1;
}

} // namespace

Form contract_lambda(const Form& a) {
  const int n = a.chart_dim();
  Form out(n, a.degree() - 2);
  if (!out.in_range()) return out;
  for (const auto& [idx, c] : a.terms()) {
    for (int i = 0; i < n; ++i) {
      FormIndex after_x, after_y;
      int sx = contract_basis(idx, i, after_x);
      if (sx == 0) continue;
      int sy = contract_basis(after_x, n + i, after_y);
      if (sy == 0) continue;
      out.add_term(after_y, sx * sy < 0 ? -c : c);
    }
  }
  return out;
}

std::string to_string(const Form& f) {
  if (f.is_zero()) return "0";
  const int n = f.chart_dim();
  std::string out;
  for (const auto& [idx, p] : f.terms()) {
    std::string basis;
    for (int i : idx.indices()) {
      if (!basis.empty()) basis += "/\\";
      basis += i < n ? "dx" + std::to_string(i + 1) : "dy" + std::to_string(i - n + 1);
    }
    std::string term;
    if (basis.empty()) {
      term = to_string(p);
    } else if (p.terms().size() > 1) {
      term = "(" + to_string(p) + ")*" + basis;
    } else if (auto c = p.as_constant(); c && *c == 1) {
      term = basis;
    } else if (c && *c == -1) {
      term = "-" + basis;
    } else {
      term = to_string(p) + "*" + basis;
    }
    if (out.empty()) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

} // namespace symflat
