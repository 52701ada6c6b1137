#include "symflat/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace symflat {

Monomial::Monomial(int nvars) : nvars_(static_cast<std::uint8_t>(nvars)) {
  if (nvars < 0 || nvars > kMaxVars)
    throw std::invalid_argument("monomial: unsupported number of variables");
}

Monomial Monomial::variable(int nvars, int index, int power) {
  Monomial m(nvars);
  m.set_exponent(index, power);
  return m;
}

void Monomial::set_exponent(int i, int e) {
  if (i < 0 || i >= nvars_) throw std::out_of_range("monomial: coordinate index out of range");
  if (e < 0 || e > 255) throw std::out_of_range("monomial: exponent out of range");
  exps_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(e);
}

int Monomial::total_degree() const {
  int d = 0;
  for (int i = 0; i < nvars_; ++i) d += exps_[static_cast<std::size_t>(i)];
  return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (nvars_ != other.nvars_) throw std::invalid_argument("monomial: dimension mismatch");
  Monomial r(nvars_);
  for (int i = 0; i < nvars_; ++i) {
    int e = exps_[static_cast<std::size_t>(i)] + other.exps_[static_cast<std::size_t>(i)];
    if (e > 255) throw std::overflow_error("monomial: exponent overflow");
    r.exps_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(e);
  }
  return r;
}

Poly Poly::constant(int n, const Rational& c) {
  Poly p(n);
  if (c != 0) p.terms_.emplace_back(Monomial(2 * n), c);
  return p;
}

Poly Poly::monomial(int n, const Monomial& m, const Rational& c) {
  if (m.nvars() != 2 * n) throw std::invalid_argument("poly: monomial dimension mismatch");
  Poly p(n);
  if (c != 0) p.terms_.emplace_back(m, c);
  return p;
}

Poly Poly::coordinate(int n, int index) {
  if (index < 0 || index >= 2 * n) throw std::out_of_range("poly: coordinate index out of range");
  return monomial(n, Monomial::variable(2 * n, index));
}

std::optional<int> Poly::total_degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
  return d;
}

std::optional<Rational> Poly::as_constant() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_.front().first.total_degree() == 0) return terms_.front().second;
  return std::nullopt;
}

void Poly::check_compatible(const Poly& other) const {
  if (n_ != other.n_) throw std::invalid_argument("poly: chart dimension mismatch");
}

Poly& Poly::operator+=(const Poly& other) {
  check_compatible(other);
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = other.terms_;
    return *this;
  }
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() && b != other.terms_.end()) {
    if (a->first < b->first) {
      out.push_back(std::move(*a++));
    } else if (b->first < a->first) {
      out.push_back(*b++);
    } else {
      Rational s = a->second + b->second;
      if (s != 0) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  for (; a != terms_.end(); ++a) out.push_back(std::move(*a));
  for (; b != other.terms_.end(); ++b) out.push_back(*b);
  terms_ = std::move(out);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) { return *this += -other; }

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (m.nvars() != 2 * n_) throw std::invalid_argument("poly: monomial dimension mismatch");
  if (c == 0) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.first < key; });
  if (it != terms_.end() && it->first == m) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.emplace(it, m, c);
  }
}

Poly Poly::from_terms(int n, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  Poly p(n);
  for (auto& t : terms) {
    if (t.first.nvars() != 2 * n) throw std::invalid_argument("poly: monomial dimension mismatch");
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
    } else {
      if (!p.terms_.empty() && p.terms_.back().second == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().second == 0) p.terms_.pop_back();
  return p;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_compatible(b);
  if (a.is_zero() || b.is_zero()) return Poly(a.n_);
  if (b.terms_.size() == 1 && b.terms_.front().first.total_degree() == 0)
    return a * b.terms_.front().second;
  if (a.terms_.size() == 1 && a.terms_.front().first.total_degree() == 0)
    return b * a.terms_.front().second;
  std::vector<Poly::Term> prods;
  prods.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) prods.emplace_back(ma * mb, ca * cb);
  return Poly::from_terms(a.n_, std::move(prods));
}

Poly poly_add(const Poly& a, const Poly& b) { return a + b; }
Poly poly_mul(const Poly& a, const Poly& b) { return a * b; }
Poly poly_scale(const Rational& c, const Poly& a) { return c * a; }

Poly poly_partial(const Poly& a, int coord) {
  if (coord < 0 || coord >= a.nvars()) throw std::out_of_range("poly_partial: coordinate index out of range");
  std::vector<Poly::Term> out;
  for (const auto& [m, c] : a.terms()) {
    int e = m.exponent(coord);
    if (e == 0) continue;
    Monomial dm = m;
    dm.set_exponent(coord, e - 1);
    out.emplace_back(dm, c * e);
  }
  // Lowering one exponent keeps distinct monomials distinct, but the order
  // can change, so re-sort.
  return Poly::from_terms(a.chart_dim(), std::move(out));
}

std::optional<int> poly_total_degree(const Poly& a) { return a.total_degree(); }

std::string coordinate_name(int n, int index) {
  if (index < n) return "x" + std::to_string(index + 1);
  return "y" + std::to_string(index - n + 1);
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string factors;
    for (int i = 0; i < m.nvars(); ++i) {
      int e = m.exponent(i);
      if (e == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += coordinate_name(p.chart_dim(), i);
      if (e > 1) factors += "^" + std::to_string(e);
    }
    if (factors.empty()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += factors;
    } else {
      out += to_string(mag) + "*" + factors;
    }
  }
  return out;
}

} // namespace symflat
