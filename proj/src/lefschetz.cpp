#include "symflat/lefschetz.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "symflat/linalg.hpp"

namespace symflat {

namespace {

using ConstForm = std::vector<std::pair<FormIndex, Rational>>;

ConstForm to_const(const Form& f) {
  ConstForm out;
  for (const auto& [idx, c] : f.terms()) {
    auto v = c.as_constant();
    if (!v) throw std::logic_error("lefschetz: expected constant coefficients");
    out.emplace_back(idx, *v);
  }
  return out;
}

Form from_const(int n, int degree, const ConstForm& cf) {
  Form f(n, degree);
  for (const auto& [idx, c] : cf) f.add_term(idx, Poly::constant(n, c));
  return f;
}

// Decomposition of each constant basis k-form: table[I][r] is the primitive
// component β_{k−2r} of e_I.
struct DecompositionTable {
  std::map<FormIndex, std::vector<ConstForm>> entries;
};

std::shared_ptr<const DecompositionTable> solve_table(int n, int k) {
  auto table = std::make_shared<DecompositionTable>();
  const auto& targets = basis_indices(n, k);
  if (targets.empty()) return table;

  // Unknowns: coefficients of β_{k−2r} for every r with ω^r ∧ P^{k−2r} ≠ 0,
  // i.e. k−2r ≥ 0 and r ≤ n−(k−2r).
  struct Unknown {
    int r;
    FormIndex index;
  };
  std::vector<Unknown> unknowns;
  for (int r = 0; 2 * r <= k; ++r) {
    int s = k - 2 * r;
    if (r < k - n) continue;
    for (FormIndex I : basis_indices(n, s)) unknowns.push_back({r, I});
  }

  // Equation rows: reassembly at each target index, then Λβ = 0 per block.
  std::map<FormIndex, int> target_row;
  for (std::size_t i = 0; i < targets.size(); ++i) target_row[targets[i]] = static_cast<int>(i);
  std::map<std::pair<int, FormIndex>, int> prim_row;
  int rows = static_cast<int>(targets.size());
  for (int r = 0; 2 * r <= k; ++r) {
    int s = k - 2 * r;
    if (r < k - n) continue;
    for (FormIndex J : basis_indices(n, s - 2)) prim_row[{r, J}] = rows++;
  }

  linalg::Echelon echelon(true);
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    const auto& [r, I] = unknowns[u];
    Form e = Form::basis(n, I);
    std::map<int, Rational> col;
    const Form lifted = wedge(Form::omega_power(n, r), e);
    const Form lowered = contract_lambda(e);
    for (const auto& [idx, c] : lifted.terms()) col[target_row.at(idx)] += *c.as_constant();
    for (const auto& [idx, c] : lowered.terms()) col[prim_row.at({r, idx})] += *c.as_constant();
    linalg::SparseVector v;
    for (auto& [row, c] : col)
      if (c != 0) v.emplace_back(row, c);
    echelon.insert(std::move(v), static_cast<int>(u));
  }
  if (echelon.rank() != static_cast<int>(unknowns.size()))
    throw std::logic_error("lefschetz: decomposition system is singular");

  for (FormIndex J : targets) {
    linalg::SparseVector combo;
    auto rem = echelon.reduce({{target_row.at(J), Rational(1)}}, &combo);
    if (!rem.empty()) throw std::logic_error("lefschetz: decomposition system has no solution");
    std::vector<ConstForm> parts(static_cast<std::size_t>(k / 2 + 1));
    for (const auto& [u, c] : combo) {
      const auto& unk = unknowns[static_cast<std::size_t>(u)];
      parts[static_cast<std::size_t>(unk.r)].emplace_back(unk.index, c);
    }
    table->entries.emplace(J, std::move(parts));
  }
  return table;
}

std::shared_ptr<const DecompositionTable> decomposition_table(int n, int k) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const DecompositionTable>> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find({n, k});
    if (it != cache.end()) return it->second;
  }
  auto table = solve_table(n, k);
  std::lock_guard lock(mu);
  auto [it, inserted] = cache.try_emplace({n, k}, table);
  return it->second;
}

// A linear operator on constant k-forms, extended over polynomial
// coefficients: images[I] is the image of e_I.
struct ConstOperator {
  int out_degree = 0;
  std::map<FormIndex, ConstForm> images;
};

enum class OpKind { lower, truncate };

std::shared_ptr<const ConstOperator> build_operator(OpKind kind, int n, int k, int p) {
  auto op = std::make_shared<ConstOperator>();
  op->out_degree = kind == OpKind::lower ? k + 2 * p : k;
  auto table = decomposition_table(n, k);
  for (const auto& [I, parts] : table->entries) {
    Form image(n, op->out_degree);
    for (std::size_t r = 0; r < parts.size(); ++r) {
      if (parts[r].empty()) continue;
      int ri = static_cast<int>(r);
      int power = kind == OpKind::lower ? ri + p : ri;
      if (kind == OpKind::lower && power < 0) continue;
      if (kind == OpKind::truncate && ri > p) continue;
      image += wedge(Form::omega_power(n, power), from_const(n, k - 2 * ri, parts[r]));
    }
    op->images.emplace(I, to_const(image));
  }
  return op;
}

std::shared_ptr<const ConstOperator> cached_operator(OpKind kind, int n, int k, int p) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int, int>, std::shared_ptr<const ConstOperator>> cache;
  auto key = std::make_tuple(static_cast<int>(kind), n, k, p);
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto op = build_operator(kind, n, k, p);
  std::lock_guard lock(mu);
  auto [it, inserted] = cache.try_emplace(key, op);
  return it->second;
}

Form apply(const ConstOperator& op, const Form& a) {
  const int n = a.chart_dim();
  Form out(n, op.out_degree);
  if (!out.in_range()) return out;
  for (const auto& [I, coeff] : a.terms()) {
    const auto& image = op.images.at(I);
    for (const auto& [J, c] : image) out.add_term(J, c * coeff);
  }
  return out;
}

} // namespace

bool is_primitive(const Form& a) { return contract_lambda(a).is_zero(); }

bool is_primitive(const ValuedForm& a) {
  for (const auto& e : a.entries())
    if (!is_primitive(e)) return false;
  return true;
}

bool is_primitive_by_omega_power(const Form& a) {
  const int n = a.chart_dim();
  const int s = a.degree();
  if (s > n) return a.is_zero();
  return wedge(Form::omega_power(n, n - s + 1), a).is_zero();
}

LefschetzComponents decompose(const Form& a) {
  const int n = a.chart_dim();
  const int k = a.degree();
  LefschetzComponents out{n, k, {}};
  if (k < 0 || k > 2 * n) return out;
  out.parts.reserve(static_cast<std::size_t>(k / 2 + 1));
  for (int r = 0; 2 * r <= k; ++r) out.parts.emplace_back(n, k - 2 * r);
  if (a.is_zero()) return out;
  auto table = decomposition_table(n, k);
  for (const auto& [I, coeff] : a.terms()) {
    const auto& parts = table->entries.at(I);
    for (std::size_t r = 0; r < parts.size(); ++r)
      for (const auto& [J, c] : parts[r]) out.parts[r].add_term(J, c * coeff);
  }
  return out;
}

ValuedLefschetzComponents decompose(const ValuedForm& a) {
  ValuedLefschetzComponents out{a.chart_dim(), a.degree(), {}};
  std::vector<LefschetzComponents> per_entry;
  for (const auto& e : a.entries()) {
    Form f = e;
    if (f.is_zero()) f = Form(a.chart_dim(), a.degree());
    per_entry.push_back(decompose(f));
  }
  std::size_t nparts = per_entry.empty() ? 0 : per_entry.front().parts.size();
  for (std::size_t r = 0; r < nparts; ++r) {
    ValuedForm part(a.kind(), a.rank(), a.chart_dim(), a.degree() - 2 * static_cast<int>(r));
    for (std::size_t i = 0; i < per_entry.size(); ++i) part.entry(static_cast<int>(i)) = per_entry[i].parts[r];
    out.parts.push_back(std::move(part));
  }
  return out;
}

Form reassemble(const LefschetzComponents& c) {
  Form out(c.chart_dim, c.degree);
  for (std::size_t r = 0; r < c.parts.size(); ++r) {
    if (c.parts[r].is_zero()) continue;
    out += wedge(Form::omega_power(c.chart_dim, static_cast<int>(r)), c.parts[r]);
  }
  return out;
}

ValuedForm reassemble(const ValuedLefschetzComponents& c) {
  if (c.parts.empty()) throw std::invalid_argument("reassemble: no components");
  ValuedForm out(c.parts.front().kind(), c.parts.front().rank(), c.chart_dim, c.degree);
  for (std::size_t r = 0; r < c.parts.size(); ++r) {
    ValuedForm w = wedge(ValuedForm::scalar(Form::omega_power(c.chart_dim, static_cast<int>(r))), c.parts[r]);
    out += w;
  }
  return out;
}

Form L_power(int p, const Form& a) {
  const int n = a.chart_dim();
  if (p >= 0) return wedge(Form::omega_power(n, p), a);
  if (a.is_zero() || !a.in_range()) return Form(n, a.degree() + 2 * p);
  return apply(*cached_operator(OpKind::lower, n, a.degree(), p), a);
}

ValuedForm L_power(int p, const ValuedForm& a) {
  return a.map([p](const Form& f) { return L_power(p, f); });
}

Form pi_p(int p, const Form& a) {
  if (p < 0) throw std::invalid_argument("pi_p: negative filtration index");
  if (a.is_zero() || !a.in_range() || 2 * p >= a.degree()) return a;
  return apply(*cached_operator(OpKind::truncate, a.chart_dim(), a.degree(), p), a);
}

ValuedForm pi_p(int p, const ValuedForm& a) {
  return a.map([p](const Form& f) { return pi_p(p, f); });
}

Form star_r(const Form& a) { return L_power(a.chart_dim() - a.degree(), a); }

ValuedForm star_r(const ValuedForm& a) {
  return a.map([](const Form& f) { return star_r(f); });
}

Form del_plus(const Form& beta) {
  if (!is_primitive(beta)) throw std::invalid_argument("del_plus: input is not primitive");
  return detail::del_plus_unchecked(beta);
}

Form del_minus(const Form& beta) {
  if (!is_primitive(beta)) throw std::invalid_argument("del_minus: input is not primitive");
  return detail::del_minus_unchecked(beta);
}

ValuedForm del_plus(const ValuedForm& beta) {
  if (!is_primitive(beta)) throw std::invalid_argument("del_plus: input is not primitive");
  return beta.map([](const Form& f) { return detail::del_plus_unchecked(f); });
}

ValuedForm del_minus(const ValuedForm& beta) {
  if (!is_primitive(beta)) throw std::invalid_argument("del_minus: input is not primitive");
  return beta.map([](const Form& f) { return detail::del_minus_unchecked(f); });
}

} // namespace symflat
