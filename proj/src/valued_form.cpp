#include "symflat/valued_form.hpp"

#include <stdexcept>

namespace symflat {

std::string to_string(FiberKind kind) {
  switch (kind) {
  case FiberKind::scalar: return "scalar";
  case FiberKind::vector: return "vector";
  case FiberKind::matrix: return "matrix";
  }
  return "?";
}

ValuedForm::ValuedForm(FiberKind kind, int rank, int n, int degree)
    : kind_(kind), rank_(kind == FiberKind::scalar ? 1 : rank), n_(n), degree_(degree) {
  if (rank < 1) throw std::invalid_argument("valued form: rank must be positive");
  entries_.assign(static_cast<std::size_t>(rows() * cols()), Form(n, degree));
}

ValuedForm ValuedForm::scalar(const Form& f) {
  ValuedForm out(FiberKind::scalar, 1, f.chart_dim(), f.degree());
  out.entries_[0] = f;
  return out;
}

namespace {

int common_degree(const std::vector<Form>& entries) {
  int degree = entries.front().degree();
  bool have = false;
  for (const auto& e : entries) {
    if (e.chart_dim() != entries.front().chart_dim())
      throw std::invalid_argument("valued form: chart dimension mismatch");
    if (e.is_zero()) continue;
    if (have && e.degree() != degree) throw std::invalid_argument("valued form: entries of mixed degree");
    degree = e.degree();
    have = true;
  }
  return degree;
}

} // namespace

ValuedForm ValuedForm::vector(std::vector<Form> entries) {
  if (entries.empty()) throw std::invalid_argument("valued form: empty vector");
  int degree = common_degree(entries);
  ValuedForm out(FiberKind::vector, static_cast<int>(entries.size()), entries.front().chart_dim(), degree);
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (!entries[i].is_zero()) out.entries_[i] = std::move(entries[i]);
  return out;
}

ValuedForm ValuedForm::matrix(int rank, std::vector<Form> entries) {
  if (entries.size() != static_cast<std::size_t>(rank * rank))
    throw std::invalid_argument("valued form: matrix needs rank*rank entries");
  int degree = common_degree(entries);
  ValuedForm out(FiberKind::matrix, rank, entries.front().chart_dim(), degree);
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (!entries[i].is_zero()) out.entries_[i] = std::move(entries[i]);
  return out;
}

ValuedForm ValuedForm::identity(int n, int rank) {
  ValuedForm out(FiberKind::matrix, rank, n, 0);
  for (int i = 0; i < rank; ++i) out.entry(i, i) = Form::constant(n, 1);
  return out;
}

ValuedForm ValuedForm::constant_matrix(int n, int rank, const std::vector<Rational>& entries) {
  return form_times_matrix(Form::constant(n, 1), rank, entries);
}

ValuedForm ValuedForm::constant_vector(int n, const std::vector<Rational>& entries) {
  std::vector<Form> forms;
  for (const auto& c : entries) forms.push_back(Form::constant(n, c));
  return vector(std::move(forms));
}

ValuedForm ValuedForm::form_times_matrix(const Form& f, int rank, const std::vector<Rational>& entries) {
  if (entries.size() != static_cast<std::size_t>(rank * rank))
    throw std::invalid_argument("valued form: matrix needs rank*rank entries");
  ValuedForm out(FiberKind::matrix, rank, f.chart_dim(), f.degree());
  for (std::size_t i = 0; i < entries.size(); ++i) out.entries_[i] = entries[i] * f;
  return out;
}

bool ValuedForm::is_zero() const {
  for (const auto& e : entries_)
    if (!e.is_zero()) return false;
  return true;
}

int ValuedForm::max_coefficient_degree() const {
  int d = -1;
  for (const auto& e : entries_) d = std::max(d, e.max_coefficient_degree());
  return d;
}

bool ValuedForm::same_shape(const ValuedForm& other) const {
  return kind_ == other.kind_ && rank_ == other.rank_ && n_ == other.n_;
}

ValuedForm& ValuedForm::operator+=(const ValuedForm& other) {
  if (!same_shape(other)) throw std::invalid_argument("valued form: shape mismatch in sum");
  if (other.is_zero()) return *this;
  if (is_zero()) {
    *this = other;
    return *this;
  }
  if (degree_ != other.degree_) throw std::invalid_argument("valued form: degree mismatch in sum");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ValuedForm& ValuedForm::operator-=(const ValuedForm& other) { return *this += -other; }

ValuedForm& ValuedForm::operator*=(const Rational& c) {
  for (auto& e : entries_) e *= c;
  return *this;
}

ValuedForm ValuedForm::operator-() const {
  ValuedForm out = *this;
  for (auto& e : out.entries_) e = -e;
  return out;
}

bool operator==(const ValuedForm& a, const ValuedForm& b) {
  if (!a.same_shape(b)) return false;
  if (a.is_zero() && b.is_zero()) return true;
  return a.degree_ == b.degree_ && a.entries_ == b.entries_;
}

ValuedForm ValuedForm::map(const std::function<Form(const Form&)>& fn) const {
  std::vector<Form> mapped;
  mapped.reserve(entries_.size());
  for (const auto& e : entries_) mapped.push_back(fn(e));
  int degree = mapped.front().degree();
  ValuedForm out(kind_, rank_, n_, degree);
  for (std::size_t i = 0; i < mapped.size(); ++i) {
    if (mapped[i].is_zero()) continue;
    if (mapped[i].degree() != degree) throw std::logic_error("valued form: map produced mixed degrees");
    out.entries_[i] = std::move(mapped[i]);
  }
  return out;
}

bool composable(const ValuedForm& a, const ValuedForm& b) {
  if (a.chart_dim() != b.chart_dim()) return false;
  if (a.kind() == FiberKind::scalar || b.kind() == FiberKind::scalar) return true;
  return a.kind() == FiberKind::matrix && a.rank() == b.rank();
}

ValuedForm wedge(const ValuedForm& a, const ValuedForm& b) {
  if (!composable(a, b))
    throw std::invalid_argument("wedge: incomposable fiber kinds " + to_string(a.kind()) + " and " +
                                to_string(b.kind()));
  const int n = a.chart_dim();
  const int degree = a.degree() + b.degree();
  if (a.kind() == FiberKind::scalar) {
    ValuedForm out(b.kind(), b.rank(), n, degree);
    for (std::size_t i = 0; i < b.size(); ++i) out.entry(static_cast<int>(i)) = wedge(a.entry(0), b.entry(static_cast<int>(i)));
    return out;
  }
  if (b.kind() == FiberKind::scalar) {
    ValuedForm out(a.kind(), a.rank(), n, degree);
    for (std::size_t i = 0; i < a.size(); ++i) out.entry(static_cast<int>(i)) = wedge(a.entry(static_cast<int>(i)), b.entry(0));
    return out;
  }
  const int r = a.rank();
  ValuedForm out(b.kind(), r, n, degree);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < b.cols(); ++j) {
      Form acc(n, degree);
      for (int k = 0; k < r; ++k) {
        const Form& left = a.entry(i, k);
        const Form& right = b.entry(k, j);
        if (left.is_zero() || right.is_zero()) continue;
        acc += wedge(left, right);
      }
      out.entry(i, j) = std::move(acc);
    }
  }
  return out;
}

ValuedForm exterior_d(const ValuedForm& a) {
  return a.map([](const Form& f) { return exterior_d(f); });
}

ValuedForm commutator(const ValuedForm& a, const ValuedForm& b) {
  if (a.kind() != FiberKind::matrix || b.kind() != FiberKind::matrix)
    throw std::invalid_argument("commutator: both arguments must be matrix-valued");
  if (a.rank() != b.rank()) throw std::invalid_argument("commutator: rank mismatch");
  ValuedForm ab = wedge(a, b);
  ValuedForm ba = wedge(b, a);
  if ((a.degree() * b.degree()) % 2) return ab + ba;
  return ab - ba;
}

std::string to_string(const ValuedForm& a) {
  if (a.kind() == FiberKind::scalar) return to_string(a.entry(0));
  auto row = [&](int i) {
    std::string out = "[";
    for (int j = 0; j < a.cols(); ++j) out += (j ? ", " : "") + to_string(a.entry(i, j));
    return out + "]";
  };
  if (a.kind() == FiberKind::vector) {
    std::string out = "[";
    for (int i = 0; i < a.rank(); ++i) out += (i ? ", " : "") + to_string(a.entry(i));
    return out + "]";
  }
  std::string out = "[";
  for (int i = 0; i < a.rank(); ++i) out += (i ? ", " : "") + row(i);
  return out + "]";
}

} // namespace symflat
