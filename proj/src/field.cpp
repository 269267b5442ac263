#include "gq/field.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace gq {

Field Field::make(Node n) {
  Field f;
  f.node_ = std::make_shared<const Node>(std::move(n));
  return f;
}

Field Field::from_eval(int dim, Eval e, double fd_step) {
  Node n;
  n.dim = dim;
  n.eval = std::move(e);
  n.fd_step = fd_step;
  n.analytic = false;
  return make(std::move(n));
}

Field Field::with_partials(int dim, Eval e, PartialGen partials) {
  Node n;
  n.dim = dim;
  n.eval = std::move(e);
  n.partial = std::move(partials);
  n.analytic = true;
  return make(std::move(n));
}

Field Field::constant(int dim, cplx value) {
  Node n;
  n.dim = dim;
  n.eval = [value](std::span<const double>) { return value; };
  n.partial = [dim](int) { return Field::constant(dim, 0.0); };
  n.constant = true;
  n.analytic = true;
  n.const_value = value;
  return make(std::move(n));
}

Field Field::coordinate(int dim, int index) {
  if (index < 0 || index >= dim) throw std::out_of_range("coordinate index");
  Node n;
  n.dim = dim;
  n.eval = [index](std::span<const double> x) { return cplx(x[index], 0.0); };
  n.partial = [dim, index](int i) {
    return Field::constant(dim, i == index ? 1.0 : 0.0);
  };
  n.analytic = true;
  return make(std::move(n));
}

cplx Field::operator()(std::span<const double> x) const {
  assert(node_);
  return node_->eval(x);
}

int Field::dim() const { return node_ ? node_->dim : 0; }
bool Field::is_constant() const { return node_ && node_->constant; }
bool Field::has_analytic() const { return node_ && node_->analytic; }

Field Field::d(int i) const {
  assert(node_);
  if (node_->partial) return node_->partial(i);
  // Fourth-order central stencil on the evaluation callback.
  auto self = *this;
  const double h = node_->fd_step;
  const int dim = node_->dim;
  auto eval = [self, i, h](std::span<const double> x) {
    std::vector<double> y(x.begin(), x.end());
    auto at = [&](double off) {
      y[i] = x[i] + off;
      cplx v = self(y);
      y[i] = x[i];
      return v;
    };
    return (-at(2 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2 * h)) / (12.0 * h);
  };
  return Field::from_eval(dim, std::move(eval), h);
}

Field Field::operator-() const { return cplx(-1.0, 0.0) * (*this); }

namespace {
int joint_dim(const Field& a, const Field& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("field dimension mismatch");
  return a.dim();
}
}  // namespace

Field operator+(const Field& a, const Field& b) {
  int dim = joint_dim(a, b);
  if (a.is_constant() && b.is_constant()) {
    std::vector<double> z(dim, 0.0);
    return Field::constant(dim, a(z) + b(z));
  }
  Field::Node n;
  n.dim = dim;
  n.eval = [a, b](std::span<const double> x) { return a(x) + b(x); };
  n.partial = [a, b](int i) { return a.d(i) + b.d(i); };
  n.analytic = a.has_analytic() && b.has_analytic();
  if (!n.analytic) n.partial = nullptr;
  return Field::make(std::move(n));
}

Field operator-(const Field& a, const Field& b) { return a + (cplx(-1.0) * b); }

Field operator*(const Field& a, const Field& b) {
  int dim = joint_dim(a, b);
  Field::Node n;
  n.dim = dim;
  n.eval = [a, b](std::span<const double> x) { return a(x) * b(x); };
  n.partial = [a, b](int i) { return a.d(i) * b + a * b.d(i); };
  n.analytic = a.has_analytic() && b.has_analytic();
  if (!n.analytic) n.partial = nullptr;
  n.constant = a.is_constant() && b.is_constant();
  return Field::make(std::move(n));
}

Field operator*(cplx s, const Field& a) {
  Field::Node n;
  n.dim = a.dim();
  n.eval = [s, a](std::span<const double> x) { return s * a(x); };
  n.partial = [s, a](int i) { return s * a.d(i); };
  n.analytic = a.has_analytic();
  if (!n.analytic) n.partial = nullptr;
  n.constant = a.is_constant();
  return Field::make(std::move(n));
}

Field finv(const Field& a) {
  Field::Node n;
  n.dim = a.dim();
  n.eval = [a](std::span<const double> x) { return 1.0 / a(x); };
  n.partial = [a](int i) { return cplx(-1.0) * a.d(i) * finv(a) * finv(a); };
  n.analytic = a.has_analytic();
  if (!n.analytic) n.partial = nullptr;
  return Field::make(std::move(n));
}

Field fexp(const Field& a) {
  Field::Node n;
  n.dim = a.dim();
  n.eval = [a](std::span<const double> x) { return std::exp(a(x)); };
  n.partial = [a](int i) { return a.d(i) * fexp(a); };
  n.analytic = a.has_analytic();
  if (!n.analytic) n.partial = nullptr;
  return Field::make(std::move(n));
}

Field flog(const Field& a) {
  Field::Node n;
  n.dim = a.dim();
  n.eval = [a](std::span<const double> x) { return std::log(a(x)); };
  n.partial = [a](int i) { return a.d(i) * finv(a); };
  n.analytic = a.has_analytic();
  if (!n.analytic) n.partial = nullptr;
  return Field::make(std::move(n));
}

Field fpow(const Field& a, int n) {
  if (n == 0) return Field::constant(a.dim(), 1.0);
  if (n < 0) return finv(fpow(a, -n));
  Field r = a;
  for (int k = 1; k < n; ++k) r = r * a;
  return r;
}

std::vector<std::vector<double>> sample_box(int dim, double lo, double hi,
                                            int count) {
  // Additive (Kronecker) recurrence with roots of x^(d+1) = x + 1.
  double phi = 2.0;
  for (int it = 0; it < 64; ++it) phi = std::pow(phi + 1.0, 1.0 / (dim + 1));
  std::vector<double> alpha(dim);
  for (int j = 0; j < dim; ++j) alpha[j] = std::pow(1.0 / phi, j + 1);
  std::vector<std::vector<double>> pts(count, std::vector<double>(dim));
  const double seed = 0.5;
  for (int k = 0; k < count; ++k)
    for (int j = 0; j < dim; ++j) {
      double u = std::fmod(seed + alpha[j] * (k + 1), 1.0);
      pts[k][j] = lo + (hi - lo) * u;
    }
  return pts;
}

}  // namespace gq
