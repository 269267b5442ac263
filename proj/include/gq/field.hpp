#ifndef GQ_FIELD_HPP
#define GQ_FIELD_HPP

#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace gq {

using cplx = std::complex<double>;

// Default step for fourth-order central finite differences, used when a
// field has no analytic partial attached. Configurable per field.
inline constexpr double kDefaultFdStep = 1e-5;

// A scalar field on an open subset of R^dim: evaluable at points, and
// differentiable. Differentiation returns another Field; the derivative is
// analytic when the construction chain supports it and falls back to a
// fourth-order central stencil at bare-lambda leaves. Fields are immutable
// and cheap to copy (shared nodes).
class Field {
 public:
  using Eval = std::function<cplx(std::span<const double>)>;
  using PartialGen = std::function<Field(int)>;

  Field() = default;

  // Leaf with finite-difference partials.
  static Field from_eval(int dim, Eval e, double fd_step = kDefaultFdStep);
  // Leaf with analytic partials supplied by the caller.
  static Field with_partials(int dim, Eval e, PartialGen partials);
  static Field constant(int dim, cplx value);
  static Field coordinate(int dim, int index);

  cplx operator()(std::span<const double> x) const;
  cplx operator()(std::initializer_list<double> x) const {
    return (*this)(std::span<const double>(x.begin(), x.size()));
  }

  // Partial derivative with respect to coordinate i.
  Field d(int i) const;

  int dim() const;
  bool is_constant() const;     // known-constant (exact zero derivatives)
  bool has_analytic() const;    // derivative chain avoids finite differences
  explicit operator bool() const { return node_ != nullptr; }

  Field operator-() const;

 private:
  struct Node {
    int dim = 0;
    Eval eval;
    PartialGen partial;   // empty => finite differences
    double fd_step = kDefaultFdStep;
    bool constant = false;
    bool analytic = false;
    cplx const_value{};
  };
  std::shared_ptr<const Node> node_;
  static Field make(Node n);

  friend Field operator+(const Field&, const Field&);
  friend Field operator-(const Field&, const Field&);
  friend Field operator*(const Field&, const Field&);
  friend Field operator*(cplx, const Field&);
  friend Field finv(const Field&);
  friend Field fexp(const Field&);
  friend Field flog(const Field&);
};

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(const Field& a, const Field& b);
Field operator*(cplx s, const Field& a);
inline Field operator*(const Field& a, cplx s) { return s * a; }

Field finv(const Field& a);   // 1/a
Field fexp(const Field& a);   // exp(a)
Field flog(const Field& a);   // log(a), principal branch
Field fpow(const Field& a, int n);  // integer power, n may be negative

// Deterministic low-discrepancy sample points (additive recurrence) in the
// box [lo,hi]^dim, fixed seed so invariant checks are reproducible.
std::vector<std::vector<double>> sample_box(int dim, double lo, double hi,
                                            int count);

}  // namespace gq

#endif
