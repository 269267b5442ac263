#include "gq/forms.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gq {

std::vector<std::vector<int>> increasing_tuples(int dim, int p) {
  std::vector<std::vector<int>> out;
  if (p < 0 || p > dim) return out;
  if (p == 0) {
    out.push_back({});
    return out;
  }
  std::vector<int> t(p);
  for (int i = 0; i < p; ++i) t[i] = i;
  while (true) {
    out.push_back(t);
    int k = p - 1;
    while (k >= 0 && t[k] == dim - p + k) --k;
    if (k < 0) break;
    ++t[k];
    for (int j = k + 1; j < p; ++j) t[j] = t[j - 1] + 1;
  }
  return out;
}

int tuple_index(int dim, const std::vector<int>& tuple) {
  // Lexicographic rank of an increasing tuple.
  auto binom = [](int n, int k) {
    if (k < 0 || k > n) return 0ll;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  int p = static_cast<int>(tuple.size());
  long long rank = 0;
  int prev = -1;
  for (int j = 0; j < p; ++j) {
    for (int c = prev + 1; c < tuple[j]; ++c) rank += binom(dim - c - 1, p - j - 1);
    prev = tuple[j];
  }
  return static_cast<int>(rank);
}

namespace {
// Sort a tuple, returning permutation sign; 0 if a repeat occurs.
int sort_tuple(std::vector<int>& t) {
  int sign = 1;
  for (size_t i = 0; i + 1 < t.size(); ++i)
    for (size_t j = 0; j + 1 < t.size() - i; ++j)
      if (t[j] > t[j + 1]) {
        std::swap(t[j], t[j + 1]);
        sign = -sign;
      }
  for (size_t i = 0; i + 1 < t.size(); ++i)
    if (t[i] == t[i + 1]) return 0;
  return sign;
}
}  // namespace

ChartForm::ChartForm(const ChartedSpace* space, int degree)
    : space_(space), degree_(degree) {
  if (degree < 0) throw std::invalid_argument("negative form degree");
}

int ChartForm::slots() const {
  return static_cast<int>(increasing_tuples(space_->dimension, degree_).size());
}

void ChartForm::set_coeff(const std::string& chart,
                          const std::vector<int>& tuple, Field f) {
  ensure_chart(chart);
  for (size_t i = 0; i + 1 < tuple.size(); ++i)
    if (tuple[i] >= tuple[i + 1])
      throw std::invalid_argument("set_coeff requires an increasing tuple");
  coeffs_[chart][tuple_index(space_->dimension, tuple)] = std::move(f);
}

void ChartForm::ensure_chart(const std::string& chart) {
  auto& v = coeffs_[chart];
  if (v.empty() && slots() > 0)
    v.assign(slots(), Field::constant(space_->dimension, 0.0));
}

const Field& ChartForm::coeff(const std::string& chart, int slot) const {
  auto it = coeffs_.find(chart);
  if (it == coeffs_.end())
    throw std::out_of_range("form has no data on chart " + chart);
  return it->second[slot];
}

bool ChartForm::has_chart(const std::string& chart) const {
  return coeffs_.count(chart) > 0;
}

std::vector<std::string> ChartForm::chart_labels() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : coeffs_) out.push_back(k);
  return out;
}

cplx ChartForm::coeff_at(const std::string& chart,
                         const std::vector<int>& tuple,
                         std::span<const double> x) const {
  std::vector<int> t = tuple;
  int sign = sort_tuple(t);
  if (sign == 0) return 0.0;
  return double(sign) * coeff(chart, tuple_index(space_->dimension, t))(x);
}

cplx ChartForm::evaluate(const std::string& chart, std::span<const double> x,
                         const std::vector<std::vector<cplx>>& vectors) const {
  if (static_cast<int>(vectors.size()) != degree_)
    throw std::invalid_argument("wrong number of vectors");
  if (degree_ == 0) return coeff(chart, 0)(x);
  cplx total = 0.0;
  auto tuples = increasing_tuples(space_->dimension, degree_);
  // Determinant convention: sum over increasing tuples of coeff * det of the
  // corresponding minor of the vector components.
  Eigen::MatrixXcd M(degree_, degree_);
  for (size_t s = 0; s < tuples.size(); ++s) {
    for (int r = 0; r < degree_; ++r)
      for (int c = 0; c < degree_; ++c) M(r, c) = vectors[c][tuples[s][r]];
    total += coeff(chart, static_cast<int>(s))(x) * M.determinant();
  }
  return total;
}

ChartVectorField::ChartVectorField(const ChartedSpace* space)
    : space_(space) {}

void ChartVectorField::set_component(const std::string& chart, int i,
                                     Field f) {
  auto& v = comps_[chart];
  if (v.empty())
    v.assign(space_->dimension, Field::constant(space_->dimension, 0.0));
  v[i] = std::move(f);
}

const Field& ChartVectorField::component(const std::string& chart,
                                         int i) const {
  auto it = comps_.find(chart);
  if (it == comps_.end())
    throw std::out_of_range("vector field has no data on chart " + chart);
  return it->second[i];
}

bool ChartVectorField::has_chart(const std::string& chart) const {
  return comps_.count(chart) > 0;
}

ChartForm exterior_derivative(const ChartForm& w) {
  const auto* sp = w.space();
  const int dim = sp->dimension;
  ChartForm out(sp, w.degree() + 1);
  if (w.degree() >= dim) {
    // d of a top-degree form: the zero form one degree up (no slots).
    for (const auto& chart : w.chart_labels()) out.ensure_chart(chart);
    return out;
  }
  auto in_tuples = increasing_tuples(dim, w.degree());
  for (const auto& chart : w.chart_labels()) {
    for (const auto& J : increasing_tuples(dim, w.degree() + 1)) {
      Field acc = Field::constant(dim, 0.0);
      for (size_t k = 0; k < J.size(); ++k) {
        std::vector<int> rest;
        for (size_t m = 0; m < J.size(); ++m)
          if (m != k) rest.push_back(J[m]);
        Field term = w.coeff(chart, tuple_index(dim, rest)).d(J[k]);
        acc = (k % 2 == 0) ? acc + term : acc - term;
      }
      out.set_coeff(chart, J, acc);
    }
  }
  return out;
}

ChartForm wedge(const ChartForm& w, const ChartForm& t) {
  if (w.space() != t.space())
    throw std::invalid_argument("wedge of forms on different spaces");
  const auto* sp = w.space();
  const int dim = sp->dimension;
  const int k = w.degree(), l = t.degree();
  ChartForm out(sp, k + l);
  if (k + l > dim) {
    // Degree exceeds dimension: the zero form (it has no coefficient slots).
    for (const auto& chart : w.chart_labels())
      if (t.has_chart(chart)) out.ensure_chart(chart);
    return out;
  }
  for (const auto& chart : w.chart_labels()) {
    if (!t.has_chart(chart)) continue;
    for (const auto& J : increasing_tuples(dim, k + l)) {
      Field acc = Field::constant(dim, 0.0);
      if (k == 0) {
        acc = w.coeff(chart, 0) * t.coeff(chart, tuple_index(dim, J));
      } else if (l == 0) {
        acc = w.coeff(chart, tuple_index(dim, J)) * t.coeff(chart, 0);
      } else {
        // Sum over (k,l) shuffles of J; the shuffle sign is the parity of
        // inversions needed to move the selected block to the front.
        std::vector<bool> sel(k + l, false);
        std::function<void(int, int)> rec = [&](int start, int chosen) {
          if (chosen == k) {
            std::vector<int> I1, I2;
            int inversions = 0, unselected_seen = 0;
            for (int m = 0; m < k + l; ++m) {
              if (sel[m]) {
                I1.push_back(J[m]);
                inversions += unselected_seen;
              } else {
                I2.push_back(J[m]);
                ++unselected_seen;
              }
            }
            Field term = w.coeff(chart, tuple_index(dim, I1)) *
                         t.coeff(chart, tuple_index(dim, I2));
            acc = (inversions % 2 == 0) ? acc + term : acc - term;
            return;
          }
          if (start >= k + l || k + l - start < k - chosen) return;
          sel[start] = true;
          rec(start + 1, chosen + 1);
          sel[start] = false;
          rec(start + 1, chosen);
        };
        rec(0, 0);
      }
      out.set_coeff(chart, J, acc);
    }
  }
  return out;
}

ChartForm interior_product(const ChartVectorField& v, const ChartForm& w) {
  if (w.degree() == 0)
    throw std::domain_error("cannot contract a scalar");
  const auto* sp = w.space();
  const int dim = sp->dimension;
  ChartForm out(sp, w.degree() - 1);
  for (const auto& chart : w.chart_labels()) {
    if (!v.has_chart(chart)) continue;
    for (const auto& J : increasing_tuples(dim, w.degree() - 1)) {
      Field acc = Field::constant(dim, 0.0);
      for (int i = 0; i < dim; ++i) {
        std::vector<int> full;
        full.push_back(i);
        for (int j : J) full.push_back(j);
        std::vector<int> sorted = full;
        int sign = sort_tuple(sorted);
        if (sign == 0) continue;
        Field term =
            v.component(chart, i) * w.coeff(chart, tuple_index(dim, sorted));
        acc = (sign > 0) ? acc + term : acc - term;
      }
      out.set_coeff(chart, J, acc);
    }
  }
  return out;
}

ChartForm lie_derivative(const ChartVectorField& v, const ChartForm& w) {
  if (w.degree() == 0) {
    // Directional derivative.
    const auto* sp = w.space();
    ChartForm out(sp, 0);
    for (const auto& chart : w.chart_labels()) {
      if (!v.has_chart(chart)) continue;
      Field acc = Field::constant(sp->dimension, 0.0);
      for (int i = 0; i < sp->dimension; ++i)
        acc = acc + v.component(chart, i) * w.coeff(chart, 0).d(i);
      out.set_coeff(chart, {}, acc);
    }
    return out;
  }
  return add(exterior_derivative(interior_product(v, w)),
             interior_product(v, exterior_derivative(w)));
}

ChartForm scale(cplx s, const ChartForm& w) {
  const auto* sp = w.space();
  ChartForm out(sp, w.degree());
  for (const auto& chart : w.chart_labels())
    for (const auto& t : increasing_tuples(sp->dimension, w.degree()))
      out.set_coeff(chart, t, s * w.coeff(chart, tuple_index(sp->dimension, t)));
  return out;
}

ChartForm add(const ChartForm& a, const ChartForm& b) {
  if (a.space() != b.space() || a.degree() != b.degree())
    throw std::invalid_argument("form addition mismatch");
  const auto* sp = a.space();
  ChartForm out(sp, a.degree());
  for (const auto& chart : a.chart_labels()) {
    if (!b.has_chart(chart)) continue;
    for (const auto& t : increasing_tuples(sp->dimension, a.degree())) {
      int s = tuple_index(sp->dimension, t);
      out.set_coeff(chart, t, a.coeff(chart, s) + b.coeff(chart, s));
    }
  }
  return out;
}

ChartForm pullback_to_chart(const ChartForm& w, const std::string& from,
                            const std::string& to) {
  const auto* sp = w.space();
  const int dim = sp->dimension;
  ChartForm out(sp, w.degree());
  const int p = w.degree();
  auto tuples = increasing_tuples(dim, p);
  for (const auto& I : tuples) {
    auto eval = [sp, w, from, to, I, dim, p](std::span<const double> x) {
      Point y = sp->apply_transition(from, to, x);
      auto J = sp->transition_jacobian(from, to, x);
      // (T^* w)_I(x) = sum_K w_K(y) det( dT^{K}/dx^{I} ).
      cplx acc = 0.0;
      for (const auto& K : increasing_tuples(dim, p)) {
        Eigen::MatrixXcd M(p, p);
        for (int r = 0; r < p; ++r)
          for (int c = 0; c < p; ++c) M(r, c) = J[K[r] * dim + I[c]];
        acc += w.coeff_at(to, K, y) * M.determinant();
      }
      return acc;
    };
    if (p == 0) {
      auto eval0 = [sp, w, from, to](std::span<const double> x) {
        Point y = sp->apply_transition(from, to, x);
        return w.coeff(to, 0)(y);
      };
      out.set_coeff(from, I, Field::from_eval(dim, eval0));
    } else {
      out.set_coeff(from, I, Field::from_eval(dim, eval));
    }
  }
  return out;
}

namespace {
// Inverse of the full antisymmetric coefficient matrix of a 2-form at x.
Eigen::MatrixXcd omega_inverse_at(const ChartForm& w, const std::string& chart,
                                  std::span<const double> x) {
  const int d = w.space()->dimension;
  Eigen::MatrixXcd M(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      M(i, j) = (i == j) ? cplx(0.0) : w.coeff_at(chart, {i, j}, x);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(M);
  if (!lu.isInvertible()) {
    std::ostringstream os;
    os << "symplectic form singular at point (";
    for (size_t k = 0; k < x.size(); ++k)
      os << (k ? ", " : "") << x[k];
    os << ")";
    throw std::domain_error(os.str());
  }
  return lu.inverse();
}

bool form_is_constant(const ChartForm& w, const std::string& chart) {
  for (int s = 0; s < w.slots(); ++s)
    if (!w.coeff(chart, s).is_constant()) return false;
  return true;
}
}  // namespace

Field poisson_bracket(const Field& f, const Field& g, const ChartForm& w,
                      const std::string& chart) {
  if (w.degree() != 2) throw std::invalid_argument("need a 2-form");
  const int d = w.space()->dimension;
  if (form_is_constant(w, chart)) {
    std::vector<double> origin(d, 0.0);
    Eigen::MatrixXcd inv = omega_inverse_at(w, chart, origin);
    Field acc = Field::constant(d, 0.0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        cplx c = inv(i, j);
        if (std::abs(c) < 1e-300) continue;
        acc = acc + c * (f.d(i) * g.d(j));
      }
    return acc;
  }
  auto eval = [f, g, w, chart, d](std::span<const double> x) {
    Eigen::MatrixXcd inv = omega_inverse_at(w, chart, x);
    cplx acc = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) acc += inv(i, j) * f.d(i)(x) * g.d(j)(x);
    return acc;
  };
  return Field::from_eval(d, eval);
}

ChartVectorField hamiltonian_vector_field(const Field& f, const ChartForm& w,
                                          const std::string& chart) {
  if (w.degree() != 2) throw std::invalid_argument("need a 2-form");
  const int d = w.space()->dimension;
  ChartVectorField X(w.space());
  if (form_is_constant(w, chart)) {
    std::vector<double> origin(d, 0.0);
    Eigen::MatrixXcd inv = omega_inverse_at(w, chart, origin);
    for (int j = 0; j < d; ++j) {
      Field acc = Field::constant(d, 0.0);
      for (int i = 0; i < d; ++i) {
        cplx c = inv(i, j);
        if (std::abs(c) < 1e-300) continue;
        acc = acc + c * f.d(i);
      }
      X.set_component(chart, j, acc);
    }
    return X;
  }
  for (int j = 0; j < d; ++j) {
    auto eval = [f, w, chart, d, j](std::span<const double> x) {
      Eigen::MatrixXcd inv = omega_inverse_at(w, chart, x);
      cplx acc = 0.0;
      for (int i = 0; i < d; ++i) acc += inv(i, j) * f.d(i)(x);
      return acc;
    };
    X.set_component(chart, j, Field::from_eval(d, eval));
  }
  return X;
}

ChartVectorField vector_field_bracket(const ChartVectorField& X,
                                      const ChartVectorField& Y) {
  const auto* sp = X.space();
  const int d = sp->dimension;
  ChartVectorField out(sp);
  for (const auto& c : sp->charts) {
    if (!X.has_chart(c.label) || !Y.has_chart(c.label)) continue;
    for (int j = 0; j < d; ++j) {
      Field acc = Field::constant(d, 0.0);
      for (int i = 0; i < d; ++i)
        acc = acc + X.component(c.label, i) * Y.component(c.label, j).d(i) -
              Y.component(c.label, i) * X.component(c.label, j).d(i);
      out.set_component(c.label, j, acc);
    }
  }
  return out;
}

namespace {
void require_complex_dim_one(const ChartedSpace* sp, const std::string& chart) {
  auto it = sp->complex_structure.find(chart);
  if (it == sp->complex_structure.end())
    throw std::domain_error("chart " + chart + " has no complex structure");
  if (it->second.complex_dim != 1)
    throw std::domain_error(
        "Dolbeault operators implemented for complex dimension one");
}
}  // namespace

ChartForm dolbeault(const ChartForm& w, Dolbeault which) {
  const auto* sp = w.space();
  const int d = sp->dimension;
  if (d != 2)
    throw std::domain_error("Dolbeault operators need a 2d complex chart");
  ChartForm out(sp, w.degree() + 1);
  const cplx I(0.0, 1.0);
  for (const auto& chart : w.chart_labels()) {
    require_complex_dim_one(sp, chart);
    if (w.degree() == 0) {
      // del f = f_z dz -> (f_z, i f_z); dbar f = f_zbar dzbar -> (f_zbar, -i f_zbar)
      const Field& f = w.coeff(chart, 0);
      Field fz = 0.5 * (f.d(0) - I * f.d(1));
      Field fzb = 0.5 * (f.d(0) + I * f.d(1));
      if (which == Dolbeault::Del) {
        out.set_coeff(chart, {0}, fz);
        out.set_coeff(chart, {1}, I * fz);
      } else {
        out.set_coeff(chart, {0}, fzb);
        out.set_coeff(chart, {1}, cplx(0.0, -1.0) * fzb);
      }
    } else if (w.degree() == 1) {
      // w = w0 dx + w1 dy = wz dz + wzb dzbar with
      // wz = (w0 - i w1)/2, wzb = (w0 + i w1)/2.
      // del w = (d_z wzb) dz^dzbar, dbar w = (d_zbar wz) dzbar^dz.
      // dz^dzbar = -2i dx^dy.
      const Field& w0 = w.coeff(chart, 0);
      const Field& w1 = w.coeff(chart, 1);
      Field wz = 0.5 * (w0 - I * w1);
      Field wzb = 0.5 * (w0 + I * w1);
      auto dz_of = [&](const Field& f) { return 0.5 * (f.d(0) - I * f.d(1)); };
      auto dzb_of = [&](const Field& f) { return 0.5 * (f.d(0) + I * f.d(1)); };
      if (which == Dolbeault::Del) {
        out.set_coeff(chart, {0, 1}, cplx(0.0, -2.0) * dz_of(wzb));
      } else {
        out.set_coeff(chart, {0, 1}, cplx(0.0, 2.0) * dzb_of(wz));
      }
    } else {
      // Top degree on a 2d chart: result is zero (degree would exceed dim).
      for (const auto& t : increasing_tuples(d, w.degree() + 1))
        out.set_coeff(chart, t, Field::constant(d, 0.0));
    }
  }
  return out;
}

ChartForm kahler_form_from_potential(const Field& f, const ChartedSpace* space,
                                     const std::string& chart) {
  ChartForm f0(space, 0);
  f0.set_coeff(chart, {}, f);
  ChartForm df = dolbeault(f0, Dolbeault::Del);
  ChartForm ddf = dolbeault(df, Dolbeault::DelBar);
  return scale(cplx(0.0, 0.5), ddf);
}

ChartForm standard_symplectic_form(const ChartedSpace* plane) {
  const int d = plane->dimension;
  const int n = d / 2;
  ChartForm w(plane, 2);
  for (const auto& t : increasing_tuples(d, 2))
    w.set_coeff("std", t, Field::constant(d, 0.0));
  // sum_i dp_i ^ dq^i: coefficient on increasing tuple (q^i, p_i) = (i, n+i)
  // is -1 since dp^dq = -dq^dp.
  for (int i = 0; i < n; ++i)
    w.set_coeff("std", {i, n + i}, Field::constant(d, -1.0));
  return w;
}

ChartForm cylinder_symplectic_form(const ChartedSpace* cyl) {
  // Coordinates (phi, p); dp ^ dphi has coefficient -1 on (phi,p).
  ChartForm w(cyl, 2);
  w.set_coeff("cyl", {0, 1}, Field::constant(2, -1.0));
  return w;
}

ChartForm cylinder_tautological_form(const ChartedSpace* cyl) {
  ChartForm th(cyl, 1);
  th.set_coeff("cyl", {0}, Field::coordinate(2, 1));  // p dphi
  th.set_coeff("cyl", {1}, Field::constant(2, 0.0));
  return th;
}

namespace {
// -(1/pi) / (1 + a^2 + b^2)^2 with analytic partials.
Field fs_coefficient(int dim) {
  Field a = Field::coordinate(dim, 0), b = Field::coordinate(dim, 1);
  Field one = Field::constant(dim, 1.0);
  Field denom = one + a * a + b * b;
  return cplx(-1.0 / M_PI) * finv(denom * denom);
}
}  // namespace

ChartForm fubini_study_form(const ChartedSpace* sphere) {
  // (i/2pi) dzbar^dz / (1+|z|^2)^2 = -(1/pi) da^db / (1+a^2+b^2)^2 per chart;
  // integrates to +1 against the (theta,phi) orientation.
  ChartForm w(sphere, 2);
  w.set_coeff("N", {0, 1}, fs_coefficient(2));
  w.set_coeff("S", {0, 1}, fs_coefficient(2));
  return w;
}

ChartForm fubini_study_form_scaled(const ChartedSpace* sphere, int k,
                                   double hbar) {
  return scale(2.0 * M_PI * hbar * k, fubini_study_form(sphere));
}

}  // namespace gq
