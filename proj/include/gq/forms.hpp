#ifndef GQ_FORMS_HPP
#define GQ_FORMS_HPP

#include <map>
#include <string>
#include <vector>

#include "gq/chart.hpp"
#include "gq/field.hpp"

namespace gq {

// Index tuples i1 < i2 < ... < ip enumerating the coefficient slots of a
// p-form, in lexicographic order.
std::vector<std::vector<int>> increasing_tuples(int dim, int p);
int tuple_index(int dim, const std::vector<int>& tuple);

// A differential p-form given per chart by coefficient fields on increasing
// index tuples; evaluation extends antisymmetrically, and a monomial
// dx^{i1} ^ ... ^ dx^{ip} (i1<...<ip) has coefficient 1 on its own tuple
// (determinant convention).
class ChartForm {
 public:
  ChartForm() = default;
  ChartForm(const ChartedSpace* space, int degree);

  int degree() const { return degree_; }
  const ChartedSpace* space() const { return space_; }

  void set_coeff(const std::string& chart, const std::vector<int>& tuple,
                 Field f);
  // Register a chart with all-zero coefficients (no-op if already present).
  void ensure_chart(const std::string& chart);
  // Coefficient on an arbitrary tuple (antisymmetric lookup, may be empty
  // for degenerate tuples). Tuple must be strictly increasing for set_coeff.
  const Field& coeff(const std::string& chart, int slot) const;
  cplx coeff_at(const std::string& chart, const std::vector<int>& tuple,
                std::span<const double> x) const;
  bool has_chart(const std::string& chart) const;
  std::vector<std::string> chart_labels() const;

  // Evaluate on `degree` tangent vectors at x (determinant convention).
  cplx evaluate(const std::string& chart, std::span<const double> x,
                const std::vector<std::vector<cplx>>& vectors) const;

  int slots() const;

 private:
  const ChartedSpace* space_ = nullptr;
  int degree_ = 0;
  std::map<std::string, std::vector<Field>> coeffs_;
};

class ChartVectorField {
 public:
  ChartVectorField() = default;
  ChartVectorField(const ChartedSpace* space);
  const ChartedSpace* space() const { return space_; }
  void set_component(const std::string& chart, int i, Field f);
  const Field& component(const std::string& chart, int i) const;
  bool has_chart(const std::string& chart) const;

 private:
  const ChartedSpace* space_ = nullptr;
  std::map<std::string, std::vector<Field>> comps_;
};

// Exterior calculus. All operations act chart-by-chart on the charts the
// inputs carry.
ChartForm exterior_derivative(const ChartForm& w);
ChartForm wedge(const ChartForm& w, const ChartForm& t);
ChartForm interior_product(const ChartVectorField& v, const ChartForm& w);
ChartForm lie_derivative(const ChartVectorField& v, const ChartForm& w);
ChartForm scale(cplx s, const ChartForm& w);
ChartForm add(const ChartForm& a, const ChartForm& b);

// Pull the chart-`to` coefficients of w back to chart `from` coordinates
// through the transition map (used for covariance/overlap checks).
ChartForm pullback_to_chart(const ChartForm& w, const std::string& from,
                            const std::string& to);

// Poisson bracket and hamiltonian vector fields w.r.t. a nondegenerate
// 2-form: {f,g} = (w^{-1})^{ij} d_i f d_j g, X_f^j = (w^{-1})^{ij} d_i f.
// Throws if the coefficient matrix is singular at an evaluation point.
Field poisson_bracket(const Field& f, const Field& g, const ChartForm& w,
                      const std::string& chart = "std");
ChartVectorField hamiltonian_vector_field(const Field& f, const ChartForm& w,
                                          const std::string& chart = "std");
ChartVectorField vector_field_bracket(const ChartVectorField& X,
                                      const ChartVectorField& Y);

// Dolbeault operators on complex-dimension-one charts.
enum class Dolbeault { Del, DelBar };
ChartForm dolbeault(const ChartForm& w, Dolbeault which);
// (i/2) dbar d f, the Kahler form recovered from a potential.
ChartForm kahler_form_from_potential(const Field& f, const ChartedSpace* space,
                                     const std::string& chart);

// Standard forms on the model spaces.
ChartForm standard_symplectic_form(const ChartedSpace* plane);   // sum dp^dq
ChartForm cylinder_symplectic_form(const ChartedSpace* cyl);     // dp^dphi
ChartForm cylinder_tautological_form(const ChartedSpace* cyl);   // p dphi
// Normalized area form on the sphere atlas; integrates to 1 over the
// (theta,phi)-oriented triangulation. fubini_study_form(s, k, hbar) returns
// 2*pi*hbar*k times it.
ChartForm fubini_study_form(const ChartedSpace* sphere);
ChartForm fubini_study_form_scaled(const ChartedSpace* sphere, int k,
                                   double hbar);

}  // namespace gq

#endif
