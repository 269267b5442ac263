#ifndef GQ_CHART_HPP
#define GQ_CHART_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gq/field.hpp"

namespace gq {

using Point = std::vector<double>;

struct Chart {
  std::string label;
  // Optional domain predicate in chart coordinates (defaults to all of R^dim).
  std::function<bool(std::span<const double>)> contains;
  bool in_domain(std::span<const double> x) const {
    return !contains || contains(x);
  }
};

// Coordinate change between two overlapping charts, with Jacobian.
struct Transition {
  std::function<Point(std::span<const double>)> map;
  // Row-major dim x dim Jacobian dy^j/dx^i stored as J[j*dim+i]; if absent a
  // finite-difference Jacobian is used.
  std::function<std::vector<double>(std::span<const double>)> jacobian;
};

// Complex structure data attached to a chart: the almost-complex operator J
// as a matrix of fields (column-major action on coordinate frames), plus the
// pairing of real coordinates into complex ones. For a complex dimension-one
// chart the complex coordinate is x[0] + i x[1].
struct ChartComplexStructure {
  std::vector<Field> J;  // dim*dim entries, J[r*dim+c]
  int complex_dim = 0;
};

class ChartedSpace {
 public:
  int dimension = 0;
  std::vector<Chart> charts;
  std::map<std::pair<std::string, std::string>, Transition> transitions;
  // Deterministic sample points on each overlap, in the first label's
  // coordinates. Used by cocycle/covariance/invariant checks.
  std::map<std::pair<std::string, std::string>, std::vector<Point>>
      overlap_samples;
  std::map<std::string, ChartComplexStructure> complex_structure;

  const Chart& chart(const std::string& label) const;
  bool has_chart(const std::string& label) const;
  const Transition& transition(const std::string& from,
                               const std::string& to) const;
  Point apply_transition(const std::string& from, const std::string& to,
                         std::span<const double> x) const;
  std::vector<double> transition_jacobian(const std::string& from,
                                          const std::string& to,
                                          std::span<const double> x) const;

  // Max |T_{ba}(T_{ab}(x)) - x| over stored overlap samples.
  double check_inverse_consistency() const;
  // Max cocycle defect over stored triple overlaps (vacuous for < 3 charts).
  double check_cocycle_consistency() const;
  // Max |J^2 + id| over sampled points of each chart carrying a structure.
  double check_complex_structure(const std::vector<Point>& samples) const;
  // Max Cauchy-Riemann residual of transition Jacobians at overlap samples.
  double check_holomorphic_transitions() const;
};

// Model space builders.

// R^{2n} with coordinates (q^1..q^n, p_1..p_n), single chart "std",
// standard complex pairing z^i = q^i + i p_i.
ChartedSpace real_phase_space(int n);

// T*S^1 with coordinates (phi, p), phi of period 2*pi, single chart "cyl".
ChartedSpace cylinder_space();

// Stereographic S^1 charts (scalar maps, used for pinned-value checks).
double circle_stereo_north(double x, double y);
double circle_stereo_south(double x, double y);

// The 2-sphere with stereographic charts "N" (coordinates (a,b), z = a+ib,
// projection from the north pole) and "S" ((u,v), w = u+iv = 1/z), transition
// w = 1/z, and the normalized area form installed by fubini_study_form().
ChartedSpace sphere_atlas();

// Embedding helpers for the sphere charts: unit vector -> chart coordinates.
Point sphere_chart_N(double x1, double x2, double x3);
Point sphere_chart_S(double x1, double x2, double x3);

}  // namespace gq

#endif
