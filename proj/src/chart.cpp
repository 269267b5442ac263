#include "gq/chart.hpp"

#include <cmath>
#include <stdexcept>

namespace gq {

const Chart& ChartedSpace::chart(const std::string& label) const {
  for (const auto& c : charts)
    if (c.label == label) return c;
  throw std::out_of_range("no chart named '" + label + "'");
}

bool ChartedSpace::has_chart(const std::string& label) const {
  for (const auto& c : charts)
    if (c.label == label) return true;
  return false;
}

const Transition& ChartedSpace::transition(const std::string& from,
                                           const std::string& to) const {
  auto it = transitions.find({from, to});
  if (it == transitions.end())
    throw std::out_of_range("no transition " + from + " -> " + to);
  return it->second;
}

Point ChartedSpace::apply_transition(const std::string& from,
                                     const std::string& to,
                                     std::span<const double> x) const {
  if (from == to) return Point(x.begin(), x.end());
  return transition(from, to).map(x);
}

std::vector<double> ChartedSpace::transition_jacobian(
    const std::string& from, const std::string& to,
    std::span<const double> x) const {
  const Transition& t = transition(from, to);
  if (t.jacobian) return t.jacobian(x);
  const int d = dimension;
  const double h = kDefaultFdStep;
  std::vector<double> J(d * d);
  std::vector<double> y(x.begin(), x.end());
  for (int i = 0; i < d; ++i) {
    auto shifted = [&](double off) {
      y[i] = x[i] + off;
      Point r = t.map(y);
      y[i] = x[i];
      return r;
    };
    Point p2 = shifted(2 * h), p1 = shifted(h), m1 = shifted(-h),
          m2 = shifted(-2 * h);
    for (int j = 0; j < d; ++j)
      J[j * d + i] = (-p2[j] + 8 * p1[j] - 8 * m1[j] + m2[j]) / (12 * h);
  }
  return J;
}

double ChartedSpace::check_inverse_consistency() const {
  double worst = 0.0;
  for (const auto& [pair, samples] : overlap_samples) {
    const auto& [a, b] = pair;
    if (!transitions.count({a, b}) || !transitions.count({b, a})) continue;
    for (const auto& x : samples) {
      Point y = apply_transition(a, b, x);
      Point back = apply_transition(b, a, y);
      for (int i = 0; i < dimension; ++i)
        worst = std::max(worst, std::abs(back[i] - x[i]));
    }
  }
  return worst;
}

double ChartedSpace::check_cocycle_consistency() const {
  double worst = 0.0;
  for (const auto& ca : charts)
    for (const auto& cb : charts)
      for (const auto& cc : charts) {
        if (ca.label == cb.label || cb.label == cc.label ||
            ca.label == cc.label)
          continue;
        auto s = overlap_samples.find({ca.label, cb.label});
        if (s == overlap_samples.end()) continue;
        if (!transitions.count({ca.label, cb.label}) ||
            !transitions.count({cb.label, cc.label}) ||
            !transitions.count({ca.label, cc.label}))
          continue;
        for (const auto& x : s->second) {
          Point yb = apply_transition(ca.label, cb.label, x);
          if (!chart(cc.label).in_domain(yb)) continue;
          Point via = apply_transition(cb.label, cc.label, yb);
          Point direct = apply_transition(ca.label, cc.label, x);
          for (int i = 0; i < dimension; ++i)
            worst = std::max(worst, std::abs(via[i] - direct[i]));
        }
      }
  return worst;
}

double ChartedSpace::check_complex_structure(
    const std::vector<Point>& samples) const {
  double worst = 0.0;
  const int d = dimension;
  for (const auto& [label, cs] : complex_structure) {
    for (const auto& x : samples) {
      if (!chart(label).in_domain(x)) continue;
      std::vector<cplx> J(d * d);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) J[r * d + c] = cs.J[r * d + c](x);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
          cplx acc = 0.0;
          for (int k = 0; k < d; ++k) acc += J[r * d + k] * J[k * d + c];
          if (r == c) acc += 1.0;
          worst = std::max(worst, std::abs(acc));
        }
    }
  }
  return worst;
}

double ChartedSpace::check_holomorphic_transitions() const {
  // Cauchy-Riemann residual for 2d charts with complex structure.
  double worst = 0.0;
  if (dimension != 2) return worst;
  for (const auto& [pair, samples] : overlap_samples) {
    const auto& [a, b] = pair;
    if (!complex_structure.count(a) || !complex_structure.count(b)) continue;
    if (!transitions.count({a, b})) continue;
    for (const auto& x : samples) {
      auto J = transition_jacobian(a, b, x);
      // y^0 = u(x), y^1 = v(x): residuals u_x - v_y and u_y + v_x.
      worst = std::max(worst, std::abs(J[0 * 2 + 0] - J[1 * 2 + 1]));
      worst = std::max(worst, std::abs(J[0 * 2 + 1] + J[1 * 2 + 0]));
    }
  }
  return worst;
}

ChartedSpace real_phase_space(int n) {
  ChartedSpace s;
  s.dimension = 2 * n;
  s.charts.push_back({"std", nullptr});
  ChartComplexStructure cs;
  cs.complex_dim = n;
  const int d = 2 * n;
  cs.J.assign(d * d, Field::constant(d, 0.0));
  // J(d/dq^i) = d/dp_i, J(d/dp_i) = -d/dq^i; coordinates (q^1..q^n,p_1..p_n).
  for (int i = 0; i < n; ++i) {
    cs.J[(n + i) * d + i] = Field::constant(d, 1.0);
    cs.J[i * d + (n + i)] = Field::constant(d, -1.0);
  }
  s.complex_structure["std"] = std::move(cs);
  return s;
}

ChartedSpace cylinder_space() {
  ChartedSpace s;
  s.dimension = 2;
  s.charts.push_back({"cyl", nullptr});
  return s;
}

double circle_stereo_north(double x, double y) { return x / (1.0 - y); }
double circle_stereo_south(double x, double y) { return x / (1.0 + y); }

Point sphere_chart_N(double x1, double x2, double x3) {
  return {x1 / (1.0 - x3), x2 / (1.0 - x3)};
}
Point sphere_chart_S(double x1, double x2, double x3) {
  // w = u + iv = (x1 - i x2)/(1 + x3).
  return {x1 / (1.0 + x3), -x2 / (1.0 + x3)};
}

namespace {
// w = 1/z as a real map (a,b) -> (a,-b)/(a^2+b^2), its own inverse.
Point invert_complex(std::span<const double> x) {
  double r2 = x[0] * x[0] + x[1] * x[1];
  return {x[0] / r2, -x[1] / r2};
}
std::vector<double> invert_complex_jacobian(std::span<const double> x) {
  double a = x[0], b = x[1];
  double r2 = a * a + b * b, r4 = r2 * r2;
  // y0 = a/r2, y1 = -b/r2.
  return {(b * b - a * a) / r4, -2 * a * b / r4,
          2 * a * b / r4, (b * b - a * a) / r4};
}

ChartComplexStructure flat_two_dim_complex() {
  ChartComplexStructure cs;
  cs.complex_dim = 1;
  cs.J = {Field::constant(2, 0.0), Field::constant(2, -1.0),
          Field::constant(2, 1.0), Field::constant(2, 0.0)};
  return cs;
}
}  // namespace

ChartedSpace sphere_atlas() {
  ChartedSpace s;
  s.dimension = 2;
  s.charts.push_back({"N", nullptr});
  s.charts.push_back({"S", nullptr});
  Transition t{invert_complex, invert_complex_jacobian};
  s.transitions[{"N", "S"}] = t;
  s.transitions[{"S", "N"}] = t;

  // Overlap samples: an annulus avoiding both poles, same points both ways.
  auto pts = sample_box(2, -1.0, 1.0, 100);
  std::vector<Point> ann;
  for (auto& p : pts) {
    double r = std::hypot(p[0], p[1]);
    if (r < 1e-3) continue;
    double scale = (0.4 + 0.6 * r) / std::max(r, 1e-12);
    ann.push_back({p[0] * scale, p[1] * scale});
  }
  s.overlap_samples[{"N", "S"}] = ann;
  s.overlap_samples[{"S", "N"}] = ann;

  s.complex_structure["N"] = flat_two_dim_complex();
  s.complex_structure["S"] = flat_two_dim_complex();
  return s;
}

}  // namespace gq
