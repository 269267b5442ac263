#ifndef GQ_INTEGRATE_HPP
#define GQ_INTEGRATE_HPP

#include <functional>
#include <string>
#include <vector>

#include "gq/forms.hpp"

namespace gq {

// A smooth map from the standard 2-simplex {(s,t): s,t>=0, s+t<=1} into one
// chart of the space, with optional analytic partials (ds, dt).
struct ParamTriangle {
  std::string chart;
  std::function<Point(double s, double t)> map;
  std::function<Point(double s, double t)> d_ds;  // optional
  std::function<Point(double s, double t)> d_dt;  // optional
};

struct TriangulatedCycle {
  const ChartedSpace* space = nullptr;
  std::vector<ParamTriangle> triangles;
};

struct IntegralResult {
  cplx value{};
  double error_estimate = 0.0;
};

// Integrate a 2-form over the cycle with a degree-7 symmetric triangle rule;
// `refinements` rounds of 4-way subdivision drive the Richardson error
// estimate. Throws (naming the triangle index) if a quadrature node leaves
// the declared chart domain.
IntegralResult integrate_cycle(const ChartForm& w, const TriangulatedCycle& S,
                               int refinements = 2);

// Full sphere triangulated through (theta,phi) rectangles, southern triangles
// in chart N and northern in chart S; orientation is d(theta)^d(phi).
TriangulatedCycle sphere_cycle(const ChartedSpace* sphere, int n_theta = 24);
// Spherical cap theta in [theta0, pi] (around the south pole), in chart N.
TriangulatedCycle sphere_cap_cycle(const ChartedSpace* sphere, double theta0,
                                   int n_theta = 24);
// A closed cycle whose image in the plane is a collapsed sphere (integral of
// any form vanishes by cancellation): used for exactness sanity checks.
TriangulatedCycle collapsed_plane_cycle(const ChartedSpace* plane,
                                        const std::string& chart, int n = 8);
// A degenerate (zero-area) cycle.
TriangulatedCycle degenerate_cycle(const ChartedSpace* space,
                                   const std::string& chart);

// Max edge mismatch over shared triangle edges (closed-cycle condition),
// comparing edge endpoints mapped into a common chart.
double cycle_edge_mismatch(const TriangulatedCycle& S);

// Adaptive Simpson quadrature for complex integrands on [a,b].
struct QuadResult {
  cplx value{};
  double error_estimate = 0.0;
  int evaluations = 0;
};
QuadResult adaptive_simpson(const std::function<cplx(double)>& f, double a,
                            double b, double tol = 1e-10, int max_depth = 40);

}  // namespace gq

#endif
