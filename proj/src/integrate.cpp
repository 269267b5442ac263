#include "gq/integrate.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gq {

namespace {

// 13-point degree-7 symmetric rule on the standard simplex (weights sum to
// the simplex area 1/2).
struct TriNode {
  double s, t, w;
};
const std::vector<TriNode>& tri_rule13() {
  static const std::vector<TriNode> rule = [] {
    // Barycentric groups (a,a,a), 3x(a,b), 6x(a,b,c).
    std::vector<TriNode> r;
    auto push = [&r](double, double l2, double l3, double w) {
      r.push_back({l2, l3, w});  // x = l2, y = l3 for vertices (0,0),(1,0),(0,1)
    };
    const double w0 = -0.149570044467670 / 2.0;
    push(1.0 / 3, 1.0 / 3, 1.0 / 3, w0);
    const double a1 = 0.479308067841923, b1 = 0.260345966079038;
    const double w1 = 0.175615257433204 / 2.0;
    push(a1, b1, b1, w1);
    push(b1, a1, b1, w1);
    push(b1, b1, a1, w1);
    const double a2 = 0.869739794195568, b2 = 0.065130102902216;
    const double w2 = 0.053347235608839 / 2.0;
    push(a2, b2, b2, w2);
    push(b2, a2, b2, w2);
    push(b2, b2, a2, w2);
    const double a3 = 0.638444188569809, b3 = 0.312865496004875,
                 c3 = 0.048690315425316;
    const double w3 = 0.077113760890257 / 2.0;
    push(a3, b3, c3, w3);
    push(a3, c3, b3, w3);
    push(b3, a3, c3, w3);
    push(b3, c3, a3, w3);
    push(c3, a3, b3, w3);
    push(c3, b3, a3, w3);
    return r;
  }();
  return rule;
}

Point fd_partial(const std::function<Point(double, double)>& f, double s,
                 double t, bool wrt_s) {
  const double h = 1e-6;
  auto at = [&](double off) {
    return wrt_s ? f(s + off, t) : f(s, t + off);
  };
  Point p2 = at(2 * h), p1 = at(h), m1 = at(-h), m2 = at(-2 * h);
  Point r(p1.size());
  for (size_t i = 0; i < r.size(); ++i)
    r[i] = (-p2[i] + 8 * p1[i] - 8 * m1[i] + m2[i]) / (12 * h);
  return r;
}

cplx integrate_triangle_once(const ChartForm& w, const ParamTriangle& tri,
                             double s0, double t0, double scale,
                             size_t tri_index) {
  // Integrate over the sub-simplex with corner (s0,t0) and side `scale`.
  cplx acc = 0.0;
  const auto& space = *w.space();
  for (const auto& node : tri_rule13()) {
    double s = s0 + scale * node.s;
    double t = t0 + scale * node.t;
    Point x = tri.map(s, t);
    if (!space.chart(tri.chart).in_domain(x)) {
      std::ostringstream os;
      os << "triangle " << tri_index << " leaves chart " << tri.chart;
      throw std::domain_error(os.str());
    }
    Point us = tri.d_ds ? tri.d_ds(s, t) : fd_partial(tri.map, s, t, true);
    Point ut = tri.d_dt ? tri.d_dt(s, t) : fd_partial(tri.map, s, t, false);
    std::vector<std::vector<cplx>> vecs(2);
    vecs[0].assign(us.begin(), us.end());
    vecs[1].assign(ut.begin(), ut.end());
    acc += node.w * w.evaluate(tri.chart, x, vecs);
  }
  return acc * (scale * scale);
}

cplx integrate_triangle_level(const ChartForm& w, const ParamTriangle& tri,
                              int level, size_t tri_index) {
  // Uniform subdivision of the parameter simplex into 4^level copies.
  int n = 1 << level;
  double h = 1.0 / n;
  cplx acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j + i < n; ++j) {
      acc += integrate_triangle_once(w, tri, i * h, j * h, h, tri_index);
      // The "upper" companion triangle, parameterized with reversed sides to
      // keep orientation.
      if (j + i < n - 1) {
        ParamTriangle upper = tri;
        double si = (i + 1) * h, tj = (j + 1) * h;
        auto base = tri.map;
        upper.map = [base, si, tj, h](double s, double t) {
          return base(si - h * s, tj - h * t);
        };
        if (tri.d_ds) {
          auto ds = tri.d_ds;
          upper.d_ds = [ds, si, tj, h](double s, double t) {
            Point r = ds(si - h * s, tj - h * t);
            for (auto& v : r) v *= -h;
            return r;
          };
        } else {
          upper.d_ds = nullptr;
        }
        if (tri.d_dt) {
          auto dt = tri.d_dt;
          upper.d_dt = [dt, si, tj, h](double s, double t) {
            Point r = dt(si - h * s, tj - h * t);
            for (auto& v : r) v *= -h;
            return r;
          };
        } else {
          upper.d_dt = nullptr;
        }
        acc += integrate_triangle_once(w, upper, 0.0, 0.0, 1.0, tri_index);
      }
    }
  return acc;
}

}  // namespace

IntegralResult integrate_cycle(const ChartForm& w, const TriangulatedCycle& S,
                               int refinements) {
  if (w.degree() != 2)
    throw std::invalid_argument("cycle integration needs a 2-form");
  cplx coarse = 0.0, fine = 0.0;
  for (size_t k = 0; k < S.triangles.size(); ++k) {
    coarse += integrate_triangle_level(w, S.triangles[k],
                                       std::max(0, refinements - 1), k);
    fine += integrate_triangle_level(w, S.triangles[k], refinements, k);
  }
  IntegralResult r;
  // Degree-7 rule: subdivision reduces the error by ~2^-8.
  r.value = fine + (fine - coarse) / 255.0;
  r.error_estimate = std::abs(fine - coarse) / 255.0 + 1e-15;
  return r;
}

namespace {
Point sphere_point_in_chart(const std::string& chart, double theta,
                            double phi) {
  double x1 = std::sin(theta) * std::cos(phi);
  double x2 = std::sin(theta) * std::sin(phi);
  double x3 = std::cos(theta);
  return chart == "N" ? sphere_chart_N(x1, x2, x3) : sphere_chart_S(x1, x2, x3);
}

void push_rect(TriangulatedCycle& cyc, const std::string& chart, double th0,
               double th1, double ph0, double ph1) {
  // Two triangles covering [th0,th1]x[ph0,ph1], oriented by d(theta)^d(phi).
  auto map_lower = [chart, th0, th1, ph0, ph1](double s, double t) {
    return sphere_point_in_chart(chart, th0 + (th1 - th0) * s,
                                 ph0 + (ph1 - ph0) * t);
  };
  auto map_upper = [chart, th0, th1, ph0, ph1](double s, double t) {
    return sphere_point_in_chart(chart, th1 - (th1 - th0) * s,
                                 ph1 - (ph1 - ph0) * t);
  };
  cyc.triangles.push_back({chart, map_lower, nullptr, nullptr});
  cyc.triangles.push_back({chart, map_upper, nullptr, nullptr});
}
}  // namespace

TriangulatedCycle sphere_cycle(const ChartedSpace* sphere, int n_theta) {
  TriangulatedCycle cyc;
  cyc.space = sphere;
  int n_phi = 2 * n_theta;
  for (int i = 0; i < n_theta; ++i) {
    double th0 = M_PI * i / n_theta, th1 = M_PI * (i + 1) / n_theta;
    double mid = 0.5 * (th0 + th1);
    std::string chart = mid > M_PI / 2 ? "N" : "S";
    for (int j = 0; j < n_phi; ++j) {
      double ph0 = 2 * M_PI * j / n_phi, ph1 = 2 * M_PI * (j + 1) / n_phi;
      push_rect(cyc, chart, th0, th1, ph0, ph1);
    }
  }
  return cyc;
}

TriangulatedCycle sphere_cap_cycle(const ChartedSpace* sphere, double theta0,
                                   int n_theta) {
  TriangulatedCycle cyc;
  cyc.space = sphere;
  int n_phi = 2 * n_theta;
  for (int i = 0; i < n_theta; ++i) {
    double th0 = theta0 + (M_PI - theta0) * i / n_theta;
    double th1 = theta0 + (M_PI - theta0) * (i + 1) / n_theta;
    for (int j = 0; j < n_phi; ++j) {
      double ph0 = 2 * M_PI * j / n_phi, ph1 = 2 * M_PI * (j + 1) / n_phi;
      push_rect(cyc, "N", th0, th1, ph0, ph1);
    }
  }
  return cyc;
}

TriangulatedCycle collapsed_plane_cycle(const ChartedSpace* plane,
                                        const std::string& chart, int n) {
  // Map the sphere parameterization into the plane through (theta,phi) ->
  // (sin(theta)cos(phi), sin(theta)sin(phi)): a closed cycle with
  // cancelling double cover, so exact (indeed all) 2-forms integrate to 0.
  TriangulatedCycle cyc;
  cyc.space = plane;
  int n_phi = 2 * n;
  for (int i = 0; i < n; ++i) {
    double th0 = M_PI * i / n, th1 = M_PI * (i + 1) / n;
    for (int j = 0; j < n_phi; ++j) {
      double ph0 = 2 * M_PI * j / n_phi, ph1 = 2 * M_PI * (j + 1) / n_phi;
      auto mk = [th0, th1, ph0, ph1](bool flip) {
        return [th0, th1, ph0, ph1, flip](double s, double t) {
          double th = flip ? th1 - (th1 - th0) * s : th0 + (th1 - th0) * s;
          double ph = flip ? ph1 - (ph1 - ph0) * t : ph0 + (ph1 - ph0) * t;
          return Point{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph)};
        };
      };
      cyc.triangles.push_back({chart, mk(false), nullptr, nullptr});
      cyc.triangles.push_back({chart, mk(true), nullptr, nullptr});
    }
  }
  return cyc;
}

TriangulatedCycle degenerate_cycle(const ChartedSpace* space,
                                   const std::string& chart) {
  TriangulatedCycle cyc;
  cyc.space = space;
  int d = space->dimension;
  auto point_map = [d](double, double) { return Point(d, 0.1); };
  cyc.triangles.push_back({chart, point_map, nullptr, nullptr});
  return cyc;
}

double cycle_edge_mismatch(const TriangulatedCycle& S) {
  // Collect edge endpoint pairs in a common reference chart (first chart of
  // the space) and match each edge against the closest reversed edge.
  const auto& space = *S.space;
  const std::string ref = space.charts.front().label;
  struct Edge {
    Point a, b;
  };
  std::vector<Edge> edges;
  auto to_ref = [&](const std::string& chart, const Point& x) {
    if (chart == ref) return x;
    return space.apply_transition(chart, ref, x);
  };
  auto tame = [](const Point& x) {
    for (double v : x)
      if (!std::isfinite(v) || std::abs(v) > 1e6) return false;
    return true;
  };
  const double corners[3][2] = {{0, 0}, {1, 0}, {0, 1}};
  for (const auto& tri : S.triangles) {
    for (int e = 0; e < 3; ++e) {
      Point a = tri.map(corners[e][0], corners[e][1]);
      Point b = tri.map(corners[(e + 1) % 3][0], corners[(e + 1) % 3][1]);
      Point ra = to_ref(tri.chart, a), rb = to_ref(tri.chart, b);
      // Edges touching a chart singularity are checked in their own chart by
      // construction; skip them in the cross-chart matching.
      if (!tame(ra) || !tame(rb)) continue;
      edges.push_back({ra, rb});
    }
  }
  auto dist = [](const Point& u, const Point& v) {
    double m = 0;
    for (size_t i = 0; i < u.size(); ++i) m = std::max(m, std::abs(u[i] - v[i]));
    return m;
  };
  double worst = 0.0;
  for (size_t i = 0; i < edges.size(); ++i) {
    double best = 1e300;
    for (size_t j = 0; j < edges.size(); ++j) {
      if (i == j) continue;
      best = std::min(best, std::max(dist(edges[i].a, edges[j].b),
                                     dist(edges[i].b, edges[j].a)));
      best = std::min(best, std::max(dist(edges[i].a, edges[j].a),
                                     dist(edges[i].b, edges[j].b)));
    }
    // Degenerate edges (zero length) match themselves.
    if (dist(edges[i].a, edges[i].b) < 1e-14) best = 0.0;
    worst = std::max(worst, best);
  }
  return worst;
}

namespace {
QuadResult simpson_rec(const std::function<cplx(double)>& f, double a,
                       double b, cplx fa, cplx fm, cplx fb, cplx whole,
                       double tol, double noise_floor, int depth,
                       int max_depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  cplx flm = f(lm), frm = f(rm);
  cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  cplx delta = left + right - whole;
  QuadResult r;
  r.evaluations = 2;
  if (depth >= max_depth || std::abs(delta) <= 15.0 * tol ||
      std::abs(delta) <= noise_floor) {
    r.value = left + right + delta / 15.0;
    r.error_estimate = std::abs(delta) / 15.0;
    return r;
  }
  QuadResult rl = simpson_rec(f, a, m, fa, flm, fm, left, tol / 2,
                              noise_floor, depth + 1, max_depth);
  QuadResult rr = simpson_rec(f, m, b, fm, frm, fb, right, tol / 2,
                              noise_floor, depth + 1, max_depth);
  r.value = rl.value + rr.value;
  r.error_estimate = rl.error_estimate + rr.error_estimate;
  r.evaluations += rl.evaluations + rr.evaluations;
  return r;
}
}  // namespace

QuadResult adaptive_simpson(const std::function<cplx(double)>& f, double a,
                            double b, double tol, int max_depth) {
  cplx fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  // Roundoff floor from the magnitude profile of the integrand (the signed
  // integral may cancel): refinements below that level only chase noise.
  double mag = 0.0;
  const int probes = 33;
  for (int i = 0; i < probes; ++i)
    mag += std::abs(f(a + (b - a) * (i + 0.5) / probes));
  mag *= (b - a) / probes;
  double noise_floor = 1e-13 * mag;
  QuadResult r = simpson_rec(f, a, b, fa, fm, fb, whole,
                             std::max(tol, 5e-14 * std::abs(whole)),
                             noise_floor, 0, max_depth);
  r.evaluations += 3 + probes;
  r.error_estimate += noise_floor;
  return r;
}

}  // namespace gq
