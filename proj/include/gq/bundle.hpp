#ifndef GQ_BUNDLE_HPP
#define GQ_BUNDLE_HPP

#include <map>
#include <string>
#include <vector>

#include "gq/forms.hpp"
#include "gq/integrate.hpp"

namespace gq {

// A complex line bundle with connection, presented by cocycle data: local
// connection one-forms theta_alpha and transition functions g_{alpha beta}
// (section components transform as sigma_beta = g_{alpha beta} sigma_alpha).
struct LineBundleCocycle {
  const ChartedSpace* base = nullptr;
  double hbar = 1.0;
  ChartForm theta;  // degree-1 coefficients per chart (chart-local data)
  std::map<std::pair<std::string, std::string>, Field> transition;
  // Descriptor used by serialization (preset name + parameters + display
  // strings for the data).
  std::string preset;
  std::map<std::string, double> params;
  std::map<std::string, std::string> symbols;
};

struct CocycleReport {
  double inverse_residual = 0.0;   // |g_ba g_ab - 1|
  double triple_residual = 0.0;    // |g_ca g_bc g_ab - 1| (when 3+ charts)
  double connection_residual = 0.0;  // |(i/h)(theta_b - theta_a) - dg/g|
  bool pass(double tol = 1e-8) const {
    return inverse_residual <= tol && triple_residual <= tol &&
           connection_residual <= tol;
  }
};

// Residuals of the three cocycle conditions over the base's overlap samples.
// Hard error if a transition function vanishes at a sample point.
CocycleReport check_cocycle(const LineBundleCocycle& L);

struct CurvatureReport {
  double max_residual = 0.0;  // max |d theta_alpha - omega| / hbar
  bool pass(double tol = 1e-8) const { return max_residual <= tol; }
};

// Per chart, compares d theta_alpha with omega at the given sample points.
CurvatureReport curvature_check(const LineBundleCocycle& L, const ChartForm& w,
                                const std::vector<Point>& samples);

// Piecewise path through charts; each segment is a curve [0,1] -> chart.
struct PathSegment {
  std::string chart;
  std::function<Point(double)> curve;
  std::function<Point(double)> velocity;  // optional; finite differences else
};
struct PiecewisePath {
  std::vector<PathSegment> segments;
  bool closed = false;
};

struct TransportResult {
  cplx value{};
  double quadrature_error = 0.0;
};

// Parallel transport of the fiber value z0 along the path:
// z0 * prod_segments exp((i/hbar) int theta(gamma')) with transition factors
// applied at junctions. Throws when junction endpoints mismatch.
TransportResult parallel_transport(const LineBundleCocycle& L,
                                   const PiecewisePath& path, cplx z0,
                                   double tol = 1e-10);

struct WeilResult {
  double integral = 0.0;
  double nearest = 0.0;  // nearest 2 pi hbar integer
  long long k = 0;
  bool integral_class = false;
  double quadrature_error = 0.0;
};

WeilResult weil_integrality(const ChartForm& w, const TriangulatedCycle& cycle,
                            double hbar, double tol = 1e-8,
                            int refinements = 2);

LineBundleCocycle tensor_power(const LineBundleCocycle& L, int k);
LineBundleCocycle dual_bundle(const LineBundleCocycle& L);
// Isomorphism by unit-modulus chart functions tau_alpha:
// g -> tau_beta g tau_alpha^{-1}, theta -> theta + (hbar/i) dtau/tau.
LineBundleCocycle gauge_transform(const LineBundleCocycle& L,
                                  const std::map<std::string, Field>& tau);

// All p in [pmin,pmax] whose horizontal cylinder loop has trivial holonomy,
// located by a coarse scan plus bisection refinement on the holonomy phase.
std::vector<double> bohr_sommerfeld_scan(const LineBundleCocycle& L,
                                         double pmin, double pmax,
                                         int resolution = 10000,
                                         double tol = 1e-8);

// The horizontal loop at height p (one full positively-oriented circle).
PiecewisePath cylinder_loop(double p);

// Presets.
LineBundleCocycle cylinder_standard_bundle(const ChartedSpace* cyl,
                                           double hbar, double lambda = 0.0);
// Prequantum bundle of omega_k = 2 pi hbar k * (normalized area form) as
// installed by fubini_study_form: g_{NS} = z^k, theta_N = i hbar k
// zbar dz/(1+|z|^2).
LineBundleCocycle sphere_level_bundle(const ChartedSpace* sphere, int k,
                                      double hbar);
// The opposite-orientation presentation (transition z^{-k}, connection with
// the opposite sign); also a consistent cocycle, curvature -omega_k.
LineBundleCocycle sphere_level_bundle_opposite(const ChartedSpace* sphere,
                                               int k, double hbar);

// JSON descriptor round trip for named presets.
std::string bundle_to_json(const LineBundleCocycle& L);
LineBundleCocycle bundle_from_json(const std::string& text,
                                   const ChartedSpace* cyl,
                                   const ChartedSpace* sphere);

}  // namespace gq

#endif
