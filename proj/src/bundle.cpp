#include "gq/bundle.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace gq {

namespace {

// One-form coefficient vector of theta on a chart, evaluated at x.
std::vector<cplx> theta_at(const LineBundleCocycle& L, const std::string& chart,
                           std::span<const double> x) {
  const int d = L.base->dimension;
  std::vector<cplx> v(d);
  for (int i = 0; i < d; ++i) v[i] = L.theta.coeff_at(chart, {i}, x);
  return v;
}

}  // namespace

CocycleReport check_cocycle(const LineBundleCocycle& L) {
  CocycleReport rep;
  const auto& space = *L.base;
  const int d = space.dimension;
  for (const auto& [pair, samples] : space.overlap_samples) {
    const auto& [a, b] = pair;
    auto gab_it = L.transition.find({a, b});
    auto gba_it = L.transition.find({b, a});
    if (gab_it == L.transition.end() || gba_it == L.transition.end()) continue;
    const Field& gab = gab_it->second;
    const Field& gba = gba_it->second;
    for (const auto& x : samples) {
      cplx g1 = gab(x);
      if (std::abs(g1) < 1e-12)
        throw std::domain_error("transition function vanishes at a sample point");
      Point y = space.apply_transition(a, b, x);
      cplx g2 = gba(y);
      rep.inverse_residual =
          std::max(rep.inverse_residual, std::abs(g2 * g1 - 1.0));
      // Connection compatibility: (i/hbar)(theta_b - theta_a) = g^{-1} dg,
      // with theta_b pulled back to chart a.
      auto J = space.transition_jacobian(a, b, x);
      auto tb = theta_at(L, b, y);
      auto ta = theta_at(L, a, x);
      for (int i = 0; i < d; ++i) {
        cplx pulled = 0.0;
        for (int j = 0; j < d; ++j) pulled += tb[j] * J[j * d + i];
        cplx lhs = cplx(0, 1) / L.hbar * (pulled - ta[i]);
        cplx rhs = gab.d(i)(x) / g1;
        rep.connection_residual =
            std::max(rep.connection_residual, std::abs(lhs - rhs));
      }
      // Triple cocycle over any third chart whose transitions exist.
      for (const auto& cc : space.charts) {
        if (cc.label == a || cc.label == b) continue;
        auto gbc = L.transition.find({b, cc.label});
        auto gca = L.transition.find({cc.label, a});
        if (gbc == L.transition.end() || gca == L.transition.end()) continue;
        Point yc = space.apply_transition(b, cc.label, y);
        cplx prod = gca->second(yc) * gbc->second(y) * g1;
        rep.triple_residual =
            std::max(rep.triple_residual, std::abs(prod - 1.0));
      }
    }
  }
  return rep;
}

CurvatureReport curvature_check(const LineBundleCocycle& L, const ChartForm& w,
                                const std::vector<Point>& samples) {
  CurvatureReport rep;
  ChartForm dtheta = exterior_derivative(L.theta);
  const int d = L.base->dimension;
  for (const auto& chart : L.theta.chart_labels()) {
    if (!w.has_chart(chart)) continue;
    for (const auto& t : increasing_tuples(d, 2))
      for (const auto& x : samples) {
        if (!L.base->chart(chart).in_domain(x)) continue;
        cplx r = dtheta.coeff_at(chart, t, x) - w.coeff_at(chart, t, x);
        rep.max_residual = std::max(rep.max_residual, std::abs(r) / L.hbar);
      }
  }
  return rep;
}

TransportResult parallel_transport(const LineBundleCocycle& L,
                                   const PiecewisePath& path, cplx z0,
                                   double tol) {
  const auto& space = *L.base;
  TransportResult out;
  cplx log_sum = 0.0;
  cplx factor = 1.0;
  for (size_t s = 0; s < path.segments.size(); ++s) {
    const auto& seg = path.segments[s];
    auto vel = [&seg](double t) {
      if (seg.velocity) return seg.velocity(t);
      const double h = 1e-6;
      Point p2 = seg.curve(std::min(1.0, t + 2 * h));
      Point p1 = seg.curve(std::min(1.0, t + h));
      Point m1 = seg.curve(std::max(0.0, t - h));
      Point m2 = seg.curve(std::max(0.0, t - 2 * h));
      // Central stencil away from the ends, one-sided clamp otherwise.
      Point v(p1.size());
      if (t > 2 * h && t < 1 - 2 * h) {
        for (size_t i = 0; i < v.size(); ++i)
          v[i] = (-p2[i] + 8 * p1[i] - 8 * m1[i] + m2[i]) / (12 * h);
      } else {
        Point a = seg.curve(std::min(1.0, t + h));
        Point b = seg.curve(std::max(0.0, t - h));
        double dt = std::min(1.0, t + h) - std::max(0.0, t - h);
        for (size_t i = 0; i < v.size(); ++i) v[i] = (a[i] - b[i]) / dt;
      }
      return v;
    };
    auto integrand = [&](double t) {
      Point x = seg.curve(t);
      Point v = vel(t);
      auto th = theta_at(L, seg.chart, x);
      cplx acc = 0.0;
      for (size_t i = 0; i < th.size(); ++i) acc += th[i] * v[i];
      return acc;
    };
    QuadResult q = adaptive_simpson(integrand, 0.0, 1.0, tol);
    log_sum += q.value;
    out.quadrature_error += q.error_estimate;
    // Junction handling.
    if (s + 1 < path.segments.size() || path.closed) {
      const auto& next = path.segments[(s + 1) % path.segments.size()];
      Point end = seg.curve(1.0);
      Point start = next.curve(0.0);
      Point end_in_next = space.apply_transition(seg.chart, next.chart, end);
      double mismatch = 0.0;
      for (size_t i = 0; i < end_in_next.size(); ++i)
        mismatch = std::max(mismatch, std::abs(end_in_next[i] - start[i]));
      // Closed cylinder-style loops wrap an angular coordinate by 2 pi;
      // accept a 2 pi shift in any single coordinate.
      bool wrapped = false;
      for (size_t i = 0; i < end_in_next.size() && !wrapped; ++i) {
        double m = 0.0;
        for (size_t j = 0; j < end_in_next.size(); ++j) {
          double dj = std::abs(end_in_next[j] - start[j]);
          if (j == i) dj = std::min(dj, std::abs(dj - 2 * M_PI));
          m = std::max(m, dj);
        }
        if (m < 1e-8) wrapped = true;
      }
      if (mismatch > 1e-8 && !wrapped) {
        std::ostringstream os;
        os << "path junction mismatch after segment " << s;
        throw std::domain_error(os.str());
      }
      if (seg.chart != next.chart) {
        auto g = L.transition.find({seg.chart, next.chart});
        if (g == L.transition.end())
          throw std::domain_error("missing transition for path junction");
        factor *= g->second(end);
      }
    }
  }
  out.value = z0 * factor * std::exp(cplx(0, 1) / L.hbar * log_sum);
  return out;
}

WeilResult weil_integrality(const ChartForm& w, const TriangulatedCycle& cycle,
                            double hbar, double tol, int refinements) {
  IntegralResult r = integrate_cycle(w, cycle, refinements);
  WeilResult out;
  out.integral = r.value.real();
  out.quadrature_error = r.error_estimate + std::abs(r.value.imag());
  double unit = 2 * M_PI * hbar;
  out.k = std::llround(out.integral / unit);
  out.nearest = unit * static_cast<double>(out.k);
  out.integral_class = std::abs(out.integral - out.nearest) <= tol;
  return out;
}

LineBundleCocycle tensor_power(const LineBundleCocycle& L, int k) {
  if (k < 1) throw std::invalid_argument("tensor power needs k >= 1");
  LineBundleCocycle out = L;
  out.theta = scale(static_cast<double>(k), L.theta);
  for (auto& [key, g] : out.transition) g = fpow(L.transition.at(key), k);
  out.preset.clear();
  return out;
}

LineBundleCocycle dual_bundle(const LineBundleCocycle& L) {
  LineBundleCocycle out = L;
  out.theta = scale(-1.0, L.theta);
  for (auto& [key, g] : out.transition) g = finv(L.transition.at(key));
  out.preset.clear();
  return out;
}

LineBundleCocycle gauge_transform(const LineBundleCocycle& L,
                                  const std::map<std::string, Field>& tau) {
  LineBundleCocycle out = L;
  const int d = L.base->dimension;
  ChartForm theta(L.base, 1);
  for (const auto& chart : L.theta.chart_labels()) {
    const Field& t = tau.at(chart);
    for (int i = 0; i < d; ++i) {
      // theta + (hbar/i) tau^{-1} dtau
      Field comp = L.theta.coeff(chart, i) +
                   cplx(0, -L.hbar) * (t.d(i) * finv(t));
      theta.set_coeff(chart, {i}, comp);
    }
  }
  out.theta = theta;
  for (auto& [key, g] : out.transition) {
    const auto& [a, b] = key;
    // g' = tau_b(y) g tau_a(x)^{-1} as a function on chart a.
    Field ta = tau.at(a), tb = tau.at(b);
    const ChartedSpace* base = L.base;
    Field old = L.transition.at(key);
    g = Field::from_eval(d, [base, a, b, ta, tb, old](
                                std::span<const double> x) {
      Point y = base->apply_transition(a, b, x);
      return tb(y) * old(x) / ta(x);
    });
  }
  out.preset.clear();
  return out;
}

PiecewisePath cylinder_loop(double p) {
  PiecewisePath path;
  PathSegment seg;
  seg.chart = "cyl";
  seg.curve = [p](double t) { return Point{2 * M_PI * t, p}; };
  seg.velocity = [](double) { return Point{2 * M_PI, 0.0}; };
  path.segments.push_back(seg);
  path.closed = true;
  return path;
}

std::vector<double> bohr_sommerfeld_scan(const LineBundleCocycle& L,
                                         double pmin, double pmax,
                                         int resolution, double tol) {
  auto phase = [&](double p) {
    TransportResult t = parallel_transport(L, cylinder_loop(p), 1.0, 1e-12);
    return std::arg(t.value);
  };
  auto distance = [&](double p) {
    TransportResult t = parallel_transport(L, cylinder_loop(p), 1.0, 1e-12);
    return std::abs(t.value - 1.0);
  };
  std::vector<double> hits;
  double prev_phase = phase(pmin);
  double prev_p = pmin;
  for (int i = 1; i <= resolution; ++i) {
    double p = pmin + (pmax - pmin) * i / resolution;
    double ph = phase(p);
    // A trivial-holonomy point is a zero crossing of the phase (mod 2 pi).
    if ((prev_phase <= 0 && ph > 0) || (prev_phase >= 0 && ph < 0)) {
      if (std::abs(prev_phase) < M_PI / 2 && std::abs(ph) < M_PI / 2) {
        double lo = prev_p, hi = p;
        for (int it = 0; it < 100; ++it) {
          double mid = 0.5 * (lo + hi);
          double pm = phase(mid);
          if ((phase(lo) <= 0) == (pm <= 0))
            lo = mid;
          else
            hi = mid;
        }
        double root = 0.5 * (lo + hi);
        if (distance(root) <= tol) {
          if (hits.empty() || std::abs(hits.back() - root) > 1e-9)
            hits.push_back(root);
        }
      }
    }
    prev_phase = ph;
    prev_p = p;
  }
  // Endpoint roots (phase exactly zero at the boundary of the range).
  for (double edge : {pmin, pmax})
    if (distance(edge) <= tol) {
      bool dup = false;
      for (double h : hits)
        if (std::abs(h - edge) < 1e-9) dup = true;
      if (!dup) hits.push_back(edge);
    }
  std::sort(hits.begin(), hits.end());
  return hits;
}

LineBundleCocycle cylinder_standard_bundle(const ChartedSpace* cyl,
                                           double hbar, double lambda) {
  LineBundleCocycle L;
  L.base = cyl;
  L.hbar = hbar;
  ChartForm theta(cyl, 1);
  // p dphi + hbar lambda dphi.
  theta.set_coeff("cyl", {0},
                  Field::coordinate(2, 1) +
                      Field::constant(2, hbar * lambda));
  theta.set_coeff("cyl", {1}, Field::constant(2, 0.0));
  L.theta = theta;
  L.preset = "cylinder-standard";
  L.params = {{"hbar", hbar}, {"lambda", lambda}};
  L.symbols = {{"theta_cyl", "(p + hbar*lambda) dphi"}};
  return L;
}

namespace {
// c * zbar dz/(1+|z|^2) as a real-coordinate one-form on a 2d chart.
void set_sphere_theta(ChartForm& theta, const std::string& chart, cplx c) {
  Field a = Field::coordinate(2, 0), b = Field::coordinate(2, 1);
  Field denom = finv(Field::constant(2, 1.0) + a * a + b * b);
  // zbar dz = (a - ib)(da + i db).
  Field zbar = a + cplx(0, -1) * b;
  theta.set_coeff(chart, {0}, c * (zbar * denom));
  theta.set_coeff(chart, {1}, (c * cplx(0, 1)) * (zbar * denom));
}

Field power_transition(int k) {
  // z^k as a complex-valued field of (a,b); analytic partials.
  Field a = Field::coordinate(2, 0), b = Field::coordinate(2, 1);
  Field z = a + cplx(0, 1) * b;
  return fpow(z, k);
}
}  // namespace

LineBundleCocycle sphere_level_bundle(const ChartedSpace* sphere, int k,
                                      double hbar) {
  LineBundleCocycle L;
  L.base = sphere;
  L.hbar = hbar;
  ChartForm theta(sphere, 1);
  set_sphere_theta(theta, "N", cplx(0, hbar * k));
  set_sphere_theta(theta, "S", cplx(0, hbar * k));
  L.theta = theta;
  // g_{NS}(z) = z^k on chart N; its inverse expressed on chart S is w^k.
  L.transition[{"N", "S"}] = power_transition(k);
  L.transition[{"S", "N"}] = power_transition(k);
  L.preset = "sphere-Lk";
  L.params = {{"hbar", hbar}, {"k", static_cast<double>(k)}};
  L.symbols = {{"g_NS", "z^" + std::to_string(k)},
               {"theta_N", "i*hbar*k*conj(z)/(1+|z|^2) dz"},
               {"theta_S", "i*hbar*k*conj(w)/(1+|w|^2) dw"}};
  return L;
}

LineBundleCocycle sphere_level_bundle_opposite(const ChartedSpace* sphere,
                                               int k, double hbar) {
  LineBundleCocycle L;
  L.base = sphere;
  L.hbar = hbar;
  ChartForm theta(sphere, 1);
  set_sphere_theta(theta, "N", cplx(0, -hbar * k));
  set_sphere_theta(theta, "S", cplx(0, -hbar * k));
  L.theta = theta;
  L.transition[{"N", "S"}] = power_transition(-k);
  L.transition[{"S", "N"}] = power_transition(-k);
  L.preset = "sphere-Lk-opposite";
  L.params = {{"hbar", hbar}, {"k", static_cast<double>(k)}};
  L.symbols = {{"g_NS", "z^-" + std::to_string(k)},
               {"theta_N", "-i*hbar*k*conj(z)/(1+|z|^2) dz"}};
  return L;
}

std::string bundle_to_json(const LineBundleCocycle& L) {
  nlohmann::json j;
  j["schema"] = "1";
  j["preset"] = L.preset;
  j["params"] = L.params;
  std::vector<std::string> charts;
  for (const auto& c : L.base->charts) charts.push_back(c.label);
  j["charts"] = charts;
  j["hbar"] = L.hbar;
  j["symbols"] = L.symbols;
  return j.dump(2);
}

LineBundleCocycle bundle_from_json(const std::string& text,
                                   const ChartedSpace* cyl,
                                   const ChartedSpace* sphere) {
  auto j = nlohmann::json::parse(text);
  std::string preset = j.at("preset");
  double hbar = j.at("hbar");
  if (preset == "cylinder-standard") {
    double lambda = j.at("params").value("lambda", 0.0);
    return cylinder_standard_bundle(cyl, hbar, lambda);
  }
  if (preset == "sphere-Lk") {
    int k = static_cast<int>(j.at("params").value("k", 1.0));
    return sphere_level_bundle(sphere, k, hbar);
  }
  if (preset == "sphere-Lk-opposite") {
    int k = static_cast<int>(j.at("params").value("k", 1.0));
    return sphere_level_bundle_opposite(sphere, k, hbar);
  }
  throw std::invalid_argument("unknown bundle preset: " + preset);
}

}  // namespace gq
