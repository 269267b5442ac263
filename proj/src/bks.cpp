#include "gq/bks.hpp"

#include <cmath>
#include <stdexcept>

#include "gq/integrate.hpp"

namespace gq {

double GridState::norm() const {
  double acc = 0.0;
  for (const cplx& v : values) acc += std::norm(v);
  double weight = label == GridLabel::Position
                      ? step()
                      : 2.0 * M_PI * hbar / (size() * step());
  return std::sqrt(weight * acc);
}

double GridState::tail_mass() const {
  int n = size();
  int edge = std::max(1, n / 10);
  double tail = 0.0, total = 0.0;
  for (int i = 0; i < n; ++i) {
    double m = std::norm(values[i]);
    total += m;
    if (i < edge || i >= n - edge) tail += m;
  }
  return total > 0 ? tail / total : 0.0;
}

GridState grid_state_from(int points, double half_width, double hbar,
                          const std::function<cplx(double)>& f) {
  GridState s;
  s.half_width = half_width;
  s.hbar = hbar;
  s.values.resize(points);
  for (int k = 0; k < points; ++k) s.values[k] = f(s.point(k));
  return s;
}

GridState gaussian_state(int points, double half_width, double hbar) {
  return grid_state_from(points, half_width, hbar, [hbar](double q) {
    return cplx(std::exp(-q * q / (2 * hbar)));
  });
}

Eigen::MatrixXcd bks_fourier_matrix(int points, double half_width,
                                    double hbar) {
  Eigen::MatrixXcd U(points, points);
  double h = 2.0 * half_width / points;
  double c = h / std::sqrt(2 * M_PI * hbar);
  for (int j = 0; j < points; ++j) {
    double p = (j - points / 2) * 2.0 * M_PI * hbar / (points * h);
    for (int k = 0; k < points; ++k) {
      double q = -half_width + (k + 0.5) * h;
      U(j, k) = c * std::exp(cplx(0, p * q / hbar));
    }
  }
  return U;
}

GridState bks_fourier_map(const GridState& psi) {
  if (psi.label != GridLabel::Position)
    throw std::invalid_argument("expected a position state");
  Eigen::MatrixXcd U =
      bks_fourier_matrix(psi.size(), psi.half_width, psi.hbar);
  Eigen::Map<const Eigen::VectorXcd> v(psi.values.data(), psi.size());
  Eigen::VectorXcd w = U * v;
  GridState out = psi;
  out.label = GridLabel::Momentum;
  out.half_form = HalfFormTag::SqrtDp;
  std::copy(w.data(), w.data() + w.size(), out.values.begin());
  out.tail_warning = psi.tail_mass() > 1e-10 || out.tail_mass() > 1e-10;
  return out;
}

GridState bks_fourier_inverse(const GridState& phi) {
  if (phi.label != GridLabel::Momentum)
    throw std::invalid_argument("expected a momentum state");
  int n = phi.size();
  double h = 2.0 * phi.half_width / n;
  double dp = 2.0 * M_PI * phi.hbar / (n * h);
  Eigen::MatrixXcd U = bks_fourier_matrix(n, phi.half_width, phi.hbar);
  // The weighted-inner-product inverse is (dp/h) U^dagger.
  Eigen::Map<const Eigen::VectorXcd> v(phi.values.data(), n);
  Eigen::VectorXcd w = (dp / h) * (U.adjoint() * v);
  GridState out = phi;
  out.label = GridLabel::Position;
  out.half_form = HalfFormTag::SqrtDq;
  std::copy(w.data(), w.data() + w.size(), out.values.begin());
  return out;
}

Eigen::MatrixXcd quantize_p2_pairing_matrix(int points, double half_width,
                                            double hbar) {
  Eigen::MatrixXcd U = bks_fourier_matrix(points, half_width, hbar);
  double h = 2.0 * half_width / points;
  double dp = 2.0 * M_PI * hbar / (points * h);
  Eigen::VectorXcd p2(points);
  for (int j = 0; j < points; ++j) {
    double p = (j - points / 2) * dp;
    p2(j) = p * p;
  }
  return (dp / h) * U.adjoint() * p2.asDiagonal() * U;
}

GridState quantize_p2_via_pairing(const GridState& psi) {
  GridState phi = bks_fourier_map(psi);
  for (int j = 0; j < phi.size(); ++j) {
    double p = phi.momentum(j);
    phi.values[j] *= p * p;
  }
  GridState out = bks_fourier_inverse(phi);
  out.tail_warning = phi.tail_warning;
  return out;
}

Profile gaussian_profile(double sigma) {
  Profile p;
  double s2 = sigma * sigma;
  p.g = [s2](double x) { return std::exp(-x * x / (2 * s2)); };
  p.g1 = [s2](double x) { return -x / s2 * std::exp(-x * x / (2 * s2)); };
  p.g2 = [s2](double x) {
    return (x * x / s2 - 1.0) / s2 * std::exp(-x * x / (2 * s2));
  };
  p.entire = [s2](cplx z) { return std::exp(-z * z / (2.0 * s2)); };
  p.support = 12.0 * sigma;
  return p;
}

namespace {

// Steepest-descent contour u = e^{i pi/4} s for entire profiles:
// I = e^{i pi/4} int g(q - e^{i pi/4} s) e^{-s^2/(2 hbar t)} ds.
cplx oscillatory_contour(const Profile& g, double q, double t, double hbar) {
  const cplx rot = std::polar(1.0, M_PI / 4);
  const double eps = hbar * t;
  const double width = std::sqrt(eps);
  // The Gaussian damping has width sqrt(eps); the profile factor can shift
  // the effective saddle by O(|q| eps), well inside a generous window.
  double S = width * (14.0 + 3.0 * std::abs(q));
  auto f = [&](double s) {
    return g.entire(q - rot * s) * std::exp(-s * s / (2 * eps));
  };
  QuadResult r = adaptive_simpson(f, -S, S, 1e-13);
  return rot * r.value;
}

// Fallback: stationary window plus two rounds of integration by parts on
// each tail.
cplx oscillatory_window(const Profile& g, double q, double t, double hbar,
                        double window) {
  const double eps = hbar * t;
  const double a = window * std::sqrt(eps);
  auto phase = [eps](double u) { return std::exp(cplx(0, u * u / (2 * eps))); };
  auto f0 = [&](double u) { return cplx(g.g(q - u)) * phase(u); };
  QuadResult win = adaptive_simpson(f0, -a, a, 1e-13);
  cplx acc = win.value;
  // One tail at a time; the lower tail is the mirror image u -> -u.
  for (int mirror = 0; mirror < 2; ++mirror) {
    double sgn = mirror == 0 ? 1.0 : -1.0;
    auto G0 = [&](double u) { return cplx(g.g(q - sgn * u)); };
    auto G0p = [&](double u) { return cplx(-sgn * g.g1(q - sgn * u)); };
    auto G0pp = [&](double u) { return cplx(g.g2(q - sgn * u)); };
    const cplx eoi = eps / cplx(0, 1);
    // int_a^inf G e = -(eps/i) G(a)/a e^{i a^2/2eps}
    //                + int_a^inf  -(eps/i) (G'/u - G/u^2) e du, twice.
    auto F1 = [&](double u) { return -eoi * (G0p(u) / u - G0(u) / (u * u)); };
    auto F1p = [&](double u) {
      return -eoi * (G0pp(u) / u - 2.0 * G0p(u) / (u * u) +
                     2.0 * G0(u) / (u * u * u));
    };
    cplx boundary1 = -eoi * G0(a) / a * phase(a);
    cplx boundary2 = -eoi * F1(a) / a * phase(a);
    // Remaining integral of F2 over the tail, integrated directly where the
    // phase is slow enough to matter little (bounded by its L1 mass).
    auto F2 = [&](double u) { return -eoi * (F1p(u) / u - F1(u) / (u * u)); };
    double B = std::max(a * 4, g.support + std::abs(q));
    QuadResult rem = adaptive_simpson(
        [&](double u) { return F2(u) * phase(u); }, a, B, 1e-12);
    acc += boundary1 + boundary2 + rem.value;
  }
  return acc;
}

}  // namespace

cplx oscillatory_integral(const Profile& g, double q, double t, double hbar,
                          double window) {
  if (t <= 0) throw std::invalid_argument("t must be positive");
  if (g.entire) return oscillatory_contour(g, q, t, hbar);
  return oscillatory_window(g, q, t, hbar, window);
}

std::vector<StationaryPhaseRow> stationary_phase_check(
    const Profile& g, const std::vector<double>& ts, double q, double hbar) {
  std::vector<StationaryPhaseRow> rows;
  const cplx phase = std::polar(1.0, M_PI / 4);
  for (double t : ts) {
    StationaryPhaseRow row;
    row.t = t;
    row.integral = oscillatory_integral(g, q, t, hbar);
    row.asymptote = std::sqrt(2 * M_PI * hbar * t) * phase *
                    (cplx(g.g(q)) + t * cplx(0, hbar / 2) * g.g2(q));
    row.relative_error =
        std::abs(row.integral - row.asymptote) / std::abs(row.integral);
    rows.push_back(row);
  }
  return rows;
}

StationaryPhaseQuantization quantize_p2_stationary_phase(
    const Profile& psi, int points, double half_width, double hbar,
    double t0) {
  StationaryPhaseQuantization out;
  GridState raw;
  raw.half_width = half_width;
  raw.hbar = hbar;
  raw.values.resize(points);
  auto F = [&](double t, double q) {
    return oscillatory_integral(psi, q, t, hbar) /
           std::sqrt(2 * M_PI * hbar * t);
  };
  for (int k = 0; k < points; ++k) {
    double q = raw.point(k);
    // Derivative at t = 0 from the quadratic through t0, t0/2, t0/4.
    cplx d = (-2.0 * F(t0, q) + 10.0 * F(t0 / 2, q) - 8.0 * F(t0 / 4, q)) / t0;
    raw.values[k] = cplx(0, hbar) * d;
  }
  out.raw = raw;
  out.normalized = raw;
  const cplx phase = std::polar(1.0, M_PI / 4);
  for (auto& v : out.normalized.values) v /= phase;
  // Phase offset against -(hbar^2/2) psi'' at the grid center.
  int mid = points / 2;
  double q0 = raw.point(mid);
  cplx target = -hbar * hbar / 2.0 * psi.g2(q0);
  out.phase_offset = std::arg(raw.values[mid] / target);
  return out;
}

}  // namespace gq
