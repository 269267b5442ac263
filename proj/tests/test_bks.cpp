#include <cmath>
#include <complex>

#include "doctest.h"
#include "gq/bks.hpp"

using namespace gq;

namespace {

// Closed-form oracle for the Gaussian oscillatory integral
// int exp(-(q-u)^2/(2 s^2)) exp(i u^2/(2 eps)) du with eps = hbar t.
cplx gaussian_oscillatory_exact(double q, double t, double hbar,
                                double sigma) {
  double s2 = sigma * sigma;
  double eps = hbar * t;
  cplx A = cplx(1.0 / (2 * s2), -1.0 / (2 * eps));
  cplx val = std::sqrt(M_PI / A) *
             std::exp(q * q / (4 * s2 * s2 * A) - q * q / (2 * s2));
  return val;
}

GridState band_limited_gaussian(int n, double L, double hbar) {
  return gaussian_state(n, L, hbar);
}

}  // namespace

TEST_CASE("fourier pairing map") {
  const int n = 256;
  const double L = 10.0, hbar = 1.0;
  SUBCASE("the gaussian is a fixed point") {
    GridState psi = band_limited_gaussian(n, L, hbar);
    GridState phi = bks_fourier_map(psi);
    CHECK(!phi.tail_warning);
    for (int j = 0; j < n; ++j) {
      double p = phi.momentum(j);
      CHECK(std::abs(phi.values[j] - std::exp(-p * p / (2 * hbar))) < 1e-10);
    }
  }
  SUBCASE("norm preservation") {
    GridState psi = grid_state_from(n, L, hbar, [](double q) {
      return cplx(std::exp(-q * q / 2) * (1.0 + 0.3 * q),
                  0.2 * std::exp(-q * q / 3));
    });
    GridState phi = bks_fourier_map(psi);
    CHECK(std::abs(phi.norm() - psi.norm()) < 1e-10);
  }
  SUBCASE("round trip is the identity on band-limited states") {
    GridState psi = band_limited_gaussian(n, L, hbar);
    GridState back = bks_fourier_inverse(bks_fourier_map(psi));
    double worst = 0.0;
    for (int k = 0; k < n; ++k)
      worst = std::max(worst, std::abs(back.values[k] - psi.values[k]));
    CHECK(worst < 1e-10);
  }
  SUBCASE("translation becomes a phase") {
    const double a = 0.8;
    GridState psi = band_limited_gaussian(n, L, hbar);
    GridState shifted = grid_state_from(n, L, hbar, [a](double q) {
      return cplx(std::exp(-(q - a) * (q - a) / 2));
    });
    GridState U1 = bks_fourier_map(psi);
    GridState U2 = bks_fourier_map(shifted);
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
      double p = U1.momentum(j);
      cplx expect = std::exp(cplx(0, p * a / hbar)) * U1.values[j];
      worst = std::max(worst, std::abs(U2.values[j] - expect));
    }
    CHECK(worst < 1e-9);
  }
  SUBCASE("fat tails raise the warning") {
    GridState psi = grid_state_from(n, L, hbar, [](double q) {
      return cplx(1.0 / (1.0 + q * q));
    });
    GridState phi = bks_fourier_map(psi);
    CHECK(phi.tail_warning);
  }
}

TEST_CASE("p^2 through the pairing") {
  const int n = 256;
  const double L = 10.0, hbar = 1.0;
  SUBCASE("gaussian against the analytic second derivative") {
    GridState psi = band_limited_gaussian(n, L, hbar);
    GridState out = quantize_p2_via_pairing(psi);
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      double q = psi.point(k);
      double expect = (hbar - q * q) * std::exp(-q * q / (2 * hbar));
      worst = std::max(worst, std::abs(out.values[k] - cplx(-1.0) *
                                                           cplx(-expect)));
    }
    CHECK(worst < 1e-6);
  }
  SUBCASE("constants are annihilated on the periodic momentum grid") {
    GridState one = grid_state_from(n, L, hbar, [](double) { return cplx(1); });
    GridState out = quantize_p2_via_pairing(one);
    double worst = 0.0;
    for (const auto& v : out.values) worst = std::max(worst, std::abs(v));
    CHECK(worst < 1e-10);
  }
  SUBCASE("linearity") {
    GridState a = band_limited_gaussian(n, L, hbar);
    GridState b = grid_state_from(n, L, hbar, [](double q) {
      return cplx(q * std::exp(-q * q / 2));
    });
    GridState sum = a;
    for (int k = 0; k < n; ++k)
      sum.values[k] = 2.0 * a.values[k] + cplx(0, 1) * b.values[k];
    GridState qa = quantize_p2_via_pairing(a);
    GridState qb = quantize_p2_via_pairing(b);
    GridState qs = quantize_p2_via_pairing(sum);
    double worst = 0.0;
    for (int k = 0; k < n; ++k)
      worst = std::max(worst,
                       std::abs(qs.values[k] - 2.0 * qa.values[k] -
                                cplx(0, 1) * qb.values[k]));
    CHECK(worst < 1e-9);
  }
  SUBCASE("matrix form matches the stencil on smooth states") {
    Eigen::MatrixXcd M = quantize_p2_pairing_matrix(n, L, hbar);
    GridState psi = band_limited_gaussian(n, L, hbar);
    Eigen::Map<const Eigen::VectorXcd> v(psi.values.data(), n);
    Eigen::VectorXcd lhs = M * v;
    // Fourth-order second-derivative stencil times -hbar^2.
    double h = psi.step();
    Eigen::VectorXcd rhs(n);
    for (int i = 0; i < n; ++i) {
      auto at = [&](int j) {
        return (j >= 0 && j < n) ? psi.values[j] : cplx(0);
      };
      cplx d2 = (-at(i - 2) + 16.0 * at(i - 1) - 30.0 * at(i) +
                 16.0 * at(i + 1) - at(i + 2)) /
                (12.0 * h * h);
      rhs(i) = -hbar * hbar * d2;
    }
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-4);
  }
}

TEST_CASE("oscillatory integral quadrature against the exact gaussian") {
  Profile g = gaussian_profile(1.0);
  const double hbar = 1.0;
  for (double q : {0.0, 0.7, -1.3}) {
    for (double t : {1e-1, 1e-2, 1e-3, 1e-4}) {
      cplx exact = gaussian_oscillatory_exact(q, t, hbar, 1.0);
      cplx numeric = oscillatory_integral(g, q, t, hbar);
      CHECK(std::abs(numeric - exact) / std::abs(exact) < 1e-9);
    }
  }
  SUBCASE("the window-plus-parts fallback holds at moderate t") {
    Profile fallback = g;
    fallback.entire = nullptr;
    for (double t : {1e-1, 1e-2}) {
      cplx exact = gaussian_oscillatory_exact(0.3, t, hbar, 1.0);
      cplx numeric = oscillatory_integral(fallback, 0.3, t, hbar);
      CHECK(std::abs(numeric - exact) / std::abs(exact) < 1e-4);
    }
  }
  SUBCASE("nonpositive t is rejected") {
    CHECK_THROWS_AS(oscillatory_integral(g, 0.0, 0.0, hbar),
                    std::invalid_argument);
  }
}

TEST_CASE("stationary phase asymptote") {
  Profile g = gaussian_profile(1.0);
  const double hbar = 1.0;
  SUBCASE("relative error at t = 1e-3 is below one percent") {
    auto rows = stationary_phase_check(g, {1e-3}, 0.0, hbar);
    CHECK(rows[0].relative_error < 0.01);
  }
  SUBCASE("halving t quarters the error across a decade") {
    std::vector<double> ts;
    for (int k = 0; k <= 4; ++k) ts.push_back(1e-2 / (1 << k));
    auto rows = stationary_phase_check(g, ts, 0.0, hbar);
    double ratio_product = 1.0;
    for (size_t i = 1; i < rows.size(); ++i) {
      double ratio = rows[i].relative_error / rows[i - 1].relative_error;
      CHECK(ratio > 0.15);
      CHECK(ratio < 0.4);
      ratio_product *= ratio;
    }
    double geometric_mean = std::pow(ratio_product, 1.0 / (rows.size() - 1));
    CHECK(geometric_mean > 0.2);
    CHECK(geometric_mean < 0.3);
  }
  SUBCASE("the leading phase is pi/4") {
    auto rows = stationary_phase_check(g, {1e-4}, 0.0, hbar);
    cplx lead = rows[0].integral / std::sqrt(2 * M_PI * hbar * 1e-4);
    double phase = std::arg(lead / g.g(0.0));
    CHECK(std::abs(phase - M_PI / 4) < 1e-3);
  }
}

TEST_CASE("p^2/2 by the flow-and-pairing limit") {
  const int n = 64;
  const double L = 6.0, hbar = 1.0;
  Profile g = gaussian_profile(1.0);
  auto result = quantize_p2_stationary_phase(g, n, L, hbar, 1e-2);
  SUBCASE("magnitude reproduces (hbar^2/2) |psi''| within one percent") {
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      double q = result.raw.point(k);
      double target = 0.5 * hbar * hbar * std::abs(g.g2(q));
      if (target < 1e-3) continue;  // psi'' vanishes near |q| = sigma
      worst = std::max(worst,
                       std::abs(std::abs(result.raw.values[k]) - target) /
                           target);
    }
    CHECK(worst < 0.01);
  }
  SUBCASE("the raw phase offset is pi/4") {
    CHECK(std::abs(result.phase_offset - M_PI / 4) < 1e-3);
  }
  SUBCASE("after the phase, both routes agree") {
    GridState psi = grid_state_from(n, L, hbar,
                                    [&](double q) { return cplx(g.g(q)); });
    GridState pairing = quantize_p2_via_pairing(psi);
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      // normalized is Q_{p^2/2}; the pairing operator is Q_{p^2}.
      cplx lhs = 2.0 * result.normalized.values[k];
      worst = std::max(worst, std::abs(lhs - pairing.values[k]));
    }
    CHECK(worst < 1e-3);
  }
  SUBCASE("normalized route matches minus half the second derivative") {
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      double q = result.raw.point(k);
      cplx target = -0.5 * hbar * hbar * g.g2(q);
      worst = std::max(worst, std::abs(result.normalized.values[k] - target));
    }
    CHECK(worst < 1e-3);
  }
}

TEST_CASE("the bracket rule survives the pairing extension") {
  const int n = 128;
  const double L = 8.0, hbar = 1.0;
  Eigen::MatrixXcd P2 = quantize_p2_pairing_matrix(n, L, hbar);
  Eigen::MatrixXcd Qp2half = 0.5 * P2;
  Eigen::MatrixXcd Q = Eigen::MatrixXcd::Zero(n, n);
  double h = 2.0 * L / n;
  for (int i = 0; i < n; ++i) Q(i, i) = -L + (i + 0.5) * h;
  // Fourth-order stencil momentum.
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(n, n);
  const int off[4] = {-2, -1, 1, 2};
  const double w[4] = {1.0 / 12, -8.0 / 12, 8.0 / 12, -1.0 / 12};
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < 4; ++k) {
      int j = i + off[k];
      if (j >= 0 && j < n) P(i, j) += cplx(0, -hbar) * w[k] / h;
    }
  // [Q_q, Q_{p^2/2}] = i hbar Q_p on smooth states.
  Eigen::MatrixXcd R = Q * Qp2half - Qp2half * Q - cplx(0, hbar) * P;
  Eigen::VectorXcd psi(n);
  for (int i = 0; i < n; ++i) {
    double q = -L + (i + 0.5) * h;
    psi(i) = std::exp(-q * q / 2) * (1.0 + 0.2 * q);
  }
  double resid = (R * psi).cwiseAbs().maxCoeff() / psi.cwiseAbs().maxCoeff();
  CHECK(resid < 1e-3);
}
