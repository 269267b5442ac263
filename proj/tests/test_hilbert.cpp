#include <cmath>
#include <set>

#include "doctest.h"
#include "gq/hilbert.hpp"
#include "gq/integrate.hpp"

using namespace gq;

namespace {

// Quadrature oracle for the Gaussian-weight inner product
// (1/2 pi hbar) int z^m conj(z)^n exp(-|z|^2 / 2 hbar) dA in polar form.
cplx bargmann_inner_quadrature(int m, int n, double hbar) {
  // Full 2-d polar quadrature: periodic trapezoid in the angle (exact for
  // trigonometric polynomials below the step count) times a fixed composite
  // Simpson rule in the radius. Fixed rules sidestep the adaptive
  // pathologies of integrands that cancel to roundoff.
  const int steps = 64;
  auto radial = [&](double r) {
    cplx acc = 0.0;
    for (int j = 0; j < steps; ++j) {
      double a = 2 * M_PI * j / steps;
      cplx z = std::polar(r, a);
      cplx zm = 1.0, zn = 1.0;
      for (int t = 0; t < m; ++t) zm *= z;
      for (int t = 0; t < n; ++t) zn *= z;
      acc += zm * std::conj(zn);
    }
    acc *= 2 * M_PI / steps;
    return acc * std::exp(-r * r / (2 * hbar)) * r;
  };
  double R = std::sqrt(2 * hbar) * (6.0 + std::sqrt(8.0 * std::max(m, n)));
  const int panels = 16384;
  double h = R / panels;
  cplx acc = radial(0.0) + radial(R);
  for (int i = 1; i < panels; ++i)
    acc += (i % 2 ? 4.0 : 2.0) * radial(i * h);
  return acc * (h / 3.0) / (2 * M_PI * hbar);
}

// Quadrature oracle for the sphere inner product diagonal:
// 2 int_0^inf r^{2a+1} (1+r^2)^{-(k+2)} dr  (the 1/pi measure times the
// 2 pi angular factor).
double sphere_inner_quadrature(int k, int a) {
  auto f = [&](double t) {
    // substitute r = tan(t) to compactify
    double r = std::tan(t);
    double dr = 1.0 + r * r;
    return cplx(2.0 * std::pow(r, 2 * a + 1) *
                std::pow(1.0 + r * r, -(k + 2.0)) * dr);
  };
  QuadResult q = adaptive_simpson(f, 0.0, M_PI / 2 - 1e-12, 1e-12);
  return q.value.real();
}

}  // namespace

TEST_CASE("bargmann space") {
  const double hbar = 1.0;
  auto sp = bargmann_space(8, hbar);
  SUBCASE("gram is diagonal and positive with ratio 2 hbar (n+1)") {
    CHECK(sp.hermiticity_defect() == 0.0);
    CHECK(sp.min_gram_eigenvalue() > 0.0);
    for (int n = 0; n < 8; ++n) {
      double ratio = (sp.gram(n + 1, n + 1) / sp.gram(n, n)).real();
      // frozen from the radial Gaussian integral: <z^{n+1}>/<z^n> = 2h(n+1)
      CHECK(ratio == doctest::Approx(2 * hbar * (n + 1)).epsilon(1e-14));
    }
  }
  SUBCASE("closed form against the polar quadrature oracle") {
    for (int m = 0; m <= 8; ++m)
      for (int n = 0; n <= 8; ++n) {
        cplx oracle = bargmann_inner_quadrature(m, n, hbar);
        cplx stored = sp.gram(m, n);
        CHECK(std::abs(oracle - stored) <=
              1e-9 * std::max(1.0, std::abs(stored)));
      }
  }
  SUBCASE("vacuum pairs with the first excited state to zero") {
    CHECK(std::abs(bargmann_inner_quadrature(0, 1, hbar)) < 1e-11);
    CHECK(sp.gram(0, 1) == cplx(0.0));
  }
  SUBCASE("hbar scaling of the diagonal") {
    auto sp2 = bargmann_space(4, 0.5);
    // <z^n, z^n> = n! (2 hbar)^n with <1,1> = 1.
    CHECK(sp2.gram(3, 3).real() == doctest::Approx(6.0 * 1.0).epsilon(1e-13));
  }
}

TEST_CASE("harmonic oscillator spectrum") {
  SUBCASE("half-form corrected: hbar (n + 1/2)") {
    auto sp = bargmann_space(5, 1.0);
    auto H = quantize_harmonic_oscillator(sp);
    auto ev = real_spectrum(H);
    REQUIRE(ev.size() == 6);
    for (int n = 0; n <= 5; ++n)
      CHECK(std::abs(ev[n] - (n + 0.5)) < 1e-14);
    // Ground state is an eigenvector with value hbar/2.
    CHECK(std::abs(H.matrix(0, 0) - cplx(0.5)) < 1e-15);
  }
  SUBCASE("uncorrected variant misses the half") {
    auto sp = bargmann_space(5, 1.0);
    sp.half_form = false;
    auto H = quantize_harmonic_oscillator(sp);
    auto ev = real_spectrum(H);
    for (int n = 0; n <= 5; ++n) CHECK(std::abs(ev[n] - n) < 1e-14);
  }
  SUBCASE("exactness at a large cutoff") {
    auto sp = bargmann_space(32, 1.0);
    auto ev = real_spectrum(quantize_harmonic_oscillator(sp));
    double worst = 0.0;
    for (int n = 0; n <= 32; ++n)
      worst = std::max(worst, std::abs(ev[n] - (n + 0.5)));
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("sphere spaces") {
  SUBCASE("dimension is level + 1") {
    for (int k = 0; k <= 10; ++k) {
      auto sp = sphere_space(k, 1.0);
      CHECK(sp.dim() == k + 1);
      CHECK(sp.min_gram_eigenvalue() > 0.0);
    }
  }
  SUBCASE("closed form against quadrature for levels up to six") {
    for (int k = 0; k <= 6; ++k)
      for (int a = 0; a <= k; ++a) {
        double oracle = sphere_inner_quadrature(k, a);
        CHECK(std::abs(oracle - sphere_gram_diagonal(k, a)) < 1e-8);
      }
  }
  SUBCASE("the norm of z^{k+1} diverges") {
    for (int k = 0; k <= 6; ++k) {
      CHECK(sphere_norm_diverges(k, k + 1));
      CHECK(!sphere_norm_diverges(k, k));
    }
  }
}

TEST_CASE("cylinder momentum operator and vacuum angles") {
  SUBCASE("spectrum at lambda = 0") {
    auto op = cylinder_vertical_quantize_p(0.0, 2, 1.0);
    auto ev = real_spectrum(op);
    std::vector<double> expect{-2, -1, 0, 1, 2};
    REQUIRE(ev.size() == expect.size());
    for (size_t i = 0; i < ev.size(); ++i)
      CHECK(std::abs(ev[i] - expect[i]) < 1e-14);
  }
  SUBCASE("lambda shifts the tower rigidly") {
    auto op = cylinder_vertical_quantize_p(0.25, 3, 0.5);
    auto ev = real_spectrum(op);
    for (int i = 0; i < 7; ++i)
      CHECK(std::abs(ev[i] - 0.5 * ((i - 3) - 0.25)) < 1e-14);
  }
  SUBCASE("integer angles give the same spectrum as a set") {
    const int K = 8;
    auto a = real_spectrum(cylinder_vertical_quantize_p(0.0, K, 1.0));
    auto b = real_spectrum(cylinder_vertical_quantize_p(1.0, K, 1.0));
    // Compare on the common window (cutoffs compensate at the edges).
    std::set<long long> sa, sb;
    for (double v : a)
      if (std::abs(v) <= K - 1 + 0.5) sa.insert(std::llround(v * (1 << 20)));
    for (double v : b)
      if (std::abs(v) <= K - 1 + 0.5) sb.insert(std::llround(v * (1 << 20)));
    CHECK(sa == sb);
  }
  SUBCASE("half-integer angle is spectrally disjoint from zero") {
    const int K = 6;
    auto a = real_spectrum(cylinder_vertical_quantize_p(0.0, K, 1.0));
    auto b = real_spectrum(cylinder_vertical_quantize_p(0.5, K, 1.0));
    for (double va : a)
      for (double vb : b) CHECK(std::abs(va - vb) > 0.49);
  }
}

TEST_CASE("cohomological cylinder modes") {
  const double hbar = 1.0;
  SUBCASE("mode count and centers") {
    auto modes = cohomological_basis_cylinder(3, hbar, hbar / 4);
    CHECK(modes.size() == 7);
    for (const auto& m : modes) CHECK(m.center == hbar * m.k);
  }
  SUBCASE("width precondition") {
    CHECK_THROWS_AS(cohomological_basis_cylinder(2, hbar, 0.6 * hbar),
                    std::invalid_argument);
  }
  SUBCASE("bump profile is normalized") {
    double w = hbar / 4;
    auto f = [w](double x) { return cplx(bump_eta(x, w)); };
    auto q = adaptive_simpson(f, -w, w, 1e-12);
    CHECK(std::abs(q.value.real() - 1.0) < 1e-10);
    CHECK(bump_eta(0.0, w) > 0.0);
  }
  SUBCASE("modes centered on the quantized momenta are not exact") {
    double w = hbar / 4;
    for (int k : {-2, 0, 1, 3}) {
      auto centered = [k, w, hbar](double p) {
        return bump_eta(p - hbar * k, w);
      };
      CHECK(!mode_is_exact(k, centered, hbar));
      // Shifting the bump so it vanishes at the quantized momentum makes the
      // mode exact.
      auto shifted = [k, w, hbar](double p) {
        return bump_eta(p - hbar * k - hbar / 4, w);
      };
      CHECK(mode_is_exact(k, shifted, hbar));
    }
  }
  SUBCASE("no smooth degree-zero classes") {
    CHECK(cohomology_degree0_dimension(4, hbar) == 0);
    CHECK(cohomology_degree0_dimension(4, 0.5) == 0);
  }
}

TEST_CASE("position-grid quantization") {
  const double hbar = 1.0;
  auto grid = position_grid_space(256, 10.0, hbar, false);
  SUBCASE("multiplication by q is exactly self-adjoint") {
    auto op = vertical_quantize_Rn(PolyObservable::q(), grid);
    CHECK(op.self_adjoint_defect() < 1e-13);
    CHECK(std::abs(op.matrix(7, 7).real() -
                   (-10.0 + 7.5 * 20.0 / 256)) < 1e-12);
  }
  SUBCASE("momentum is the antisymmetric stencil") {
    auto op = vertical_quantize_Rn(PolyObservable::p(), grid);
    CHECK(op.self_adjoint_defect() < 1e-13);
    // acts as -i hbar d/dq on a Gaussian within stencil error
    int n = grid.dim();
    double h = 20.0 / n;
    Eigen::VectorXcd psi(n), expect(n);
    for (int i = 0; i < n; ++i) {
      double q = -10.0 + (i + 0.5) * h;
      psi(i) = std::exp(-q * q / 2);
      expect(i) = cplx(0, -hbar) * (-q) * std::exp(-q * q / 2);
    }
    CHECK(((op.matrix * psi) - expect).cwiseAbs().maxCoeff() < 1e-5);
  }
  SUBCASE("the dilation generator gains the half-form half") {
    PolyObservable qp = PolyObservable::q() * PolyObservable::p();
    auto op = vertical_quantize_Rn(qp, grid);
    int n = grid.dim();
    double h = 20.0 / n;
    Eigen::VectorXcd psi(n), expect(n);
    for (int i = 0; i < n; ++i) {
      double q = -10.0 + (i + 0.5) * h;
      double g = std::exp(-q * q / 2);
      psi(i) = g;
      // -i hbar (q d/dq + 1/2) psi
      expect(i) = cplx(0, -hbar) * (q * (-q) * g + 0.5 * g);
    }
    CHECK(((op.matrix * psi) - expect).cwiseAbs().maxCoeff() < 1e-5);
    CHECK(op.self_adjoint_defect() < 1e-12);
  }
  SUBCASE("quadratic momenta are rejected") {
    PolyObservable p2 = PolyObservable::p() * PolyObservable::p();
    CHECK_THROWS_WITH_AS(vertical_quantize_Rn(p2, grid),
                         "not quantizable in the vertical polarization",
                         std::domain_error);
  }
}

TEST_CASE("spectrum utility") {
  auto grid = position_grid_space(3, 1.0, 1.0, false);
  SUBCASE("identity") {
    QuantumOperator op;
    op.space = &grid;
    op.self_adjoint = true;
    op.matrix = Eigen::MatrixXcd::Identity(3, 3);
    auto ev = real_spectrum(op);
    for (double v : ev) CHECK(v == doctest::Approx(1.0));
  }
  SUBCASE("diagonal values are sorted") {
    QuantumOperator op;
    op.space = &grid;
    op.self_adjoint = true;
    op.matrix = Eigen::MatrixXcd::Zero(3, 3);
    op.matrix(0, 0) = 3;
    op.matrix(1, 1) = 1;
    op.matrix(2, 2) = 2;
    auto ev = real_spectrum(op);
    REQUIRE(ev.size() == 3);
    CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ev[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(ev[2] == doctest::Approx(3.0).epsilon(1e-14));
  }
  SUBCASE("non-finite entries are rejected") {
    QuantumOperator op;
    op.space = &grid;
    op.matrix = Eigen::MatrixXcd::Zero(3, 3);
    op.matrix(1, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(spectrum(op), std::domain_error);
  }
}

TEST_CASE("matrix-level bracket and adjoint checks") {
  const double hbar = 1.0;
  SUBCASE("canonical pair on the grid") {
    auto grid = position_grid_space(256, 10.0, hbar, false);
    auto Q = vertical_quantize_Rn(PolyObservable::q(), grid);
    auto P = vertical_quantize_Rn(PolyObservable::p(), grid);
    QuantumOperator Id;
    Id.space = &grid;
    Id.matrix = Eigen::MatrixXcd::Identity(grid.dim(), grid.dim());
    auto rep = dirac_q3_q4_matrix_check(Q, P, Id, hbar);
    CHECK(rep.bracket_residual < 1e-3);
    CHECK(rep.adjoint_residual < 1e-12);

    // Grid refinement shrinks the residual at the stencil order.
    auto grid2 = position_grid_space(512, 10.0, hbar, false);
    auto Q2 = vertical_quantize_Rn(PolyObservable::q(), grid2);
    auto P2 = vertical_quantize_Rn(PolyObservable::p(), grid2);
    QuantumOperator Id2;
    Id2.space = &grid2;
    Id2.matrix = Eigen::MatrixXcd::Identity(grid2.dim(), grid2.dim());
    auto rep2 = dirac_q3_q4_matrix_check(Q2, P2, Id2, hbar);
    double ratio = rep.bracket_residual / rep2.bracket_residual;
    CHECK(ratio > 10.0);
    CHECK(ratio < 26.0);
  }
  SUBCASE("a hamiltonian commutes with itself") {
    auto grid = position_grid_space(128, 8.0, hbar, false);
    PolyObservable qp = PolyObservable::q() * PolyObservable::p();
    auto A = vertical_quantize_Rn(qp, grid);
    QuantumOperator zero;
    zero.space = &grid;
    zero.matrix = Eigen::MatrixXcd::Zero(grid.dim(), grid.dim());
    auto rep = dirac_q3_q4_matrix_check(A, A, zero, hbar);
    CHECK(rep.bracket_residual == 0.0);
  }
  SUBCASE("oscillator pairs in the Bargmann space") {
    auto sp = bargmann_space(10, hbar);
    auto H = quantize_harmonic_oscillator(sp);
    QuantumOperator H3 = H;
    H3.matrix = 3.0 * H.matrix +
                Eigen::MatrixXcd::Identity(sp.dim(), sp.dim());
    QuantumOperator zero;
    zero.space = &sp;
    zero.matrix = Eigen::MatrixXcd::Zero(sp.dim(), sp.dim());
    auto rep = dirac_q3_q4_matrix_check(H, H3, zero, hbar);
    CHECK(rep.bracket_residual <= 1e-10);
    CHECK(rep.adjoint_residual <= 1e-10);
  }
}

TEST_CASE("operator export") {
  auto sp = bargmann_space(2, 1.0);
  auto H = quantize_harmonic_oscillator(sp);
  std::string j = operator_to_json(H);
  CHECK(j.find("\"schema\": \"1\"") != std::string::npos);
  CHECK(j.find("bargmann") != std::string::npos);
  CHECK(j.find("eigenvalues") != std::string::npos);
}
