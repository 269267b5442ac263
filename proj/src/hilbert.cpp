#include "gq/hilbert.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace gq {

double TruncatedHilbertSpace::hermiticity_defect() const {
  return (gram - gram.adjoint()).cwiseAbs().maxCoeff();
}

double TruncatedHilbertSpace::min_gram_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      0.5 * (gram + gram.adjoint()));
  return es.eigenvalues().minCoeff();
}

double QuantumOperator::self_adjoint_defect() const {
  const Eigen::MatrixXcd& G = space->gram;
  Eigen::MatrixXcd lhs = G.inverse() * matrix.adjoint() * G;
  return (lhs - matrix).cwiseAbs().maxCoeff();
}

TruncatedHilbertSpace bargmann_space(int cutoff, double hbar) {
  if (cutoff < 1) throw std::invalid_argument("cutoff must be >= 1");
  TruncatedHilbertSpace sp;
  sp.basis = BargmannBasis{cutoff};
  sp.hbar = hbar;
  sp.polarization = "holomorphic";
  sp.gram = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  double g = 1.0;  // <1,1> with the (i/2) dzbar^dz measure normalization
  for (int n = 0; n <= cutoff; ++n) {
    sp.gram(n, n) = g;
    g *= 2.0 * hbar * (n + 1);  // ratio <z^{n+1}>/<z^n> = 2 hbar (n+1)
  }
  return sp;
}

QuantumOperator quantize_harmonic_oscillator(const TruncatedHilbertSpace& sp) {
  const auto* basis = std::get_if<BargmannBasis>(&sp.basis);
  if (!basis)
    throw std::invalid_argument("harmonic oscillator needs the Bargmann basis");
  QuantumOperator op;
  op.space = &sp;
  op.self_adjoint = true;
  int d = sp.dim();
  op.matrix = Eigen::MatrixXcd::Zero(d, d);
  for (int n = 0; n < d; ++n)
    op.matrix(n, n) = sp.hbar * (n + (sp.half_form ? 0.5 : 0.0));
  return op;
}

double sphere_gram_diagonal(int level, int a) {
  // int_0^inf u^a (1+u)^{-(level+2)} du = a! (level-a)! / (level+1)!.
  double lg = std::lgamma(a + 1.0) + std::lgamma(level - a + 1.0) -
              std::lgamma(level + 2.0);
  return std::exp(lg);
}

TruncatedHilbertSpace sphere_space(int level, double hbar) {
  if (level < 0) throw std::invalid_argument("level must be >= 0");
  TruncatedHilbertSpace sp;
  sp.basis = SphereBasis{level};
  sp.hbar = hbar;
  sp.polarization = "holomorphic";
  sp.gram = Eigen::MatrixXcd::Zero(level + 1, level + 1);
  for (int a = 0; a <= level; ++a) sp.gram(a, a) = sphere_gram_diagonal(level, a);
  return sp;
}

bool sphere_norm_diverges(int level, int monomial_degree) {
  // Truncated radial integral int_0^R u^a (1+u)^{-(level+2)} du under
  // repeated doubling of R: convergent integrals settle, divergent ones keep
  // growing by a non-vanishing increment.
  auto truncated = [&](double R) {
    int steps = 4000;
    double acc = 0.0;
    // log-spaced trapezoid in u = e^t - 1 handles the long tail.
    double t1 = std::log1p(R);
    double prev_u = 0.0, prev_f = 0.0;
    for (int i = 1; i <= steps; ++i) {
      double u = std::expm1(t1 * i / steps);
      double f = std::pow(u, monomial_degree) *
                 std::pow(1.0 + u, -(level + 2.0));
      acc += 0.5 * (f + prev_f) * (u - prev_u);
      prev_u = u;
      prev_f = f;
    }
    return acc;
  };
  double R = 64.0;
  double prev = truncated(R);
  int growing = 0;
  for (int it = 0; it < 6; ++it) {
    R *= 2;
    double next = truncated(R);
    double increment = next - prev;
    if (increment > 0.05 * std::max(1e-300, prev) && increment > 1e-6)
      ++growing;
    prev = next;
  }
  return growing >= 4;
}

TruncatedHilbertSpace cylinder_fourier_space(int cutoff, double hbar) {
  TruncatedHilbertSpace sp;
  sp.basis = CylinderFourierBasis{cutoff};
  sp.hbar = hbar;
  sp.polarization = "vertical";
  sp.gram = Eigen::MatrixXcd::Identity(2 * cutoff + 1, 2 * cutoff + 1);
  return sp;
}

QuantumOperator cylinder_vertical_quantize_p(double lambda, int cutoff,
                                             double hbar) {
  QuantumOperator op;
  op.owned_space = std::make_shared<TruncatedHilbertSpace>(
      cylinder_fourier_space(cutoff, hbar));
  op.space = op.owned_space.get();
  op.self_adjoint = true;
  int d = op.space->dim();
  op.matrix = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    int n = i - cutoff;
    op.matrix(i, i) = hbar * (n - lambda);
  }
  return op;
}

double bump_eta(double x, double width) {
  if (std::abs(x) >= width) return 0.0;
  double u = x / width;
  double v = 1.0 - u * u;
  double val = v * v * v * v;
  // Normalization: int_{-w}^{w} (1-u^2)^4 w du = w * 256/315.
  return val / (width * 256.0 / 315.0);
}

std::vector<CohomologicalMode> cohomological_basis_cylinder(int cutoff,
                                                            double hbar,
                                                            double width) {
  if (width > hbar / 2)
    throw std::invalid_argument("bump width must be at most hbar/2");
  std::vector<CohomologicalMode> modes;
  for (int k = -cutoff; k <= cutoff; ++k)
    modes.push_back({k, hbar * k, width});
  return modes;
}

bool mode_is_exact(int k, const std::function<double(double)>& profile,
                   double hbar) {
  // e^{i k phi} f(p) dphi is exact iff the twisted-mode equation
  // (i k - i p / hbar) g_k(p) = f(p) has a smooth solution, i.e. f(hbar k)=0.
  (void)k;
  return std::abs(profile(hbar * k)) < 1e-12;
}

int cohomology_degree0_dimension(int cutoff, double hbar) {
  // The closed-function equation reads (i k - i p/hbar) f_k(p) = 0 per
  // Fourier mode: f_k must vanish wherever the coefficient does not. The
  // scan verifies the coefficient vanishes only at the isolated point
  // p = hbar k, so no continuous nonzero solution exists in any mode.
  int dim = 0;
  const int steps = 4001;
  const double span = 2.0 * hbar * (cutoff + 1);
  for (int k = -cutoff; k <= cutoff; ++k) {
    int vanishing_cells = 0;
    for (int i = 0; i < steps; ++i) {
      double p = -span + 2 * span * i / (steps - 1);
      if (std::abs(double(k) - p / hbar) < 1e-6) ++vanishing_cells;
    }
    bool support_has_interior = vanishing_cells > 2;
    if (support_has_interior) ++dim;
  }
  return dim;
}

TruncatedHilbertSpace position_grid_space(int points, double half_width,
                                          double hbar, bool periodic) {
  TruncatedHilbertSpace sp;
  sp.basis = PositionGridBasis{points, half_width, periodic};
  sp.hbar = hbar;
  sp.polarization = "vertical";
  double h = 2.0 * half_width / points;
  sp.gram = h * Eigen::MatrixXcd::Identity(points, points);
  return sp;
}

namespace {
Eigen::MatrixXcd stencil_first_derivative(const PositionGridBasis& g) {
  int n = g.points;
  double h = 2.0 * g.half_width / n;
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(n, n);
  auto wrap = [&](int i) { return ((i % n) + n) % n; };
  for (int i = 0; i < n; ++i) {
    const int off[4] = {-2, -1, 1, 2};
    const double w[4] = {1.0 / 12, -8.0 / 12, 8.0 / 12, -1.0 / 12};
    for (int k = 0; k < 4; ++k) {
      int j = i + off[k];
      if (g.periodic)
        D(i, wrap(j)) += w[k] / h;
      else if (j >= 0 && j < n)
        D(i, j) += w[k] / h;
    }
  }
  return D;
}
}  // namespace

QuantumOperator vertical_quantize_Rn(const PolyObservable& f,
                                     const TruncatedHilbertSpace& grid) {
  const auto* g = std::get_if<PositionGridBasis>(&grid.basis);
  if (!g) throw std::invalid_argument("needs a position-grid space");
  if (f.dof() != 1)
    throw std::invalid_argument("grid quantization implemented for n = 1");
  if (f.degree_in_p() >= 2)
    throw std::domain_error("not quantizable in the vertical polarization");
  // Split f = f0(q) + f1(q) p.
  PolyObservable f1(1);
  PolyObservable f0(1);
  for (const auto& [e, c] : f.terms()) {
    if (e[1] == 1)
      f1.add_term({e[0], 0}, c);
    else
      f0.add_term(e, c);
  }
  auto eval_poly = [](const PolyObservable& poly, double q) {
    cplx acc = 0.0;
    for (const auto& [e, c] : poly.terms()) {
      double re = c.re.convert_to<double>();
      double im = c.im.convert_to<double>();
      acc += cplx(re, im) * std::pow(q, e[0]);
    }
    return acc;
  };
  int n = g->points;
  double h = 2.0 * g->half_width / n;
  Eigen::MatrixXcd D = stencil_first_derivative(*g);
  // Symmetrized product: -(i hbar / 2)(f1 D + D f1) + f0. Exactly
  // Gram-self-adjoint for real f1, and equal to
  // -i hbar f1 d/dq - (i hbar / 2) div f1 + f0 up to the stencil order.
  Eigen::VectorXcd f1v(n), f0v(n);
  for (int i = 0; i < n; ++i) {
    double q = -g->half_width + (i + 0.5) * h;
    f1v(i) = eval_poly(f1, q);
    f0v(i) = eval_poly(f0, q);
  }
  const cplx mih(0, -grid.hbar);
  Eigen::MatrixXcd A =
      0.5 * mih * (f1v.asDiagonal() * D + D * f1v.asDiagonal());
  A += Eigen::MatrixXcd(f0v.asDiagonal());
  QuantumOperator op;
  op.space = &grid;
  op.matrix = A;
  op.self_adjoint = true;
  return op;
}

std::vector<cplx> spectrum(const QuantumOperator& op) {
  if (!op.matrix.allFinite())
    throw std::domain_error("operator has non-finite entries");
  std::vector<cplx> out;
  if (op.self_adjoint) {
    for (double v : real_spectrum(op)) out.push_back(v);
    return out;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(op.matrix);
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    out.push_back(es.eigenvalues()(i));
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

std::vector<double> real_spectrum(const QuantumOperator& op) {
  if (!op.matrix.allFinite())
    throw std::domain_error("operator has non-finite entries");
  const Eigen::MatrixXcd& G = op.space->gram;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ge(
      0.5 * (G + G.adjoint()));
  Eigen::VectorXd ev = ge.eigenvalues();
  Eigen::MatrixXcd U = ge.eigenvectors();
  Eigen::VectorXd sqrt_ev = ev.cwiseMax(0.0).cwiseSqrt();
  Eigen::MatrixXcd Gh = U * sqrt_ev.asDiagonal() * U.adjoint();
  Eigen::MatrixXcd Ghi = U *
                         sqrt_ev.unaryExpr([](double v) {
                           return v > 0 ? 1.0 / v : 0.0;
                         }).asDiagonal() *
                         U.adjoint();
  Eigen::MatrixXcd B = Gh * op.matrix * Ghi;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (B + B.adjoint()));
  std::vector<double> out(es.eigenvalues().data(),
                          es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.begin(), out.end());
  return out;
}

DiracMatrixReport dirac_q3_q4_matrix_check(const QuantumOperator& A,
                                           const QuantumOperator& B,
                                           const QuantumOperator& C,
                                           double hbar) {
  DiracMatrixReport rep;
  Eigen::MatrixXcd comm = A.matrix * B.matrix - B.matrix * A.matrix;
  // With the canonical operators (q multiplication, p = -i hbar d/dq) and
  // the bracket normalized by {q,p} = +1 the matrix identity is
  // [A,B] = +i hbar C; the residual is measured against it.
  Eigen::MatrixXcd R = comm - cplx(0, hbar) * C.matrix;
  const int n = static_cast<int>(R.rows());
  Eigen::MatrixXcd states;
  if (const auto* g = std::get_if<PositionGridBasis>(&A.space->basis)) {
    states = Eigen::MatrixXcd::Zero(n, 5);
    double h = 2.0 * g->half_width / g->points;
    double s = A.space->hbar;
    for (int i = 0; i < n; ++i) {
      double q = -g->half_width + (i + 0.5) * h;
      double gauss = std::exp(-q * q / (2 * s));
      states(i, 0) = gauss;
      states(i, 1) = q * gauss;
      states(i, 2) = q * q * gauss;
      states(i, 3) = std::sin(q) * gauss;
      states(i, 4) = std::cos(0.5 * q) * gauss;
    }
  } else {
    states = Eigen::MatrixXcd::Identity(n, n);
  }
  for (int c = 0; c < states.cols(); ++c) {
    Eigen::VectorXcd psi = states.col(c);
    double norm = psi.cwiseAbs().maxCoeff();
    rep.bracket_residual = std::max(
        rep.bracket_residual, (R * psi).cwiseAbs().maxCoeff() / norm);
  }
  rep.adjoint_residual =
      std::max(A.self_adjoint_defect(), B.self_adjoint_defect());
  return rep;
}

std::string operator_to_json(const QuantumOperator& op) {
  nlohmann::json j;
  j["schema"] = "1";
  if (std::holds_alternative<BargmannBasis>(op.space->basis)) {
    j["basis"] = {{"type", "bargmann"},
                  {"cutoff", std::get<BargmannBasis>(op.space->basis).cutoff}};
  } else if (std::holds_alternative<SphereBasis>(op.space->basis)) {
    j["basis"] = {{"type", "sphere"},
                  {"level", std::get<SphereBasis>(op.space->basis).level}};
  } else if (std::holds_alternative<CylinderFourierBasis>(op.space->basis)) {
    j["basis"] = {
        {"type", "cylinder-fourier"},
        {"cutoff", std::get<CylinderFourierBasis>(op.space->basis).cutoff}};
  } else {
    const auto& g = std::get<PositionGridBasis>(op.space->basis);
    j["basis"] = {{"type", "position-grid"},
                  {"points", g.points},
                  {"half_width", g.half_width},
                  {"periodic", g.periodic}};
  }
  j["hbar"] = op.space->hbar;
  j["self_adjoint"] = op.self_adjoint;
  std::vector<std::vector<double>> entries;
  for (int r = 0; r < op.matrix.rows(); ++r)
    for (int c = 0; c < op.matrix.cols(); ++c)
      entries.push_back({op.matrix(r, c).real(), op.matrix(r, c).imag()});
  j["matrix"] = entries;
  std::vector<std::vector<double>> eig;
  for (cplx v : spectrum(op)) eig.push_back({v.real(), v.imag()});
  j["eigenvalues"] = eig;
  return j.dump(2);
}

}  // namespace gq
