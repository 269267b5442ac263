#ifndef GQ_HILBERT_HPP
#define GQ_HILBERT_HPP

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gq/weyl.hpp"

namespace gq {

using cplx = std::complex<double>;

// Basis descriptors for the truncated spaces.
struct BargmannBasis {
  int cutoff = 0;  // monomials z^0 .. z^cutoff
};
struct SphereBasis {
  int level = 0;  // monomials z^0 .. z^level
};
struct CylinderFourierBasis {
  int cutoff = 0;  // modes e^{i n phi}, |n| <= cutoff
};
struct PositionGridBasis {
  int points = 256;
  double half_width = 10.0;
  bool periodic = false;
};
using BasisDescriptor = std::variant<BargmannBasis, SphereBasis,
                                     CylinderFourierBasis, PositionGridBasis>;

struct TruncatedHilbertSpace {
  BasisDescriptor basis;
  Eigen::MatrixXcd gram;
  double hbar = 1.0;
  std::string polarization;
  bool half_form = true;

  int dim() const { return static_cast<int>(gram.rows()); }
  // Invariant checks.
  double hermiticity_defect() const;
  double min_gram_eigenvalue() const;
};

struct QuantumOperator {
  Eigen::MatrixXcd matrix;
  const TruncatedHilbertSpace* space = nullptr;
  bool self_adjoint = false;
  // Set when the operator owns its space (factory-created spaces).
  std::shared_ptr<const TruncatedHilbertSpace> owned_space;

  // || G^{-1} A^dagger G - A ||_inf, the Gram-adjoint defect.
  double self_adjoint_defect() const;
};

// Bargmann space: basis z^n, Gram <z^m, z^n> = delta_{mn} n! (2 hbar)^n from
// the Gaussian-weight integral (closed form; the quadrature cross-check lives
// in the tests).
TruncatedHilbertSpace bargmann_space(int cutoff, double hbar);

// hbar (z d/dz + 1/2) on the Bargmann basis (diagonal); with half_form off
// the bare hbar z d/dz.
QuantumOperator quantize_harmonic_oscillator(const TruncatedHilbertSpace& sp);

// Level-k sphere space: basis z^j, j = 0..k, Gram diagonal with
// <z^a, z^a> = a! (k-a)! / (k+1)! from the radial Beta integral.
TruncatedHilbertSpace sphere_space(int level, double hbar);
// Closed-form diagonal entry (exposed for the quadrature cross-check).
double sphere_gram_diagonal(int level, int a);
// True when the norm integral of z^{level+1} diverges: the radius-doubling
// detector watching the truncated radial integral grow without bound.
bool sphere_norm_diverges(int level, int monomial_degree);

// Q^lambda_p = -i hbar d/dphi - hbar lambda on Fourier modes |n| <= cutoff:
// diagonal entries hbar (n - lambda).
QuantumOperator cylinder_vertical_quantize_p(double lambda, int cutoff,
                                             double hbar);
TruncatedHilbertSpace cylinder_fourier_space(int cutoff, double hbar);

// Cohomological one-form modes on the cylinder: psi_k = e^{i k phi}
// eta(p - hbar k) dphi, |k| <= cutoff, eta the normalized polynomial bump of
// the given width (must be <= hbar/2).
struct CohomologicalMode {
  int k = 0;
  double center = 0.0;  // hbar k
  double width = 0.0;
};
std::vector<CohomologicalMode> cohomological_basis_cylinder(
    int cutoff, double hbar, double width);
// The bump profile eta (unit integral, support |x| < width).
double bump_eta(double x, double width);
// Exactness criterion for a single-mode one-form e^{i k phi} f(p) dphi:
// exact iff f(hbar k) = 0.
bool mode_is_exact(int k, const std::function<double(double)>& profile,
                   double hbar);
// Smooth solutions of the degree-zero equation (none exist): returns the
// dimension found by scanning Fourier modes, always 0.
int cohomology_degree0_dimension(int cutoff, double hbar);

// Position-grid quantization of f = f0(q) + f1(q) p (n = 1):
//   -i hbar f1 d/dq - (i hbar / 2) div f1 + f0
// with a fourth-order stencil. Throws for p-degree >= 2.
TruncatedHilbertSpace position_grid_space(int points, double half_width,
                                          double hbar, bool periodic);
QuantumOperator vertical_quantize_Rn(const PolyObservable& f,
                                     const TruncatedHilbertSpace& grid);

// Sorted spectrum. Self-adjoint operators are symmetrized through the Gram
// factorization; otherwise complex eigenvalues sorted by (re, im).
std::vector<cplx> spectrum(const QuantumOperator& op);
std::vector<double> real_spectrum(const QuantumOperator& op);

struct DiracMatrixReport {
  double bracket_residual = 0.0;  // sup over test states of ||([A,B]-ihC)psi||
  double adjoint_residual = 0.0;  // max Gram-adjoint defect of A, B
};
// C must be the quantization of the Poisson bracket of the two inputs. The
// bracket residual is measured on smooth test states (stencil operators act
// correctly on smooth vectors, not entrywise); grid spaces default to a
// Gaussian family, exact-basis spaces to the basis columns.
DiracMatrixReport dirac_q3_q4_matrix_check(const QuantumOperator& A,
                                           const QuantumOperator& B,
                                           const QuantumOperator& C,
                                           double hbar);

// JSON export of an operator (basis descriptor, row-major complex pairs,
// eigenvalues).
std::string operator_to_json(const QuantumOperator& op);

}  // namespace gq

#endif
