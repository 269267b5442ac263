#ifndef GQ_BKS_HPP
#define GQ_BKS_HPP

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace gq {

using cplx = std::complex<double>;

// Complex values sampled on a uniform grid over [-L, L]. The position grid
// uses midpoints q_k = -L + (k + 1/2) h; the paired momentum grid
// p_j = (j - N/2) * 2 pi hbar / (N h) carries a zero mode and makes the
// Fourier map exactly unitary for the weighted inner products.
enum class GridLabel { Position, Momentum };
enum class HalfFormTag { SqrtDq, SqrtDp };

struct GridState {
  std::vector<cplx> values;
  double half_width = 10.0;
  double hbar = 1.0;
  GridLabel label = GridLabel::Position;
  HalfFormTag half_form = HalfFormTag::SqrtDq;
  bool tail_warning = false;

  int size() const { return static_cast<int>(values.size()); }
  double step() const { return 2.0 * half_width / size(); }
  double point(int k) const { return -half_width + (k + 0.5) * step(); }
  double momentum(int j) const {
    return (j - size() / 2) * 2.0 * M_PI * hbar / (size() * step());
  }
  double norm() const;          // weighted l2 norm
  double tail_mass() const;     // mass in the outer 10 percent of the grid
};

GridState gaussian_state(int points, double half_width, double hbar);
GridState grid_state_from(int points, double half_width, double hbar,
                          const std::function<cplx(double)>& f);

// The pairing map between the vertical and horizontal polarizations:
// U(f sqrt(dq)) = (1/sqrt(2 pi hbar)) int f(q) e^{i p q / hbar} dq sqrt(dp),
// realized as an exactly unitary matrix for the grid inner products. States
// whose tail mass exceeds 1e-10 get a warning flag on the result.
Eigen::MatrixXcd bks_fourier_matrix(int points, double half_width,
                                    double hbar);
GridState bks_fourier_map(const GridState& psi);
GridState bks_fourier_inverse(const GridState& phi);

// U^{-1} (p^2 .) U acting on a position state.
GridState quantize_p2_via_pairing(const GridState& psi);
Eigen::MatrixXcd quantize_p2_pairing_matrix(int points, double half_width,
                                            double hbar);

// Oscillatory integral I(t) = int g(q - u) e^{i u^2 / (2 hbar t)} du.
// Profiles that supply an entire-function evaluator are integrated on the
// steepest-descent contour u = e^{i pi/4} s (exact-grade accuracy); otherwise
// a stationary window of half-width `window * sqrt(hbar t)` is handled by
// adaptive quadrature and the tails by two rounds of integration by parts.
struct Profile {
  std::function<double(double)> g, g1, g2;  // value, first two derivatives
  std::function<cplx(cplx)> entire;         // optional analytic continuation
  double support = 12.0;                    // effective decay radius
};
Profile gaussian_profile(double sigma = 1.0);

cplx oscillatory_integral(const Profile& g, double q, double t, double hbar,
                          double window = 8.0);

struct StationaryPhaseRow {
  double t = 0.0;
  cplx integral{};
  cplx asymptote{};
  double relative_error = 0.0;
};
// Compares I(t) with sqrt(2 pi hbar t) e^{i pi/4} (g + t (i hbar/2) g'')
// across the t list.
std::vector<StationaryPhaseRow> stationary_phase_check(
    const Profile& g, const std::vector<double>& ts, double q, double hbar);

// Quantization of p^2/2 through the flow (q,p) -> (q + t p, p) and the
// pairing kernel, with the t -> 0 derivative taken by a three-point
// Richardson rule on t0, t0/2, t0/4. Reports the raw result (it carries the
// phase e^{i pi/4}) and the phase-normalized one, both sampled on the grid.
struct StationaryPhaseQuantization {
  GridState raw;          // i hbar d/dt U_t phi^t psi at t -> 0
  GridState normalized;   // raw divided by e^{i pi/4}
  double phase_offset;    // arg(raw / (-(hbar^2/2) psi'')) at the center
};
StationaryPhaseQuantization quantize_p2_stationary_phase(
    const Profile& psi, int points, double half_width, double hbar,
    double t0 = 1e-2);

}  // namespace gq

#endif
