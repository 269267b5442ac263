#ifndef GQ_WZW_HPP
#define GQ_WZW_HPP

#include <complex>
#include <functional>
#include <vector>

namespace gq {

using cplx = std::complex<double>;

struct VerlindeResult {
  double value = 0.0;
  long long rounded = 0;
  double residual = 0.0;
};

// ((k+2)/2)^{g-1} sum_{j=1}^{k+1} (sin^2(j pi/(k+2)))^{1-g} for SU(2).
VerlindeResult verlinde_su2_dim(int genus, int level);

// N x N doubly periodic grid of unit-modulus values g = e^{i gamma},
// lattice spacing 2 pi / N.
struct LatticeGroupField {
  int n = 0;
  std::vector<cplx> values;  // row-major, |value| = 1
  // The generating angle, kept when known; lets gauge shifts use continuum
  // derivatives so identity residuals measure the discretization error.
  std::function<double(double, double)> angle;

  static LatticeGroupField from_angle(
      int n, const std::function<double(double, double)>& gamma);
  cplx at(int i, int j) const {
    return values[((i % n + n) % n) * n + ((j % n + n) % n)];
  }
  double spacing() const { return 2.0 * M_PI / n; }
  double max_modulus_defect() const;
  // Largest nearest-neighbour phase jump; beyond pi/2 the discrete logarithm
  // branches (winding sectors are rejected, not handled).
  double max_phase_jump() const;
  LatticeGroupField inverse() const;
};

struct LatticeConnection {
  int n = 0;
  std::vector<cplx> values;  // component values on sites
  static LatticeConnection zero(int n);
  static LatticeConnection from_function(
      int n, const std::function<cplx(double, double)>& f);
  cplx at(int i, int j) const {
    return values[((i % n + n) % n) * n + ((j % n + n) % n)];
  }
};

// Complex lattice derivatives del = (dx - i dy)/2, delbar = (dx + i dy)/2
// with second-order central differences on the periodic grid, applied to the
// discrete logarithm of g (error if a branch jump occurs).
std::vector<cplx> lattice_del_log(const LatticeGroupField& g);
std::vector<cplx> lattice_delbar_log(const LatticeGroupField& g);

// WZW(g) = -(1/2) sum <del g g^{-1}, delbar g g^{-1}> a^2 with the abelian
// pairing <a,b> = a b / (2 pi); the cubic extension term vanishes
// identically for abelian fields.
double wzw_action_abelian(const LatticeGroupField& g);

// Effective action of the abelian theory. Sign conventions documented with
// the Polyakov-Wiegmann residual below; for g = 1 it reduces to
// sum <A_out, A_in>, for A = 0 to WZW(g).
cplx effective_action_abelian(const LatticeConnection& a_out,
                              const LatticeConnection& a_in,
                              const LatticeGroupField& g);

struct PwResult {
  double residual = 0.0;
  double spacing = 0.0;
};

// Residual of the gauged composition identity
//   S[h-transformed A_out, h-transformed A_in; h_out^{-1} g h_in^{-1}]
//     = S[A_out, A_in; g] - S[A_in-side; h_in] - S[A_out-side; h_out]
// with the transformed connections h A_in = A_in + h_in dbar h_in^{-1} and
// h A_out = A_out + h_out^{-1} d h_out. Second-order in the spacing, and
// exactly zero for h_in = h_out = 1.
PwResult pw_identity_residual(const LatticeConnection& a_in,
                              const LatticeConnection& a_out,
                              const LatticeGroupField& g,
                              const LatticeGroupField& h_in,
                              const LatticeGroupField& h_out);

}  // namespace gq

#endif
