#include "gq/wzw.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace gq {

VerlindeResult verlinde_su2_dim(int genus, int level) {
  if (genus < 0 || level < 1)
    throw std::invalid_argument("need genus >= 0 and level >= 1");
  VerlindeResult r;
  // Extended precision keeps the integrality residual well under the gate
  // for table values in the millions.
  const long double pi = 3.141592653589793238462643383279502884L;
  long double prefactor = std::pow((level + 2) / 2.0L, genus - 1);
  long double sum = 0.0L;
  for (int j = 1; j <= level + 1; ++j) {
    // Fold into [0, pi/2]: sin(j pi / m) = sin((m - j) pi / m).
    int jj = std::min(j, level + 2 - j);
    long double s = std::sin(jj * pi / (level + 2));
    sum += std::pow(s * s, static_cast<long double>(1 - genus));
  }
  long double value = prefactor * sum;
  r.value = static_cast<double>(value);
  r.rounded = std::llround(r.value);
  r.residual = static_cast<double>(
      std::abs(value - static_cast<long double>(r.rounded)));
  return r;
}

LatticeGroupField LatticeGroupField::from_angle(
    int n, const std::function<double(double, double)>& gamma) {
  LatticeGroupField f;
  f.n = n;
  f.values.resize(n * n);
  f.angle = gamma;
  double lat = 2.0 * M_PI / n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      f.values[i * n + j] = std::polar(1.0, gamma(i * lat, j * lat));
  return f;
}

double LatticeGroupField::max_modulus_defect() const {
  double worst = 0.0;
  for (const cplx& v : values)
    worst = std::max(worst, std::abs(std::abs(v) - 1.0));
  return worst;
}

double LatticeGroupField::max_phase_jump() const {
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      worst = std::max(worst, std::abs(std::arg(at(i + 1, j) *
                                                std::conj(at(i, j)))));
      worst = std::max(worst, std::abs(std::arg(at(i, j + 1) *
                                                std::conj(at(i, j)))));
    }
  return worst;
}

LatticeGroupField LatticeGroupField::inverse() const {
  LatticeGroupField f = *this;
  for (auto& v : f.values) v = std::conj(v);
  if (angle) {
    auto a = angle;
    f.angle = [a](double x, double y) { return -a(x, y); };
  }
  return f;
}

LatticeConnection LatticeConnection::zero(int n) {
  LatticeConnection c;
  c.n = n;
  c.values.assign(n * n, cplx(0));
  return c;
}

LatticeConnection LatticeConnection::from_function(
    int n, const std::function<cplx(double, double)>& f) {
  LatticeConnection c;
  c.n = n;
  c.values.resize(n * n);
  double lat = 2.0 * M_PI / n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c.values[i * n + j] = f(i * lat, j * lat);
  return c;
}

namespace {

void check_smooth(const LatticeGroupField& g) {
  const int n = g.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double jump = std::max(
          std::abs(std::arg(g.at(i + 1, j) * std::conj(g.at(i, j)))),
          std::abs(std::arg(g.at(i, j + 1) * std::conj(g.at(i, j)))));
      if (jump >= M_PI / 2) {
        std::ostringstream os;
        os << "discrete-log branch jump at site (" << i << ", " << j << ")";
        throw std::domain_error(os.str());
      }
    }
}

// Central-difference phase derivatives; the two-step phase difference is
// read off arg(g_{+1} conj(g_{-1})), safe under the jump precondition.
void phase_gradients(const LatticeGroupField& g, std::vector<double>& dx,
                     std::vector<double>& dy) {
  check_smooth(g);
  const int n = g.n;
  double lat = g.spacing();
  dx.assign(n * n, 0.0);
  dy.assign(n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      dx[i * n + j] =
          std::arg(g.at(i + 1, j) * std::conj(g.at(i - 1, j))) / (2 * lat);
      dy[i * n + j] =
          std::arg(g.at(i, j + 1) * std::conj(g.at(i, j - 1))) / (2 * lat);
    }
}

// Deterministic pairwise tree reduction.
cplx tree_sum(std::vector<cplx> v) {
  if (v.empty()) return 0.0;
  while (v.size() > 1) {
    size_t half = (v.size() + 1) / 2;
    for (size_t i = 0; i + half < v.size(); ++i) v[i] += v[i + half];
    v.resize(half);
  }
  return v[0];
}

}  // namespace

std::vector<cplx> lattice_del_log(const LatticeGroupField& g) {
  std::vector<double> dx, dy;
  phase_gradients(g, dx, dy);
  std::vector<cplx> out(g.n * g.n);
  for (size_t s = 0; s < out.size(); ++s)
    out[s] = cplx(0, 0.5) * cplx(dx[s], -dy[s]);  // i * (dx - i dy)/2 gamma
  return out;
}

std::vector<cplx> lattice_delbar_log(const LatticeGroupField& g) {
  std::vector<double> dx, dy;
  phase_gradients(g, dx, dy);
  std::vector<cplx> out(g.n * g.n);
  for (size_t s = 0; s < out.size(); ++s)
    out[s] = cplx(0, 0.5) * cplx(dx[s], dy[s]);  // i * (dx + i dy)/2 gamma
  return out;
}

double wzw_action_abelian(const LatticeGroupField& g) {
  // -(1/2) sum <del g g^{-1}, delbar g g^{-1}> a^2 with <a,b> = ab/(2 pi):
  // for g = e^{i gamma} this is +(1/(4 pi)) sum (del gamma)(delbar gamma).
  std::vector<double> dx, dy;
  phase_gradients(g, dx, dy);
  const int n = g.n;
  double a2 = g.spacing() * g.spacing();
  std::vector<cplx> cells(n * n);
  for (int s = 0; s < n * n; ++s) {
    cplx del = 0.5 * cplx(dx[s], -dy[s]);
    cplx delbar = 0.5 * cplx(dx[s], dy[s]);
    cells[s] = del * delbar;
  }
  return (a2 / (4.0 * M_PI)) * tree_sum(cells).real();
}

cplx effective_action_abelian(const LatticeConnection& a_out,
                              const LatticeConnection& a_in,
                              const LatticeGroupField& g) {
  if (a_out.n != g.n || a_in.n != g.n)
    throw std::invalid_argument("lattice sizes differ");
  std::vector<double> dx, dy;
  phase_gradients(g, dx, dy);
  const int n = g.n;
  double a2 = g.spacing() * g.spacing();
  std::vector<cplx> cells(n * n);
  for (int s = 0; s < n * n; ++s) {
    cplx del_g = 0.5 * cplx(dx[s], -dy[s]);     // del gamma
    cplx delbar_g = 0.5 * cplx(dx[s], dy[s]);   // delbar gamma
    // <A_out, A_in> - <A_out, dbar g g^{-1}> + <A_in, g^{-1} d g>
    //   + (1/2) (del gamma)(delbar gamma) / ... all with the 1/(2 pi) pairing
    cells[s] = a_out.values[s] * a_in.values[s] -
               a_out.values[s] * cplx(0, 1) * delbar_g +
               a_in.values[s] * cplx(0, 1) * del_g +
               0.5 * del_g * delbar_g;
  }
  return (a2 / (2.0 * M_PI)) * tree_sum(cells);
}

PwResult pw_identity_residual(const LatticeConnection& a_in,
                              const LatticeConnection& a_out,
                              const LatticeGroupField& g,
                              const LatticeGroupField& h_in,
                              const LatticeGroupField& h_out) {
  const int n = g.n;
  if (a_in.n != n || a_out.n != n || h_in.n != n || h_out.n != n)
    throw std::invalid_argument("lattice sizes differ");
  // Transformed connections, using the continuum derivative of the gauge
  // angle when available. (The purely quadratic abelian identity closes
  // exactly against lattice differences; the continuum shifts make the
  // residual the measure of the discretization error, vanishing at second
  // order in the spacing.)
  std::vector<double> ax, ay, bx, by;
  if (h_in.angle && h_out.angle) {
    auto fd = [n](const std::function<double(double, double)>& f, double x,
                  double y, bool wrt_x) {
      double h = (2.0 * M_PI / n) / 64.0;
      auto at = [&](double o) { return wrt_x ? f(x + o, y) : f(x, y + o); };
      return (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
    };
    double lat = 2.0 * M_PI / n;
    ax.resize(n * n);
    ay.resize(n * n);
    bx.resize(n * n);
    by.resize(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        ax[i * n + j] = fd(h_in.angle, i * lat, j * lat, true);
        ay[i * n + j] = fd(h_in.angle, i * lat, j * lat, false);
        bx[i * n + j] = fd(h_out.angle, i * lat, j * lat, true);
        by[i * n + j] = fd(h_out.angle, i * lat, j * lat, false);
      }
  } else {
    phase_gradients(h_in, ax, ay);
    phase_gradients(h_out, bx, by);
  }
  LatticeConnection tin = a_in, tout = a_out;
  for (int s = 0; s < n * n; ++s) {
    cplx delbar_alpha = 0.5 * cplx(ax[s], ay[s]);
    cplx del_beta = 0.5 * cplx(bx[s], -by[s]);
    // h A_in = A_in + h_in dbar h_in^{-1} = A_in - i dbar alpha;
    // h A_out = A_out + h_out^{-1} d h_out = A_out + i d beta.
    tin.values[s] = a_in.values[s] - cplx(0, 1) * delbar_alpha;
    tout.values[s] = a_out.values[s] + cplx(0, 1) * del_beta;
  }
  // Composite group element h_out^{-1} g h_in^{-1}.
  LatticeGroupField comp = g;
  for (int s = 0; s < n * n; ++s)
    comp.values[s] =
        std::conj(h_out.values[s]) * g.values[s] * std::conj(h_in.values[s]);
  LatticeConnection zero = LatticeConnection::zero(n);
  cplx lhs = effective_action_abelian(tout, tin, comp);
  cplx rhs = effective_action_abelian(a_out, a_in, g) -
             effective_action_abelian(zero, a_in, h_in) -
             effective_action_abelian(a_out, zero, h_out);
  PwResult r;
  r.residual = std::abs(lhs - rhs);
  r.spacing = g.spacing();
  return r;
}

}  // namespace gq
