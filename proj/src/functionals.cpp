#include "zk/functionals.hpp"

#include <cmath>

namespace zk {

double phi_A(double y1, double A) {
  if (y1 <= A) return 1.0;
  if (y1 >= 2 * A) return 0.0;
  double u = (y1 - A) / A;
  return 1.0 - u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

double psi(double x1, double M) {
  return 2.0 / M_PI * std::atan(std::exp(x1 / M));
}

double psi_prime(double x1, double M) {
  // 1/(pi M cosh(x1/M))
  return 1.0 / (M_PI * M * std::cosh(x1 / M));
}

double psi_ppp(double x1, double M) {
  // psi' = sech(x/M)/(pi M), so psi''' = -sech u (sech^2 u - tanh^2 u)/(pi M^3)
  double t = std::tanh(x1 / M);
  double s = 1.0 / std::cosh(x1 / M);
  return -s * (s * s - t * t) / (M_PI * M * M * M);
}

double J_A(const Field2D& eps, const GroundState& gs,
           const VirialConfig& cfg) {
  const Grid& g = eps.grid;
  if (!g.same(gs.F.grid)) throw GridMismatch("J_A: grid mismatch");
  double acc = 0;
  for (int i = 0; i < g.N1; ++i) {
    double ph = phi_A(g.x1(i), cfg.A);
    if (ph == 0.0) continue;
    for (int j = 0; j < g.N2; ++j)
      acc += eps.at(i, j) * gs.F.at(i, j) * ph;
  }
  return acc * g.dx1 * g.dx2;
}

double I_localized(const Field2D& u, double shift, double M,
                   bool unit_weight) {
  if (unit_weight) return l2norm2(u);
  const Grid& g = u.grid;
  double acc = 0;
  for (int i = 0; i < g.N1; ++i) {
    double w = psi(g.x1(i) - shift, M);
    for (int j = 0; j < g.N2; ++j) acc += u.at(i, j) * u.at(i, j) * w;
  }
  return acc * g.dx1 * g.dx2;
}

double right_tail_mass(const Field2D& eps, double y0) {
  const Grid& g = eps.grid;
  double acc = 0;
  for (int i = 0; i < g.N1; ++i) {
    if (g.x1(i) <= y0) continue;
    for (int j = 0; j < g.N2; ++j) acc += eps.at(i, j) * eps.at(i, j);
  }
  return acc * g.dx1 * g.dx2;
}

double b_constant(const GroundState& gs, const Field2D& chi0) {
  double c = inner(gs.Q, chi0);
  return gs.mass - c * c / l2norm2(chi0);
}

void compute_KA(DiagnosticSeries& d, double kappa) {
  d.KA.resize(d.JA.size());
  for (std::size_t k = 0; k < d.JA.size(); ++k)
    d.KA[k] = d.lambda[k] * (d.JA[k] - kappa);
}

SlopeReport KA_slope(const DiagnosticSeries& d, double s_min) {
  SlopeReport rep;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  double minr = 1e300;
  for (std::size_t k = 0; k < d.s.size(); ++k) {
    if (d.s[k] < s_min) continue;
    sx += d.s[k];
    sy += d.KA[k];
    sxx += d.s[k] * d.s[k];
    sxy += d.s[k] * d.KA[k];
    ++n;
    if (k > 0 && k + 1 < d.s.size() && d.s[k - 1] >= s_min) {
      double r = (d.KA[k + 1] - d.KA[k - 1]) / (d.s[k + 1] - d.s[k - 1]);
      minr = std::min(minr, r);
    }
  }
  rep.points = n;
  if (n >= 2) rep.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  rep.min_rate = (minr == 1e300) ? 0.0 : minr;
  return rep;
}

VirialAuditRow virial_rate_audit(const ModulationState& ms,
                                 const RateEstimate& rates,
                                 const GroundState& gs,
                                 const VirialConfig& cfg, double JA_prev,
                                 double JA_next, double ds2) {
  const Grid& g = ms.eps.grid;
  VirialAuditRow row;
  double jA = J_A(ms.eps, gs, cfg);
  row.dJA_fd = (JA_next - JA_prev) / ds2;
  row.term_lambda = -rates.lam_rate * (jA - cfg.kappa);
  row.term_mass =
      2.0 * (1.0 - 0.5 * rates.x_rate) * inner(ms.eps, gs.Q);
  row.R_num = row.dJA_fd - row.term_lambda - row.term_mass;

  Field2D Fy2 = derivative(gs.F, 2, 1);
  double yf = 0;
  double tail = 0;
  for (int i = 0; i < g.N1; ++i) {
    double ph = phi_A(g.x1(i), cfg.A);
    for (int j = 0; j < g.N2; ++j) {
      if (ph != 0.0)
        yf += g.x2(j) * Fy2.at(i, j) * ms.eps.at(i, j) * ph;
      if (g.x1(i) >= cfg.A) tail += ms.eps.at(i, j) * ms.eps.at(i, j);
    }
  }
  yf = std::fabs(yf * g.dx1 * g.dx2);
  tail = std::sqrt(tail * g.dx1 * g.dx2);
  row.yF_term = yf;

  double e2 = ms.eps_l2, eh = ms.eps_h1, A = cfg.A;
  row.majorant = e2 * e2 + e2 * e2 * eh + e2 / std::sqrt(A) +
                 std::fabs(rates.x_rate) * (1.0 / A + e2) +
                 std::fabs(rates.lam_rate) *
                     (1.0 / A + e2 + std::sqrt(A) * tail + yf);
  return row;
}

}  // namespace zk
