#include "zk/ground_state.hpp"

#include <algorithm>
#include <cmath>

namespace zk {

namespace {

// average over the two reflections x -> -x per axis; index 0 (x = -L)
// is its own mirror image under periodic wrap
Field2D symmetrize(const Field2D& f) {
  const Grid& g = f.grid;
  Field2D out(g);
  for (int i = 0; i < g.N1; ++i) {
    int im = (g.N1 - i) % g.N1;
    for (int j = 0; j < g.N2; ++j) {
      int jm = (g.N2 - j) % g.N2;
      out.at(i, j) = 0.25 * (f.at(i, j) + f.at(im, j) + f.at(i, jm) +
                             f.at(im, jm));
    }
  }
  return out;
}

Field2D seed_from_radial(const Grid& g, const RadialProfile& p) {
  Field2D u(g);
  for (int i = 0; i < g.N1; ++i)
    for (int j = 0; j < g.N2; ++j)
      u.at(i, j) = p.value(std::hypot(g.x1(i), g.x2(j)));
  return u;
}

}  // namespace

GroundState solve_Q_2d(const Grid& grid, const RadialProfile& seed,
                       double tol) {
  Field2D u = seed_from_radial(grid, seed);

  double peak = supnorm(u);
  double edge = 0;
  for (int j = 0; j < grid.N2; ++j)
    edge = std::max(edge, std::fabs(u.at(0, j)));
  for (int i = 0; i < grid.N1; ++i)
    edge = std::max(edge, std::fabs(u.at(i, 0)));
  if (edge > 1e-10 * peak)
    throw GridTooSmall("box too small: boundary value " +
                       std::to_string(edge));

  const int cap = 500;
  double s_fac = 0;
  for (int it = 0; it < cap; ++it) {
    Field2D u3 = multiply(multiply(u, u), u);
    double num = h1norm2(u);
    double den = inner(u3, u);
    s_fac = num / den;

    Spectrum s = fft(u3);
    for (int i = 0; i < grid.N1; ++i) {
      double kk1 = grid.k1[i] * grid.k1[i];
      for (int j = 0; j < s.cols(); ++j) {
        double kk = kk1 + grid.k2[j] * grid.k2[j];
        s.at(i, j) /= 1.0 + kk;
      }
    }
    // no dealiasing here: the fixed point then satisfies the discrete
    // equation with the same pointwise cubic used by the residual check
    Field2D next = ifft(s);
    double gamma = std::pow(s_fac, 1.5);
    for (double& x : next.v) x *= gamma;
    next = symmetrize(next);

    Field2D res = next - laplacian(next);
    Field2D n3 = multiply(multiply(next, next), next);
    double r = supnorm(res - n3);
    u = next;
    if (r < tol && std::fabs(s_fac - 1.0) < 1e-10) break;
    if (it == cap - 1)
      throw NonConvergence("Petviashvili stalled: residual " +
                           std::to_string(r) + ", factor " +
                           std::to_string(s_fac));
  }

  return derive_ground_state(u);
}

GroundState derive_ground_state(const Field2D& Q) {
  const Grid& grid = Q.grid;
  const Field2D& u = Q;
  GroundState gs;
  gs.Q = u;
  gs.Q0 = supnorm(u);
  gs.mass = l2norm2(u);
  gs.l4 = integrate(multiply(multiply(u, u), multiply(u, u)));
  Field2D ux = derivative(u, 1, 1), uy = derivative(u, 2, 1);
  gs.grad2 = l2norm2(ux) + l2norm2(uy);
  gs.Qy1 = ux;
  gs.Qy2 = uy;

  gs.LamQ = Field2D(grid);
  for (int i = 0; i < grid.N1; ++i)
    for (int j = 0; j < grid.N2; ++j)
      gs.LamQ.at(i, j) = u.at(i, j) + grid.x1(i) * ux.at(i, j) +
                         grid.x2(j) * uy.at(i, j);

  gs.F = compute_F(gs.LamQ);
  gs.kappa = compute_kappa(gs.Qy2);
  Field2D res = u - laplacian(u);
  gs.residual = supnorm(res - multiply(multiply(u, u), u));
  double ftr = 0;
  for (int j = 0; j < grid.N2; ++j)
    ftr = std::max(ftr, std::fabs(gs.LamQ.at(0, j)));
  gs.F_trunc = ftr;
  return gs;
}

Field2D compute_F(const Field2D& LamQ) {
  const Grid& g = LamQ.grid;

  // per-row mean along y1; the remainder has a periodic antiderivative
  std::vector<double> mean(g.N2, 0.0);
  for (int j = 0; j < g.N2; ++j) {
    double s = 0;
    for (int i = 0; i < g.N1; ++i) s += LamQ.at(i, j);
    mean[j] = s / g.N1;
  }
  Field2D W = LamQ;
  for (int i = 0; i < g.N1; ++i)
    for (int j = 0; j < g.N2; ++j) W.at(i, j) -= mean[j];

  Spectrum s = fft(W);
  for (int i = 0; i < g.N1; ++i) {
    double k = g.k1[i];
    for (int j = 0; j < s.cols(); ++j) {
      if (k == 0.0 || i == g.N1 / 2)
        s.at(i, j) = 0.0;
      else
        s.at(i, j) /= std::complex<double>(0.0, k);
    }
  }
  Field2D P = ifft(s);

  Field2D F(g);
  for (int i = 0; i < g.N1; ++i)
    for (int j = 0; j < g.N2; ++j)
      F.at(i, j) = P.at(i, j) - P.at(0, j) + mean[j] * (g.x1(i) + g.L1);
  return F;
}

double compute_kappa(const Field2D& Qy2) {
  const Grid& g = Qy2.grid;
  double kap = 0;
  for (int j = 0; j < g.N2; ++j) {
    double gy = 0;
    for (int i = 0; i < g.N1; ++i) gy += Qy2.at(i, j);
    gy *= g.dx1;
    double y2 = g.x2(j);
    kap += y2 * y2 * gy * gy;
  }
  return 0.5 * kap * g.dx2;
}

double kappa_radial(const RadialProfile& p) {
  // g(y2) = int Q(sqrt(y1^2+y2^2)) dy1 by Simpson, then
  // kappa = 1/2 int y2^2 g'(y2)^2 dy2 with g' by central differences
  const double ymax = 18.0, h = 0.005;
  const int n = int(ymax / h);
  auto gline = [&](double y2) {
    const double zmax = 18.0, hz = 0.005;
    const int m = int(zmax / hz);  // even
    double s = 0;
    for (int i = 0; i <= m; ++i) {
      double w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      s += w * p.value(std::hypot(i * hz, y2));
    }
    return 2.0 * s * hz / 3.0;  // doubled: integrand even in y1
  };
  std::vector<double> gv(n + 1);
  for (int i = 0; i <= n; ++i) gv[i] = gline(i * h);
  double kap = 0;
  for (int i = 1; i < n; ++i) {
    double gp = (gv[i + 1] - gv[i - 1]) / (2 * h);
    double y = i * h;
    kap += y * y * gp * gp * h;
  }
  return kap;  // 1/2 * 2 (integrand even in y2)
}

}  // namespace zk
