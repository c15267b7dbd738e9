#include "zk/modulation.hpp"

#include <cmath>

#include "zk/linearized.hpp"
#include "zk/resample.hpp"

namespace zk {

namespace {

Field2D y_grad(const Field2D& f) {
  const Grid& g = f.grid;
  Field2D fx = derivative(f, 1, 1), fy = derivative(f, 2, 1);
  Field2D out(g);
  for (int i = 0; i < g.N1; ++i)
    for (int j = 0; j < g.N2; ++j)
      out.at(i, j) = g.x1(i) * fx.at(i, j) + g.x2(j) * fy.at(i, j);
  return out;
}

Field2D lam_op(const Field2D& f) { return f + y_grad(f); }

}  // namespace

ModulationContext::ModulationContext(const GroundState& gs_,
                                     const Field2D& chi0_, double lambda0_)
    : gs(gs_), chi0(chi0_), lambda0(lambda0_) {
  Qy1y1 = derivative(gs.Q, 1, 2);
  yGradQy1 = y_grad(gs.Qy1);
  chi0y1 = derivative(chi0, 1, 1);
  yGradChi0 = y_grad(chi0);
  Lchi0y1 = apply_L(chi0y1, gs.Q);
  QQy1sq = multiply(gs.Q, multiply(gs.Qy1, gs.Qy1));
  q11 = l2norm2(gs.Qy1);
  cQ = inner(chi0, gs.Q);
}

std::pair<double, double> initial_guess(const Field2D& u,
                                        const GroundState& gs) {
  const Grid& g = u.grid;
  double umax = supnorm(u);
  if (umax < 0.1 * gs.Q0) throw NoPeak("no soliton peak: sup |u| too small");

  const int j0 = g.N2 / 2;  // x2 = 0 slice
  std::vector<double> c(g.N1, 0.0);
  for (int s = 0; s < g.N1; ++s)
    for (int i = 0; i < g.N1; ++i)
      c[s] += gs.Q.at(i, j0) * u.at((i + s) % g.N1, j0);
  int sbest = 0;
  for (int s = 1; s < g.N1; ++s)
    if (c[s] > c[sbest]) sbest = s;
  double cm = c[(sbest - 1 + g.N1) % g.N1], c0 = c[sbest],
         cp = c[(sbest + 1) % g.N1];
  double denom = cm - 2 * c0 + cp;
  double delta = (denom < 0) ? 0.5 * (cm - cp) / denom : 0.0;
  double x1 = (sbest + delta) * g.dx1;
  if (x1 >= g.L1) x1 -= 2 * g.L1;  // principal interval [-L1, L1)
  return {gs.Q0 / umax, x1};
}

ModulationState decompose(const Field2D& u, const ModulationContext& ctx,
                          std::pair<double, double> seed, double tol) {
  const Grid& g = u.grid;
  const double ptol = 1e-8 * (1.0 + supnorm(u));
  for (int i = 0; i < g.N1; ++i)
    for (int j = 1; j < g.N2; ++j)
      if (std::fabs(u.at(i, j) - u.at(i, g.N2 - j)) > ptol)
        throw ParityViolation("u not even in x2");

  double lam = seed.first, x1 = seed.second;
  auto residuals = [&](double l, double x, Field2D& v) {
    v = resample_scaled(u, l, x);
    Field2D eps = v - ctx.gs.Q;
    return std::pair<double, double>{inner(eps, ctx.chi0),
                                     inner(eps, ctx.gs.Qy1)};
  };

  Field2D v;
  auto [g1, g2] = residuals(lam, x1, v);
  double gn = std::hypot(g1, g2);
  bool done = gn < tol;
  for (int it = 0; it < 50 && !done; ++it) {
    Field2D dl = lam_op(v), dx = derivative(v, 1, 1);
    double j11 = inner(dl, ctx.chi0) / lam, j12 = inner(dx, ctx.chi0) / lam;
    double j21 = inner(dl, ctx.gs.Qy1) / lam,
           j22 = inner(dx, ctx.gs.Qy1) / lam;
    double det = j11 * j22 - j12 * j21;
    if (std::fabs(det) < 1e-14) throw NewtonDiverged("singular Jacobian");
    double sl = -(j22 * g1 - j12 * g2) / det;
    double sx = -(-j21 * g1 + j11 * g2) / det;

    double step = 1.0;
    for (; step > 1e-4; step *= 0.5) {
      double lt = lam + step * sl, xt = x1 + step * sx;
      if (lt < 0.05 || lt > 20.0) continue;
      Field2D vt;
      auto [h1, h2] = residuals(lt, xt, vt);
      double hn = std::hypot(h1, h2);
      if (hn < gn || hn < tol) {
        lam = lt;
        x1 = xt;
        g1 = h1;
        g2 = h2;
        gn = hn;
        v = vt;
        break;
      }
    }
    if (step <= 1e-4) throw NewtonDiverged("line search failed");
    done = gn < tol;
  }
  if (!done) throw NewtonDiverged("orthogonality residual " +
                                  std::to_string(gn));

  ModulationState ms;
  ms.lambda = lam;
  ms.x1 = x1;
  ms.eps = v - ctx.gs.Q;
  ms.ortho_res[0] = g1;
  ms.ortho_res[1] = g2;
  ms.ortho_res[2] = inner(ms.eps, ctx.gs.Qy2);
  ms.eps_l2 = std::sqrt(l2norm2(ms.eps));
  ms.eps_h1 = std::sqrt(h1norm2(ms.eps));
  return ms;
}

RateEstimate parameter_rates(const ModulationState& ms,
                             const ModulationContext& ctx) {
  const Field2D& eps = ms.eps;
  Field2D eps2 = multiply(eps, eps);
  Field2D eps3 = multiply(eps2, eps);

  double A11 = -inner(ctx.yGradQy1, eps);
  double A12 = ctx.q11 - inner(ctx.Qy1y1, eps);
  double b1 = 6.0 * inner(ctx.QQy1sq, eps) -
              3.0 * inner(ctx.Qy1y1, multiply(eps2, ctx.gs.Q)) -
              inner(ctx.Qy1y1, eps3);

  double A21 = 2.0 / ctx.lambda0 * ctx.cQ - inner(ctx.yGradChi0, eps);
  double A22 = -inner(ctx.chi0y1, eps);
  double b2 = inner(ctx.Lchi0y1, eps) -
              3.0 * inner(ctx.chi0y1, multiply(eps2, ctx.gs.Q)) -
              inner(ctx.chi0y1, eps3);

  // the proof's non-degeneracy floor for the determinant
  double floor = 0.5 * std::fabs(ctx.cQ) * ctx.q11 / ctx.lambda0;
  double det = A11 * A22 - A12 * A21;
  if (std::fabs(det) < floor)
    throw DegenerateSystem("rate system determinant " + std::to_string(det));

  RateEstimate r;
  r.lam_rate = (b1 * A22 - A12 * b2) / det;
  r.x_rate = (A11 * b2 - b1 * A21) / det;
  r.bound_rhs = ms.eps_l2;
  return r;
}

Field2D eps_rhs(const ModulationState& ms, const RateEstimate& rates,
                const ModulationContext& ctx) {
  const Field2D& eps = ms.eps;
  const Field2D& Q = ctx.gs.Q;
  Field2D Leps = apply_L(eps, Q);
  Field2D out = derivative(Leps, 1, 1);

  Field2D lamQ = ctx.gs.LamQ;
  Field2D lamE = lam_op(eps);
  Field2D epsy1 = derivative(eps, 1, 1);
  Field2D Qe2 = multiply(Q, multiply(eps, eps));
  Field2D e3 = multiply(multiply(eps, eps), eps);
  Field2D nl = derivative(3.0 * Qe2 + e3, 1, 1);

  for (std::size_t n = 0; n < out.v.size(); ++n)
    out.v[n] += rates.lam_rate * (lamQ.v[n] + lamE.v[n]) +
                rates.x_rate * (ctx.gs.Qy1.v[n] + epsy1.v[n]) - nl.v[n];
  return out;
}

double tube_distance(const Field2D& u, const GroundState& gs) {
  const Grid& g = u.grid;
  Spectrum su = fft(u), sq = fft(gs.Q);
  const int nc = g.N2 / 2 + 1;
  const double cnorm = g.dx1 * g.dx2 / (double(g.N1) * g.N2);

  // W[m1] = sum_j w_j (1+|k|^2) u^ conj(Q^), so that
  // <u, Q(.-x)>_{H1} = Re sum_m1 W[m1] e^{i k1 x}
  std::vector<std::complex<double>> W(g.N1);
  for (int i = 0; i < g.N1; ++i) {
    std::complex<double> acc = 0;
    for (int j = 0; j < nc; ++j) {
      double w = (j == 0 || j == g.N2 / 2) ? 1.0 : 2.0;
      double h1w = 1.0 + g.k1[i] * g.k1[i] + g.k2[j] * g.k2[j];
      acc += w * h1w * su.at(i, j) * std::conj(sq.at(i, j));
    }
    W[i] = acc * cnorm;
  }
  double uu = h1norm2(u), qq = h1norm2(gs.Q);
  double best = -1e300;
  int sbest = 0;
  for (int s = 0; s < g.N1; ++s) {
    double c = 0;
    for (int i = 0; i < g.N1; ++i) {
      // e^{i k1 x} at x = s dx1 reduces to e^{2 pi i (i s mod N1)/N1}
      double ph = 2.0 * M_PI * double((std::size_t(i) * s) % g.N1) / g.N1;
      c += (W[i] * std::polar(1.0, ph)).real();
    }
    if (c > best) {
      best = c;
      sbest = s;
    }
  }

  // refine off-grid: the correlation is band-limited, so Newton steps on
  // the exact trigonometric sum converge from the best grid shift
  auto corr = [&](double x, double& d1, double& d2) {
    double c = 0;
    d1 = d2 = 0;
    for (int i = 0; i < g.N1; ++i) {
      double k = g.k1[i];
      std::complex<double> e = W[i] * std::polar(1.0, k * x);
      c += e.real();
      d1 += -k * e.imag();
      d2 += -k * k * e.real();
    }
    return c;
  };
  double x = sbest * g.dx1;
  for (int it = 0; it < 6; ++it) {
    double d1, d2;
    double c = corr(x, d1, d2);
    best = std::max(best, c);
    if (d2 >= 0) break;
    double step = d1 / d2;
    if (std::fabs(step) > g.dx1) break;
    x -= step;
    if (std::fabs(step) < 1e-12 * g.dx1) break;
  }
  {
    double d1, d2;
    best = std::max(best, corr(x, d1, d2));
  }
  double dist2 = uu + qq - 2.0 * best;
  return std::sqrt(std::max(0.0, dist2));
}

}  // namespace zk
