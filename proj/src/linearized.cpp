#include "zk/linearized.hpp"

#include <lapacke.h>

#include <cmath>
#include <random>

namespace zk {

Field2D apply_L(const Field2D& f, const Field2D& Q) {
  if (!f.grid.same(Q.grid)) throw GridMismatch("apply_L: grid mismatch");
  Field2D out = f - laplacian(f);
  for (std::size_t n = 0; n < out.v.size(); ++n)
    out.v[n] -= 3.0 * Q.v[n] * Q.v[n] * f.v[n];
  return out;
}

std::vector<double> radial_eigenvalues(const RadialProfile& p, int count,
                                       int msec, double rmax, int n) {
  // finite-volume discretization at r_i = (i-1/2)h; the r=0 cell face
  // carries zero weight so no boundary condition is needed there.
  // Substituting g = sqrt(r) f symmetrizes the generalized problem.
  const double h = rmax / n;
  std::vector<double> d(n), e(n - 1);
  for (int i = 1; i <= n; ++i) {
    double r = (i - 0.5) * h;
    double a = (i - 1) * h, b = i * h;
    double q = p.value(r);
    double V = 1.0 - 3.0 * q * q + double(msec) * msec / (r * r);
    d[i - 1] = ((a + b) / (h * h) + r * V) / r;
    if (i < n) {
      double rn = (i + 0.5) * h;
      e[i - 1] = -b / (h * h * std::sqrt(r * rn));
    }
  }
  std::vector<double> w(n);
  std::vector<lapack_int> isuppz(2 * std::max(1, count));
  lapack_int m = 0;
  lapack_int info = LAPACKE_dstevr(
      LAPACK_COL_MAJOR, 'N', 'I', n, d.data(), e.data(), 0, 0, 1, count,
      0.0, &m, w.data(), nullptr, 1, isuppz.data());
  if (info != 0) throw NonConvergence("dstevr failed");
  w.resize(m);
  return w;
}

namespace {

// (-Lap + 1 - shift)^{-1} f, the exact spectral preconditioner for L - shift
Field2D precond(const Field2D& f, double shift) {
  const Grid& g = f.grid;
  Spectrum s = fft(f);
  for (int i = 0; i < g.N1; ++i) {
    double kk1 = g.k1[i] * g.k1[i];
    for (int j = 0; j < s.cols(); ++j)
      s.at(i, j) /= kk1 + g.k2[j] * g.k2[j] + 1.0 - shift;
  }
  return ifft(s);
}

// preconditioned conjugate gradients for (L - shift) x = b; requires
// shift below the bottom of the spectrum
Field2D cg_solve(const Field2D& b, const Field2D& Q, double shift,
                 double rtol, int maxit) {
  Field2D x(b.grid);
  Field2D r = b;
  Field2D z = precond(r, shift);
  Field2D pdir = z;
  double rz = inner(r, z);
  double b2 = l2norm2(b);
  for (int it = 0; it < maxit && l2norm2(r) > rtol * rtol * b2; ++it) {
    Field2D Ap = apply_L(pdir, Q);
    for (std::size_t n = 0; n < Ap.v.size(); ++n) Ap.v[n] -= shift * pdir.v[n];
    double alpha = rz / inner(pdir, Ap);
    for (std::size_t n = 0; n < x.v.size(); ++n) {
      x.v[n] += alpha * pdir.v[n];
      r.v[n] -= alpha * Ap.v[n];
    }
    z = precond(r, shift);
    double rz2 = inner(r, z);
    double beta = rz2 / rz;
    rz = rz2;
    for (std::size_t n = 0; n < pdir.v.size(); ++n)
      pdir.v[n] = z.v[n] + beta * pdir.v[n];
  }
  return x;
}

void normalize(Field2D& f) {
  double nrm = std::sqrt(l2norm2(f));
  for (double& x : f.v) x /= nrm;
}

}  // namespace

EigenPair negative_eigenpair(const GroundState& gs, double shift,
                             double tol) {
  Field2D v = gs.Q;
  normalize(v);
  EigenPair out;
  for (int it = 0; it < 60; ++it) {
    v = cg_solve(v, gs.Q, shift, 1e-10, 4000);
    normalize(v);
    Field2D Lv = apply_L(v, gs.Q);
    out.lambda = inner(Lv, v);
    out.residual = std::sqrt(l2norm2(Lv - out.lambda * v));
    if (out.residual < tol) break;
  }
  if (out.residual >= tol)
    throw NonConvergence("inverse iteration residual " +
                         std::to_string(out.residual));
  if (integrate(v) < 0)
    for (double& x : v.v) x = -x;  // fix the sign convention
  out.vec = v;
  return out;
}

CoercivityReport coercivity_probe(const GroundState& gs,
                                  const std::vector<Field2D>& constraints,
                                  int samples, unsigned seed) {
  const Grid& g = gs.Q.grid;

  // L2-orthonormalize the constraint directions
  std::vector<Field2D> basis;
  for (const Field2D& c : constraints) {
    Field2D w = c;
    for (const Field2D& b : basis) {
      double p = inner(w, b);
      for (std::size_t n = 0; n < w.v.size(); ++n) w.v[n] -= p * b.v[n];
    }
    double nrm = std::sqrt(l2norm2(w));
    if (nrm < 1e-12) continue;
    for (double& x : w.v) x /= nrm;
    basis.push_back(std::move(w));
  }

  const double kcut = 4.0;  // probe fields band-limited to |k| <= kcut
  CoercivityReport rep;
  rep.samples = samples;
  double qmin = 1e300, qsum = 0;
  for (int s = 0; s < samples; ++s) {
    std::mt19937 rng(seed + 1000003u * s);
    std::normal_distribution<double> nd(0.0, 1.0);
    Field2D f(g);
    for (double& x : f.v) x = nd(rng);
    Spectrum sp = fft(f);
    for (int i = 0; i < g.N1; ++i)
      for (int j = 0; j < sp.cols(); ++j)
        if (g.k1[i] * g.k1[i] + g.k2[j] * g.k2[j] > kcut * kcut)
          sp.at(i, j) = 0.0;
    f = ifft(sp);
    for (const Field2D& b : basis) {
      double p = inner(f, b);
      for (std::size_t n = 0; n < f.v.size(); ++n) f.v[n] -= p * b.v[n];
    }
    double h1 = h1norm2(f);
    if (h1 < 1e-12) continue;
    double q = inner(apply_L(f, gs.Q), f) / h1;
    qmin = std::min(qmin, q);
    qsum += q;
  }
  rep.min_quotient = qmin;
  rep.mean_quotient = qsum / samples;
  rep.positive = qmin > 0;
  return rep;
}

}  // namespace zk
