#include "zk/evolution.hpp"

#include <cmath>
#include <cstdio>

namespace zk {

double zk_mass(const Field2D& u) { return l2norm2(u); }

double zk_energy(const Field2D& u) {
  Field2D ux = derivative(u, 1, 1), uy = derivative(u, 2, 1);
  Field2D u2 = multiply(u, u);
  return 0.5 * (l2norm2(ux) + l2norm2(uy)) - 0.25 * integrate(multiply(u2, u2));
}

Stepper::Stepper(const Grid& g, const EvolutionConfig& cfg)
    : g_(g), cfg_(cfg) {
  const int nc = g.N2 / 2 + 1;
  const std::size_t n = std::size_t(g.N1) * nc;
  const double h = cfg.dt;

  k1m_.resize(n);
  std::vector<std::complex<double>> hL(n);
  double lmax = 0;
  for (int i = 0; i < g.N1; ++i) {
    double k1 = (i == g.N1 / 2) ? 0.0 : g.k1[i];
    for (int j = 0; j < nc; ++j) {
      std::size_t m = std::size_t(i) * nc + j;
      k1m_[m] = k1;
      double om = k1 * (k1 * k1 + g.k2[j] * g.k2[j]);
      hL[m] = std::complex<double>(0.0, h * om);
      lmax = std::max(lmax, std::fabs(h * om));
    }
  }
  (void)lmax;  // the linear part is integrated exactly; no CFL limit there

  E_.resize(n);
  E2_.resize(n);
  Qc_.resize(n);
  f1_.resize(n);
  f2_.resize(n);
  f3_.resize(n);
  cn_num_.resize(n);
  cn_den_.resize(n);
  const int M = 32;  // contour points for the phi-function means
  for (std::size_t m = 0; m < n; ++m) {
    std::complex<double> z0 = hL[m];
    E_[m] = std::exp(z0);
    E2_[m] = std::exp(0.5 * z0);
    std::complex<double> q = 0, a = 0, b = 0, c = 0;
    for (int p = 0; p < M; ++p) {
      double th = 2.0 * M_PI * (p + 0.5) / M;
      std::complex<double> z = z0 + std::polar(1.0, th);
      std::complex<double> ez = std::exp(z), z3 = z * z * z;
      q += (std::exp(0.5 * z) - 1.0) / z;
      a += (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
      b += (2.0 + z + ez * (-2.0 + z)) / z3;
      c += (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
    }
    Qc_[m] = h * q / double(M);
    f1_[m] = h * a / double(M);
    f2_[m] = h * b / double(M);
    f3_[m] = h * c / double(M);
    cn_num_[m] = 1.0 + 0.5 * z0;
    cn_den_[m] = 1.0 - 0.5 * z0;
  }
}

Spectrum Stepper::nonlinear(const Spectrum& v) const {
  Field2D u = ifft(v);
  Field2D u3 = multiply(multiply(u, u), u);
  Spectrum w = fft(u3);
  for (std::size_t m = 0; m < w.c.size(); ++m)
    w.c[m] *= std::complex<double>(0.0, -k1m_[m]);
  if (cfg_.dealias) dealias(w);
  return w;
}

Spectrum Stepper::step(const Spectrum& v) const {
  const std::size_t n = v.c.size();
  Spectrum out = v;
  if (cfg_.linear_only) {
    for (std::size_t m = 0; m < n; ++m) out.c[m] = E_[m] * v.c[m];
    return out;
  }
  if (cfg_.integrator == Integrator::ETDRK4) {
    Spectrum Nv = nonlinear(v);
    Spectrum a = v;
    for (std::size_t m = 0; m < n; ++m)
      a.c[m] = E2_[m] * v.c[m] + Qc_[m] * Nv.c[m];
    Spectrum Na = nonlinear(a);
    Spectrum b = v;
    for (std::size_t m = 0; m < n; ++m)
      b.c[m] = E2_[m] * v.c[m] + Qc_[m] * Na.c[m];
    Spectrum Nb = nonlinear(b);
    Spectrum c = v;
    for (std::size_t m = 0; m < n; ++m)
      c.c[m] = E2_[m] * a.c[m] + Qc_[m] * (2.0 * Nb.c[m] - Nv.c[m]);
    Spectrum Nc = nonlinear(c);
    for (std::size_t m = 0; m < n; ++m)
      out.c[m] = E_[m] * v.c[m] + f1_[m] * Nv.c[m] +
                 f2_[m] * 2.0 * (Na.c[m] + Nb.c[m]) + f3_[m] * Nc.c[m];
    return out;
  }
  // IMEX Crank-Nicolson, trapezoidal in the nonlinear term via one
  // predictor-corrector sweep
  Spectrum Nv = nonlinear(v);
  Spectrum pred = v;
  for (std::size_t m = 0; m < n; ++m)
    pred.c[m] = (cn_num_[m] * v.c[m] + cfg_.dt * Nv.c[m]) / cn_den_[m];
  Spectrum Np = nonlinear(pred);
  for (std::size_t m = 0; m < n; ++m)
    out.c[m] = (cn_num_[m] * v.c[m] +
                0.5 * cfg_.dt * (Nv.c[m] + Np.c[m])) /
               cn_den_[m];
  return out;
}

Field2D Stepper::step(const Field2D& u) const { return ifft(step(fft(u))); }

Trajectory evolve(const Field2D& u0, const EvolutionConfig& cfg,
                  const std::vector<Observer>& observers) {
  if (!u0.finite()) throw NaNDetected("initial state not finite", 0.0);
  Stepper st(u0.grid, cfg);
  const int nsteps = int(std::llround(cfg.T / cfg.dt));

  Trajectory tr;
  auto record = [&](double t, const Field2D& u) {
    tr.times.push_back(t);
    tr.snapshots.push_back(u);
    tr.mass.push_back(zk_mass(u));
    tr.energy.push_back(zk_energy(u));
    for (const auto& ob : observers) ob(t, u);
  };

  record(0.0, u0);
  Spectrum v = fft(u0);
  for (int k = 1; k <= nsteps; ++k) {
    v = st.step(v);
    double t = k * cfg.dt;
    if (k % cfg.snapshot_stride == 0 || k == nsteps) {
      Field2D u = ifft(v);
      if (!u.finite()) throw NaNDetected("NaN in state", t);
      record(t, u);
    }
  }
  return tr;
}

}  // namespace zk
