#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "common.hpp"
#include "doctest.h"
#include "zk/evolution.hpp"

using namespace zk;

TEST_CASE("zero stays zero") {
  Grid g(12.8, 12.8, 64, 64);
  EvolutionConfig cfg;
  cfg.dt = 1e-2;
  Stepper st(g, cfg);
  Field2D z(g);
  CHECK(supnorm(st.step(z)) == 0.0);
}

TEST_CASE("linear flow advances a single mode by the dispersion phase") {
  Grid g(12.8, 12.8, 64, 64);
  EvolutionConfig cfg;
  cfg.dt = 1e-2;
  cfg.linear_only = true;
  Stepper st(g, cfg);
  const int m1 = 3, m2 = 5;
  double k1 = g.k1[m1], k2 = g.k2[m2];
  Field2D f(g), ref(g);
  double ph = k1 * (k1 * k1 + k2 * k2) * cfg.dt;
  for (int i = 0; i < g.N1; ++i)
    for (int j = 0; j < g.N2; ++j) {
      f.at(i, j) = std::cos(k1 * g.x1(i) + k2 * g.x2(j));
      ref.at(i, j) = std::cos(k1 * g.x1(i) + k2 * g.x2(j) + ph);
    }
  CHECK(supnorm(st.step(f) - ref) < 1e-12);
}

TEST_CASE("linear-only mode conserves every Fourier modulus") {
  Grid g(12.8, 12.8, 64, 64);
  EvolutionConfig cfg;
  cfg.dt = 5e-3;
  cfg.linear_only = true;
  Stepper st(g, cfg);
  Field2D f(g);
  for (int i = 0; i < g.N1; ++i)
    for (int j = 0; j < g.N2; ++j)
      f.at(i, j) = std::exp(-0.3 * (g.x1(i) * g.x1(i) + g.x2(j) * g.x2(j)));
  Spectrum a = fft(f), b = a;
  for (int s = 0; s < 20; ++s) b = st.step(b);
  double err = 0;
  for (std::size_t m = 0; m < a.c.size(); ++m)
    err = std::max(err, std::fabs(std::abs(a.c[m]) - std::abs(b.c[m])));
  CHECK(err < 1e-12 * std::abs(a.c[0]));
}

TEST_CASE("soliton travels at unit speed with conserved invariants") {
  const GroundState& gs = gs256();
  EvolutionConfig cfg;
  cfg.dt = 1e-3;
  cfg.T = 5.0;
  cfg.snapshot_stride = 1000;
  Trajectory tr = evolve(gs.Q, cfg);

  double dm = 0, de = 0;
  for (std::size_t k = 0; k < tr.mass.size(); ++k) {
    dm = std::max(dm, std::fabs(tr.mass[k] - tr.mass[0]) / tr.mass[0]);
    de = std::max(de, std::fabs(tr.energy[k] - tr.energy[0]));
  }
  CHECK(dm < 1e-8);
  CHECK(de < 1e-6);

  const Field2D& uT = tr.snapshots.back();
  CHECK(supnorm(uT - translate(gs.Q, 5.0, 0.0)) < 1e-4);

  // peak lands within 2 dx of (5, 0)
  const Grid& g = uT.grid;
  int bi = 0, bj = 0;
  double bv = -1;
  for (int i = 0; i < g.N1; ++i)
    for (int j = 0; j < g.N2; ++j)
      if (uT.at(i, j) > bv) {
        bv = uT.at(i, j);
        bi = i;
        bj = j;
      }
  CHECK(std::fabs(g.x1(bi) - 5.0) <= 2 * g.dx1);
  CHECK(std::fabs(g.x2(bj)) <= 2 * g.dx2);
}

TEST_CASE("x2 mirror symmetry is preserved") {
  const GroundState& gs = gs256();
  const Grid& g = gs.Q.grid;
  Field2D u0 = gs.Q;
  for (int i = 0; i < g.N1; ++i)
    for (int j = 0; j < g.N2; ++j)
      u0.at(i, j) += 0.05 * std::exp(-(std::pow(g.x1(i) - 2, 2) +
                                       std::pow(g.x2(j) - 3, 2)));
  Field2D u0m(g);
  for (int i = 0; i < g.N1; ++i)
    for (int j = 0; j < g.N2; ++j) u0m.at(i, j) = u0.at(i, (g.N2 - j) % g.N2);
  EvolutionConfig cfg;
  cfg.dt = 2e-3;
  cfg.T = 0.2;
  cfg.snapshot_stride = 100;
  Field2D a = evolve(u0, cfg).snapshots.back();
  Field2D b = evolve(u0m, cfg).snapshots.back();
  double err = 0;
  for (int i = 0; i < g.N1; ++i)
    for (int j = 0; j < g.N2; ++j)
      err = std::max(err, std::fabs(a.at(i, j) - b.at(i, (g.N2 - j) % g.N2)));
  CHECK(err < 1e-10);
}

TEST_CASE("time reversal composed with x1 flip returns the initial state") {
  const GroundState& gs = gs256();
  const Grid& g = gs.Q.grid;
  EvolutionConfig cfg;
  cfg.dt = 1e-3;
  cfg.T = 0.1;
  cfg.snapshot_stride = 100;
  auto flip = [&](const Field2D& f) {
    Field2D r(g);
    for (int i = 0; i < g.N1; ++i)
      for (int j = 0; j < g.N2; ++j) r.at(i, j) = f.at((g.N1 - i) % g.N1, j);
    return r;
  };
  Field2D fwd = evolve(gs.Q, cfg).snapshots.back();
  Field2D back = flip(evolve(flip(fwd), cfg).snapshots.back());
  CHECK(supnorm(back - gs.Q) < 1e-8);
}

TEST_CASE("dt halving shows fourth-order convergence") {
  const GroundState& gs = gs256();
  auto final_state = [&](double dt) {
    EvolutionConfig cfg;
    cfg.dt = dt;
    cfg.T = 0.5;
    cfg.snapshot_stride = 1 << 30;
    return evolve(gs.Q, cfg).snapshots.back();
  };
  Field2D ref = final_state(1e-3);
  double e1 = supnorm(final_state(4e-3) - ref);
  double e2 = supnorm(final_state(2e-3) - ref);
  CHECK(e1 / e2 >= 10.0);
  CHECK(e1 / e2 <= 24.0);
}

TEST_CASE("IMEX Crank-Nicolson cross-check") {
  const GroundState& gs = gs256();
  EvolutionConfig a, b;
  a.dt = b.dt = 1e-3;
  a.T = b.T = 0.1;
  a.snapshot_stride = b.snapshot_stride = 100;
  b.integrator = Integrator::IMEX_CN;
  Field2D ua = evolve(gs.Q, a).snapshots.back();
  Field2D ub = evolve(gs.Q, b).snapshots.back();
  CHECK(supnorm(ua - ub) < 1e-4);
  CHECK(supnorm(ua - ub) > 0);
}

TEST_CASE("NaN input is reported with its time") {
  Grid g(12.8, 12.8, 64, 64);
  Field2D u(g);
  u.v[10] = std::nan("");
  EvolutionConfig cfg;
  cfg.dt = 1e-3;
  cfg.T = 0.01;
  CHECK_THROWS_AS(evolve(u, cfg), NaNDetected);
}
