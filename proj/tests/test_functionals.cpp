#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "common.hpp"
#include "doctest.h"
#include "zk/functionals.hpp"

using namespace zk;

TEST_CASE("psi is a smooth switch with the right tails") {
  for (double M : {1.0, 4.0, 16.0}) {
    CHECK(psi(0.0, M) == doctest::Approx(0.5).epsilon(1e-15));
    for (double x : {0.3, 1.7, 5.0, 20.0})
      CHECK(std::fabs(psi(-x, M) + psi(x, M) - 1.0) < 1e-15);
    CHECK(psi(-40.0 * M, M) < 1e-15);
    CHECK(psi(40.0 * M, M) > 1.0 - 1e-15);
    // centered FD of psi against psi_prime
    double h = 1e-5;
    for (double x : {-3.0, 0.0, 2.5}) {
      double fd = (psi(x + h, M) - psi(x - h, M)) / (2 * h);
      CHECK(std::fabs(fd - psi_prime(x, M)) < 1e-9);
    }
  }
}

TEST_CASE("third derivative bound |psi'''| <= psi'/M^2") {
  for (double M : {1.0, 4.0})
    for (double x = -30; x <= 30; x += 0.37)
      CHECK(std::fabs(psi_ppp(x, M)) <= psi_prime(x, M) / (M * M) * (1.0 + 1e-12));
}

TEST_CASE("phi_A cutoff plateaus and transition") {
  for (double A : {4.0, 8.0, 16.0}) {
    CHECK(phi_A(0.5 * A, A) == 1.0);
    CHECK(phi_A(-100.0, A) == 1.0);
    CHECK(phi_A(3.0 * A, A) == 0.0);
    CHECK(phi_A(1.5 * A, A) == doctest::Approx(0.5).epsilon(1e-12));
    double prev = 1.0, hmax = 0;
    for (double y = A; y <= 2 * A; y += A / 200) {
      double v = phi_A(y, A);
      CHECK(v <= prev + 1e-15);
      hmax = std::max(hmax, (prev - v) / (A / 200));
      prev = v;
    }
    // ||phi_A'||_inf = 15/(8A) for the quintic smoothstep
    CHECK(hmax < 15.0 / (8.0 * A) * 1.01);
  }
}

TEST_CASE("J_A agrees with direct quadrature") {
  const GroundState& gs = gs256();
  const Grid& g = gs.Q.grid;
  VirialConfig cfg;
  cfg.A = 8.0;
  CHECK(J_A(Field2D(g), gs, cfg) == 0.0);

  Field2D w(g);
  for (int i = 0; i < g.N1; ++i)
    for (int j = 0; j < g.N2; ++j)
      w.at(i, j) = gs.F.at(i, j) * phi_A(g.x1(i), cfg.A);
  double ref = integrate(multiply(gs.Q, w));
  CHECK(std::fabs(J_A(gs.Q, gs, cfg) - ref) < 1e-12 * std::fabs(ref));
}

TEST_CASE("localized mass") {
  const GroundState& gs = gs256();
  CHECK(I_localized(Field2D(gs.Q.grid), 0.0, 4.0) == 0.0);
  CHECK(I_localized(gs.Q, 0.0, 4.0, true) ==
        doctest::Approx(gs.mass).epsilon(1e-14));
  // weight at the center is 1/2, far left shift kills the mass
  CHECK(I_localized(gs.Q, 0.0, 4.0) < gs.mass);
  CHECK(I_localized(gs.Q, 120.0, 1.0) < 1e-12);
  CHECK(I_localized(gs.Q, -120.0, 1.0) ==
        doctest::Approx(gs.mass).epsilon(1e-10));
}

TEST_CASE("right tail of the soliton decays at rate 2") {
  const GroundState& gs = gs256();
  CHECK(right_tail_mass(Field2D(gs.Q.grid), 3.0) == 0.0);
  std::vector<double> y0, lt;
  for (double y = 2; y <= 8; y += 1) {
    y0.push_back(y);
    lt.push_back(std::log(right_tail_mass(gs.Q, y)));
  }
  double n = y0.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < y0.size(); ++k) {
    sx += y0[k];
    sy += lt[k];
    sxx += y0[k] * y0[k];
    sxy += y0[k] * lt[k];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope == doctest::Approx(-2.0).epsilon(0.1));
}

TEST_CASE("b constant of the growth bound") {
  double b = b_constant(gs256(), chi_pair().vec);
  CHECK(b > 0);
  CHECK(b == doctest::Approx(2.3355658).epsilon(1e-5));
}

TEST_CASE("K_A assembly and slope on a synthetic series") {
  DiagnosticSeries d;
  double kappa = 14.3;
  for (int k = 0; k <= 40; ++k) {
    double s = 0.1 * k;
    d.s.push_back(s);
    d.lambda.push_back(1.0);
    d.JA.push_back(kappa + 2.0 * s);
  }
  compute_KA(d, kappa);
  SlopeReport rep = KA_slope(d, 1.0);
  CHECK(rep.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rep.min_rate == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rep.points == 31);
}

TEST_CASE("virial audit row vanishes identically at eps = 0") {
  const GroundState& gs = gs256();
  ModulationState ms;
  ms.eps = Field2D(gs.Q.grid);
  RateEstimate r;
  VirialConfig cfg;
  cfg.A = 8.0;
  cfg.kappa = gs.kappa;
  VirialAuditRow row = virial_rate_audit(ms, r, gs, cfg, 0.0, 0.0, 1.0);
  CHECK(row.dJA_fd == 0.0);
  CHECK(row.term_lambda == 0.0);
  CHECK(row.term_mass == 0.0);
  CHECK(row.R_num == 0.0);
  CHECK(row.majorant == 0.0);
  CHECK(row.yF_term == 0.0);
}
