#pragma once

#include "zk/evolution.hpp"
#include "zk/functionals.hpp"
#include "zk/modulation.hpp"

namespace zk {

struct InstabilityConfig {
  int n = 30;          // perturbation divisor, eps0 = (1/n)(Q + a chi0)
  double A = 8.0;      // virial truncation
  double M = 4.0;      // monotonicity weight scale
  double alpha0 = 0.3; // tube radius
  double T_max = 60.0;
  double dt = 5e-3;
  int snapshot_stride = 20;  // decompose every stride steps
  int audit_stride = 10;     // rate/virial audit every this many snapshots
  double frame_interval = 2.0;  // recentered frames for monotonicity
  bool control = false;         // u0 = Q, no perturbation
  std::string label = "run";
};

struct RateAuditRow {
  double s = 0;
  double lam_rate = 0, lam_rate_fd = 0;
  double x_rate = 0, x_rate_fd = 0;
  VirialAuditRow virial[3];  // A = 4, 8, 16
};

struct InstabilityReport {
  InstabilityConfig cfg;
  DiagnosticSeries series;
  std::vector<double> tube;           // tube distance per snapshot
  std::vector<double> lam_rate, x_rate;
  std::vector<double> mass_eps;       // 2 int Q eps + int eps^2
  std::vector<double> energy_eps;     // E[Q + eps]
  // fraction of the mass outside the rescaled sampling window; the
  // continuum identities only transfer to the box while this is small
  std::vector<double> strip_frac;
  std::vector<RateAuditRow> audits;

  double a = 0;
  double ortho0[3] = {0, 0, 0};  // initial-data orthogonality residuals
  double max_ortho = 0;          // worst decomposition residual seen
  double b = 0;                  // slope constant in the K_A growth law
  double exit_time = -1;         // first tube exit, -1 if none
  bool exited = false;
  bool h1_tripled = false;
  double KA_slope = 0, KA_min_rate = 0;
  bool pass = false;

  // recentered snapshots for the monotonicity sweep
  std::vector<Field2D> frames;
  std::vector<double> frame_t, frame_x1;  // x1 unwrapped
};

InstabilityReport run_instability(const InstabilityConfig& cfg,
                                  const ModulationContext& ctx);

// monotonicity sweep over the stored frames: returns the smallest theta with
// [I(t0) - I(t)] <= theta e^{-x0/M} across t <= t0 and the x0 grid.
double monotonicity_theta(const InstabilityReport& rep, double M,
                          const std::vector<double>& x0s);

}  // namespace zk
