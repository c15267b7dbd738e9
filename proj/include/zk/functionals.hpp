#pragma once

#include "zk/ground_state.hpp"
#include "zk/grid.hpp"
#include "zk/modulation.hpp"

namespace zk {

struct VirialConfig {
  double A = 8.0;     // truncation radius, A >= 1
  double kappa = 0.0;
};

struct MonotonicityProbe {
  double M = 4.0;  // weight scale, M >= 4
  double x0 = 4.0;
  double t0 = 0.0;
};

// smooth cutoff: 1 on (-inf, A], 0 on [2A, inf), quintic smoothstep
// between (so ||phi'||_inf = 15/(8A))
double phi_A(double y1, double A);
double psi(double x1, double M);
double psi_prime(double x1, double M);
double psi_ppp(double x1, double M);

double J_A(const Field2D& eps, const GroundState& gs,
           const VirialConfig& cfg);

// weighted mass int u^2 psi(x1 - shift) dx; with unit_weight the weight
// saturates to 1 and this is the plain mass
double I_localized(const Field2D& u, double shift, double M,
                   bool unit_weight = false);

double right_tail_mass(const Field2D& eps, double y0);

// b = ||Q||_2^2 - (int Q chi0)^2 / ||chi0||_2^2, the slope constant of
// the K_A growth bound
double b_constant(const GroundState& gs, const Field2D& chi0);

struct DiagnosticSeries {
  std::vector<double> s, t, JA, KA, I, eps_l2, eps_h1, lambda, x1;
  double M0 = 0, E0 = 0, b = 0;
  int n = 0;
};

// fill KA[k] = lambda[k] * (JA[k] - kappa)
void compute_KA(DiagnosticSeries& d, double kappa);

struct SlopeReport {
  double slope = 0;      // least-squares slope of KA vs s over s >= s_min
  double min_rate = 0;   // min centered dKA/ds over the same window
  int points = 0;
};
SlopeReport KA_slope(const DiagnosticSeries& d, double s_min = 1.0);

struct VirialAuditRow {
  double dJA_fd = 0;     // centered finite difference of J_A in s
  double term_lambda = 0;  // -(lambda_s/lambda)(J_A - kappa)
  double term_mass = 0;    // 2(1 - (x_s/lambda - 1)/2) int eps Q
  double R_num = 0;        // dJA_fd - term_lambda - term_mass
  double majorant = 0;     // remainder-bound assembly (unit constant)
  double yF_term = 0;      // |int y2 F_{y2} eps phi_A|
};

VirialAuditRow virial_rate_audit(const ModulationState& ms,
                                 const RateEstimate& rates,
                                 const GroundState& gs,
                                 const VirialConfig& cfg, double JA_prev,
                                 double JA_next, double ds2);

}  // namespace zk
