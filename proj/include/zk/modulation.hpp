#pragma once

#include "zk/ground_state.hpp"
#include "zk/grid.hpp"

namespace zk {

struct NoPeak : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NewtonDiverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParityViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Everything the decomposition u = lambda^{-1}[Q + eps](.-x) needs:
// the ground state, the negative direction chi0 with L chi0 = -lambda0 chi0
// (lambda0 > 0), and the fixed integrals of the 2x2 rate system.
struct ModulationContext {
  GroundState gs;
  Field2D chi0;
  double lambda0 = 0;

  Field2D Qy1y1, yGradQy1;   // d^2Q/dy1^2, y.grad(Q_{y1})
  Field2D chi0y1, yGradChi0;  // d(chi0)/dy1, y.grad(chi0)
  Field2D Lchi0y1;            // L((chi0)_{y1})
  Field2D QQy1sq;             // Q * Q_{y1}^2
  double q11 = 0;             // int |Q_{y1}|^2
  double cQ = 0;              // int chi0 Q

  ModulationContext(const GroundState& gs_, const Field2D& chi0_,
                    double lambda0_);
};

struct ModulationState {
  double lambda = 1, x1 = 0;
  Field2D eps;
  double ortho_res[3] = {0, 0, 0};  // <eps,chi0>, <eps,Qy1>, <eps,Qy2>
  double eps_h1 = 0;
  double eps_l2 = 0;
};

struct RateEstimate {
  double lam_rate = 0;   // lambda_s / lambda
  double x_rate = 0;     // x_s / lambda - 1
  double bound_rhs = 0;  // ||eps||_2, the right-side scale of the bound
};

std::pair<double, double> initial_guess(const Field2D& u,
                                        const GroundState& gs);

ModulationState decompose(const Field2D& u, const ModulationContext& ctx,
                          std::pair<double, double> seed, double tol = 1e-10);

RateEstimate parameter_rates(const ModulationState& ms,
                             const ModulationContext& ctx);

// right side of the eps evolution equation in rescaled time s
Field2D eps_rhs(const ModulationState& ms, const RateEstimate& rates,
                const ModulationContext& ctx);

// inf over shifts of ||u - Q(.-x1)||_{H1}, by FFT cross-correlation of
// both the L2 and gradient pairings; the tube-exit criterion.
double tube_distance(const Field2D& u, const GroundState& gs);

}  // namespace zk
