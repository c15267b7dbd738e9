#pragma once

#include <functional>

#include "zk/grid.hpp"

namespace zk {

struct NaNDetected : std::runtime_error {
  double t;
  NaNDetected(const std::string& msg, double t_) : std::runtime_error(msg), t(t_) {}
};

enum class Integrator { ETDRK4, IMEX_CN };

struct EvolutionConfig {
  double dt = 1e-3;
  double T = 1.0;
  Integrator integrator = Integrator::ETDRK4;
  bool dealias = true;
  bool linear_only = false;
  int snapshot_stride = 100;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Field2D> snapshots;
  std::vector<double> mass, energy;
};

// mass M[u] = int u^2, energy E[u] = 1/2 int |grad u|^2 - 1/4 int u^4
double zk_mass(const Field2D& u);
double zk_energy(const Field2D& u);

// One step of u_t + d/dx1 (Lap u + u^3) = 0. The linear symbol
// i k1 (k1^2 + k2^2) is advanced exactly; the cubic term by ETDRK4
// (contour-integral phi functions) or IMEX Crank-Nicolson.
class Stepper {
 public:
  Stepper(const Grid& g, const EvolutionConfig& cfg);
  Spectrum step(const Spectrum& v) const;
  Field2D step(const Field2D& u) const;
  const EvolutionConfig& config() const { return cfg_; }

 private:
  Spectrum nonlinear(const Spectrum& v) const;  // -i k1 (u^3)^
  Grid g_;
  EvolutionConfig cfg_;
  std::vector<std::complex<double>> E_, E2_;       // e^{hL}, e^{hL/2}
  std::vector<std::complex<double>> Qc_, f1_, f2_, f3_;
  std::vector<std::complex<double>> cn_num_, cn_den_;  // (1 +- hL/2)
  std::vector<double> k1m_;  // derivative multiplier, Nyquist zeroed
};

using Observer = std::function<void(double t, const Field2D& u)>;

Trajectory evolve(const Field2D& u0, const EvolutionConfig& cfg,
                  const std::vector<Observer>& observers = {});

}  // namespace zk
