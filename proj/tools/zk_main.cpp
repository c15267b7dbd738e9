#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "zk/acceptance.hpp"
#include "zk/config.hpp"
#include "zk/evolution.hpp"
#include "zk/experiment.hpp"
#include "zk/field_io.hpp"
#include "zk/functionals.hpp"
#include "zk/ground_state.hpp"
#include "zk/kernel.hpp"
#include "zk/linear_decay.hpp"
#include "zk/linearized.hpp"
#include "zk/modulation.hpp"
#include "zk/radial.hpp"

using nlohmann::json;

namespace {

constexpr const char* kVersion = "zk 0.1.0";

struct Ctx {
  zk::Config cfg;
  std::string out = ".";

  std::string path(const std::string& name) const { return out + "/" + name; }
};

json base_report(const Ctx& c, const std::string& cmd) {
  json j;
  j["schema"] = "zk.report.v1";
  j["cmd"] = cmd;
  j["version"] = kVersion;
  j["config_hash"] = c.cfg.hash();
  return j;
}

json grid_json(const zk::Grid& g) {
  return json{{"L1", g.L1}, {"L2", g.L2}, {"N1", g.N1}, {"N2", g.N2}};
}

void write_report(const Ctx& c, const std::string& name, const json& j) {
  std::ofstream f(c.path(name));
  f << j.dump() << "\n";
  std::cout << j.dump() << "\n";
}

zk::Grid grid_from(const zk::Config& cfg) {
  return zk::Grid(cfg.get_num("grid.L1", 25.6), cfg.get_num("grid.L2", 25.6),
                  cfg.get_int("grid.N1", 256), cfg.get_int("grid.N2", 256));
}

zk::Field2D need_field(const Ctx& c, const std::string& name,
                       const std::string& producer) {
  std::string p = c.path(name);
  if (!std::filesystem::exists(p))
    throw zk::ArtifactMissing("artifact " + name + " not found; run `zk " +
                              producer + "` first");
  return zk::read_field(p);
}

// lambda0 recovered from the stored eigenvector: chi0 is unit-normalized
// and L chi0 = -lambda0 chi0
double lambda0_of(const zk::Field2D& chi0, const zk::GroundState& gs) {
  return -zk::inner(chi0, zk::apply_L(chi0, gs.Q)) / zk::l2norm2(chi0);
}

int cmd_ground_state(const Ctx& c) {
  zk::Grid g = grid_from(c.cfg);
  zk::RadialProfile prof = zk::solve_radial_Q(c.cfg.get_num("radial.tol", 1e-10));
  zk::GroundState gs =
      zk::solve_Q_2d(g, prof, c.cfg.get_num("ground_state.tol", 1e-12));
  zk::write_field(gs.Q, c.path("q.bin"));

  json j = base_report(c, "ground-state");
  j["grid"] = grid_json(g);
  j["Q0"] = gs.Q0;
  j["mass"] = gs.mass;
  j["l4"] = gs.l4;
  j["grad2"] = gs.grad2;
  j["kappa"] = gs.kappa;
  j["residual"] = gs.residual;
  write_report(c, "ground_state.json", j);
  return 0;
}

int cmd_spectrum(const Ctx& c) {
  zk::GroundState gs =
      zk::derive_ground_state(need_field(c, "q.bin", "ground-state"));
  zk::RadialProfile prof = zk::solve_radial_Q(1e-10);
  std::vector<double> m0 = zk::radial_eigenvalues(prof, 3, 0);
  std::vector<double> m1 = zk::radial_eigenvalues(prof, 2, 1);
  zk::EigenPair ep = zk::negative_eigenpair(gs, m0[0] - 0.5);
  zk::write_field(ep.vec, c.path("chi0.bin"));

  json j = base_report(c, "spectrum");
  j["grid"] = grid_json(gs.Q.grid);
  j["lambda0"] = -ep.lambda;
  j["eigen_residual"] = ep.residual;
  j["radial_m0"] = m0;
  j["radial_m1"] = m1;
  write_report(c, "spectrum.json", j);
  return 0;
}

int cmd_evolve(const Ctx& c) {
  std::string input = c.cfg.get_str("evolve.input", "q.bin");
  zk::Field2D u0 = need_field(c, input, "ground-state");

  zk::EvolutionConfig ec;
  ec.dt = c.cfg.get_num("evolve.dt", 1e-3);
  ec.T = c.cfg.get_num("evolve.T", 1.0);
  ec.snapshot_stride = c.cfg.get_int("evolve.snapshot_stride", 100);
  ec.dealias = c.cfg.get_bool("evolve.dealias", true);
  std::string integ = c.cfg.get_str("evolve.integrator", "etdrk4");
  if (integ == "etdrk4")
    ec.integrator = zk::Integrator::ETDRK4;
  else if (integ == "imex")
    ec.integrator = zk::Integrator::IMEX_CN;
  else
    throw zk::ConfigInvalid("evolve.integrator: unknown value " + integ);

  std::ofstream nd(c.path("evolve.ndjson"));
  uint64_t hash = c.cfg.hash();
  std::vector<zk::Observer> obs = {[&](double t, const zk::Field2D& u) {
    json row{{"schema", "zk.series.v1"},
             {"config_hash", hash},
             {"t", t},
             {"mass", zk::zk_mass(u)},
             {"energy", zk::zk_energy(u)}};
    nd << row.dump() << "\n";
  }};
  zk::Trajectory tr = zk::evolve(u0, ec, obs);
  zk::write_field(tr.snapshots.back(), c.path("u_final.bin"));

  json j = base_report(c, "evolve");
  j["grid"] = grid_json(u0.grid);
  j["steps"] = int(std::llround(ec.T / ec.dt));
  j["mass_drift"] =
      std::fabs(tr.mass.back() - tr.mass.front()) / tr.mass.front();
  j["energy_drift"] = std::fabs(tr.energy.back() - tr.energy.front());
  write_report(c, "evolve.json", j);
  return 0;
}

int cmd_diagnose(const Ctx& c) {
  zk::GroundState gs =
      zk::derive_ground_state(need_field(c, "q.bin", "ground-state"));
  zk::Field2D chi0 = need_field(c, "chi0.bin", "spectrum");
  std::string input = c.cfg.get_str("diagnose.input", "u_final.bin");
  zk::Field2D u = need_field(c, input, "evolve");

  zk::ModulationContext ctx(gs, chi0, lambda0_of(chi0, gs));
  zk::ModulationState ms = zk::decompose(u, ctx, zk::initial_guess(u, gs));
  zk::RateEstimate rates = zk::parameter_rates(ms, ctx);

  json j = base_report(c, "diagnose");
  j["grid"] = grid_json(u.grid);
  j["lambda"] = ms.lambda;
  j["x1"] = ms.x1;
  j["ortho"] = {ms.ortho_res[0], ms.ortho_res[1], ms.ortho_res[2]};
  j["eps_l2"] = ms.eps_l2;
  j["eps_h1"] = ms.eps_h1;
  j["lam_rate"] = rates.lam_rate;
  j["x_rate"] = rates.x_rate;
  j["tube_distance"] = zk::tube_distance(u, gs);
  write_report(c, "diagnose.json", j);
  return 0;
}

zk::InstabilityConfig instability_cfg(const zk::Config& cfg) {
  zk::InstabilityConfig ic;
  ic.n = cfg.get_int("instability.n", 30);
  if (ic.n < 5) throw zk::ConfigInvalid("instability.n: must be >= 5");
  ic.A = cfg.get_num("instability.A", 8.0);
  ic.M = cfg.get_num("instability.M", 4.0);
  ic.alpha0 = cfg.get_num("instability.alpha0", 0.3);
  if (ic.alpha0 <= 0 || ic.alpha0 > 0.5)
    throw zk::ConfigInvalid("instability.alpha0: must be in (0, 0.5]");
  ic.T_max = cfg.get_num("instability.T_max", 60.0);
  ic.dt = cfg.get_num("instability.dt", 5e-3);
  ic.control = cfg.get_bool("instability.control", false);
  ic.label = cfg.get_str("instability.label", "run");
  return ic;
}

zk::ModulationContext modulation_ctx(const Ctx& c, zk::GroundState& gs) {
  gs = zk::derive_ground_state(need_field(c, "q.bin", "ground-state"));
  zk::Field2D chi0 = need_field(c, "chi0.bin", "spectrum");
  return zk::ModulationContext(gs, chi0, lambda0_of(chi0, gs));
}

int cmd_audit_virial(const Ctx& c) {
  zk::GroundState gs;
  zk::ModulationContext ctx = modulation_ctx(c, gs);
  zk::InstabilityConfig ic = instability_cfg(c.cfg);
  if (!c.cfg.has("instability.T_max")) ic.T_max = 10.0;
  zk::InstabilityReport rep = zk::run_instability(ic, ctx);

  std::ofstream csv(c.path("virial_audit.csv"));
  csv << "s,A,dJA_fd,term_lambda,term_mass,R_num,majorant,yF_term\n";
  const double As[3] = {4, 8, 16};
  csv.precision(17);
  for (const zk::RateAuditRow& a : rep.audits)
    for (int ia = 0; ia < 3; ++ia) {
      const zk::VirialAuditRow& v = a.virial[ia];
      csv << a.s << "," << As[ia] << "," << v.dJA_fd << "," << v.term_lambda
          << "," << v.term_mass << "," << v.R_num << "," << v.majorant << ","
          << v.yF_term << "\n";
    }

  json j = base_report(c, "audit-virial");
  j["grid"] = grid_json(gs.Q.grid);
  j["rows"] = int(rep.audits.size()) * 3;
  j["kappa"] = gs.kappa;
  write_report(c, "audit_virial.json", j);
  return 0;
}

int cmd_instability(const Ctx& c) {
  zk::GroundState gs;
  zk::ModulationContext ctx = modulation_ctx(c, gs);
  zk::InstabilityConfig ic = instability_cfg(c.cfg);
  zk::InstabilityReport rep = zk::run_instability(ic, ctx);

  std::ofstream nd(c.path("instability.ndjson"));
  uint64_t hash = c.cfg.hash();
  const zk::DiagnosticSeries& d = rep.series;
  for (std::size_t k = 0; k < d.t.size(); ++k) {
    json row{{"schema", "zk.series.v1"}, {"config_hash", hash},
             {"t", d.t[k]},             {"s", d.s[k]},
             {"lambda", d.lambda[k]},   {"x1", d.x1[k]},
             {"eps_l2", d.eps_l2[k]},   {"eps_h1", d.eps_h1[k]},
             {"JA", d.JA[k]},           {"KA", d.KA[k]},
             {"tube", rep.tube[k]}};
    nd << row.dump() << "\n";
  }

  json j = base_report(c, "instability");
  j["grid"] = grid_json(gs.Q.grid);
  j["n"] = ic.n;
  j["a"] = rep.a;
  j["b"] = rep.b;
  j["b_over_2n"] = rep.b / (2.0 * ic.n);
  j["exit_time"] = rep.exit_time;
  j["exited"] = rep.exited;
  j["h1_tripled"] = rep.h1_tripled;
  j["KA_slope"] = rep.KA_slope;
  j["KA_min_rate"] = rep.KA_min_rate;
  j["max_ortho"] = rep.max_ortho;
  j["pass"] = rep.pass;
  write_report(c, "instability.json", j);
  return rep.pass ? 0 : 1;
}

int cmd_kernel(const Ctx& c) {
  const double zc = 1.0 / std::sqrt(3.0);
  zk::DecayFit slow =
      zk::certify_decay(false, -1, zc, 50, 5000, 25, -1.0 / 6, 0.05, false);
  zk::DecayFit slow_x =
      zk::certify_decay(true, -1, zc, 50, 5000, 25, 1.0 / 6, 0.05, false);
  zk::DecayFit right =
      zk::certify_decay(false, +1, 0.0, 8, 60, 15, -5.0, 0.0, true);

  json j = base_report(c, "kernel");
  j["slow_ray_A"] = {{"slope", slow.slope}, {"pass", slow.pass}};
  j["slow_ray_Ax"] = {{"slope", slow_x.slope}, {"pass", slow_x.pass}};
  j["right_half"] = {{"slope", right.slope}, {"pass", right.pass}};
  write_report(c, "kernel.json", j);
  return (slow.pass && slow_x.pass && right.pass) ? 0 : 1;
}

int cmd_acceptance(const Ctx&) {
  std::vector<zk::CriterionResult> res = zk::run_acceptance(std::cout);
  return zk::acceptance_exit_code(res);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for the 2D cubic Zakharov-Kuznetsov "
               "equation"};
  app.require_subcommand(1);

  Ctx c;
  std::string config_path;
  app.add_option("-c,--config", config_path, "TOML config file");
  app.add_option("-o,--out", c.out, "artifact directory");

  auto* sc_gs = app.add_subcommand("ground-state", "solve the ground state Q");
  auto* sc_sp = app.add_subcommand("spectrum", "linearized spectrum and chi0");
  auto* sc_ev = app.add_subcommand("evolve", "time-step the equation");
  auto* sc_dg = app.add_subcommand("diagnose", "modulation decomposition");
  auto* sc_av = app.add_subcommand("audit-virial", "virial identity audit");
  auto* sc_kn = app.add_subcommand("kernel", "kernel decay certification");
  auto* sc_in = app.add_subcommand("instability", "instability vs control experiment");
  auto* sc_ac = app.add_subcommand("acceptance", "full acceptance suite");

  CLI11_PARSE(app, argc, argv);

  if (const char* th = std::getenv("ZK_THREADS")) {
    // all kernels are serial; the env var is honored as an upper bound
    int n = std::atoi(th);
    if (n < 1) {
      std::cerr << "error: ZK_THREADS must be a positive integer\n";
      return 2;
    }
  }

  try {
    if (!config_path.empty()) c.cfg = zk::Config::parse_file(config_path);
    std::filesystem::create_directories(c.out);
    if (sc_gs->parsed()) return cmd_ground_state(c);
    if (sc_sp->parsed()) return cmd_spectrum(c);
    if (sc_ev->parsed()) return cmd_evolve(c);
    if (sc_dg->parsed()) return cmd_diagnose(c);
    if (sc_av->parsed()) return cmd_audit_virial(c);
    if (sc_kn->parsed()) return cmd_kernel(c);
    if (sc_in->parsed()) return cmd_instability(c);
    if (sc_ac->parsed()) return cmd_acceptance(c);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
