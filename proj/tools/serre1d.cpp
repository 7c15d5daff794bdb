// Command-line driver: scenario runs, the soliton convergence sweep, the
// dam-break cases and the dispersion relation.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "serre/analysis.hpp"
#include "serre/config.hpp"
#include "serre/simulation.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw serre::ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open output file: " + path.string());
  return out;
}

int run_scenario(const serre::ScenarioConfig& cfg, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  const auto t0 = std::chrono::steady_clock::now();
  const serre::Grid grid = serre::make_grid(cfg.x_min, cfg.x_max, cfg.n_cells);
  const serre::InitialState init = serre::initial_state(cfg, grid);
  serre::Simulation sim(grid, init, cfg.g, cfg.controls);

  std::vector<double> targets = cfg.output_times;
  targets.push_back(cfg.controls.t_end);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  {
    auto out = open_out(out_dir / "profile_t0.csv");
    serre::emit_profile_csv(sim.snapshot(), grid, out);
  }
  int idx = 1;
  for (double t_out : targets) {
    if (t_out <= 0.0 || t_out > cfg.controls.t_end) continue;
    sim.advance_to(t_out);
    std::ostringstream name;
    name << "profile_t" << idx++ << ".csv";
    auto out = open_out(out_dir / name.str());
    serre::emit_profile_csv(sim.snapshot(), grid, out);
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  auto man = open_out(out_dir / "manifest.txt");
  serre::write_manifest(cfg, init, elapsed, sim.steps_taken(), man);
  std::cout << "wrote " << out_dir.string() << " (" << sim.steps_taken()
            << " steps, " << elapsed << " s)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Third-order FV/FEM solver for the 1D Serre equations"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  auto* cmd_run = app.add_subcommand("run", "run a scenario config file");
  cmd_run->add_option("config", config_path, "key = value config file")
      ->required();
  cmd_run->add_option("-o,--out-dir", out_dir, "output directory");

  std::string conv_out = "convergence.csv";
  double conv_cr = 0.1, conv_t_end = 5.0;
  std::vector<double> conv_ladder = {0.8, 0.4, 0.2, 0.1};
  auto* cmd_conv = app.add_subcommand(
      "soliton-convergence", "soliton grid-refinement sweep with L1 slopes");
  cmd_conv->add_option("-o,--out", conv_out, "output CSV path");
  cmd_conv->add_option("--cr", conv_cr, "Courant number");
  cmd_conv->add_option("--t-end", conv_t_end, "final time (s)");
  cmd_conv->add_option("--dx", conv_ladder, "dx ladder (m)");

  int db_case = 1;
  auto* cmd_db = app.add_subcommand("dam-break",
                                    "dam-break case 1 (10/1), 2 (10/2) or "
                                    "3 (1.8/1) with the shallow-water "
                                    "reference profile");
  cmd_db->add_option("case", db_case, "case number")
      ->required()
      ->check(CLI::Range(1, 3));
  cmd_db->add_option("-o,--out-dir", out_dir, "output directory");
  double db_dx = 0.5;
  cmd_db->add_option("--dx", db_dx, "cell size (m)");

  double disp_k = 1.0, disp_h0 = 1.0, disp_u0 = 0.0, disp_g = 9.81;
  auto* cmd_disp =
      app.add_subcommand("dispersion", "linearized dispersion relation");
  cmd_disp->add_option("k", disp_k, "wave number (1/m)")->required();
  cmd_disp->add_option("h0", disp_h0, "still-water depth (m)")->required();
  cmd_disp->add_option("u0", disp_u0, "background velocity (m/s)")->required();
  cmd_disp->add_option("--g", disp_g, "gravity (m/s^2)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_run->parsed()) {
      const serre::ScenarioConfig cfg =
          serre::parse_config(read_file(config_path));
      return run_scenario(cfg, out_dir);
    }
    if (cmd_conv->parsed()) {
      serre::ScenarioConfig base;
      base.tag = serre::ScenarioTag::soliton;
      base.x_min = -150.0;
      base.x_max = 150.0;
      base.g = 9.81;
      base.a0 = 10.0;
      base.a1 = 1.0;
      base.x0 = 0.0;
      const serre::ConvergenceResult res =
          serre::convergence_study(base, conv_ladder, conv_cr, conv_t_end);
      auto out = open_out(conv_out);
      serre::emit_convergence_csv(res, out);
      std::cout << "slope_h=" << res.slope_h << " slope_u=" << res.slope_u
                << "\n";
      return 0;
    }
    if (cmd_db->parsed()) {
      const double cases[3][2] = {{10.0, 1.0}, {10.0, 2.0}, {1.8, 1.0}};
      serre::ScenarioConfig cfg;
      cfg.tag = serre::ScenarioTag::dam_break;
      cfg.x_min = 0.0;
      cfg.x_max = 1000.0;
      cfg.n_cells = static_cast<int>(std::llround(1000.0 / db_dx));
      cfg.g = 9.81;
      cfg.controls.cr = 0.2;
      cfg.controls.t_end = 30.0;
      cfg.h1 = cases[db_case - 1][0];
      cfg.h0 = cases[db_case - 1][1];
      cfg.x_dam = 500.0;
      const int rc = run_scenario(cfg, out_dir);
      if (rc != 0) return rc;

      const serre::Grid grid =
          serre::make_grid(cfg.x_min, cfg.x_max, cfg.n_cells);
      const serre::StokerSolution ref = serre::sww_dam_break_exact(
          cfg.h1, cfg.h0, cfg.g, serre::snap_to_interface(cfg.x_dam, grid));
      auto out = open_out(fs::path(out_dir) / "sww_reference.csv");
      out << "x,h,u\n" << std::scientific << std::setprecision(16);
      for (int j = 0; j < grid.n_cells; ++j) {
        double h = 0.0, u = 0.0;
        ref.sample(grid.cell_center(j), cfg.controls.t_end, h, u);
        out << grid.cell_center(j) << ',' << h << ',' << u << '\n';
      }
      return 0;
    }
    if (cmd_disp->parsed()) {
      const serre::DispersionResult r =
          serre::dispersion(disp_k, disp_h0, disp_u0, disp_g);
      std::cout << std::setprecision(12) << "mu = " << r.mu << "\n"
                << "omega_plus = " << r.omega_plus << "\n"
                << "omega_minus = " << r.omega_minus << "\n"
                << "v_phase = " << r.v_phase << "\n"
                << "v_group = " << r.v_group << "\n";
      return 0;
    }
  } catch (const serre::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
