#include <algorithm>
#include <climits>
#include <cstdio>
#include <filesystem>
#include <string>

#include "CLI11.hpp"
#include "trikin/io.hpp"

using namespace trikin;

namespace {

int cmd_run(const std::string& case_name, const std::string& config_path,
            int nx, int ny, double t_end, double cfl, double threshold,
            double steady_tol, double eps1, bool force_troubled, bool no_hybrid,
            const std::string& out_dir, int vtk_every, int log_every,
            int max_steps, const std::vector<double>& sample) {
  CaseDef def;
  try {
    def = make_case(case_name);
    if (!config_path.empty()) {
      Config cfg = Config::parse_file(config_path);
      nx = cfg.integer("mesh.nx", nx);
      ny = cfg.integer("mesh.ny", ny);
      t_end = cfg.num("time.t_end", t_end);
      cfl = cfg.num("time.cfl", cfl);
      steady_tol = cfg.num("time.steady_tol", steady_tol);
      threshold = cfg.num("solver.threshold", threshold);
      force_troubled = cfg.flag("solver.force_troubled", force_troubled);
      if (cfg.has("solver.hybrid")) no_hybrid = !cfg.flag("solver.hybrid", true);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  if (nx > 0) def.nx = nx;
  if (ny > 0) def.ny = ny;
  if (t_end >= 0) def.t_end = t_end;
  if (cfl > 0) def.cfg.cfl = cfl;
  if (threshold >= 0) def.cfg.threshold = threshold;
  if (steady_tol >= 0) def.steady_tol = steady_tol;
  if (eps1 >= 0) def.cfg.flux.eps1 = eps1;
  def.cfg.force_troubled = force_troubled;
  if (no_hybrid) def.cfg.hybrid = false;

  try {
    std::printf("case %s: mesh %d x %d, t_end %g\n", def.name.c_str(), def.nx,
                def.ny, def.t_end);
    TriMesh mesh = def.mesh(def.nx, def.ny);
    std::printf("  %d cells, %zu edges\n", mesh.ncells(), mesh.edges.size());
    Solver s(std::move(mesh), def.cfg, def.bcs);
    s.init([&](double x, double y) { return def.init(x, y, 0); });

    RunOptions opt;
    opt.out_dir = out_dir;
    opt.vtk_every = vtk_every;
    opt.log_every = log_every;
    opt.max_steps = max_steps;
    if (!out_dir.empty()) std::filesystem::create_directories(out_dir);

    Vec4 tot0 = s.total_conserved();
    RunResult r = run_case(s, def, opt);
    if (r.failed) {
      std::fprintf(stderr, "error: %s\n", r.message.c_str());
      return 3;
    }
    Vec4 tot1 = s.total_conserved();

    std::printf("done: %d steps to t=%.6g%s\n", r.steps, r.t,
                r.reached_steady ? " (steady)" : "");
    std::printf("conserved totals drift: mass %.3e energy %.3e\n",
                tot1[0] - tot0[0], tot1[3] - tot0[3]);
    if (def.exact) {
      const char* names[4] = {"rho", "rho_u", "rho_v", "rho_E"};
      for (int m = 0; m < 4; m++)
        std::printf("l2 error %-6s %.6e\n", names[m],
                    l2_error(s, def.exact, m, s.time));
    }
    if (!out_dir.empty())
      std::printf("fields written to %s/%s_final.vtk\n", out_dir.c_str(),
                  def.name.c_str());
    if (!sample.empty() && !out_dir.empty()) {
      int n = sample.size() > 4 ? (int)sample[4] : 400;
      LineSample ls =
          sample_line(s, sample[0], sample[1], sample[2], sample[3], n);
      double dx = sample[2] - sample[0], dy = sample[3] - sample[1];
      double len = std::hypot(dx, dy);
      std::vector<std::vector<double>> rows;
      for (size_t i = 0; i < ls.s.size(); i++) {
        double f = len > 0 ? ls.s[i]/len : 0;
        GasState g = primitive(ls.q[i], def.cfg.flux.gamma);
        rows.push_back({ls.s[i], sample[0] + f*dx, sample[1] + f*dy, g.rho,
                        g.U, g.V, g.p});
      }
      std::string path = out_dir + "/" + def.name + "_line.csv";
      write_csv(path, {"s", "x", "y", "rho", "u", "v", "p"}, rows);
      std::printf("line sample written to %s\n", path.c_str());
    }
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}

int cmd_tables() {
  const ReferenceElement& re = reference_element();
  std::printf("solution points (r, s):\n");
  for (int j = 0; j < kSP; j++)
    std::printf("  %2d  %+.17g  %+.17g\n", j, re.sp[j][0], re.sp[j][1]);
  std::printf("edge parameters and weights:\n");
  for (int l = 0; l < kFP; l++)
    std::printf("  %d  xi %.17g  w %.17g\n", l, re.edge_xi[l], re.edge_w[l]);
  std::printf("cell average weights:\n");
  for (int j = 0; j < kSP; j++) std::printf("  %+.17g\n", re.cellavg[j]);
  std::printf("correction lift, edge 0 (rows: solution point):\n");
  for (int j = 0; j < kSP; j++) {
    std::printf("  ");
    for (int l = 0; l < kFP; l++) std::printf("%+12.6g ", re.lift[j][0][l]);
    std::printf("\n");
  }
  return 0;
}

int cmd_mesh(const std::string& case_name, int nx, int ny,
             const std::string& out) {
  try {
    TriMesh m;
    if (!case_name.empty()) {
      CaseDef def = make_case(case_name);
      m = def.mesh(nx > 0 ? nx : def.nx, ny > 0 ? ny : def.ny);
    } else {
      m = rect_mesh(nx > 0 ? nx : 10, ny > 0 ? ny : 10, 0, 0, 1, 1);
    }
    double amin = 1e300, amax = 0, hmin = 1e300;
    for (const CellGeom& c : m.cells) {
      amin = std::min(amin, c.area);
      amax = std::max(amax, c.area);
      hmin = std::min(hmin, c.h);
    }
    int nb = 0;
    for (const EdgeGeom& e : m.edges) nb += e.cr < 0;
    std::printf("%d cells, %zu edges (%d boundary)\n", m.ncells(),
                m.edges.size(), nb);
    std::printf("area %.4g .. %.4g, min cell size %.4g\n", amin, amax, hmin);
    write_mesh_vtk(out, m);
    std::printf("written to %s\n", out.c_str());
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-stage gas-kinetic solver on triangular meshes"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "advance a flow case in time");
  std::string case_name, config_path, out_dir = "out";
  int nx = 0, ny = 0, vtk_every = 0, log_every = 200, max_steps = INT_MAX;
  double t_end = -1, cfl = 0, threshold = -1, steady_tol = -1, eps1 = -1;
  bool force_troubled = false, no_hybrid = false;
  run->add_option("--case", case_name, "case name")->required();
  run->add_option("--config", config_path, "key=value settings file");
  run->add_option("--nx", nx, "cells across");
  run->add_option("--ny", ny, "cells up");
  run->add_option("--tend", t_end, "final time");
  run->add_option("--cfl", cfl, "time step fraction");
  run->add_option("--threshold", threshold, "troubled cell indicator level");
  run->add_option("--steady-tol", steady_tol, "stop at this steady residual");
  run->add_option("--eps1", eps1, "inviscid collision time fraction");
  run->add_option("--out", out_dir, "output directory, empty for none");
  run->add_option("--vtk-every", vtk_every, "steps between field dumps");
  run->add_option("--log-every", log_every, "steps between progress lines");
  run->add_option("--max-steps", max_steps, "step limit");
  run->add_flag("--force-troubled", force_troubled,
                "run every cell on subcells");
  run->add_flag("--no-hybrid", no_hybrid, "disable subcell capturing");
  std::vector<double> sample;
  run->add_option("--sample", sample,
                  "write a line sample: x0 y0 x1 y1 [npoints]")
      ->expected(4, 5);

  auto* tables = app.add_subcommand("tables", "print the element tables");

  auto* mesh = app.add_subcommand("mesh", "build a mesh and write it");
  std::string mesh_case, mesh_out = "mesh.vtk";
  int mnx = 0, mny = 0;
  mesh->add_option("--case", mesh_case, "use this case's mesh");
  mesh->add_option("--nx", mnx, "cells across");
  mesh->add_option("--ny", mny, "cells up");
  mesh->add_option("--out", mesh_out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (run->parsed())
    return cmd_run(case_name, config_path, nx, ny, t_end, cfl, threshold,
                   steady_tol, eps1, force_troubled, no_hybrid, out_dir,
                   vtk_every, log_every, max_steps);
  if (tables->parsed()) return cmd_tables();
  if (mesh->parsed()) return cmd_mesh(mesh_case, mnx, mny, mesh_out);
  return 2;
}
