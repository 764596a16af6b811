#include "trikin/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace trikin {

// Config --------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse_text(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    size_t cut = line.find_first_of("#;");
    if (cut != std::string::npos) line = line.substr(0, cut);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error("config line " + std::to_string(lineno) +
                                 ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": empty key");
    cfg.set(section.empty() ? key : section + "." + key, val);
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string Config::str(const std::string& key, const std::string& dflt) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? dflt : it->second;
}

double Config::num(const std::string& key, double dflt) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return dflt;
  size_t pos = 0;
  double v = std::stod(it->second, &pos);
  if (pos != it->second.size())
    throw std::runtime_error("config key " + key + ": bad number '" +
                             it->second + "'");
  return v;
}

int Config::integer(const std::string& key, int dflt) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return dflt;
  size_t pos = 0;
  int v = std::stoi(it->second, &pos);
  if (pos != it->second.size())
    throw std::runtime_error("config key " + key + ": bad integer '" +
                             it->second + "'");
  return v;
}

bool Config::flag(const std::string& key, bool dflt) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return dflt;
  const std::string& v = it->second;
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw std::runtime_error("config key " + key + ": bad flag '" + v + "'");
}

void Config::set(const std::string& key, const std::string& value) {
  kv_[key] = value;
}

// VTK -----------------------------------------------------------------------

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_or_throw(const std::string& path) {
  FilePtr f(std::fopen(path.c_str(), "w"));
  if (!f) throw std::runtime_error("cannot write " + path);
  return f;
}

}  // namespace

void write_vtk(const std::string& path, const Solver& s) {
  const ReferenceElement& re = reference_element();
  const TriMesh& m = s.mesh;
  const int n = m.ncells();
  FilePtr f = open_or_throw(path);

  std::fprintf(f.get(), "# vtk DataFile Version 3.0\n");
  std::fprintf(f.get(), "trikin subcell field at t=%.17g\n", s.time);
  std::fprintf(f.get(), "ASCII\nDATASET UNSTRUCTURED_GRID\n");

  std::fprintf(f.get(), "POINTS %d double\n", n*kSubVert);
  for (int c = 0; c < n; c++)
    for (int v = 0; v < kSubVert; v++) {
      double x, y;
      m.map_point(c, re.subvert[v][0], re.subvert[v][1], x, y);
      std::fprintf(f.get(), "%.9g %.9g 0\n", x, y);
    }

  std::fprintf(f.get(), "CELLS %d %d\n", n*kSub, n*kSub*4);
  for (int c = 0; c < n; c++)
    for (int k = 0; k < kSub; k++)
      std::fprintf(f.get(), "3 %d %d %d\n", c*kSubVert + re.subtri[k][0],
                   c*kSubVert + re.subtri[k][1], c*kSubVert + re.subtri[k][2]);
  std::fprintf(f.get(), "CELL_TYPES %d\n", n*kSub);
  for (int i = 0; i < n*kSub; i++) std::fprintf(f.get(), "5\n");

  std::fprintf(f.get(), "CELL_DATA %d\n", n*kSub);
  const char* names[4] = {"rho", "u", "v", "p"};
  double gamma = s.cfg.flux.gamma;
  std::vector<GasState> gs(n*kSub);
  for (int c = 0; c < n; c++)
    for (int k = 0; k < kSub; k++) {
      Vec4 qk;
      if (s.troubled[c]) {
        qk = s.sub[c][k];
      } else {
        qk = kZero;
        for (int j = 0; j < kSP; j++) qk += re.subavg[k][j]*s.q[c][j];
      }
      gs[c*kSub + k] = primitive(qk, gamma);
    }
  for (int comp = 0; comp < 4; comp++) {
    std::fprintf(f.get(), "SCALARS %s double 1\nLOOKUP_TABLE default\n",
                 names[comp]);
    for (const GasState& g : gs) {
      double v = comp == 0 ? g.rho : comp == 1 ? g.U : comp == 2 ? g.V : g.p;
      std::fprintf(f.get(), "%.9g\n", v);
    }
  }
  std::fprintf(f.get(), "SCALARS troubled int 1\nLOOKUP_TABLE default\n");
  for (int c = 0; c < n; c++)
    for (int k = 0; k < kSub; k++)
      std::fprintf(f.get(), "%d\n", int(s.troubled[c]));
}

void write_mesh_vtk(const std::string& path, const TriMesh& m) {
  FilePtr f = open_or_throw(path);
  std::fprintf(f.get(), "# vtk DataFile Version 3.0\n");
  std::fprintf(f.get(), "trikin mesh\nASCII\nDATASET UNSTRUCTURED_GRID\n");
  std::fprintf(f.get(), "POINTS %zu double\n", m.verts.size());
  for (const auto& v : m.verts)
    std::fprintf(f.get(), "%.17g %.17g 0\n", v[0], v[1]);
  std::fprintf(f.get(), "CELLS %zu %zu\n", m.tris.size(), m.tris.size()*4);
  for (const auto& t : m.tris)
    std::fprintf(f.get(), "3 %d %d %d\n", t[0], t[1], t[2]);
  std::fprintf(f.get(), "CELL_TYPES %zu\n", m.tris.size());
  for (size_t i = 0; i < m.tris.size(); i++) std::fprintf(f.get(), "5\n");
}

void write_csv(const std::string& path, const std::vector<std::string>& cols,
               const std::vector<std::vector<double>>& rows) {
  FilePtr f = open_or_throw(path);
  for (size_t i = 0; i < cols.size(); i++)
    std::fprintf(f.get(), "%s%s", cols[i].c_str(),
                 i + 1 < cols.size() ? "," : "\n");
  for (const auto& r : rows)
    for (size_t i = 0; i < r.size(); i++)
      std::fprintf(f.get(), "%.17g%s", r[i], i + 1 < r.size() ? "," : "\n");
}

// Run driver ----------------------------------------------------------------

namespace {

// max |increment| / (component scale * dt) over every solution point
double residual_norm(const std::vector<CellPoly>& a,
                     const std::vector<CellPoly>& b, double dt) {
  double scale[4] = {0, 0, 0, 0};
  for (const CellPoly& cp : b)
    for (const Vec4& q : cp)
      for (int m = 0; m < 4; m++)
        scale[m] = std::max(scale[m], std::fabs(q[m]));
  double r = 0;
  for (size_t c = 0; c < b.size(); c++)
    for (int j = 0; j < kSP; j++)
      for (int m = 0; m < 4; m++) {
        double d = std::fabs(b[c][j][m] - a[c][j][m])/std::max(scale[m], 1e-30);
        r = std::max(r, d);
      }
  return r/dt;
}

}  // namespace

RunResult run_case(Solver& s, const CaseDef& def, const RunOptions& opt) {
  RunResult res;
  const bool to_files = !opt.out_dir.empty();
  double dt = 0;
  std::vector<CellPoly> prev;
  int since_dt = 1000000;

  while (s.time < def.t_end*(1 - 1e-12) && res.steps < opt.max_steps) {
    if (since_dt >= 20) {
      dt = s.compute_dt();
      since_dt = 0;
    }
    since_dt++;
    double step = std::min(dt, def.t_end - s.time);

    bool check = opt.log_every > 0 && (res.steps + 1) % opt.log_every == 0;
    if (check) prev = s.q;

    double taken = s.advance_robust(step);
    if (taken == 0) {
      res.failed = true;
      res.message = "time step collapsed at t=" + std::to_string(s.time);
      break;
    }
    res.steps++;

    if (check) {
      res.steady_residual = residual_norm(prev, s.q, taken);
      std::printf("step %8d  t %12.6g  dt %10.4g  troubled %6d  res %10.4g\n",
                  res.steps, s.time, taken, s.troubled_count(),
                  res.steady_residual);
      std::fflush(stdout);
      if (def.steady_tol > 0 && res.steady_residual < def.steady_tol) {
        res.reached_steady = true;
        break;
      }
    }
    if (to_files && opt.vtk_every > 0 && res.steps % opt.vtk_every == 0)
      write_vtk(opt.out_dir + "/" + def.name + "_" +
                    std::to_string(res.steps) + ".vtk",
                s);
  }

  res.t = s.time;
  if (to_files && !res.failed)
    write_vtk(opt.out_dir + "/" + def.name + "_final.vtk", s);
  return res;
}

}  // namespace trikin
