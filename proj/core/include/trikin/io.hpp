#pragma once
#include <climits>
#include <map>
#include <string>
#include <vector>

#include "trikin/cases.hpp"

namespace trikin {

// key=value file with [section] headers; keys are addressed "section.key"
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_text(const std::string& text);

  bool has(const std::string& key) const;
  std::string str(const std::string& key, const std::string& dflt = "") const;
  double num(const std::string& key, double dflt) const;
  int integer(const std::string& key, int dflt) const;
  bool flag(const std::string& key, bool dflt) const;
  void set(const std::string& key, const std::string& value);

 private:
  std::map<std::string, std::string> kv_;
};

// Piecewise constant view on the 16 subcells of every element plus the
// troubled mask, legacy ASCII format.
void write_vtk(const std::string& path, const Solver& s);
void write_mesh_vtk(const std::string& path, const TriMesh& m);

void write_csv(const std::string& path, const std::vector<std::string>& cols,
               const std::vector<std::vector<double>>& rows);

struct RunOptions {
  std::string out_dir;  // empty = write nothing
  int log_every = 200;  // steps between progress lines, 0 = quiet
  int vtk_every = 0;    // steps between field dumps, 0 = final only
  int max_steps = INT_MAX;
};

struct RunResult {
  int steps = 0;
  double t = 0;
  double steady_residual = -1;  // max |dq|/(scale dt) at the last check
  bool reached_steady = false;
  bool failed = false;
  std::string message;
};

// Advances an initialized solver to def.t_end (or until the steady tolerance
// is met), logging and writing output along the way.
RunResult run_case(Solver& s, const CaseDef& def, const RunOptions& opt);

}  // namespace trikin
