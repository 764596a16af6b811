#pragma once
#include <cstdint>
#include <functional>
#include <vector>

#include "trikin/bc.hpp"
#include "trikin/flux.hpp"
#include "trikin/mesh.hpp"
#include "trikin/scfv.hpp"

namespace trikin {

struct SolverConfig {
  FluxParams flux;
  double cfl = 0.05;
  double threshold = 0.3;       // troubled-cell indicator level
  bool hybrid = true;           // subcell capturing active
  bool force_troubled = false;  // run every cell as subcell finite volumes
};

// Two-stage fourth-order update: each stage evaluates the flux time
// integrals over both [0, dt/2] and [0, dt], and the second stage combines
// them with the stored first-stage pair.
class Solver {
 public:
  Solver(TriMesh mesh_, SolverConfig cfg_, BcSet bcs_);

  void init(const std::function<Vec4(double, double)>& f);
  double compute_dt() const;

  // One step of size dt. False if invalid states appeared; the solution is
  // rolled back to the step start in that case.
  bool advance(double dt);
  // Retries with halved dt on failure; returns the dt actually taken, 0 if
  // even the smallest attempt failed.
  double advance_robust(double dt, int max_halvings = 12);

  Vec4 total_conserved() const;
  int troubled_count() const;
  Vec4 eval(int cell, double r, double s) const;  // current polynomial

  double time = 0;
  TriMesh mesh;
  SolverConfig cfg;
  BcSet bcs;

  std::vector<CellPoly> q;        // nodal values (recovered where troubled)
  std::vector<CellSub> sub;       // subcell averages, valid where troubled
  std::vector<uint8_t> troubled;
  std::vector<int32_t> tid;       // ordinal among troubled cells, or -1

 private:
  void refresh_marks();
  void compute_stage(double dt, double tbc, std::vector<CellSub>& res_h,
                     std::vector<CellSub>& res_f);

  DetectorWeights detw_;
  std::vector<Vec4> avg_;                  // scratch: cell averages
  std::vector<CellPoly> gx_, gy_;          // scratch: gradients at nodes
  std::vector<std::array<PointFlux, kSP>> pf_;  // scratch: nodal fluxes
  std::vector<SubcellRecon> recon_;
  std::vector<CellSub> res_h_, res_f_, combo_;
  std::vector<CellPoly> qn_;
  std::vector<CellSub> subn_;
};

}  // namespace trikin
