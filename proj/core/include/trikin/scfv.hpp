#pragma once
#include <cstdint>
#include <vector>

#include "trikin/bc.hpp"
#include "trikin/mesh.hpp"

namespace trikin {

using CellPoly = std::array<Vec4, kSP>;
using CellSub = std::array<Vec4, kSub>;

// Per-edge weights turning one side's polynomial into its exact average
// over the other side's cell.
struct DetectorWeights {
  std::vector<std::array<double, kSP>> into_l;  // q[cr] -> average over cl
  std::vector<std::array<double, kSP>> into_r;  // q[cl] -> average over cr
};

DetectorWeights build_detector_weights(const TriMesh& m);

// Jump indicator on density and total energy against the face neighbors;
// cells above threshold are marked, then the marking grows by one ring.
void mark_troubled(const TriMesh& m, const DetectorWeights& w,
                   const std::vector<CellPoly>& q, const std::vector<Vec4>& avg,
                   double threshold, std::vector<uint8_t>& mark);

Vec4 cell_average(const CellPoly& q);
CellSub project_subcells(const CellPoly& q);         // S
CellPoly recover_polynomial(const CellSub& s);       // P, with P S = I on cubics
Vec4 subcell_average_of(const CellPoly& q, int t);   // single S row

// Limited linear reconstruction on every subcell of a troubled cell
struct SubcellRecon {
  std::array<Vec4, kSub> gx, gy;  // physical-frame slopes
};

void build_recons(const TriMesh& m, const BcSet& bcs, const FluxParams& par,
                  double time, const std::vector<CellPoly>& q,
                  const std::vector<CellSub>& sub,
                  const std::vector<uint8_t>& troubled,
                  const std::vector<int32_t>& tid,
                  std::vector<SubcellRecon>& recon);

// Facing subcell on the far side of main-edge segment (s_far, seg_far seen
// from the far cell's traversal).
int facing_subcell(int s_far, int seg_far);

}  // namespace trikin
