#pragma once
#include <array>

namespace trikin {

inline constexpr int kOrder = 3;   // cell polynomial degree
inline constexpr int kSP = 10;     // solution points per cell
inline constexpr int kFP = 4;      // flux points per edge, coincident with boundary SPs
inline constexpr int kSubN = 4;    // subcell rows per edge
inline constexpr int kSub = 16;    // subcells per cell
inline constexpr int kSubVert = 15;
inline constexpr int kSubEdge = 30;  // 18 internal + 12 on the main-cell boundary

// Sub-edge of the uniform 16-cell split. For boundary segments `right` is -1
// and (main_edge, seg) give the position along the main cell's edge.
struct SubEdge {
  int left, right;
  int main_edge, seg;       // -1,-1 for internal sub-edges
  double mid[2];            // reference coords
  double nx, ny, len;       // reference normal (outward from `left`) and length
};

struct ReferenceElement {
  double sp[kSP][2];               // node coords on the unit right triangle
  int edge_sp[3][kFP];             // edge s, slot l -> SP index (slots follow edge direction)
  double edge_xi[kFP];             // 1D node params in [0,1] along each edge
  double edge_w[kFP];              // integral of the cubic edge interpolant: Lobatto weights

  double vander_inv[kSP][kSP];     // monomial coefficients of the Lagrange basis, column j = L_j
  double dLdr[kSP][kSP];           // [j][m] = dL_m/dr at sp_j
  double dLds[kSP][kSP];
  double mass[kSP][kSP];           // reference mass matrix
  double cellavg[kSP];             // nodal values -> cell average
  double lift[kSP][3][kFP];        // correction coefficients, geometry-independent

  double subavg[kSub][kSP];        // S: SP values -> subcell averages
  double recover[kSP][kSub];       // P: subcell averages -> SP values; P S = I on cubics

  double subvert[kSubVert][2];     // refinement lattice vertices
  int subtri[kSub][3];             // subcell vertex triplets, counterclockwise
  double subcent[kSub][2];
  std::array<SubEdge, kSubEdge> subedge;
  int sub_nbr[kSub][3];            // face neighbors; -(1+main_edge*4+seg) across the boundary
  int subface[kSub][3];            // subcell face -> subedge index
  int boundary_se[3][kSubN];       // (main_edge, seg) -> subedge index
  int fp_seg[kFP];                 // FP slot -> boundary segment index along the same edge

  void basis_at(double r, double s, double* L) const;          // 10 values
  void basis_grad_at(double r, double s, double* Lr, double* Ls) const;
};

// Built once; all cells share it through their affine maps.
const ReferenceElement& reference_element();

}  // namespace trikin
