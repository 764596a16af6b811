#pragma once
#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "trikin/refelem.hpp"

namespace trikin {

struct CellGeom {
  double x0[2];        // image of reference vertex 0
  double jac[2][2];    // (x,y) = x0 + J (r,s)
  double jinv[2][2];
  double area;
  double h;            // length scale of the originating quad, for the CFL bound
  double sp[kSP][2];   // physical solution point coords
};

struct EdgeGeom {
  int32_t cl, cr;      // cr = -1 on a boundary edge
  int8_t sl, sr;       // local edge index inside cl / cr
  int8_t tag;          // boundary tag (-1 inside): 0 left 1 right 2 bottom 3 top
  double nx, ny, len;  // unit normal out of cl
  double fp[kFP][2];   // flux point coords in cl's traversal order
  // translation taking cl-side coordinates to cr's frame; nonzero only on
  // edges glued across a periodic pair of boundaries
  double shx = 0, shy = 0;
};

// FP slot l seen from cl pairs with slot kFP-1-l seen from cr: the two
// counterclockwise traversals run the shared edge in opposite directions.
struct TriMesh {
  std::vector<std::array<double, 2>> verts;
  std::vector<std::array<int32_t, 3>> tris;
  std::vector<CellGeom> cells;
  std::vector<EdgeGeom> edges;
  std::vector<std::array<int32_t, 3>> cell_edges;  // cell, local edge -> edge id

  int ncells() const { return int(cells.size()); }
  void sp_coords(int c, int j, double& x, double& y) const {
    x = cells[c].sp[j][0];
    y = cells[c].sp[j][1];
  }
  // reference -> physical for cell c
  void map_point(int c, double r, double s, double& x, double& y) const {
    const CellGeom& g = cells[c];
    x = g.x0[0] + g.jac[0][0]*r + g.jac[0][1]*s;
    y = g.x0[1] + g.jac[1][0]*r + g.jac[1][1]*s;
  }
};

struct StructuredSpec {
  int nx = 1, ny = 1;
  // vertex position for lattice index (i, j), i in [0, nx], j in [0, ny]
  std::function<void(int, int, double&, double&)> node;
  bool periodic_x = false, periodic_y = false;
  bool crosshatch = true;  // alternate the split diagonal checkerboard-style
};

// Quads split into triangle pairs. Boundary tags: 0 left, 1 right, 2 bottom,
// 3 top. Periodic sides are glued into interior edges.
TriMesh structured_tri_mesh(const StructuredSpec& spec);

// Uniform rectangle helper
TriMesh rect_mesh(int nx, int ny, double x0, double y0, double lx, double ly,
                  bool periodic_x = false, bool periodic_y = false,
                  bool crosshatch = true);

// Symmetric two-sided geometric stretching of [0,1]: n intervals, the first
// h0 long, ratio solved so that they meet in the middle.
std::vector<double> stretched_coords(int n, double h0);

}  // namespace trikin
