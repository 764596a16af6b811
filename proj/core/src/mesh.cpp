#include "trikin/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <utility>

namespace trikin {

namespace {

void finish_cell(const TriMesh& m, CellGeom& g, const std::array<int32_t, 3>& t) {
  const ReferenceElement& re = reference_element();
  const auto& a = m.verts[t[0]];
  const auto& b = m.verts[t[1]];
  const auto& c = m.verts[t[2]];
  g.x0[0] = a[0];
  g.x0[1] = a[1];
  g.jac[0][0] = b[0] - a[0];
  g.jac[0][1] = c[0] - a[0];
  g.jac[1][0] = b[1] - a[1];
  g.jac[1][1] = c[1] - a[1];
  double det = g.jac[0][0]*g.jac[1][1] - g.jac[0][1]*g.jac[1][0];
  if (det <= 0) throw std::runtime_error("cell with non-positive orientation");
  g.area = 0.5*det;
  g.jinv[0][0] = g.jac[1][1]/det;
  g.jinv[0][1] = -g.jac[0][1]/det;
  g.jinv[1][0] = -g.jac[1][0]/det;
  g.jinv[1][1] = g.jac[0][0]/det;
  for (int j = 0; j < kSP; j++) {
    double r = re.sp[j][0], s = re.sp[j][1];
    g.sp[j][0] = g.x0[0] + g.jac[0][0]*r + g.jac[0][1]*s;
    g.sp[j][1] = g.x0[1] + g.jac[1][0]*r + g.jac[1][1]*s;
  }
}

void build_edges(TriMesh& m, double glue_tx, double glue_ty, bool periodic_x,
                 bool periodic_y) {
  const ReferenceElement& re = reference_element();
  std::map<std::pair<int32_t, int32_t>, int> open;
  m.cell_edges.assign(m.tris.size(), {-1, -1, -1});
  for (int c = 0; c < m.ncells(); c++)
    for (int s = 0; s < 3; s++) {
      int32_t va = m.tris[c][s];
      int32_t vb = m.tris[c][(s + 1)%3];
      std::pair<int32_t, int32_t> key = std::minmax(va, vb);
      auto it = open.find(key);
      if (it == open.end()) {
        EdgeGeom e;
        e.cl = c;
        e.cr = -1;
        e.sl = int8_t(s);
        e.sr = -1;
        e.tag = -1;
        double ax = m.verts[va][0], ay = m.verts[va][1];
        double bx = m.verts[vb][0], by = m.verts[vb][1];
        double dx = bx - ax, dy = by - ay;
        e.len = std::sqrt(dx*dx + dy*dy);
        e.nx = dy/e.len;
        e.ny = -dx/e.len;
        for (int l = 0; l < kFP; l++) {
          double xi = re.edge_xi[l];
          e.fp[l][0] = ax + xi*dx;
          e.fp[l][1] = ay + xi*dy;
        }
        open[key] = int(m.edges.size());
        m.cell_edges[c][s] = int(m.edges.size());
        m.edges.push_back(e);
      } else {
        m.edges[it->second].cr = c;
        m.edges[it->second].sr = int8_t(s);
        m.cell_edges[c][s] = it->second;
        open.erase(it);
      }
    }

  // Remaining open edges are on the boundary. Tag by outward normal.
  for (auto& [key, id] : open) {
    EdgeGeom& e = m.edges[id];
    if (std::fabs(e.nx) > std::fabs(e.ny))
      e.tag = e.nx < 0 ? 0 : 1;
    else
      e.tag = e.ny < 0 ? 2 : 3;
  }

  // Periodic gluing: a high-side boundary edge pairs with the low-side edge
  // whose midpoint is a domain-width translate of its own.
  for (int axis = 0; axis < 2; axis++) {
    if (!(axis == 0 ? periodic_x : periodic_y)) continue;
    double tx = axis == 0 ? glue_tx : 0;
    double ty = axis == 0 ? 0 : glue_ty;
    int lo = axis == 0 ? 0 : 2, hi = axis == 0 ? 1 : 3;
    std::vector<int> pool;
    for (size_t id = 0; id < m.edges.size(); id++)
      if (m.edges[id].tag == lo) pool.push_back(int(id));
    for (size_t id = 0; id < m.edges.size(); id++) {
      EdgeGeom& e = m.edges[id];
      if (e.tag != hi) continue;
      double mx = 0.5*(e.fp[0][0] + e.fp[kFP - 1][0]);
      double my = 0.5*(e.fp[0][1] + e.fp[kFP - 1][1]);
      int match = -1;
      for (int pid : pool) {
        const EdgeGeom& p = m.edges[pid];
        double px = 0.5*(p.fp[0][0] + p.fp[kFP - 1][0]) + tx;
        double py = 0.5*(p.fp[0][1] + p.fp[kFP - 1][1]) + ty;
        if (std::fabs(px - mx) + std::fabs(py - my) < 1e-9*e.len) {
          match = pid;
          break;
        }
      }
      if (match < 0) throw std::runtime_error("periodic match failed");
      EdgeGeom& p = m.edges[match];
      // keep the low-side edge, absorb the high-side one
      p.cr = e.cl;
      p.sr = e.sl;
      p.tag = -1;
      p.shx = tx;
      p.shy = ty;
      m.cell_edges[e.cl][e.sl] = match;
      e.cl = -1;  // mark dead
    }
  }

  // compact dead edges
  std::vector<int32_t> remap(m.edges.size());
  int keep = 0;
  for (size_t id = 0; id < m.edges.size(); id++) {
    if (m.edges[id].cl < 0) {
      remap[id] = -1;
      continue;
    }
    remap[id] = keep;
    m.edges[keep] = m.edges[id];
    keep++;
  }
  m.edges.resize(keep);
  for (auto& ce : m.cell_edges)
    for (int s = 0; s < 3; s++) ce[s] = remap[ce[s]];
}

}  // namespace

TriMesh structured_tri_mesh(const StructuredSpec& spec) {
  TriMesh m;
  int nx = spec.nx, ny = spec.ny;
  auto vid = [&](int i, int j) { return j*(nx + 1) + i; };
  m.verts.resize((nx + 1)*(ny + 1));
  for (int j = 0; j <= ny; j++)
    for (int i = 0; i <= nx; i++) {
      double x, y;
      spec.node(i, j, x, y);
      m.verts[vid(i, j)] = {x, y};
    }
  std::vector<double> hq;
  for (int j = 0; j < ny; j++)
    for (int i = 0; i < nx; i++) {
      int32_t a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1),
              d = vid(i, j + 1);
      bool flip = spec.crosshatch && ((i + j)%2 == 1);
      if (!flip) {  // diagonal a-c
        m.tris.push_back({a, b, c});
        m.tris.push_back({a, c, d});
      } else {  // diagonal b-d
        m.tris.push_back({a, b, d});
        m.tris.push_back({b, c, d});
      }
      double side = 1e300;
      int32_t loop[5] = {a, b, c, d, a};
      for (int k = 0; k < 4; k++) {
        double dx = m.verts[loop[k + 1]][0] - m.verts[loop[k]][0];
        double dy = m.verts[loop[k + 1]][1] - m.verts[loop[k]][1];
        side = std::min(side, std::sqrt(dx*dx + dy*dy));
      }
      hq.push_back(side);
      hq.push_back(side);
    }
  m.cells.resize(m.tris.size());
  for (int c = 0; c < m.ncells(); c++) {
    finish_cell(m, m.cells[c], m.tris[c]);
    m.cells[c].h = hq[c];
  }
  double x00, y00, x10, y10, x01, y01;
  spec.node(0, 0, x00, y00);
  spec.node(nx, 0, x10, y10);
  spec.node(0, ny, x01, y01);
  build_edges(m, x10 - x00, y01 - y00, spec.periodic_x, spec.periodic_y);
  return m;
}

TriMesh rect_mesh(int nx, int ny, double x0, double y0, double lx, double ly,
                  bool periodic_x, bool periodic_y, bool crosshatch) {
  StructuredSpec s;
  s.nx = nx;
  s.ny = ny;
  s.periodic_x = periodic_x;
  s.periodic_y = periodic_y;
  s.crosshatch = crosshatch;
  s.node = [=](int i, int j, double& x, double& y) {
    x = x0 + lx*i/double(nx);
    y = y0 + ly*j/double(ny);
  };
  return structured_tri_mesh(s);
}

std::vector<double> stretched_coords(int n, double h0) {
  if (n%2 != 0) throw std::runtime_error("stretching needs an even count");
  int half = n/2;
  // geometric ratio r with h0 (r^half - 1)/(r - 1) = 1/2
  double target = 0.5/h0;
  double r = 1.5;
  for (int it = 0; it < 200; it++) {
    double f = 0, df = 0, p = 1;
    for (int k = 0; k < half; k++) {
      f += p;
      if (k > 0) df += k*p/r;
      p *= r;
    }
    double step = (f - target)/df;
    r -= step;
    if (std::fabs(step) < 1e-14) break;
  }
  std::vector<double> x(n + 1);
  x[0] = 0;
  double h = h0;
  for (int k = 0; k < half; k++) {
    x[k + 1] = x[k] + h;
    h *= r;
  }
  x[half] = 0.5;
  for (int k = 0; k <= half; k++) x[n - k] = 1.0 - x[k];
  return x;
}

}  // namespace trikin
