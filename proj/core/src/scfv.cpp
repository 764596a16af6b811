#include "trikin/scfv.hpp"

#include <cmath>

#include "quad.hpp"

namespace trikin {

DetectorWeights build_detector_weights(const TriMesh& m) {
  const ReferenceElement& re = reference_element();
  quad::RuleTri rule = quad::duffy(3);
  DetectorWeights w;
  w.into_l.resize(m.edges.size());
  w.into_r.resize(m.edges.size());
  auto fill = [&](int target, int source, double sx, double sy,
                  std::array<double, kSP>& out) {
    for (int j = 0; j < kSP; j++) out[j] = 0;
    const CellGeom& t = m.cells[target];
    const CellGeom& s = m.cells[source];
    double wsum = 0;
    for (size_t qp = 0; qp < rule.w.size(); qp++) {
      double x = t.x0[0] + t.jac[0][0]*rule.r[qp] + t.jac[0][1]*rule.s[qp] + sx;
      double y = t.x0[1] + t.jac[1][0]*rule.r[qp] + t.jac[1][1]*rule.s[qp] + sy;
      double dx = x - s.x0[0], dy = y - s.x0[1];
      double r = s.jinv[0][0]*dx + s.jinv[0][1]*dy;
      double sc = s.jinv[1][0]*dx + s.jinv[1][1]*dy;
      double L[kSP];
      re.basis_at(r, sc, L);
      for (int j = 0; j < kSP; j++) out[j] += rule.w[qp]*L[j];
      wsum += rule.w[qp];
    }
    for (int j = 0; j < kSP; j++) out[j] /= wsum;
  };
  for (size_t e = 0; e < m.edges.size(); e++) {
    const EdgeGeom& ed = m.edges[e];
    if (ed.cr < 0) continue;
    fill(ed.cl, ed.cr, ed.shx, ed.shy, w.into_l[e]);
    fill(ed.cr, ed.cl, -ed.shx, -ed.shy, w.into_r[e]);
  }
  return w;
}

void mark_troubled(const TriMesh& m, const DetectorWeights& w,
                   const std::vector<CellPoly>& q, const std::vector<Vec4>& avg,
                   double threshold, std::vector<uint8_t>& mark) {
  int n = m.ncells();
  static const int comp[2] = {0, 3};
  std::vector<std::array<double, 2>> num(n, {0, 0}), den(n, {0, 0});
  for (size_t e = 0; e < m.edges.size(); e++) {
    const EdgeGeom& ed = m.edges[e];
    if (ed.cr < 0) continue;
    for (int k = 0; k < 2; k++) {
      int c = comp[k];
      double ext_l = 0, ext_r = 0;
      for (int j = 0; j < kSP; j++) {
        ext_l += w.into_l[e][j]*q[ed.cr][j][c];
        ext_r += w.into_r[e][j]*q[ed.cl][j][c];
      }
      num[ed.cl][k] += std::fabs(avg[ed.cl][c] - ext_l);
      num[ed.cr][k] += std::fabs(avg[ed.cr][c] - ext_r);
      den[ed.cl][k] = std::max(den[ed.cl][k], std::fabs(avg[ed.cr][c]));
      den[ed.cr][k] = std::max(den[ed.cr][k], std::fabs(avg[ed.cl][c]));
    }
  }
  mark.assign(n, 0);
  for (int c = 0; c < n; c++)
    for (int k = 0; k < 2; k++)
      if (den[c][k] > 0 && num[c][k]/den[c][k] > threshold) mark[c] = 1;
  // one ring of protection around every marked cell
  std::vector<uint8_t> grown = mark;
  for (size_t e = 0; e < m.edges.size(); e++) {
    const EdgeGeom& ed = m.edges[e];
    if (ed.cr < 0) continue;
    if (mark[ed.cl]) grown[ed.cr] = 1;
    if (mark[ed.cr]) grown[ed.cl] = 1;
  }
  mark.swap(grown);
}

Vec4 cell_average(const CellPoly& q) {
  const ReferenceElement& re = reference_element();
  Vec4 a = {0, 0, 0, 0};
  for (int j = 0; j < kSP; j++) a += re.cellavg[j]*q[j];
  return a;
}

CellSub project_subcells(const CellPoly& q) {
  const ReferenceElement& re = reference_element();
  CellSub s;
  for (int t = 0; t < kSub; t++) {
    Vec4 a = {0, 0, 0, 0};
    for (int j = 0; j < kSP; j++) a += re.subavg[t][j]*q[j];
    s[t] = a;
  }
  return s;
}

CellPoly recover_polynomial(const CellSub& s) {
  const ReferenceElement& re = reference_element();
  CellPoly q;
  for (int j = 0; j < kSP; j++) {
    Vec4 a = {0, 0, 0, 0};
    for (int t = 0; t < kSub; t++) a += re.recover[j][t]*s[t];
    q[j] = a;
  }
  return q;
}

Vec4 subcell_average_of(const CellPoly& q, int t) {
  const ReferenceElement& re = reference_element();
  Vec4 a = {0, 0, 0, 0};
  for (int j = 0; j < kSP; j++) a += re.subavg[t][j]*q[j];
  return a;
}

int facing_subcell(int s_far, int seg_far) {
  const ReferenceElement& re = reference_element();
  return re.subedge[re.boundary_se[s_far][seg_far]].left;
}

void build_recons(const TriMesh& m, const BcSet& bcs, const FluxParams& par,
                  double time, const std::vector<CellPoly>& q,
                  const std::vector<CellSub>& sub,
                  const std::vector<uint8_t>& troubled,
                  const std::vector<int32_t>& tid,
                  std::vector<SubcellRecon>& recon) {
  const ReferenceElement& re = reference_element();
  for (int c = 0; c < m.ncells(); c++) {
    if (tid[c] < 0) continue;
    SubcellRecon& rc = recon[tid[c]];
    for (int t = 0; t < kSub; t++) {
      double xc, yc;
      m.map_point(c, re.subcent[t][0], re.subcent[t][1], xc, yc);
      const Vec4& own = sub[c][t];

      Vec4 navg[3];
      double nd[3][2];
      for (int f = 0; f < 3; f++) {
        int code = re.sub_nbr[t][f];
        if (code >= 0) {
          navg[f] = sub[c][code];
          double x, y;
          m.map_point(c, re.subcent[code][0], re.subcent[code][1], x, y);
          nd[f][0] = x - xc;
          nd[f][1] = y - yc;
          continue;
        }
        int s = (-code - 1)/kSubN;
        int seg = (-code - 1)%kSubN;
        int eid = m.cell_edges[c][s];
        const EdgeGeom& ed = m.edges[eid];
        int nb = ed.cl == c ? ed.cr : ed.cl;
        if (nb >= 0) {
          int s_far = ed.cl == c ? ed.sr : ed.sl;
          int tf = facing_subcell(s_far, kSubN - 1 - seg);
          navg[f] = troubled[nb] ? sub[nb][tf] : subcell_average_of(q[nb], tf);
          double x, y;
          m.map_point(nb, re.subcent[tf][0], re.subcent[tf][1], x, y);
          // a glued neighbor reports coordinates from the far side
          x += ed.cl == c ? -ed.shx : ed.shx;
          y += ed.cl == c ? -ed.shy : ed.shy;
          nd[f][0] = x - xc;
          nd[f][1] = y - yc;
        } else {
          // ghost: state transform of the own average, mirrored centroid
          const SubEdge& se = re.subedge[re.boundary_se[s][seg]];
          double mx, my;
          m.map_point(c, se.mid[0], se.mid[1], mx, my);
          Vec4 gql, ggx, ggy;
          Vec4 zero = {0, 0, 0, 0};
          ghost_point(bcs.by_tag[ed.tag], bcs, par, mx, my, time, ed.nx, ed.ny,
                      rotate_to(own, ed.nx, ed.ny), zero, zero, gql, ggx, ggy);
          navg[f] = rotate_from(gql, ed.nx, ed.ny);
          double dn = (xc - mx)*ed.nx + (yc - my)*ed.ny;
          nd[f][0] = -2.0*dn*ed.nx;
          nd[f][1] = -2.0*dn*ed.ny;
        }
      }

      // least-squares plane through the three neighbor averages
      double a11 = 0, a12 = 0, a22 = 0;
      Vec4 b1 = {0, 0, 0, 0}, b2 = {0, 0, 0, 0};
      for (int f = 0; f < 3; f++) {
        a11 += nd[f][0]*nd[f][0];
        a12 += nd[f][0]*nd[f][1];
        a22 += nd[f][1]*nd[f][1];
        Vec4 d = navg[f] - own;
        b1 += nd[f][0]*d;
        b2 += nd[f][1]*d;
      }
      double det = a11*a22 - a12*a12;
      Vec4 gx = {0, 0, 0, 0}, gy = {0, 0, 0, 0};
      if (std::fabs(det) > 1e-300) {
        gx = (1.0/det)*(a22*b1 - a12*b2);
        gy = (1.0/det)*(a11*b2 - a12*b1);
      }

      // Barth-Jespersen bound at the face midpoints, per component
      double mids[3][2];
      for (int f = 0; f < 3; f++) {
        const SubEdge& se = re.subedge[re.subface[t][f]];
        m.map_point(c, se.mid[0], se.mid[1], mids[f][0], mids[f][1]);
      }
      for (int k = 0; k < 4; k++) {
        double lo = own[k], hi = own[k];
        for (int f = 0; f < 3; f++) {
          lo = std::min(lo, navg[f][k]);
          hi = std::max(hi, navg[f][k]);
        }
        double phi = 1;
        for (int f = 0; f < 3; f++) {
          double d = gx[k]*(mids[f][0] - xc) + gy[k]*(mids[f][1] - yc);
          if (d > 1e-300)
            phi = std::min(phi, (hi - own[k])/d);
          else if (d < -1e-300)
            phi = std::min(phi, (lo - own[k])/d);
        }
        phi = std::max(0.0, std::min(1.0, phi));
        gx[k] *= phi;
        gy[k] *= phi;
      }

      // positivity of the face values, else drop to first order
      for (int f = 0; f < 3; f++) {
        Vec4 v = own;
        for (int k = 0; k < 4; k++)
          v[k] += gx[k]*(mids[f][0] - xc) + gy[k]*(mids[f][1] - yc);
        if (!valid_state(v, par.gamma)) {
          gx = {0, 0, 0, 0};
          gy = {0, 0, 0, 0};
          break;
        }
      }
      rc.gx[t] = gx;
      rc.gy[t] = gy;
    }
  }
}

}  // namespace trikin
