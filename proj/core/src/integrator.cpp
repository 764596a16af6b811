#include "trikin/integrator.hpp"

#include <cmath>
#include <utility>

namespace trikin {

namespace {

void localize(const Vec4& qv, const Vec4& gxv, const Vec4& gyv, double nx,
              double ny, Vec4& ql, Vec4& gxl, Vec4& gyl) {
  ql = rotate_to(qv, nx, ny);
  gxl = rotate_to(nx*gxv + ny*gyv, nx, ny);
  gyl = rotate_to((-ny)*gxv + nx*gyv, nx, ny);
}

bool all_finite(const Vec4& v) {
  return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]) &&
         std::isfinite(v[3]);
}

}  // namespace

Solver::Solver(TriMesh mesh_, SolverConfig cfg_, BcSet bcs_)
    : mesh(std::move(mesh_)), cfg(cfg_), bcs(std::move(bcs_)) {
  int n = mesh.ncells();
  q.resize(n);
  sub.resize(n);
  troubled.assign(n, 0);
  tid.assign(n, -1);
  detw_ = build_detector_weights(mesh);
  avg_.resize(n);
  gx_.resize(n);
  gy_.resize(n);
  pf_.resize(n);
  res_h_.resize(n);
  res_f_.resize(n);
  combo_.resize(n);
  qn_.resize(n);
  subn_.resize(n);
}

void Solver::init(const std::function<Vec4(double, double)>& f) {
  const ReferenceElement& re = reference_element();
  for (int c = 0; c < mesh.ncells(); c++)
    for (int j = 0; j < kSP; j++)
      q[c][j] = f(mesh.cells[c].sp[j][0], mesh.cells[c].sp[j][1]);
  refresh_marks();
  // discontinuous data: marked cells start from pointwise subcell values
  // instead of averages of an oscillatory interpolant
  for (int c = 0; c < mesh.ncells(); c++) {
    if (!troubled[c]) continue;
    for (int t = 0; t < kSub; t++) {
      double x, y;
      mesh.map_point(c, re.subcent[t][0], re.subcent[t][1], x, y);
      sub[c][t] = f(x, y);
    }
    q[c] = recover_polynomial(sub[c]);
  }
}

void Solver::refresh_marks() {
  int n = mesh.ncells();
  std::vector<uint8_t> mark;
  if (cfg.force_troubled) {
    mark.assign(n, 1);
  } else if (!cfg.hybrid) {
    mark.assign(n, 0);
  } else {
    for (int c = 0; c < n; c++) avg_[c] = cell_average(q[c]);
    mark_troubled(mesh, detw_, q, avg_, cfg.threshold, mark);
  }
  int count = 0;
  for (int c = 0; c < n; c++) {
    if (mark[c] && !troubled[c]) sub[c] = project_subcells(q[c]);
    troubled[c] = mark[c];
    tid[c] = mark[c] ? count++ : -1;
  }
  recon_.resize(count);
}

void Solver::compute_stage(double dt, double tbc, std::vector<CellSub>& res_h,
                           std::vector<CellSub>& res_f) {
  const ReferenceElement& re = reference_element();
  const int n = mesh.ncells();
  for (int c = 0; c < n; c++) {
    res_h[c].fill(kZero);
    res_f[c].fill(kZero);
  }

  build_recons(mesh, bcs, cfg.flux, tbc, q, sub, troubled, tid, recon_);

  // nodal gradients, point fluxes and the flux-divergence part
  for (int c = 0; c < n; c++) {
    if (troubled[c]) continue;
    const CellGeom& g = mesh.cells[c];
    for (int j = 0; j < kSP; j++) {
      Vec4 Dr = kZero, Ds = kZero;
      for (int m = 0; m < kSP; m++) {
        Dr += re.dLdr[j][m]*q[c][m];
        Ds += re.dLds[j][m]*q[c][m];
      }
      gx_[c][j] = g.jinv[0][0]*Dr + g.jinv[1][0]*Ds;
      gy_[c][j] = g.jinv[0][1]*Dr + g.jinv[1][1]*Ds;
    }
    for (int j = 0; j < kSP; j++)
      pf_[c][j] = smooth_flux(q[c][j], gx_[c][j], gy_[c][j], dt, cfg.flux);
    for (int j = 0; j < kSP; j++) {
      Vec4 xh = kZero, xf = kZero, yh = kZero, yf = kZero;  // d/dr, d/ds pairs
      Vec4 sh = kZero, sf = kZero, th = kZero, tf2 = kZero;
      for (int m = 0; m < kSP; m++) {
        double dr = re.dLdr[j][m], ds = re.dLds[j][m];
        xh += dr*pf_[c][m].fx_half;
        sh += ds*pf_[c][m].fx_half;
        xf += dr*pf_[c][m].fx_full;
        sf += ds*pf_[c][m].fx_full;
        yh += dr*pf_[c][m].fy_half;
        th += ds*pf_[c][m].fy_half;
        yf += dr*pf_[c][m].fy_full;
        tf2 += ds*pf_[c][m].fy_full;
      }
      res_h[c][j] -= g.jinv[0][0]*xh + g.jinv[1][0]*sh;
      res_h[c][j] -= g.jinv[0][1]*yh + g.jinv[1][1]*th;
      res_f[c][j] -= g.jinv[0][0]*xf + g.jinv[1][0]*sf;
      res_f[c][j] -= g.jinv[0][1]*yf + g.jinv[1][1]*tf2;
    }
  }

  auto poly_eval = [&](int c, double x, double y, Vec4& val, Vec4& gx,
                       Vec4& gy) {
    const CellGeom& g = mesh.cells[c];
    double dx = x - g.x0[0], dy = y - g.x0[1];
    double r = g.jinv[0][0]*dx + g.jinv[0][1]*dy;
    double s = g.jinv[1][0]*dx + g.jinv[1][1]*dy;
    double L[kSP], Lr[kSP], Ls[kSP];
    re.basis_at(r, s, L);
    re.basis_grad_at(r, s, Lr, Ls);
    val = kZero;
    Vec4 Dr = kZero, Ds = kZero;
    for (int j = 0; j < kSP; j++) {
      val += L[j]*q[c][j];
      Dr += Lr[j]*q[c][j];
      Ds += Ls[j]*q[c][j];
    }
    gx = g.jinv[0][0]*Dr + g.jinv[1][0]*Ds;
    gy = g.jinv[0][1]*Dr + g.jinv[1][1]*Ds;
  };
  auto recon_eval = [&](int c, int t, double x, double y, Vec4& val, Vec4& gx,
                        Vec4& gy) {
    const SubcellRecon& rc = recon_[tid[c]];
    double xc, yc;
    mesh.map_point(c, re.subcent[t][0], re.subcent[t][1], xc, yc);
    val = sub[c][t] + (x - xc)*rc.gx[t] + (y - yc)*rc.gy[t];
    gx = rc.gx[t];
    gy = rc.gy[t];
  };
  auto lift_add = [&](std::vector<CellSub>& res, int c, int s, int l,
                      double scale, const Vec4& jump) {
    for (int j = 0; j < kSP; j++) res[c][j] -= (re.lift[j][s][l]*scale)*jump;
  };

  for (size_t e = 0; e < mesh.edges.size(); e++) {
    const EdgeGeom& ed = mesh.edges[e];
    int cl = ed.cl, cr = ed.cr;
    double nx = ed.nx, ny = ed.ny;
    bool tl = troubled[cl];
    bool tr = cr >= 0 && troubled[cr];

    if (cr >= 0 && !tl && !tr) {  // plain interior edge
      double scl = ed.len/mesh.cells[cl].area;
      double scr = ed.len/mesh.cells[cr].area;
      for (int l = 0; l < kFP; l++) {
        int jl = re.edge_sp[ed.sl][l];
        int jr = re.edge_sp[ed.sr][kFP - 1 - l];
        Vec4 ql, gxl, gyl, qr, gxr, gyr;
        localize(q[cl][jl], gx_[cl][jl], gy_[cl][jl], nx, ny, ql, gxl, gyl);
        localize(q[cr][jr], gx_[cr][jr], gy_[cr][jr], nx, ny, qr, gxr, gyr);
        InterfaceFlux F =
            interface_flux(ql, gxl, gyl, qr, gxr, gyr, dt, cfg.flux);
        Vec4 com_h = rotate_from(F.half, nx, ny);
        Vec4 com_f = rotate_from(F.full, nx, ny);
        const PointFlux& pl = pf_[cl][jl];
        const PointFlux& pr = pf_[cr][jr];
        lift_add(res_h, cl, ed.sl, l, scl,
                 com_h - (nx*pl.fx_half + ny*pl.fy_half));
        lift_add(res_f, cl, ed.sl, l, scl,
                 com_f - (nx*pl.fx_full + ny*pl.fy_full));
        lift_add(res_h, cr, ed.sr, kFP - 1 - l, scr,
                 (nx*pr.fx_half + ny*pr.fy_half) - com_h);
        lift_add(res_f, cr, ed.sr, kFP - 1 - l, scr,
                 (nx*pr.fx_full + ny*pr.fy_full) - com_f);
      }
      continue;
    }

    if (cr < 0 && !tl) {  // boundary edge of a smooth cell
      double scl = ed.len/mesh.cells[cl].area;
      const BcSpec& bc = bcs.by_tag[ed.tag];
      for (int l = 0; l < kFP; l++) {
        int jl = re.edge_sp[ed.sl][l];
        Vec4 ql, gxl, gyl, qg, gxg, gyg;
        localize(q[cl][jl], gx_[cl][jl], gy_[cl][jl], nx, ny, ql, gxl, gyl);
        ghost_point(bc, bcs, cfg.flux, ed.fp[l][0], ed.fp[l][1], tbc, nx, ny,
                    ql, gxl, gyl, qg, gxg, gyg);
        InterfaceFlux F = interface_flux(ql, gxl, gyl, qg, gxg, gyg, dt,
                                         cfg.flux);
        Vec4 com_h = rotate_from(F.half, nx, ny);
        Vec4 com_f = rotate_from(F.full, nx, ny);
        const PointFlux& pl = pf_[cl][jl];
        lift_add(res_h, cl, ed.sl, l, scl,
                 com_h - (nx*pl.fx_half + ny*pl.fy_half));
        lift_add(res_f, cl, ed.sl, l, scl,
                 com_f - (nx*pl.fx_full + ny*pl.fy_full));
      }
      continue;
    }

    // Finite-volume treatment on at least one side: four segment fluxes at
    // the segment midpoints, traversal order of cl.
    double ax = ed.fp[0][0], ay = ed.fp[0][1];
    double bx = ed.fp[kFP - 1][0], by = ed.fp[kFP - 1][1];
    Vec4 fsub_h[kSubN], fsub_f[kSubN];
    for (int mseg = 0; mseg < kSubN; mseg++) {
      double xi = (mseg + 0.5)/kSubN;
      double x = ax + xi*(bx - ax), y = ay + xi*(by - ay);
      Vec4 vl, gxl_g, gyl_g;
      if (tl)
        recon_eval(cl, facing_subcell(ed.sl, mseg), x, y, vl, gxl_g, gyl_g);
      else
        poly_eval(cl, x, y, vl, gxl_g, gyl_g);
      Vec4 ql, gxl, gyl;
      localize(vl, gxl_g, gyl_g, nx, ny, ql, gxl, gyl);
      Vec4 qr, gxr, gyr;
      if (cr >= 0) {
        Vec4 vr, gxr_g, gyr_g;
        double xr = x + ed.shx, yr = y + ed.shy;  // into cr's frame
        if (tr)
          recon_eval(cr, facing_subcell(ed.sr, kSubN - 1 - mseg), xr, yr, vr,
                     gxr_g, gyr_g);
        else
          poly_eval(cr, xr, yr, vr, gxr_g, gyr_g);
        localize(vr, gxr_g, gyr_g, nx, ny, qr, gxr, gyr);
      } else {
        ghost_point(bcs.by_tag[ed.tag], bcs, cfg.flux, x, y, tbc, nx, ny, ql,
                    gxl, gyl, qr, gxr, gyr);
      }
      InterfaceFlux F =
          interface_flux(ql, gxl, gyl, qr, gxr, gyr, dt, cfg.flux);
      fsub_h[mseg] = rotate_from(F.half, nx, ny);
      fsub_f[mseg] = rotate_from(F.full, nx, ny);
    }

    // The polynomial side keeps its flux-point form; its total then defines
    // a constant shift of the segment fluxes so both sides move exactly the
    // same amount through the edge.
    if (cr >= 0 && tl != tr) {
      int cs = tl ? cr : cl;                // the polynomial side
      int ss = tl ? ed.sr : ed.sl;
      int ct = tl ? cl : cr;
      int st = tl ? ed.sl : ed.sr;
      double scs = ed.len/mesh.cells[cs].area;
      Vec4 tot_h = kZero, tot_f = kZero;
      for (int l = 0; l < kFP; l++) {
        // l indexes cs's traversal; the flux point lives at slot lcl of cl's
        int lcl = cs == cl ? l : kFP - 1 - l;
        int js = re.edge_sp[ss][l];
        double fx = ed.fp[lcl][0] + (ct == cr ? ed.shx : 0);
        double fy = ed.fp[lcl][1] + (ct == cr ? ed.shy : 0);
        int seg_t = re.fp_seg[kFP - 1 - l];  // slot l seen from ct's side
        Vec4 vt, gxt_g, gyt_g;
        recon_eval(ct, facing_subcell(st, seg_t), fx, fy, vt, gxt_g, gyt_g);
        Vec4 qs, gxs, gys, qt, gxt, gyt;
        localize(q[cs][js], gx_[cs][js], gy_[cs][js], nx, ny, qs, gxs, gys);
        localize(vt, gxt_g, gyt_g, nx, ny, qt, gxt, gyt);
        InterfaceFlux F = cs == cl ? interface_flux(qs, gxs, gys, qt, gxt, gyt,
                                                    dt, cfg.flux)
                                   : interface_flux(qt, gxt, gyt, qs, gxs, gys,
                                                    dt, cfg.flux);
        Vec4 com_h = rotate_from(F.half, nx, ny);
        Vec4 com_f = rotate_from(F.full, nx, ny);
        double sgn = cs == cl ? 1.0 : -1.0;
        const PointFlux& ps = pf_[cs][js];
        lift_add(res_h, cs, ss, l, scs,
                 sgn*com_h - (sgn*nx*ps.fx_half + sgn*ny*ps.fy_half));
        lift_add(res_f, cs, ss, l, scs,
                 sgn*com_f - (sgn*nx*ps.fx_full + sgn*ny*ps.fy_full));
        tot_h += re.edge_w[l]*com_h;
        tot_f += re.edge_w[l]*com_f;
      }
      Vec4 sh_h = kZero, sh_f = kZero;
      for (int mseg = 0; mseg < kSubN; mseg++) {
        sh_h += (1.0/kSubN)*fsub_h[mseg];
        sh_f += (1.0/kSubN)*fsub_f[mseg];
      }
      sh_h = tot_h - sh_h;  // per-unit-length correction
      sh_f = tot_f - sh_f;
      for (int mseg = 0; mseg < kSubN; mseg++) {
        fsub_h[mseg] += sh_h;
        fsub_f[mseg] += sh_f;
      }
      double seg_len = ed.len/kSubN;
      double asub = mesh.cells[ct].area/kSub;
      double sgn_t = ct == cl ? 1.0 : -1.0;
      for (int mseg = 0; mseg < kSubN; mseg++) {
        int msegt = ct == cl ? mseg : kSubN - 1 - mseg;
        int ts = facing_subcell(st, msegt);
        res_h[ct][ts] -= (sgn_t*seg_len/asub)*fsub_h[mseg];
        res_f[ct][ts] -= (sgn_t*seg_len/asub)*fsub_f[mseg];
      }
      continue;
    }

    // troubled-troubled or troubled-boundary: the segment fluxes are final
    double seg_len = ed.len/kSubN;
    for (int mseg = 0; mseg < kSubN; mseg++) {
      if (tl) {
        int ts = facing_subcell(ed.sl, mseg);
        double asub = mesh.cells[cl].area/kSub;
        res_h[cl][ts] -= (seg_len/asub)*fsub_h[mseg];
        res_f[cl][ts] -= (seg_len/asub)*fsub_f[mseg];
      }
      if (cr >= 0 && tr) {
        int ts = facing_subcell(ed.sr, kSubN - 1 - mseg);
        double asub = mesh.cells[cr].area/kSub;
        res_h[cr][ts] += (seg_len/asub)*fsub_h[mseg];
        res_f[cr][ts] += (seg_len/asub)*fsub_f[mseg];
      }
    }
  }

  // interior sub-edges of troubled cells
  for (int c = 0; c < n; c++) {
    if (!troubled[c]) continue;
    double asub = mesh.cells[c].area/kSub;
    for (int se_id = 0; se_id < kSubEdge; se_id++) {
      const SubEdge& se = re.subedge[se_id];
      if (se.right < 0) continue;
      double tx = -se.ny, ty = se.nx;  // reference tangent
      double arx = se.mid[0] - 0.5*se.len*tx, ary = se.mid[1] - 0.5*se.len*ty;
      double brx = se.mid[0] + 0.5*se.len*tx, bry = se.mid[1] + 0.5*se.len*ty;
      double axp, ayp, bxp, byp;
      mesh.map_point(c, arx, ary, axp, ayp);
      mesh.map_point(c, brx, bry, bxp, byp);
      double dx = bxp - axp, dy = byp - ayp;
      double len = std::sqrt(dx*dx + dy*dy);
      double nxp = dy/len, nyp = -dx/len;
      double mx = 0.5*(axp + bxp), my = 0.5*(ayp + byp);
      Vec4 vl, gxl_g, gyl_g, vr, gxr_g, gyr_g;
      recon_eval(c, se.left, mx, my, vl, gxl_g, gyl_g);
      recon_eval(c, se.right, mx, my, vr, gxr_g, gyr_g);
      Vec4 ql, gxl, gyl, qr, gxr, gyr;
      localize(vl, gxl_g, gyl_g, nxp, nyp, ql, gxl, gyl);
      localize(vr, gxr_g, gyr_g, nxp, nyp, qr, gxr, gyr);
      InterfaceFlux F =
          interface_flux(ql, gxl, gyl, qr, gxr, gyr, dt, cfg.flux);
      Vec4 fh = rotate_from(F.half, nxp, nyp);
      Vec4 ff = rotate_from(F.full, nxp, nyp);
      res_h[c][se.left] -= (len/asub)*fh;
      res_f[c][se.left] -= (len/asub)*ff;
      res_h[c][se.right] += (len/asub)*fh;
      res_f[c][se.right] += (len/asub)*ff;
    }
  }
}

bool Solver::advance(double dt) {
  refresh_marks();
  qn_ = q;
  subn_ = sub;

  auto apply = [&](const std::function<Vec4(int, int)>& inc) -> bool {
    bool ok = true;
    for (int c = 0; c < mesh.ncells(); c++) {
      if (troubled[c]) {
        for (int t = 0; t < kSub; t++) {
          sub[c][t] = subn_[c][t] + inc(c, t);
          if (!valid_state(sub[c][t], cfg.flux.gamma)) ok = false;
        }
      } else {
        for (int j = 0; j < kSP; j++) {
          q[c][j] = qn_[c][j] + inc(c, j);
          if (!all_finite(q[c][j]) || !valid_state(q[c][j], cfg.flux.gamma))
            ok = false;
        }
      }
      if (!ok) break;
    }
    return ok;
  };

  compute_stage(dt, time, res_h_, res_f_);
  for (int c = 0; c < mesh.ncells(); c++)
    for (int t = 0; t < kSub; t++)
      combo_[c][t] = (8.0/3.0)*res_h_[c][t] - (1.0/3.0)*res_f_[c][t];
  if (!apply([&](int c, int t) { return res_h_[c][t]; })) {
    q = qn_;
    sub = subn_;
    return false;
  }

  compute_stage(dt, time + 0.5*dt, res_h_, res_f_);
  if (!apply([&](int c, int t) {
        return combo_[c][t] - (8.0/3.0)*res_h_[c][t] + (4.0/3.0)*res_f_[c][t];
      })) {
    q = qn_;
    sub = subn_;
    return false;
  }

  for (int c = 0; c < mesh.ncells(); c++)
    if (troubled[c]) q[c] = recover_polynomial(sub[c]);
  time += dt;
  return true;
}

double Solver::advance_robust(double dt, int max_halvings) {
  for (int k = 0; k <= max_halvings; k++) {
    if (advance(dt)) return dt;
    dt *= 0.5;
  }
  return 0;
}

double Solver::compute_dt() const {
  double best = 1e300;
  for (int c = 0; c < mesh.ncells(); c++) {
    double sig = 0, rho_min = 1e300;
    if (troubled[c]) {
      for (int t = 0; t < kSub; t++) {
        GasState s = primitive(sub[c][t], cfg.flux.gamma);
        sig = std::max(sig, std::hypot(s.U, s.V) + sound_speed(s, cfg.flux.gamma));
        rho_min = std::min(rho_min, s.rho);
      }
    } else {
      for (int j = 0; j < kSP; j++) {
        if (!valid_state(q[c][j], cfg.flux.gamma)) continue;
        GasState s = primitive(q[c][j], cfg.flux.gamma);
        sig = std::max(sig, std::hypot(s.U, s.V) + sound_speed(s, cfg.flux.gamma));
        rho_min = std::min(rho_min, s.rho);
      }
    }
    if (sig <= 0) continue;
    double h = mesh.cells[c].h;
    double nu = cfg.flux.mu > 0 ? cfg.flux.mu/rho_min : 0;
    best = std::min(best, h/(sig + 2.0*nu/h));
  }
  return cfg.cfl*best;
}

Vec4 Solver::total_conserved() const {
  Vec4 tot = kZero;
  for (int c = 0; c < mesh.ncells(); c++) {
    if (troubled[c]) {
      double a = mesh.cells[c].area/kSub;
      for (int t = 0; t < kSub; t++) tot += a*sub[c][t];
    } else {
      tot += mesh.cells[c].area*cell_average(q[c]);
    }
  }
  return tot;
}

int Solver::troubled_count() const {
  int k = 0;
  for (uint8_t t : troubled) k += t;
  return k;
}

Vec4 Solver::eval(int cell, double r, double s) const {
  const ReferenceElement& re = reference_element();
  double L[kSP];
  re.basis_at(r, s, L);
  Vec4 v = kZero;
  for (int j = 0; j < kSP; j++) v += L[j]*q[cell][j];
  return v;
}

}  // namespace trikin
