#include "trikin/cases.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace trikin {

namespace {

const double kPi = 3.14159265358979323846;

Vec4 conservative_of(double rho, double U, double V, double p, double gamma) {
  GasState g;
  g.rho = rho;
  g.U = U;
  g.V = V;
  g.p = p;
  return conservative(g, gamma);
}

BoundaryField constant_field(const Vec4& q) {
  return [q](double, double, double, Vec4& out, Vec4& gx, Vec4& gy) {
    out = q;
    gx = kZero;
    gy = kZero;
  };
}

}  // namespace

// Couette -------------------------------------------------------------------

double CouetteFlow::ymap(double U) const {
  double G = (T1 + U1*U1/(2.0*cp()))*U - U*U*U/(6.0*cp());
  double G1 = (T1 + U1*U1/(2.0*cp()))*U1 - U1*U1*U1/(6.0*cp());
  return 2.0*H*G/G1;
}

double CouetteFlow::velocity(double y) const {
  double U = U1*y/(2.0*H);
  for (int it = 0; it < 50; it++) {
    double G1 = (T1 + U1*U1/(2.0*cp()))*U1 - U1*U1*U1/(6.0*cp());
    double f = ymap(U) - y;
    double df = 2.0*H*temperature(U)/G1;  // dG/dU is exactly T(U)
    double dU = f/df;
    U -= dU;
    if (std::fabs(dU) < 1e-15*std::max(1.0, std::fabs(U1))) break;
  }
  return U;
}

void CouetteFlow::field(double y, Vec4& q, Vec4& gx, Vec4& gy) const {
  double U = velocity(y);
  double T = temperature(U);
  double rho = p/(R*T);
  q = conservative_of(rho, U, 0, p, gamma);

  double G1 = (T1 + U1*U1/(2.0*cp()))*U1 - U1*U1*U1/(6.0*cp());
  double dUdy = G1/(2.0*H*T);
  double dTdy = -U/cp()*dUdy;
  double drdy = -rho/T*dTdy;
  gx = kZero;
  // d(rho)/dy, d(rho U)/dy, d(rho V)/dy, d(rho E)/dy with p constant
  gy[0] = drdy;
  gy[1] = drdy*U + rho*dUdy;
  gy[2] = 0;
  gy[3] = 0.5*drdy*U*U + rho*U*dUdy;  // p/(gamma-1) term drops out
}

// Isentropic vortex ---------------------------------------------------------

namespace {

struct Vortex {
  double gamma = 1.4;
  double beta = 5;
  double xc = 5, yc = 5;
  double Uinf = 1, Vinf = 1;
  double Lx = 10, Ly = 10;

  Vec4 at(double x, double y, double t) const {
    double xs = std::fmod(x - Uinf*t - xc, Lx);
    double ys = std::fmod(y - Vinf*t - yc, Ly);
    if (xs < -Lx/2) xs += Lx;
    if (xs > Lx/2) xs -= Lx;
    if (ys < -Ly/2) ys += Ly;
    if (ys > Ly/2) ys -= Ly;
    double r2 = xs*xs + ys*ys;
    double E = std::exp(1.0 - r2);
    double du = beta/(2.0*kPi)*std::exp(0.5*(1.0 - r2));
    double T = 1.0 - (gamma - 1.0)*beta*beta/(8.0*gamma*kPi*kPi)*E;
    double rho = std::pow(T, 1.0/(gamma - 1.0));
    return conservative_of(rho, Uinf - du*ys, Vinf + du*xs, rho*T, gamma);
  }
};

}  // namespace

// Case registry -------------------------------------------------------------

namespace {

void base_gas(CaseDef& c, double gamma, double R) {
  c.cfg.flux.gamma = gamma;
  c.cfg.flux.K = internal_dof(gamma);
  c.cfg.flux.R = R;
  c.bcs.R = R;
}

CaseDef couette_case(bool low_mach) {
  CaseDef c;
  c.name = low_mach ? "lowmach" : "couette";
  auto flow = std::make_shared<CouetteFlow>();
  if (low_mach) flow->U1 = 0.02;
  base_gas(c, flow->gamma, flow->R);
  c.cfg.flux.mu = low_mach ? 4e-5 : 1e-3;
  c.cfg.flux.visc_exp = 1;
  c.cfg.flux.T_ref = flow->T1;
  c.cfg.flux.prandtl = 1;
  // at this viscosity the collision time is a tiny fraction of dt, so the
  // interface flux is nearly central; the step limit drops accordingly
  if (low_mach) c.cfg.cfl = 0.025;
  double mach = flow->U1/std::sqrt(flow->gamma*flow->R*flow->T1);
  c.cfg.flux.eps3 = std::min(1.0, 5.0*mach);

  // momentum diffusion time of the slowest mode sets how long the transient
  // lives; run a few of them
  double tau = 1.0/(c.cfg.flux.mu*kPi*kPi);
  c.t_end = low_mach ? 2.6*tau : 2.7*tau;

  BcSpec wall;
  wall.kind = BcKind::analytic;
  wall.field = [flow](double, double y, double, Vec4& q, Vec4& gx, Vec4& gy) {
    flow->field(y, q, gx, gy);
  };
  c.bcs.by_tag[2] = wall;
  c.bcs.by_tag[3] = wall;

  c.nx = 8;
  c.ny = 16;
  c.mesh = [](int nx, int ny) {
    return rect_mesh(nx, ny, 0, 0, 0.5, 1.0, true, false, false);
  };
  c.init = [flow](double, double y, double) {
    Vec4 q, gx, gy;
    flow->field(y, q, gx, gy);
    return q;
  };
  c.exact = [flow](double, double y, double) {
    Vec4 q, gx, gy;
    flow->field(y, q, gx, gy);
    return q;
  };
  return c;
}

CaseDef cavity_case(double Re) {
  CaseDef c;
  c.name = Re > 2000 ? "cavity_re3200" : "cavity_re1000";
  double R = 1.0/(1.4*0.15*0.15);  // lid Mach 0.15 at T = 1
  base_gas(c, 1.4, R);
  c.cfg.flux.mu = 1.0/Re;
  c.cfg.flux.prandtl = 1;
  c.cfg.flux.eps3 = std::min(1.0, 5.0*0.15);
  c.t_end = Re > 2000 ? 250 : 120;
  c.steady_tol = 1e-7;

  BcSpec fixed;
  fixed.kind = BcKind::noslip_isothermal;
  fixed.Twall = 1;
  BcSpec lid;
  lid.kind = BcKind::moving_wall;
  lid.Twall = 1;
  lid.Uwall = 1;
  c.bcs.by_tag[0] = c.bcs.by_tag[1] = c.bcs.by_tag[2] = fixed;
  c.bcs.by_tag[3] = lid;

  c.nx = c.ny = 12;
  c.mesh = [](int nx, int ny) {
    auto xs = stretched_coords(nx, 0.02);
    auto ys = stretched_coords(ny, 0.02);
    StructuredSpec sp;
    sp.nx = nx;
    sp.ny = ny;
    sp.node = [xs, ys](int i, int j, double& x, double& y) {
      x = xs[i];
      y = ys[j];
    };
    return structured_tri_mesh(sp);
  };
  double p0 = R;  // rho = 1, T = 1
  c.init = [p0](double, double, double) {
    return conservative_of(1, 0, 0, p0, 1.4);
  };
  return c;
}

CaseDef shu_osher_case() {
  CaseDef c;
  c.name = "shu_osher";
  base_gas(c, 1.4, 1);
  c.cfg.flux.eps3 = 1;
  c.t_end = 1.8;
  c.nx = 200;
  c.ny = 4;
  c.mesh = [](int nx, int ny) {
    double h = 10.0/nx;
    return rect_mesh(nx, ny, 0, 0, 10.0, ny*h/2, false, true, false);
  };
  Vec4 left = conservative_of(3.857134, 2.629369, 0, 10.33333, 1.4);
  c.init = [left](double x, double, double) {
    if (x < 1.0) return left;
    return conservative_of(1.0 + 0.2*std::sin(5.0*x), 0, 0, 1, 1.4);
  };
  BcSpec in;
  in.kind = BcKind::inflow;
  in.field = constant_field(left);
  c.bcs.by_tag[0] = in;
  c.bcs.by_tag[1].kind = BcKind::outflow;
  return c;
}

CaseDef blast_case() {
  CaseDef c;
  c.name = "blast";
  base_gas(c, 1.4, 1);
  c.cfg.flux.eps3 = 1;
  c.t_end = 0.38;
  c.nx = 400;
  c.ny = 4;
  c.mesh = [](int nx, int ny) {
    double h = 10.0/nx;
    return rect_mesh(nx, ny, 0, 0, 10.0, ny*h/2, false, true, false);
  };
  c.init = [](double x, double, double) {
    double p = x < 1.0 ? 1000.0 : (x > 9.0 ? 100.0 : 0.01);
    return conservative_of(1, 0, 0, p, 1.4);
  };
  c.bcs.by_tag[0].kind = BcKind::slip;
  c.bcs.by_tag[1].kind = BcKind::slip;
  return c;
}

CaseDef dmr_case() {
  CaseDef c;
  c.name = "dmr";
  base_gas(c, 1.4, 1);
  c.cfg.flux.eps3 = 1;
  c.t_end = 0.2;
  c.nx = 240;
  c.ny = 176;

  // frame fixed to the wedge: the incident shock is a vertical line moving
  // right at its normal speed, the wedge face starts at the origin
  const double slope = std::tan(kPi/6.0);
  const double shock_speed = 10.0;
  c.mesh = [slope](int nx, int ny) {
    StructuredSpec sp;
    sp.nx = nx;
    sp.ny = ny;
    sp.node = [slope, nx, ny](int i, int j, double& x, double& y) {
      x = -0.2 + 3.0*i/nx;
      double yw = std::max(0.0, x)*slope;
      y = yw + (2.2 - yw)*j/ny;
    };
    return structured_tri_mesh(sp);
  };

  Vec4 post = conservative_of(8, 8.25, 0, 116.5, 1.4);
  Vec4 pre = conservative_of(1.4, 0, 0, 1, 1.4);
  c.init = [post, pre](double x, double, double) {
    return x < 0 ? post : pre;
  };

  BcSpec in;
  in.kind = BcKind::inflow;
  in.field = constant_field(post);
  c.bcs.by_tag[0] = in;
  c.bcs.by_tag[1].kind = BcKind::outflow;
  c.bcs.by_tag[2].kind = BcKind::slip;
  BcSpec top;
  top.kind = BcKind::analytic;
  top.field = [post, pre, shock_speed](double x, double, double t, Vec4& q,
                                       Vec4& gx, Vec4& gy) {
    q = x < shock_speed*t ? post : pre;
    gx = kZero;
    gy = kZero;
  };
  c.bcs.by_tag[3] = top;
  return c;
}

CaseDef vst_case() {
  CaseDef c;
  c.name = "vst";
  base_gas(c, 1.4, 1);
  c.cfg.flux.mu = 0.005;
  c.cfg.flux.prandtl = 0.73;
  c.cfg.flux.eps3 = 1;
  c.t_end = 1.0;
  c.nx = 100;
  c.ny = 50;
  c.mesh = [](int nx, int ny) {
    return rect_mesh(nx, ny, 0, 0, 1.0, 0.5, false, false, false);
  };
  c.init = [](double x, double, double) {
    return x < 0.5 ? conservative_of(120, 0, 0, 120.0/1.4, 1.4)
                   : conservative_of(1.2, 0, 0, 1.2/1.4, 1.4);
  };
  c.bcs.by_tag[0].kind = BcKind::noslip_adiabatic;
  c.bcs.by_tag[1].kind = BcKind::noslip_adiabatic;
  c.bcs.by_tag[2].kind = BcKind::noslip_adiabatic;
  c.bcs.by_tag[3].kind = BcKind::slip;
  return c;
}

CaseDef vortex_case() {
  CaseDef c;
  c.name = "vortex";
  base_gas(c, 1.4, 1);
  c.cfg.flux.eps3 = 1;
  c.t_end = 2.0;
  c.nx = c.ny = 20;
  c.mesh = [](int nx, int ny) {
    return rect_mesh(nx, ny, 0, 0, 10.0, 10.0, true, true, false);
  };
  Vortex v;
  c.init = [v](double x, double y, double) { return v.at(x, y, 0); };
  c.exact = [v](double x, double y, double t) { return v.at(x, y, t); };
  return c;
}

}  // namespace

CaseDef make_case(const std::string& name) {
  if (name == "couette") return couette_case(false);
  if (name == "lowmach") return couette_case(true);
  if (name == "cavity_re1000") return cavity_case(1000);
  if (name == "cavity_re3200") return cavity_case(3200);
  if (name == "shu_osher") return shu_osher_case();
  if (name == "blast") return blast_case();
  if (name == "dmr") return dmr_case();
  if (name == "vst") return vst_case();
  if (name == "vortex") return vortex_case();
  throw std::runtime_error("unknown case: " + name);
}

std::vector<std::string> case_names() {
  return {"couette", "lowmach", "cavity_re1000", "cavity_re3200",
          "shu_osher", "blast", "dmr", "vst", "vortex"};
}

// Errors and diagnostics ----------------------------------------------------

double l2_error(const Solver& s, const FieldFn& ref, int comp, double t) {
  double sum = 0;
  long n = 0;
  for (int c = 0; c < s.mesh.ncells(); c++)
    for (int j = 0; j < kSP; j++) {
      double x, y;
      s.mesh.sp_coords(c, j, x, y);
      double d = s.q[c][j][comp] - ref(x, y, t)[comp];
      sum += d*d;
      n++;
    }
  return std::sqrt(sum/n);
}

std::vector<CellPoly> aitken_steady(const std::vector<CellPoly>& q1,
                                    const std::vector<CellPoly>& q2,
                                    const std::vector<CellPoly>& q3) {
  std::vector<CellPoly> out = q3;
  for (size_t c = 0; c < q3.size(); c++)
    for (int j = 0; j < kSP; j++)
      for (int m = 0; m < 4; m++) {
        double d1 = q2[c][j][m] - q1[c][j][m];
        double d2 = q3[c][j][m] - q2[c][j][m];
        double den = d2 - d1;
        if (std::fabs(d2) < std::fabs(d1) && std::fabs(den) > 1e-300)
          out[c][j][m] = q3[c][j][m] - d2*d2/den;
      }
  return out;
}

LineSample sample_line(const Solver& s, double x0, double y0, double x1,
                       double y1, int n) {
  LineSample out;
  out.s.resize(n);
  out.q.resize(n);
  double len = std::hypot(x1 - x0, y1 - y0);
  for (int i = 0; i < n; i++) {
    double a = n == 1 ? 0.5 : double(i)/(n - 1);
    double px = x0 + a*(x1 - x0), py = y0 + a*(y1 - y0);
    out.s[i] = a*len;
    Vec4 acc = kZero;
    int hits = 0;
    for (int c = 0; c < s.mesh.ncells(); c++) {
      const CellGeom& g = s.mesh.cells[c];
      double dx = px - g.x0[0], dy = py - g.x0[1];
      double r = g.jinv[0][0]*dx + g.jinv[0][1]*dy;
      double t = g.jinv[1][0]*dx + g.jinv[1][1]*dy;
      const double eps = 1e-9;
      if (r < -eps || t < -eps || r + t > 1 + eps) continue;
      acc += s.eval(c, std::clamp(r, 0.0, 1.0), std::clamp(t, 0.0, 1.0));
      hits++;
    }
    out.q[i] = hits ? (1.0/hits)*acc : kZero;
  }
  return out;
}

// 1d reference solver -------------------------------------------------------

namespace {

struct P1 {
  double rho, u, p;
};

double guess_p(const P1& L, const P1& R, double g) {
  double aL = std::sqrt(g*L.p/L.rho), aR = std::sqrt(g*R.p/R.rho);
  double pv = 0.5*(L.p + R.p) -
              0.125*(R.u - L.u)*(L.rho + R.rho)*(aL + aR);
  return std::max(1e-12, pv);
}

// pressure function for one side and its derivative
void pside(double p, const P1& s, double g, double& f, double& df) {
  double a = std::sqrt(g*s.p/s.rho);
  if (p > s.p) {
    double A = 2.0/((g + 1)*s.rho), B = (g - 1)/(g + 1)*s.p;
    double q = std::sqrt(A/(p + B));
    f = (p - s.p)*q;
    df = q*(1 - 0.5*(p - s.p)/(p + B));
  } else {
    double pr = p/s.p;
    f = 2.0*a/(g - 1)*(std::pow(pr, (g - 1)/(2*g)) - 1);
    df = std::pow(pr, -(g + 1)/(2*g))/(s.rho*a);
  }
}

// state on the t axis of the Riemann fan
P1 riemann_sample(const P1& L, const P1& R, double g) {
  double p = guess_p(L, R, g);
  for (int it = 0; it < 50; it++) {
    double fL, dL, fR, dR;
    pside(p, L, g, fL, dL);
    pside(p, R, g, fR, dR);
    double f = fL + fR + R.u - L.u;
    double dp = f/(dL + dR);
    p = std::max(1e-12, p - dp);
    if (std::fabs(dp) < 1e-12*p) break;
  }
  double fL, dL, fR, dR;
  pside(p, L, g, fL, dL);
  pside(p, R, g, fR, dR);
  double us = 0.5*(L.u + R.u) + 0.5*(fR - fL);
  double gm = (g - 1)/(g + 1);

  if (us >= 0) {  // t axis left of the contact
    double aL = std::sqrt(g*L.p/L.rho);
    if (p > L.p) {
      double S = L.u - aL*std::sqrt((g + 1)/(2*g)*p/L.p + (g - 1)/(2*g));
      if (S >= 0) return L;
      return {L.rho*(p/L.p + gm)/(gm*p/L.p + 1), us, p};
    }
    if (L.u - aL >= 0) return L;
    double as = aL*std::pow(p/L.p, (g - 1)/(2*g));
    if (us - as <= 0) return {L.rho*std::pow(p/L.p, 1/g), us, p};
    double u = 2.0/(g + 1)*(aL + 0.5*(g - 1)*L.u);
    double fac = 2.0/(g + 1) + gm/aL*L.u;
    return {L.rho*std::pow(fac, 2/(g - 1)), u, L.p*std::pow(fac, 2*g/(g - 1))};
  }
  double aR = std::sqrt(g*R.p/R.rho);
  if (p > R.p) {
    double S = R.u + aR*std::sqrt((g + 1)/(2*g)*p/R.p + (g - 1)/(2*g));
    if (S <= 0) return R;
    return {R.rho*(p/R.p + gm)/(gm*p/R.p + 1), us, p};
  }
  if (R.u + aR <= 0) return R;
  double as = aR*std::pow(p/R.p, (g - 1)/(2*g));
  if (us + as >= 0) return {R.rho*std::pow(p/R.p, 1/g), us, p};
  double u = 2.0/(g + 1)*(-aR + 0.5*(g - 1)*R.u);
  double fac = 2.0/(g + 1) - gm/aR*R.u;
  return {R.rho*std::pow(fac, 2/(g - 1)), u, R.p*std::pow(fac, 2*g/(g - 1))};
}

double minmod(double a, double b) {
  if (a*b <= 0) return 0;
  return std::fabs(a) < std::fabs(b) ? a : b;
}

std::array<double, 3> to_cons1(const P1& s, double g) {
  return {s.rho, s.rho*s.u, s.p/(g - 1) + 0.5*s.rho*s.u*s.u};
}

std::array<double, 3> flux1(const P1& s, double g) {
  double E = s.p/(g - 1) + 0.5*s.rho*s.u*s.u;
  return {s.rho*s.u, s.rho*s.u*s.u + s.p, s.u*(E + s.p)};
}

P1 to_prim1(const std::array<double, 3>& c, double g) {
  double u = c[1]/c[0];
  return {c[0], u, (g - 1)*(c[2] - 0.5*c[0]*u*u)};
}

}  // namespace

double Ref1D::interp_rho(double xq) const {
  if (xq <= x.front()) return rho.front();
  if (xq >= x.back()) return rho.back();
  auto it = std::upper_bound(x.begin(), x.end(), xq);
  size_t i = it - x.begin();
  double a = (xq - x[i - 1])/(x[i] - x[i - 1]);
  return (1 - a)*rho[i - 1] + a*rho[i];
}

Ref1D reference_1d(const std::function<void(double, double&, double&, double&)>& init,
                   double x0, double x1, int n, double t_end, double gamma,
                   int bc_left, int bc_right) {
  const double dx = (x1 - x0)/n;
  const int ng = 2;
  std::vector<P1> w(n + 2*ng);
  for (int i = 0; i < n; i++) {
    // cell average by 4 point Gauss-Legendre so the smooth initial data is
    // represented to high order
    static const double gx[4] = {0.069431844202973712, 0.33000947820757187,
                                 0.66999052179242813, 0.93056815579702629};
    static const double gw[4] = {0.17392742256872693, 0.32607257743127307,
                                 0.32607257743127307, 0.17392742256872693};
    std::array<double, 3> acc = {0, 0, 0};
    for (int k = 0; k < 4; k++) {
      double xq = x0 + (i + gx[k])*dx;
      P1 s;
      init(xq, s.rho, s.u, s.p);
      auto c = to_cons1(s, gamma);
      for (int m = 0; m < 3; m++) acc[m] += gw[k]*c[m];
    }
    w[ng + i] = to_prim1(acc, gamma);
  }

  auto fill_ghosts = [&]() {
    for (int k = 0; k < ng; k++) {
      w[ng - 1 - k] = w[ng + k];
      if (bc_left == 1) w[ng - 1 - k].u = -w[ng + k].u;
      w[ng + n + k] = w[ng + n - 1 - k];
      if (bc_right == 1) w[ng + n + k].u = -w[ng + n - 1 - k].u;
    }
  };

  double t = 0;
  while (t < t_end) {
    fill_ghosts();
    double smax = 1e-12;
    for (int i = ng; i < ng + n; i++)
      smax = std::max(smax,
                      std::fabs(w[i].u) + std::sqrt(gamma*w[i].p/w[i].rho));
    double dt = std::min(0.4*dx/smax, t_end - t);

    // limited primitive slopes and half step predictor
    std::vector<P1> lft(n + 2*ng), rgt(n + 2*ng);
    for (int i = 1; i < n + 2*ng - 1; i++) {
      double d[3], pm[3] = {w[i].rho, w[i].u, w[i].p};
      double dl[3] = {w[i].rho - w[i - 1].rho, w[i].u - w[i - 1].u,
                      w[i].p - w[i - 1].p};
      double dr[3] = {w[i + 1].rho - w[i].rho, w[i + 1].u - w[i].u,
                      w[i + 1].p - w[i].p};
      for (int m = 0; m < 3; m++) d[m] = minmod(dl[m], dr[m]);
      P1 wl = {pm[0] - 0.5*d[0], pm[1] - 0.5*d[1], pm[2] - 0.5*d[2]};
      P1 wr = {pm[0] + 0.5*d[0], pm[1] + 0.5*d[1], pm[2] + 0.5*d[2]};
      auto cl = to_cons1(wl, gamma), cr = to_cons1(wr, gamma);
      auto fl = flux1(wl, gamma), fr = flux1(wr, gamma);
      double lam = 0.5*dt/dx;
      for (int m = 0; m < 3; m++) {
        double adv = lam*(fl[m] - fr[m]);
        cl[m] += adv;
        cr[m] += adv;
      }
      lft[i] = to_prim1(cl, gamma);
      rgt[i] = to_prim1(cr, gamma);
      if (lft[i].rho <= 0 || lft[i].p <= 0 || rgt[i].rho <= 0 ||
          rgt[i].p <= 0) {
        lft[i] = rgt[i] = w[i];
      }
    }

    std::vector<std::array<double, 3>> F(n + 1);
    for (int i = 0; i <= n; i++) {
      P1 s = riemann_sample(rgt[ng + i - 1], lft[ng + i], gamma);
      F[i] = flux1(s, gamma);
    }
    for (int i = 0; i < n; i++) {
      auto c = to_cons1(w[ng + i], gamma);
      for (int m = 0; m < 3; m++) c[m] += dt/dx*(F[i][m] - F[i + 1][m]);
      w[ng + i] = to_prim1(c, gamma);
    }
    t += dt;
  }

  Ref1D out;
  out.x.resize(n);
  out.rho.resize(n);
  out.u.resize(n);
  out.p.resize(n);
  for (int i = 0; i < n; i++) {
    out.x[i] = x0 + (i + 0.5)*dx;
    out.rho[i] = w[ng + i].rho;
    out.u[i] = w[ng + i].u;
    out.p[i] = w[ng + i].p;
  }
  return out;
}

}  // namespace trikin
